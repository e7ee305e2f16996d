# Copyright (c) 2025, Picurit and contributors
# For license information, please see license.txt

"""
Hypothesis strategies shared by the test modules.

Install the ``test`` extra to use them. Runs are derandomized so every
property sees the same examples on every machine.
"""

from functools import lru_cache
from typing import NamedTuple

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from legendrian_skein.config import get_settings
from legendrian_skein.exceptions import PatternMismatch
from legendrian_skein.front.front import OrientedFront, apply_move, basic_front, load_front, stack
from legendrian_skein.polyring.polyring import ONE, LaurentPoly, TruncSeries
from legendrian_skein.symfun.symfun import SchurVector, partitions_of

MOVE_NAMES = ("cyclic_rotate", "far_commute", "braid", "lr1", "lr2", "lr1+", "lr2+")
BASIC_SIZES = (-3, -2, -1, 1, 2, 3)


def property_settings(max_examples: int) -> settings:
	return settings(
		max_examples=max_examples,
		derandomize=True,
		database=None,
		deadline=None,
		suppress_health_check=[HealthCheck.too_slow],
	)


# Polynomials

def laurent_polys(variables: str = "azs", max_terms: int = 4, spread: int = 3, min_exponent: int | None = None):
	"""Sparse integer Laurent polynomials in the given variables."""
	low = -spread if min_exponent is None else min_exponent
	exponent = st.tuples(*(
		st.integers(low, spread) if var in variables else st.just(0)
		for var in "azs"
	))
	return st.dictionaries(exponent, st.integers(-5, 5), max_size=max_terms).map(LaurentPoly)


def invertible_series(order: int = 5):
	"""Series with constant term 1 and small polynomial coefficients."""
	tail = st.lists(laurent_polys(max_terms=2), min_size=order, max_size=order)
	return tail.map(lambda coeffs: TruncSeries.from_coeffs([ONE] + coeffs, order=order))


@lru_cache(maxsize=None)
def _partitions_up_to(weight: int) -> tuple:
	return tuple(lam for n in range(weight + 1) for lam in partitions_of(n))


def schur_vectors(max_weight: int = 3, max_terms: int = 4):
	"""Elements of Λ with coefficients c·s^k, supported up to max_weight."""
	coefficient = st.builds(
		lambda c, k: LaurentPoly.monomial(c, s=k),
		st.integers(-3, 3),
		st.integers(-2, 2),
	)
	keys = st.sampled_from(_partitions_up_to(max_weight))
	return st.dictionaries(keys, coefficient, max_size=max_terms).map(SchurVector)


# Fronts and moves

class Move(NamedTuple):
	name: str
	position: int
	flip: bool
	strand: int


def moves():
	"""One Legendrian or planar move; lr1+ and lr2+ insert, the rest rewrite in place."""
	return st.builds(
		Move,
		st.sampled_from(MOVE_NAMES),
		st.integers(0, 63),
		st.booleans(),
		st.integers(1, 8),
	)


def play(front: OrientedFront, move: Move, max_letters: int) -> OrientedFront:
	"""
	Apply a drawn move, wrapping its position onto the word.

	Returns:
		OrientedFront: The moved front, or front itself when the move does not apply
	"""
	n = len(front.letters)
	position = move.position % max(n, 1)
	try:
		if move.name == "lr1+":
			if n + 3 > max_letters:
				return front
			strand = 1 + (move.strand - 1) % max(front.word.strands(position), 1)
			return apply_move(front, "lr1", position, "upper" if move.flip else "lower", strand)
		if move.name == "lr2+":
			if n + 2 > max_letters:
				return front
			return apply_move(front, "lr2", position, "above" if move.flip else "below")
		return apply_move(front, move.name, position)
	except PatternMismatch:
		return front


def stacked_basic_fronts(max_factors: int = 3):
	"""Products of basic fronts A_{±1..3}, top to bottom."""
	def build(sizes):
		front = basic_front(sizes[0])
		for size in sizes[1:]:
			front = stack(front, basic_front(size))
		return front
	return st.lists(st.sampled_from(BASIC_SIZES), min_size=1, max_size=max_factors).map(build)


@lru_cache(maxsize=1)
def corpus_fronts() -> tuple:
	directory = get_settings().default_corpus_dir
	return tuple(
		(path.name, load_front(path.read_text(encoding="utf-8")).front)
		for path in sorted(directory.glob("*.front"))
	)


@st.composite
def fronts(draw, max_moves: int = 6, growth: int = 6):
	"""Valid oriented fronts: a stack of basic fronts or a corpus diagram, then random moves."""
	seeds = st.sampled_from([front for _, front in corpus_fronts()])
	front = draw(st.one_of(stacked_basic_fronts(), seeds))
	limit = len(front.letters) + growth
	for move in draw(st.lists(moves(), max_size=max_moves)):
		front = play(front, move, limit)
	return front
