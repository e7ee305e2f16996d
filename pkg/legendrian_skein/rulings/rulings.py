# Copyright (c) 2025, Picurit and contributors
# For license information, please see license.txt

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

from legendrian_skein.exceptions import (
	LegendrianSkeinError, ValidationError, DataError, DivisibilityError, OddStrandCount,
)
from legendrian_skein.front.front import (
	LEFT, RIGHT, SIGMA, Letter, MaslovAssignment, OrientedFront, classical_invariants, maslov,
)
from legendrian_skein.polyring.polyring import LaurentPoly, ZERO
from legendrian_skein.utils import get_logger, log_error

logger = get_logger(__name__)

PASS = 0
SWITCH = 1


@dataclass(frozen=True)
class RulingState:
	"""
	Fixed-point-free pairing of the strand positions on one slice.

	partners[i-1] is the position paired with position i.
	"""

	partners: tuple[int, ...]

	def __post_init__(self):
		partners = tuple(self.partners)
		object.__setattr__(self, "partners", partners)
		size = len(partners)
		for i, j in enumerate(partners, start=1):
			if not 1 <= j <= size or j == i or partners[j - 1] != i:
				raise ValidationError(f"Not a fixed-point-free pairing: {partners!r}")

	@classmethod
	def from_pairs(cls, pairs: Sequence[tuple[int, int]]) -> "RulingState":
		size = 2 * len(pairs)
		partners = [0] * size
		for i, j in pairs:
			if not (1 <= i <= size and 1 <= j <= size):
				raise ValidationError(f"Pair {(i, j)} is outside 1..{size}")
			partners[i - 1], partners[j - 1] = j, i
		return cls(tuple(partners))

	def __len__(self) -> int:
		return len(self.partners)

	def partner(self, i: int) -> int:
		return self.partners[i - 1]

	def pairs(self) -> list[tuple[int, int]]:
		return [(i, j) for i, j in enumerate(self.partners, start=1) if i < j]

	def __str__(self) -> str:
		return " ".join(f"{i}-{j}" for i, j in self.pairs()) or "-"


def _pair_allowed(upper: int, lower: int, p: int) -> bool:
	gap = upper - lower - 1
	if p == 0:
		return gap == 0
	return gap % p == 0


def _admissible(partners: tuple[int, ...], potentials: Sequence[int], p: int) -> bool:
	if p == 1:
		return True
	for i, j in enumerate(partners, start=1):
		if i < j and not _pair_allowed(potentials[i - 1], potentials[j - 1], p):
			return False
	return True


def _pairings(free: list[int], potentials: Sequence[int], p: int) -> Iterator[list[tuple[int, int]]]:
	if not free:
		yield []
		return
	first, rest = free[0], free[1:]
	for index, other in enumerate(rest):
		if p != 1 and not _pair_allowed(potentials[first - 1], potentials[other - 1], p):
			continue
		for tail in _pairings(rest[:index] + rest[index + 1:], potentials, p):
			yield [(first, other)] + tail


def admissible_states(size: int, slice_potentials: Sequence[int], p: int) -> list[RulingState]:
	"""
	All pairings of one slice in which every upper strand sits one above its partner.

	Args:
		size: Number of strands on the slice
		slice_potentials: Maslov potential of each strand, top to bottom
		p: Grading; 0 compares integers, 1 imposes nothing

	Returns:
		list[RulingState]: Admissible states, in lexicographic order of their pairs

	Raises:
		OddStrandCount: If size is odd
		ValidationError: If the potentials do not match the strand count or p is negative
	"""
	if p < 0:
		raise ValidationError(f"Grading must be non-negative, got {p}")
	if len(slice_potentials) != size:
		raise ValidationError(f"Expected {size} potentials, got {len(slice_potentials)}")
	if size % 2:
		raise OddStrandCount(f"A slice with {size} strands has no pairing")
	return [RulingState.from_pairs(pairs) for pairs in _pairings(list(range(1, size + 1)), slice_potentials, p)]


def _nested_or_disjoint(a: tuple[int, int], b: tuple[int, int]) -> bool:
	(a0, a1), (b0, b1) = sorted(a), sorted(b)
	if a1 < b0 or b1 < a0:
		return True
	return (a0 < b0 and b1 < a1) or (b0 < a0 and a1 < b1)


def _step(letter: Letter, partners: tuple[int, ...], after: Sequence[int], p: int) -> list[tuple[tuple[int, ...], int]]:
	m = letter.index
	if letter.kind == SIGMA:
		if partners[m - 1] == m + 1:
			return []
		swap = {m: m + 1, m + 1: m}
		passed = [0] * len(partners)
		for i, j in enumerate(partners, start=1):
			passed[swap.get(i, i) - 1] = swap.get(j, j)
		out = []
		if _admissible(tuple(passed), after, p):
			out.append((tuple(passed), PASS))
		if _nested_or_disjoint((m, partners[m - 1]), (m + 1, partners[m])) and _admissible(partners, after, p):
			out.append((partners, SWITCH))
		return out

	if letter.kind == LEFT:
		shift = [j + 2 if j >= m else j for j in partners]
		grown = shift[:m - 1] + [m + 1, m] + shift[m - 1:]
		grown = tuple(grown)
		return [(grown, PASS)] if _admissible(grown, after, p) else []

	if partners[m - 1] != m + 1:
		return []
	kept = [j - 2 if j > m + 1 else j for j in partners[:m - 1] + partners[m + 1:]]
	return [(tuple(kept), PASS)]


def transfer(letter: Letter, state: RulingState, after: Sequence[int], p: int) -> list[tuple[RulingState, int]]:
	"""
	Successor states across one letter.

	Each successor comes with 1 if the ruling switches at the letter, else 0.
	Crossing strands paired with each other block the sweep; a switch needs
	the two companion intervals disjoint or nested.

	Args:
		letter: Elementary tangle
		state: Admissible state just before the letter
		after: Potentials on the slice just after the letter
		p: Grading

	Returns:
		list[tuple[RulingState, int]]: Successors and switch counts
	"""
	return [(RulingState(s), switch) for s, switch in _step(letter, state.partners, after, p)]


def check_grading(front: OrientedFront, p: int) -> None:
	"""
	Raise DivisibilityError unless p divides 2r of every component.

	Raises:
		DivisibilityError: If some component has 2r not divisible by p
		ValidationError: If p is negative
	"""
	if p < 0:
		raise ValidationError(f"Grading must be non-negative, got {p}")
	for component in classical_invariants(front).components:
		twice = 2 * component.rotation
		if (p == 0 and twice != 0) or (p > 0 and twice % p):
			raise DivisibilityError(
				f"p = {p} does not divide 2r = {twice} of component c{component.index + 1}"
			)


def _potentials(front: OrientedFront, potential: MaslovAssignment | None) -> MaslovAssignment:
	if potential is None:
		return maslov(front)
	if len(potential.values) != front.word.slice_count:
		raise ValidationError("Maslov assignment does not match the front")
	return potential


def _switch_histogram(front: OrientedFront, p: int, potential: MaslovAssignment) -> Counter:
	letters = front.letters
	n = len(letters)
	seam = admissible_states(front.base_strands, potential.slice_potentials(0), p)
	histogram: Counter = Counter()
	if not n:
		histogram[0] = len(seam)
		return histogram

	# Sweep every seam state at once: (start, current) -> switch histogram.
	paths: dict[tuple[tuple, tuple], Counter] = {
		(s.partners, s.partners): Counter({0: 1}) for s in seam
	}
	for k, letter in enumerate(letters):
		after = potential.slice_potentials(k + 1)
		nxt: dict[tuple[tuple, tuple], Counter] = {}
		for (start, current), counts in paths.items():
			for state, switch in _step(letter, current, after, p):
				bucket = nxt.setdefault((start, state), Counter())
				for switches, multiplicity in counts.items():
					bucket[switches + switch] += multiplicity
		paths = nxt
		if not paths:
			break

	for (start, current), counts in paths.items():
		if start == current:
			histogram.update(counts)
	return histogram


def ruling_count_report(front: OrientedFront, p: int = 2, potential: MaslovAssignment | None = None) -> list[tuple[int, int]]:
	"""
	Number of p-graded normal rulings by switch count.

	Args:
		front: Oriented diagram
		p: Grading, dividing 2r of every component
		potential: Maslov potential; defaults to the one following the orientation

	Returns:
		list[tuple[int, int]]: (switches, multiplicity) pairs sorted by switches

	Raises:
		DivisibilityError: If p does not divide 2r of some component
		DataError: If the sweep fails
	"""
	check_grading(front, p)
	potential = _potentials(front, potential)
	try:
		histogram = _switch_histogram(front, p, potential)
	except OddStrandCount:
		logger.debug("odd seam count %d has no rulings", front.base_strands)
		return []
	except LegendrianSkeinError:
		raise
	except Exception as e:
		log_error(
			message=f"Failed to sweep rulings of {front.word}: {str(e)}",
			title="Ruling Sweep Error"
		)
		raise DataError(f"Failed to sweep rulings: {str(e)}")
	return sorted((s, c) for s, c in histogram.items() if c)


def ruling_polynomial(front: OrientedFront, p: int = 2, potential: MaslovAssignment | None = None) -> LaurentPoly:
	"""Sum of z^(switches - right cusps) over p-graded normal rulings."""
	right = sum(1 for letter in front.letters if letter.kind == RIGHT)
	total = ZERO
	for switches, multiplicity in ruling_count_report(front, p, potential):
		total = total + LaurentPoly.monomial(multiplicity, z=switches - right)
	return total


@dataclass(frozen=True)
class Ruling:
	"""One normal ruling: the state on every slice and the letters where it switches."""

	states: tuple[RulingState, ...]
	switches: tuple[int, ...]


def enumerate_rulings(front: OrientedFront, p: int = 2, potential: MaslovAssignment | None = None) -> list[Ruling]:
	"""
	List p-graded normal rulings one by one.

	Exponential in the number of letters; meant for small fronts and for
	checking ruling_count_report.
	"""
	check_grading(front, p)
	potential = _potentials(front, potential)
	if front.base_strands % 2:
		return []
	letters = front.letters
	seam = admissible_states(front.base_strands, potential.slice_potentials(0), p)
	if not letters:
		return [Ruling((s,), ()) for s in seam]

	found = []

	def walk(k: int, trail: list, switched: list) -> None:
		if k == len(letters):
			if trail[-1] == trail[0]:
				found.append(Ruling(tuple(RulingState(s) for s in trail[:-1]), tuple(switched)))
			return
		after = potential.slice_potentials(k + 1)
		for state, switch in _step(letters[k], trail[-1], after, p):
			walk(k + 1, trail + [state], switched + [k] if switch else switched)

	for start in seam:
		walk(0, [start.partners], [])
	return found
