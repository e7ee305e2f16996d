# Copyright (c) 2025, Picurit and contributors
# For license information, please see license.txt

from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Union

from legendrian_skein.config import get_settings
from legendrian_skein.exceptions import LegendrianSkeinError, ValidationError, DataError, NonTermination
from legendrian_skein.front.front import (
	LEFT, RIGHT, SIGMA, RIGHTWARD, FrontWord, OrientedFront, canonical_key, classical_invariants,
	left_cusp, replace_window, right_cusp, rotate_to, sigma,
)
from legendrian_skein.polyring.polyring import (
	LaurentPoly, ONE, ZERO, VAR_A, VAR_Z, PolyLike, coeff_of, parse_poly, render,
)
from legendrian_skein.rulings.rulings import ruling_polynomial
from legendrian_skein.symfun.symfun import (
	EMPTY, Partition, make_partition, parse_partition, render_partition, turaev_inner, weight,
)
from legendrian_skein.utils import get_logger, log_error

logger = get_logger(__name__)

# (a - a^-1) / z, the value of a split unknot
UNKNOT = (VAR_A - LaurentPoly.monomial(1, a=-1)) * LaurentPoly.monomial(1, z=-1)


@dataclass(frozen=True, order=True)
class TuraevMonomial:
	"""Basis element A_pos A_-neg of the annulus skein module."""

	pos: Partition = EMPTY
	neg: Partition = EMPTY

	def __post_init__(self):
		object.__setattr__(self, "pos", make_partition(sorted(self.pos, reverse=True)))
		object.__setattr__(self, "neg", make_partition(sorted(self.neg, reverse=True)))

	@property
	def grading(self) -> int:
		return weight(self.pos) - weight(self.neg)

	def __mul__(self, other: "TuraevMonomial") -> "TuraevMonomial":
		return TuraevMonomial(self.pos + other.pos, self.neg + other.neg)

	def __str__(self) -> str:
		return f"A[{render_partition(self.pos)}]A-[{render_partition(self.neg)}]"


def _monomial_key(monomial: TuraevMonomial) -> tuple:
	return (monomial.grading, weight(monomial.pos), monomial.pos, monomial.neg)


class SkeinElement:
	"""
	Finite combination of Turaev monomials with coefficients in a and z.

	Immutable; zero coefficients are dropped.
	"""

	__slots__ = ("_terms",)

	def __init__(self, terms: Mapping[TuraevMonomial, PolyLike] | None = None):
		clean = {}
		for monomial, coef in (terms or {}).items():
			coef = LaurentPoly.coerce(coef)
			if coef.uses("s"):
				raise ValidationError(f"Skein coefficients live in a and z, got {coef}")
			if not coef.is_zero():
				clean[monomial] = coef
		self._terms = clean

	@classmethod
	def zero(cls) -> "SkeinElement":
		return cls()

	@classmethod
	def unit(cls) -> "SkeinElement":
		return cls({TuraevMonomial(): ONE})

	@classmethod
	def basis(cls, pos: Iterable[int] = (), neg: Iterable[int] = (), coef: PolyLike = 1) -> "SkeinElement":
		return cls({TuraevMonomial(tuple(pos), tuple(neg)): coef})

	@property
	def terms(self) -> dict[TuraevMonomial, LaurentPoly]:
		return dict(self._terms)

	def items(self) -> list[tuple[TuraevMonomial, LaurentPoly]]:
		return sorted(self._terms.items(), key=lambda item: _monomial_key(item[0]))

	def coefficient(self, monomial: TuraevMonomial) -> LaurentPoly:
		return self._terms.get(monomial, ZERO)

	def is_zero(self) -> bool:
		return not self._terms

	def gradings(self) -> set[int]:
		return {monomial.grading for monomial in self._terms}

	def a_degree(self) -> int | None:
		"""Largest exponent of a over all coefficients; None for zero."""
		degrees = [coef.degree("a") for coef in self._terms.values()]
		return max(degrees) if degrees else None

	def __add__(self, other: "SkeinElement") -> "SkeinElement":
		out = dict(self._terms)
		for monomial, coef in other._terms.items():
			out[monomial] = out.get(monomial, ZERO) + coef
		return SkeinElement(out)

	def __neg__(self) -> "SkeinElement":
		return SkeinElement({monomial: -coef for monomial, coef in self._terms.items()})

	def __sub__(self, other: "SkeinElement") -> "SkeinElement":
		return self + (-other)

	def __mul__(self, other: Union["SkeinElement", PolyLike]) -> "SkeinElement":
		if not isinstance(other, SkeinElement):
			scalar = LaurentPoly.coerce(other)
			return SkeinElement({monomial: coef * scalar for monomial, coef in self._terms.items()})
		out: dict[TuraevMonomial, LaurentPoly] = {}
		for left, x in self._terms.items():
			for right, y in other._terms.items():
				product = left * right
				out[product] = out.get(product, ZERO) + x * y
		return SkeinElement(out)

	def __rmul__(self, other: PolyLike) -> "SkeinElement":
		return self * other

	def __eq__(self, other: object) -> bool:
		if not isinstance(other, SkeinElement):
			return NotImplemented
		return self._terms == other._terms

	def __hash__(self) -> int:
		return hash(frozenset(self._terms.items()))

	def __repr__(self) -> str:
		return f"SkeinElement({self})"

	def __str__(self) -> str:
		if not self._terms:
			return "0"
		return " + ".join(f"({render(coef)})*{monomial}" for monomial, coef in self.items())

	def to_json(self) -> list[dict[str, str]]:
		return [
			{"lambda": render_partition(monomial.pos), "mu": render_partition(monomial.neg), "coeff": render(coef)}
			for monomial, coef in self.items()
		]

	@classmethod
	def from_json(cls, payload: Any) -> "SkeinElement":
		"""
		Rebuild an element from its to_json form.

		Raises:
			ValidationError: If an entry lacks a key or holds unparsable text
		"""
		if not isinstance(payload, list):
			raise ValidationError(f"Skein element JSON must be a list, got {type(payload).__name__}")
		out: dict[TuraevMonomial, LaurentPoly] = {}
		for entry in payload:
			try:
				monomial = TuraevMonomial(parse_partition(entry["lambda"]), parse_partition(entry["mu"]))
				coef = parse_poly(entry["coeff"])
			except (KeyError, TypeError) as e:
				raise ValidationError(f"Skein term needs lambda, mu and coeff strings: {str(e)}")
			out[monomial] = out.get(monomial, ZERO) + coef
		return cls(out)


def _a_power(k: int) -> LaurentPoly:
	return LaurentPoly.monomial(1, a=k)


def _cusp_free_monomial(front: OrientedFront) -> SkeinElement:
	"""A basic closure: every strand on one component, all pointing one way."""
	k = front.base_strands
	if front.slice_dirs[0][0] == RIGHTWARD:
		return SkeinElement.basis(pos=(k,))
	return SkeinElement.basis(neg=(k,))


def _blocks(front: OrientedFront) -> list[tuple[int, int]]:
	used = {letter.index for letter in front.letters}
	blocks = []
	lo = 1
	for p in range(1, front.base_strands + 1):
		if p == front.base_strands or p not in used:
			blocks.append((lo, p))
			lo = p + 1
	return blocks


def _block_front(front: OrientedFront, lo: int, hi: int) -> OrientedFront:
	letters = tuple(sigma(letter.index - lo + 1) for letter in front.letters if lo <= letter.index < hi)
	slices = [front.slice_dirs[0][lo - 1:hi]]
	for letter in letters[:-1]:
		dirs = list(slices[-1])
		m = letter.index
		dirs[m - 1], dirs[m] = dirs[m], dirs[m - 1]
		slices.append(tuple(dirs))
	return OrientedFront(FrontWord(letters, hi - lo + 1), tuple(slices))


class _Rewriter:
	"""One top-level evaluation: memo table and step counter."""

	def __init__(self, budget: int):
		self.budget = budget
		self.steps = 0
		self.hits = 0
		self.memo: dict[tuple, SkeinElement] = {}

	def tick(self) -> None:
		self.steps += 1
		if self.steps > self.budget:
			raise NonTermination(f"Rewriting exceeded {self.budget} steps")

	def evaluate(self, front: OrientedFront) -> SkeinElement:
		# The least rotation fixes the seam strand count too.
		key = canonical_key(front)
		cached = self.memo.get(key)
		if cached is not None:
			self.hits += 1
			return cached
		self.tick()
		if any(letter.kind != SIGMA for letter in front.letters):
			result = self._with_cusps(front)
		else:
			result = self._cusp_free(front)
		self.memo[key] = result
		return result

	def _resolve_pair(self, front: OrientedFront, k: int) -> SkeinElement:
		"""Crossings k and k+1 are the same sigma_i: split off the bigon."""
		i = front.letters[k].index
		sign = front.crossing_sign(k)
		deleted = self.evaluate(replace_window(front, k, k + 2, ()))
		if sign > 0:
			kept = self.evaluate(replace_window(front, k, k + 2, (sigma(i),)))
			return deleted + kept * VAR_Z
		smoothed = self.evaluate(replace_window(front, k, k + 2, (right_cusp(i), left_cusp(i))))
		return deleted - smoothed * (VAR_Z * _a_power(-1))

	# Cusp-free words

	def _cusp_free(self, front: OrientedFront) -> SkeinElement:
		blocks = _blocks(front)
		if len(blocks) != 1:
			total = SkeinElement.unit()
			for lo, hi in blocks:
				total = total * self.evaluate(_block_front(front, lo, hi))
			return total

		k = front.base_strands
		if not front.letters or len(front.letters) == k - 1:
			return _cusp_free_monomial(front)

		first = next(t for t, letter in enumerate(front.letters) if letter.index == 1)
		current = rotate_to(front, first)
		while True:
			self.tick()
			letters = current.letters
			if len(letters) == k - 1:
				return _cusp_free_monomial(current)
			s = 0
			while s < len(letters) and letters[s].index == s + 1:
				s += 1
			prefix = list(letters[:s])
			i = letters[s].index
			if i == s:
				return self._resolve_pair(current, s - 1)
			# Both rewrites conjugate a letter past the prefix and onto the end.
			moved = sigma(i) if i > s + 1 else sigma(i + 1)
			current = rotate_to(replace_window(current, 0, s + 1, [moved] + prefix), 1)

	# Words with cusps

	def _with_cusps(self, front: OrientedFront) -> SkeinElement:
		current = rotate_to(front, _focus(front))
		total = SkeinElement.zero()
		scale = ONE
		while True:
			self.tick()
			letters = current.letters
			m = letters[0].index
			j = next(t for t in range(1, len(letters)) if letters[t].kind != SIGMA)
			s = 0
			while 1 + s < j and letters[1 + s] == sigma(m + s + 1):
				s += 1
			prefix = list(letters[1:1 + s])

			if 1 + s < j:
				i = letters[1 + s].index
				if i <= m - 2 or i >= m + s + 2:
					moved = sigma(i if i <= m - 2 else i - 2)
					current = rotate_to(replace_window(current, 0, 2 + s, [moved, letters[0]] + prefix), 1)
				elif i == m - 1:
					current, side = self._skein_step(replace_window(current, 1, 2 + s, [letters[1 + s]] + prefix), m, m - 1)
					total = total + side * scale
				elif i == m and s == 0:
					scale = scale * _a_power(current.crossing_sign(1))
					current = replace_window(current, 0, 2, [letters[0]])
				elif i == m:
					current = replace_window(current, 0, 2 + s, [left_cusp(m + 1)] + prefix[1:])
				elif i < m + s:
					current = rotate_to(replace_window(current, 0, 2 + s, [sigma(i - 1), letters[0]] + prefix), 1)
				else:
					return total + self._resolve_pair(current, s) * scale
				continue

			n = letters[j].index
			lowered = [sigma(letter.index - 2) for letter in prefix]
			if n <= m - 2:
				window = [right_cusp(n), left_cusp(m - 2)] + lowered
			elif n >= m + s + 2:
				window = [right_cusp(n - 2), letters[0]] + prefix
			elif n == m - 1:
				window = lowered
			elif n == m and s == 0:
				scale = scale * UNKNOT
				window = []
			elif n == m:
				scale = scale * _a_power(current.crossing_sign(1))
				window = lowered[1:]
			elif n < m + s:
				r = n - m
				window = [letters[0]] + prefix[:r - 1] + [right_cusp(n + 1)] + lowered[r + 1:]
			elif n == m + s:
				scale = scale * _a_power(current.crossing_sign(s))
				window = [letters[0]] + prefix[:-1] + [right_cusp(n)]
			else:
				return total + self._slide_to_zigzag(current, m, s, j) * scale
			return total + self.evaluate(replace_window(current, 0, j + 1, window)) * scale

	def _skein_step(self, front: OrientedFront, cusp: int, crossing: int) -> tuple[OrientedFront, SkeinElement]:
		"""
		Trade l_cusp s_crossing at letters 0, 1 for l_crossing s_cusp.

		Returns:
			tuple: The traded front and the z-correction from its smoothing
		"""
		sign = front.crossing_sign(1)
		traded = replace_window(front, 0, 2, [left_cusp(crossing), sigma(cusp)])
		smoothed = replace_window(front, 0, 2, [left_cusp(cusp)] if sign > 0 else [left_cusp(crossing)])
		return traded, self.evaluate(smoothed) * (VAR_Z * sign)

	def _slide_to_zigzag(self, front: OrientedFront, m: int, s: int, j: int) -> SkeinElement:
		"""l_m s_m+1 .. s_m+s r_m+s+1: walk the cusp down one crossing at a time."""
		total = SkeinElement.zero()
		current = front
		for t in range(s):
			current, side = self._skein_step(current, m + t, m + t + 1)
			total = total + side
			stop = j - t + 1
			rest = list(current.letters[2:stop])
			current = replace_window(current, 1, stop, rest + [sigma(m + t)])
		return total + self.evaluate(replace_window(current, 0, 2, ()))


def _focus(front: OrientedFront) -> int:
	"""First left cusp whose next cusp, reading cyclically, is a right cusp."""
	letters = front.letters
	n = len(letters)
	for k, letter in enumerate(letters):
		if letter.kind != LEFT:
			continue
		for step in range(1, n):
			other = letters[(k + step) % n]
			if other.kind == LEFT:
				break
			if other.kind == RIGHT:
				return k
	raise DataError(f"No left cusp is followed by a right cusp in {front.word}")


def homfly_H(front: OrientedFront, budget: int | None = None) -> SkeinElement:
	"""
	HOMFLY-PT class of the rounded front in the Turaev basis.

	Args:
		front: Oriented diagram
		budget: Rewriting step limit; defaults to the configured budget

	Returns:
		SkeinElement: The class, graded by the winding number of the front

	Raises:
		NonTermination: If the rewriting exceeds the budget
		DataError: If the rewriting fails
	"""
	rewriter = _Rewriter(budget or get_settings().rewrite_step_budget)
	try:
		result = rewriter.evaluate(front)
	except NonTermination as e:
		log_error(
			message=f"Skein rewriting of {front.word} did not terminate: {str(e)}",
			title="Skein Rewriting Error"
		)
		raise
	except LegendrianSkeinError:
		raise
	except Exception as e:
		log_error(
			message=f"Failed to rewrite {front.word}: {str(e)}",
			title="Skein Rewriting Error"
		)
		raise DataError(f"Failed to evaluate HOMFLY-PT class: {str(e)}")
	logger.debug("%s: %d steps, %d memo hits, %d cached", front.word, rewriter.steps, rewriter.hits, len(rewriter.memo))
	return result


def homfly_P(front: OrientedFront, h_element: SkeinElement | None = None) -> SkeinElement:
	"""a^(-writhe) times homfly_H, reusing h_element when given; a Legendrian isotopy invariant."""
	if h_element is None:
		h_element = homfly_H(front)
	return h_element * _a_power(-classical_invariants(front).writhe)


def specialize_hat(element: SkeinElement) -> LaurentPoly:
	"""Replace each A_lam A_-mu by the pairing of A_lam with A_mu."""
	total = ZERO
	for monomial, coef in element.items():
		total = total + coef * turaev_inner(monomial.pos, monomial.neg)
	return total


def rulings_from_skein(front: OrientedFront) -> LaurentPoly:
	"""The 2-graded ruling polynomial read off as the a^c coefficient of the specialized H, c = right cusps."""
	right = sum(1 for letter in front.letters if letter.kind == RIGHT)
	return coeff_of(specialize_hat(homfly_H(front)), "a", right)


@dataclass(frozen=True)
class MainIdentityReport:
	lhs: LaurentPoly
	rhs: LaurentPoly
	equal: bool

	def to_json(self) -> dict[str, Any]:
		return {"lhs": render(self.lhs), "rhs": render(self.rhs), "equal": self.equal}


@dataclass(frozen=True)
class BoundReport:
	tb_plus_absr: int
	neg_adeg: int | None
	holds: bool

	def to_json(self) -> dict[str, Any]:
		return {"tb_plus_absr": self.tb_plus_absr, "neg_adeg": self.neg_adeg, "holds": self.holds}


def check_mainT(front: OrientedFront, p_element: SkeinElement | None = None) -> MainIdentityReport:
	"""
	Compare the 2-graded ruling polynomial with the a^-tb coefficient of the specialized P.

	Args:
		front: Oriented diagram
		p_element: Precomputed homfly_P(front), if at hand

	Returns:
		MainIdentityReport: Both sides and whether they agree
	"""
	lhs = ruling_polynomial(front, 2)
	if p_element is None:
		p_element = homfly_P(front)
	tb = classical_invariants(front).tb
	rhs = coeff_of(specialize_hat(p_element), "a", -tb)
	return MainIdentityReport(lhs, rhs, lhs == rhs)


def check_bound(front: OrientedFront, p_element: SkeinElement | None = None) -> BoundReport:
	"""
	Test tb + |r| <= -deg_a P.

	Args:
		front: Oriented diagram
		p_element: Precomputed homfly_P(front), if at hand

	Returns:
		BoundReport: Both sides and whether the bound holds
	"""
	invariants = classical_invariants(front)
	if p_element is None:
		p_element = homfly_P(front)
	left = invariants.tb + abs(invariants.rotation)
	degree = p_element.a_degree()
	if degree is None:
		return BoundReport(left, None, True)
	return BoundReport(left, -degree, left <= -degree)
