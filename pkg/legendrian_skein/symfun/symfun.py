# Copyright (c) 2025, Picurit and contributors
# For license information, please see license.txt

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Mapping, Union

from legendrian_skein.exceptions import ValidationError, DataError
from legendrian_skein.polyring.polyring import LaurentPoly, ZERO, ONE, VAR_Z, VAR_S, PolyLike
from legendrian_skein.utils import log_error

Partition = tuple[int, ...]
EMPTY: Partition = ()


# Partitions

def make_partition(parts: Iterable[int]) -> Partition:
	"""
	Validate a list of parts as a partition.

	Raises:
		ValidationError: If a part is not a positive integer or the parts increase
	"""
	parts = tuple(parts)
	for i, part in enumerate(parts):
		if not isinstance(part, int) or part < 1:
			raise ValidationError(f"Partition parts must be positive integers, got {parts!r}")
		if i and part > parts[i - 1]:
			raise ValidationError(f"Partition parts must be non-increasing, got {parts!r}")
	return parts


def render_partition(lam: Partition) -> str:
	return ",".join(str(part) for part in lam) if lam else "-"


def parse_partition(text: str) -> Partition:
	"""Parse ``2,1`` style text; ``-`` is the empty partition."""
	text = text.strip()
	if text in ("-", ""):
		return EMPTY
	try:
		parts = [int(chunk) for chunk in text.split(",")]
	except ValueError:
		raise ValidationError(f"Partition must be a comma list of integers, got {text!r}")
	return make_partition(parts)


def weight(lam: Partition) -> int:
	return sum(lam)


def contains(lam: Partition, mu: Partition) -> bool:
	"""True when the diagram of mu fits inside the diagram of lam."""
	if len(mu) > len(lam):
		return False
	return all(m <= l for m, l in zip(mu, lam))


def partitions_of(n: int) -> list[Partition]:
	"""
	All partitions of n in reverse lexicographic order.

	Args:
		n: Non-negative weight

	Returns:
		list[Partition]: e.g. [(3,), (2, 1), (1, 1, 1)] for n = 3
	"""
	if n < 0:
		raise ValidationError(f"Weight must be non-negative, got {n}")
	return list(_partitions_bounded(n, n))


def _partitions_bounded(n: int, largest: int) -> Iterator[Partition]:
	if n == 0:
		yield EMPTY
		return
	for first in range(min(n, largest), 0, -1):
		for rest in _partitions_bounded(n - first, first):
			yield (first,) + rest


def subpartitions(lam: Partition) -> Iterator[Partition]:
	"""Every partition contained in lam, including the empty one and lam itself."""
	def walk(i: int, bound: int) -> Iterator[Partition]:
		if i == len(lam):
			yield EMPTY
			return
		yield EMPTY
		for part in range(min(bound, lam[i]), 0, -1):
			for rest in walk(i + 1, part):
				yield (part,) + rest

	yield from walk(0, lam[0] if lam else 0)


def hook(a: int, b: int) -> Partition:
	"""The hook (a|b) = (a+1, 1, ..., 1) with b ones."""
	return (a + 1,) + (1,) * b


# Contingency matrices

@dataclass(frozen=True)
class ContingencyMatrix:
	entries: tuple[tuple[int, ...], ...]
	row_sums: Partition
	col_sums: Partition


def contingency_matrices(lam: Partition, mu: Partition) -> list[ContingencyMatrix]:
	"""
	Non-negative integer matrices with row sums lam and column sums mu.

	Rows are filled top to bottom and each row lists its compositions with
	larger leading entries first, so the order is deterministic.
	"""
	lam = make_partition(lam)
	mu = make_partition(mu)
	if weight(lam) != weight(mu):
		return []

	found: list[ContingencyMatrix] = []

	def compositions(total: int, caps: list[int], j: int) -> Iterator[tuple[int, ...]]:
		if j == len(caps) - 1:
			if total <= caps[j]:
				yield (total,)
			return
		for value in range(min(total, caps[j]), -1, -1):
			for rest in compositions(total - value, caps, j + 1):
				yield (value,) + rest

	def fill(i: int, caps: list[int], rows: list[tuple[int, ...]]) -> None:
		if i == len(lam):
			if not any(caps):
				found.append(ContingencyMatrix(tuple(rows), lam, mu))
			return
		for row in compositions(lam[i], caps, 0):
			fill(i + 1, [c - v for c, v in zip(caps, row)], rows + [row])

	if not lam:
		return [ContingencyMatrix((), lam, mu)]
	fill(0, list(mu), [])
	return found


# Turaev basis pairing

@lru_cache(maxsize=None)
def bracket(m: int) -> LaurentPoly:
	"""
	Self-pairing of the basic front winding m times.

	Sum over partitions lam of m of l!/(m_1!...m_r!) * (product of parts) *
	z^(2(l-1)), where l is the length of lam and m_k its multiplicities.
	The value at 0 is z^-2.
	"""
	if m < 0:
		raise ValidationError(f"bracket needs a non-negative argument, got {m}")
	if m == 0:
		return VAR_Z ** -2
	total = ZERO
	for lam in partitions_of(m):
		length = len(lam)
		multiplicities = Counter(lam).values()
		count = factorial(length) // prod(factorial(k) for k in multiplicities)
		total = total + LaurentPoly.monomial(count * prod(lam), z=2 * (length - 1))
	return total


@lru_cache(maxsize=None)
def turaev_inner(lam: Partition, mu: Partition) -> LaurentPoly:
	"""
	Pairing of the Turaev basis elements A_lam and A_mu.

	Computed as z^(2lk - l - k) times the sum over contingency matrices of
	the product of brackets of the entries, with l = len(lam), k = len(mu).

	Args:
		lam: Partition for the rightward part
		mu: Partition for the leftward part

	Returns:
		LaurentPoly: Polynomial in z; 0 when the weights differ, 1 for two empty partitions
	"""
	lam = make_partition(lam)
	mu = make_partition(mu)
	if weight(lam) != weight(mu):
		return ZERO
	if not lam:
		return ONE
	l, k = len(lam), len(mu)
	total = ZERO
	for matrix in contingency_matrices(lam, mu):
		term = ONE
		for row in matrix.entries:
			for entry in row:
				term = term * bracket(entry)
		total = total + term
	return LaurentPoly.monomial(1, z=2 * l * k - l - k) * total


# Littlewood-Richardson coefficients

def _skew_cells(lam: Partition, mu: Partition) -> list[tuple[int, int]]:
	# Reading order: rows top to bottom, each row right to left.
	cells = []
	for r, length in enumerate(lam):
		start = mu[r] if r < len(mu) else 0
		for c in range(length - 1, start - 1, -1):
			cells.append((r, c))
	return cells


@lru_cache(maxsize=None)
def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
	"""
	Littlewood-Richardson coefficient c^lam_{mu,nu}.

	Counts semistandard fillings of the skew shape lam/mu with content nu
	(rows weakly increasing, columns strictly increasing downward) whose
	right-to-left, top-to-bottom reading word is a lattice word.

	Returns:
		int: 0 unless |mu| + |nu| = |lam| and mu is contained in lam
	"""
	lam, mu, nu = make_partition(lam), make_partition(mu), make_partition(nu)
	if weight(mu) + weight(nu) != weight(lam) or not contains(lam, mu) or not contains(lam, nu):
		return 0
	if not nu:
		return 1

	cells = _skew_cells(lam, mu)
	filling: dict[tuple[int, int], int] = {}
	counts = [0] * (len(nu) + 1)

	def place(i: int) -> int:
		if i == len(cells):
			return 1
		r, c = cells[i]
		upper = len(nu)
		right = filling.get((r, c + 1))
		if right is not None:
			upper = min(upper, right)
		above = filling.get((r - 1, c))
		lower = above + 1 if above is not None else 1
		total = 0
		for value in range(lower, upper + 1):
			if counts[value] >= nu[value - 1]:
				continue
			if value > 1 and counts[value] + 1 > counts[value - 1]:
				continue
			counts[value] += 1
			filling[(r, c)] = value
			total += place(i + 1)
			del filling[(r, c)]
			counts[value] -= 1
		return total

	return place(0)


@lru_cache(maxsize=None)
def _basis_product(mu: Partition, nu: Partition) -> tuple[tuple[Partition, int], ...]:
	n = weight(mu) + weight(nu)
	out = []
	for lam in partitions_of(n):
		if contains(lam, mu) and contains(lam, nu):
			c = lr_coefficient(lam, mu, nu)
			if c:
				out.append((lam, c))
	return tuple(out)


@lru_cache(maxsize=None)
def _basis_coproduct(lam: Partition) -> tuple[tuple[Partition, Partition, int], ...]:
	out = []
	for mu in subpartitions(lam):
		for nu in partitions_of(weight(lam) - weight(mu)):
			c = lr_coefficient(lam, mu, nu)
			if c:
				out.append((mu, nu, c))
	return tuple(out)


# Schur vectors

def _sort_key(lam: Partition) -> tuple:
	return (weight(lam), tuple(-part for part in lam))


class SchurVector:
	"""
	Finite combination of Schur basis elements Q_lam with coefficients in s.

	Immutable; zero coefficients are never stored.
	"""

	__slots__ = ("_terms",)

	def __init__(self, terms: Mapping[Partition, PolyLike] | None = None):
		clean = {}
		for lam, coef in (terms or {}).items():
			coef = LaurentPoly.coerce(coef)
			if coef:
				clean[make_partition(lam)] = coef
		self._terms = clean

	@classmethod
	def basis(cls, lam: Partition, coef: PolyLike = 1) -> "SchurVector":
		return cls({tuple(lam): coef})

	@property
	def terms(self) -> dict[Partition, LaurentPoly]:
		return dict(self._terms)

	def items(self) -> list[tuple[Partition, LaurentPoly]]:
		return sorted(self._terms.items(), key=lambda item: _sort_key(item[0]))

	def coefficient(self, lam: Partition) -> LaurentPoly:
		return self._terms.get(tuple(lam), ZERO)

	def is_zero(self) -> bool:
		return not self._terms

	def __add__(self, other: "SchurVector") -> "SchurVector":
		if not isinstance(other, SchurVector):
			return NotImplemented
		out = dict(self._terms)
		for lam, coef in other._terms.items():
			out[lam] = out.get(lam, ZERO) + coef
		return SchurVector(out)

	def __neg__(self) -> "SchurVector":
		return SchurVector({lam: -coef for lam, coef in self._terms.items()})

	def __sub__(self, other: "SchurVector") -> "SchurVector":
		return self + (-other)

	def __mul__(self, other: Union["SchurVector", PolyLike]) -> "SchurVector":
		if isinstance(other, SchurVector):
			return schur_mul(self, other)
		if isinstance(other, (LaurentPoly, int)):
			other = LaurentPoly.coerce(other)
			return SchurVector({lam: coef * other for lam, coef in self._terms.items()})
		return NotImplemented

	def __rmul__(self, other: PolyLike) -> "SchurVector":
		return self * other

	def __eq__(self, other: object) -> bool:
		if not isinstance(other, SchurVector):
			return NotImplemented
		return self._terms == other._terms

	def __hash__(self) -> int:
		return hash(frozenset(self._terms.items()))

	def __repr__(self) -> str:
		body = " + ".join(f"({coef})*Q[{render_partition(lam)}]" for lam, coef in self.items())
		return f"SchurVector({body or '0'})"


UNIT = SchurVector.basis(EMPTY)


def schur_mul(f: SchurVector, g: SchurVector) -> SchurVector:
	"""Product in the Schur basis, Q_mu * Q_nu = sum over lam of c^lam_{mu,nu} Q_lam."""
	out: dict[Partition, LaurentPoly] = {}
	for mu, cf in f.items():
		for nu, cg in g.items():
			coef = cf * cg
			for lam, c in _basis_product(mu, nu):
				out[lam] = out.get(lam, ZERO) + coef * c
	return SchurVector(out)


@lru_cache(maxsize=None)
def hook_expand_A(m: int) -> SchurVector:
	"""
	Expansion of A_m in the Schur basis.

	A_m = sum over a + b = m - 1 of (-1)^b s^(a-b) Q_(a|b).

	Raises:
		ValidationError: If m < 1
	"""
	if m < 1:
		raise ValidationError(f"hook_expand_A needs m >= 1, got {m}")
	terms = {}
	for b in range(m):
		a = m - 1 - b
		terms[hook(a, b)] = LaurentPoly.monomial((-1) ** b, s=a - b)
	return SchurVector(terms)


@lru_cache(maxsize=None)
def a_to_schur(lam: Partition) -> SchurVector:
	"""Schur expansion of A_lam = A_{lam_1} ... A_{lam_l}; the empty partition gives Q_()."""
	lam = make_partition(lam)
	result = UNIT
	for part in lam:
		result = schur_mul(result, hook_expand_A(part))
	return result


def schur_inner(f: SchurVector, g: SchurVector) -> LaurentPoly:
	"""Inner product making the Schur basis orthonormal."""
	total = ZERO
	for lam, coef in f.items():
		other = g.coefficient(lam)
		if other:
			total = total + coef * other
	return total


# Tensors in the Q (x) Q basis

SchurTensor = dict[tuple[Partition, Partition], LaurentPoly]


def _clean(out: dict) -> SchurTensor:
	return {key: coef for key, coef in out.items() if coef}


def tensor(f: SchurVector, g: SchurVector) -> SchurTensor:
	return _clean({(mu, nu): cf * cg for mu, cf in f.items() for nu, cg in g.items()})


def tensor_add(x: SchurTensor, y: SchurTensor) -> SchurTensor:
	out = dict(x)
	for key, coef in y.items():
		out[key] = out.get(key, ZERO) + coef
	return _clean(out)


def tensor_scale(x: SchurTensor, c: PolyLike) -> SchurTensor:
	c = LaurentPoly.coerce(c)
	return _clean({key: coef * c for key, coef in x.items()})


def tensor_mul(x: SchurTensor, y: SchurTensor) -> SchurTensor:
	"""Componentwise product (f (x) g)(h (x) k) = fh (x) gk."""
	out: dict = {}
	for (m1, n1), c1 in x.items():
		for (m2, n2), c2 in y.items():
			coef = c1 * c2
			for left, cl in _basis_product(m1, m2):
				for right, cr in _basis_product(n1, n2):
					key = (left, right)
					out[key] = out.get(key, ZERO) + coef * (cl * cr)
	return _clean(out)


def tensor_inner(x: SchurTensor, y: SchurTensor) -> LaurentPoly:
	total = ZERO
	for key, coef in x.items():
		other = y.get(key)
		if other:
			total = total + coef * other
	return total


def schur_coproduct(f: SchurVector) -> SchurTensor:
	"""
	Coproduct in the Q (x) Q basis.

	Delta(Q_lam) is the sum of c^lam_{mu,nu} Q_mu (x) Q_nu over mu contained
	in lam and nu of the complementary weight.

	Raises:
		DataError: If the expansion fails unexpectedly
	"""
	try:
		out: dict = {}
		for lam, coef in f.items():
			for mu, nu, c in _basis_coproduct(lam):
				key = (mu, nu)
				out[key] = out.get(key, ZERO) + coef * c
		return _clean(out)
	except Exception as e:
		log_error(
			message=f"Failed to expand coproduct of {f!r}: {str(e)}",
			title="Symfun Coproduct Error"
		)
		raise DataError(f"Failed to expand coproduct: {str(e)}")


def coproduct_of_A(m: int) -> SchurTensor:
	"""
	Right-hand side of the coproduct identity for A_m.

	z times the sum over i = 0..m of A_i (x) A_(m-i), with z = s - 1/s and
	A_0 = 1/z; the two end terms therefore contribute 1 (x) A_m and A_m (x) 1.
	"""
	z_image = VAR_S - VAR_S ** -1
	total = tensor_add(tensor(UNIT, hook_expand_A(m)), tensor(hook_expand_A(m), UNIT))
	for i in range(1, m):
		total = tensor_add(total, tensor_scale(tensor(hook_expand_A(i), hook_expand_A(m - i)), z_image))
	return total
