# Copyright (c) 2025, Picurit and contributors
# For license information, please see license.txt

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

from legendrian_skein.exceptions import ValidationError, DataError, NonUnitSubstitution, NotInvertible
from legendrian_skein.utils import log_error

VARIABLES = ("a", "z", "s")

Exponent = tuple[int, int, int]
PolyLike = Union["LaurentPoly", int]


def _index(var: str) -> int:
	try:
		return VARIABLES.index(var)
	except ValueError:
		raise ValidationError(f"Unknown variable '{var}', expected one of {', '.join(VARIABLES)}")


class LaurentPoly:
	"""
	Sparse Laurent polynomial in a, z, s with integer coefficients.

	Terms are stored as a map from exponent triples (a, z, s) to nonzero
	integers, so two polynomials are equal exactly when their maps are.
	Instances are immutable and hashable.
	"""

	__slots__ = ("_terms", "_hash")

	def __init__(self, terms: Mapping[Exponent, int] | None = None):
		clean: dict[Exponent, int] = {}
		if terms:
			for exp, coef in terms.items():
				if len(exp) != 3:
					raise ValidationError(f"Exponent vector must have 3 entries, got {exp!r}")
				if coef:
					key = (int(exp[0]), int(exp[1]), int(exp[2]))
					clean[key] = clean.get(key, 0) + int(coef)
		self._terms = {exp: coef for exp, coef in clean.items() if coef}
		self._hash = None

	# Construction

	@classmethod
	def constant(cls, value: int) -> "LaurentPoly":
		return cls({(0, 0, 0): value})

	@classmethod
	def monomial(cls, coef: int = 1, a: int = 0, z: int = 0, s: int = 0) -> "LaurentPoly":
		return cls({(a, z, s): coef})

	@classmethod
	def var(cls, name: str, power: int = 1) -> "LaurentPoly":
		exp = [0, 0, 0]
		exp[_index(name)] = power
		return cls({tuple(exp): 1})

	@classmethod
	def coerce(cls, value: PolyLike) -> "LaurentPoly":
		if isinstance(value, LaurentPoly):
			return value
		if isinstance(value, int):
			return cls.constant(value)
		raise ValidationError(f"Cannot use {type(value).__name__} as a Laurent polynomial")

	# Inspection

	@property
	def terms(self) -> dict[Exponent, int]:
		return dict(self._terms)

	def items(self) -> Iterator[tuple[Exponent, int]]:
		return iter(sorted(self._terms.items()))

	def is_zero(self) -> bool:
		return not self._terms

	def is_monomial(self) -> bool:
		return len(self._terms) == 1

	def uses(self, var: str) -> bool:
		idx = _index(var)
		return any(exp[idx] for exp in self._terms)

	def degree(self, var: str) -> int | None:
		"""Largest exponent of var, or None for the zero polynomial."""
		idx = _index(var)
		if not self._terms:
			return None
		return max(exp[idx] for exp in self._terms)

	def min_degree(self, var: str) -> int | None:
		idx = _index(var)
		if not self._terms:
			return None
		return min(exp[idx] for exp in self._terms)

	def coefficients(self) -> list[int]:
		return [coef for _, coef in self.items()]

	def __bool__(self) -> bool:
		return bool(self._terms)

	def __len__(self) -> int:
		return len(self._terms)

	# Arithmetic

	def __add__(self, other: PolyLike) -> "LaurentPoly":
		if not isinstance(other, (LaurentPoly, int)):
			return NotImplemented
		other = LaurentPoly.coerce(other)
		out = dict(self._terms)
		for exp, coef in other._terms.items():
			out[exp] = out.get(exp, 0) + coef
		return LaurentPoly(out)

	__radd__ = __add__

	def __neg__(self) -> "LaurentPoly":
		return LaurentPoly({exp: -coef for exp, coef in self._terms.items()})

	def __sub__(self, other: PolyLike) -> "LaurentPoly":
		if not isinstance(other, (LaurentPoly, int)):
			return NotImplemented
		return self + (-LaurentPoly.coerce(other))

	def __rsub__(self, other: PolyLike) -> "LaurentPoly":
		return LaurentPoly.coerce(other) - self

	def __mul__(self, other: PolyLike) -> "LaurentPoly":
		if not isinstance(other, (LaurentPoly, int)):
			return NotImplemented
		other = LaurentPoly.coerce(other)
		out: dict[Exponent, int] = {}
		for (a1, z1, s1), c1 in self._terms.items():
			for (a2, z2, s2), c2 in other._terms.items():
				key = (a1 + a2, z1 + z2, s1 + s2)
				out[key] = out.get(key, 0) + c1 * c2
		return LaurentPoly(out)

	__rmul__ = __mul__

	def __pow__(self, power: int) -> "LaurentPoly":
		if not isinstance(power, int):
			return NotImplemented
		if power < 0:
			if not self.is_monomial() or abs(next(iter(self._terms.values()))) != 1:
				raise ValidationError(f"Only unit monomials have negative powers, got {self}")
			(exp, coef), = self._terms.items()
			return LaurentPoly({tuple(-e * -power for e in exp): coef ** -power})
		result = LaurentPoly.constant(1)
		base = self
		while power:
			if power & 1:
				result = result * base
			base = base * base
			power >>= 1
		return result

	def __eq__(self, other: object) -> bool:
		if isinstance(other, int):
			other = LaurentPoly.constant(other)
		if not isinstance(other, LaurentPoly):
			return NotImplemented
		return self._terms == other._terms

	def __hash__(self) -> int:
		if self._hash is None:
			self._hash = hash(frozenset(self._terms.items()))
		return self._hash

	def __repr__(self) -> str:
		return f"LaurentPoly({render(self)!r})"

	def __str__(self) -> str:
		return render(self)


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
VAR_A = LaurentPoly.var("a")
VAR_Z = LaurentPoly.var("z")
VAR_S = LaurentPoly.var("s")


def poly_arith(p: PolyLike, q: PolyLike, op: str) -> LaurentPoly:
	"""
	Apply one ring operation by name.

	Args:
		p: Left operand
		q: Right operand, ignored for 'neg'
		op: One of 'add', 'sub', 'mul', 'neg'

	Returns:
		LaurentPoly: The result in canonical form

	Raises:
		ValidationError: If op is not a known operation
	"""
	p = LaurentPoly.coerce(p)
	if op == "neg":
		return -p
	q = LaurentPoly.coerce(q)
	if op == "add":
		return p + q
	if op == "sub":
		return p - q
	if op == "mul":
		return p * q
	raise ValidationError(f"Unknown operation '{op}'")


def coeff_of(p: PolyLike, var: str, k: int) -> LaurentPoly:
	"""
	Coefficient of var^k as a polynomial in the remaining variables.

	Args:
		p: Polynomial to inspect
		var: 'a', 'z' or 's'
		k: Exponent of var

	Returns:
		LaurentPoly: Terms of p with var-exponent k, with that exponent cleared
	"""
	idx = _index(var)
	p = LaurentPoly.coerce(p)
	out = {}
	for exp, coef in p.items():
		if exp[idx] == k:
			stripped = list(exp)
			stripped[idx] = 0
			out[tuple(stripped)] = coef
	return LaurentPoly(out)


@lru_cache(maxsize=None)
def _z_image_power(n: int) -> LaurentPoly:
	return (VAR_S - LaurentPoly.var("s", -1)) ** n


def _divide_by_z_image(p: LaurentPoly) -> LaurentPoly:
	# Exact division by s - 1/s, done as p*s / (s^2 - 1) one a-group at a time.
	groups: dict[int, dict[int, int]] = {}
	for (ea, ez, es), coef in p.items():
		groups.setdefault(ea, {})[es + 1] = coef

	out: dict[Exponent, int] = {}
	for ea, coeffs in groups.items():
		lo = min(coeffs)
		hi = max(coeffs)
		dense = [coeffs.get(e, 0) for e in range(lo, hi + 1)]
		quotient = [0] * max(len(dense) - 2, 0)
		for d in range(len(dense) - 1, 1, -1):
			c = dense[d]
			if c:
				quotient[d - 2] += c
				dense[d - 2] += c
				dense[d] = 0
		if dense[0] or (len(dense) > 1 and dense[1]):
			raise NonUnitSubstitution(f"{render(p)} is not divisible by s - s^-1")
		for d, c in enumerate(quotient):
			if c:
				out[(ea, 0, lo + d)] = c
	return LaurentPoly(out)


def subst_z(p: PolyLike) -> LaurentPoly:
	"""
	Substitute z = s - s^-1 into a polynomial in a and z.

	Negative powers of z are cleared by multiplying through and then divided
	back out exactly.

	Args:
		p: Polynomial without s-exponents

	Returns:
		LaurentPoly: Polynomial in a and s

	Raises:
		ValidationError: If p already involves s
		NonUnitSubstitution: If the result is not a Laurent polynomial in s
	"""
	p = LaurentPoly.coerce(p)
	if p.uses("s"):
		raise ValidationError(f"subst_z expects a polynomial in a and z, got {render(p)}")

	shift = max(0, -(p.min_degree("z") or 0))
	result = ZERO
	for (ea, ez, _), coef in p.items():
		result = result + LaurentPoly.monomial(coef, a=ea) * _z_image_power(ez + shift)

	try:
		for _ in range(shift):
			result = _divide_by_z_image(result)
	except NonUnitSubstitution as e:
		log_error(
			message=f"Failed to substitute z = s - s^-1 into {render(p)}: {e}",
			title="Polyring Substitution Error"
		)
		raise
	return result


# Rendering

def _format_monomial(coef: int, factors: list[tuple[str, int]]) -> str:
	names = [name if power == 1 else f"{name}^{power}" for name, power in factors if power]
	if not names:
		return str(coef)
	body = "*".join(names)
	if coef == 1:
		return body
	if coef == -1:
		return f"-{body}"
	return f"{coef}*{body}"


def _join_signed(parts: list[str]) -> str:
	text = parts[0]
	for part in parts[1:]:
		if part.startswith("-"):
			text += f" - {part[1:]}"
		else:
			text += f" + {part}"
	return text


def render(p: PolyLike) -> str:
	"""
	Render a polynomial grouped by powers of a.

	Groups run from the highest a-exponent down; inside a group terms are
	ordered by z-exponent then s-exponent, both ascending, for example
	``a^-4*(2 + 3*z^2 + z^4) + a^-6*(3*z^2 + z^4)``.
	"""
	p = LaurentPoly.coerce(p)
	if p.is_zero():
		return "0"

	groups: dict[int, list[tuple[int, int, int]]] = {}
	for (ea, ez, es), coef in p.items():
		groups.setdefault(ea, []).append((ez, es, coef))

	parts = []
	for ea in sorted(groups, reverse=True):
		inner = sorted(groups[ea])
		if len(inner) == 1:
			ez, es, coef = inner[0]
			parts.append(_format_monomial(coef, [("a", ea), ("z", ez), ("s", es)]))
			continue
		body = _join_signed([_format_monomial(coef, [("z", ez), ("s", es)]) for ez, es, coef in inner])
		if ea == 0:
			parts.append(body)
		else:
			parts.append(f"{_format_monomial(1, [('a', ea)])}*({body})")
	return _join_signed(parts)


# Parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z]\w*)|(\^)|(\*)|(\+)|(-)|(\()|(\)))")


def _tokenize(text: str) -> list[str]:
	tokens = []
	pos = 0
	text = text.rstrip()
	while pos < len(text):
		match = _TOKEN.match(text, pos)
		if not match or match.end() == pos:
			raise ValidationError(f"Unexpected character {text[pos:pos + 1]!r} at offset {pos} in {text!r}")
		tokens.append(next(group for group in match.groups() if group is not None))
		pos = match.end()
	return tokens


class _Parser:

	def __init__(self, text: str):
		self.text = text
		self.tokens = _tokenize(text)
		self.pos = 0

	def peek(self) -> str | None:
		return self.tokens[self.pos] if self.pos < len(self.tokens) else None

	def take(self, expected: str | None = None) -> str:
		token = self.peek()
		if token is None or (expected is not None and token != expected):
			raise ValidationError(f"Expected {expected or 'a token'} at token {self.pos} in {self.text!r}")
		self.pos += 1
		return token

	def expr(self) -> LaurentPoly:
		sign = 1
		if self.peek() in ("+", "-"):
			sign = -1 if self.take() == "-" else 1
		total = self.term() * sign
		while self.peek() in ("+", "-"):
			sign = -1 if self.take() == "-" else 1
			total = total + self.term() * sign
		return total

	def term(self) -> LaurentPoly:
		value = self.factor()
		while self.peek() == "*":
			self.take("*")
			value = value * self.factor()
		return value

	def factor(self) -> LaurentPoly:
		base = self.atom()
		if self.peek() == "^":
			self.take("^")
			sign = 1
			if self.peek() == "-":
				self.take("-")
				sign = -1
			digits = self.take()
			if not digits.isdigit():
				raise ValidationError(f"Exponent must be an integer in {self.text!r}")
			base = base ** (sign * int(digits))
		return base

	def atom(self) -> LaurentPoly:
		token = self.take()
		if token.isdigit():
			return LaurentPoly.constant(int(token))
		if token == "(":
			inner = self.expr()
			self.take(")")
			return inner
		if token in VARIABLES:
			return LaurentPoly.var(token)
		raise ValidationError(f"Unexpected token {token!r} in {self.text!r}")


def parse_poly(text: str) -> LaurentPoly:
	"""
	Parse the rendered form back into a polynomial.

	Accepts any sum of products of integers, the variables a, z, s and
	parenthesised subexpressions, with integer powers.

	Raises:
		ValidationError: If the text is not a polynomial expression
	"""
	if not isinstance(text, str) or not text.strip():
		raise ValidationError("Polynomial text cannot be empty")
	parser = _Parser(text)
	value = parser.expr()
	if parser.peek() is not None:
		raise ValidationError(f"Trailing input at token {parser.pos} in {text!r}")
	return value


# Truncated power series in t

@dataclass(frozen=True)
class TruncSeries:
	"""Power series in t with LaurentPoly coefficients, exact modulo t^(order+1)."""

	order: int
	coeffs: tuple[LaurentPoly, ...]

	def __post_init__(self):
		if self.order < 0:
			raise ValidationError(f"Series order must be non-negative, got {self.order}")
		coeffs = tuple(LaurentPoly.coerce(c) for c in self.coeffs)
		if len(coeffs) > self.order + 1:
			coeffs = coeffs[:self.order + 1]
		coeffs = coeffs + (ZERO,) * (self.order + 1 - len(coeffs))
		object.__setattr__(self, "coeffs", coeffs)

	@classmethod
	def from_coeffs(cls, coeffs: Iterable[PolyLike], order: int) -> "TruncSeries":
		return cls(order, tuple(coeffs))

	def coeff(self, k: int) -> LaurentPoly:
		return self.coeffs[k] if 0 <= k <= self.order else ZERO

	def _check(self, other: "TruncSeries") -> None:
		if other.order != self.order:
			raise ValidationError(f"Series orders differ: {self.order} and {other.order}")

	def __add__(self, other: "TruncSeries") -> "TruncSeries":
		self._check(other)
		return TruncSeries(self.order, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

	def __neg__(self) -> "TruncSeries":
		return TruncSeries(self.order, tuple(-x for x in self.coeffs))

	def __sub__(self, other: "TruncSeries") -> "TruncSeries":
		return self + (-other)

	def __mul__(self, other: "TruncSeries") -> "TruncSeries":
		self._check(other)
		out = []
		for k in range(self.order + 1):
			total = ZERO
			for j in range(k + 1):
				if self.coeffs[j] and other.coeffs[k - j]:
					total = total + self.coeffs[j] * other.coeffs[k - j]
			out.append(total)
		return TruncSeries(self.order, tuple(out))

	def __str__(self) -> str:
		parts = []
		for k, c in enumerate(self.coeffs):
			if c:
				parts.append(f"({render(c)})*t^{k}" if k else f"({render(c)})")
		return " + ".join(parts) or "0"


def series_inverse(f: TruncSeries) -> TruncSeries:
	"""
	Multiplicative inverse of a series with constant coefficient 1.

	Args:
		f: Series to invert

	Returns:
		TruncSeries: g with f*g = 1 modulo t^(order+1)

	Raises:
		NotInvertible: If the constant coefficient of f is not 1
		DataError: If the recursion fails unexpectedly
	"""
	if f.coeffs[0] != ONE:
		log_error(
			message=f"Failed to invert series with constant coefficient {render(f.coeffs[0])}",
			title="Polyring Series Error"
		)
		raise NotInvertible(f"Constant coefficient must be 1, got {render(f.coeffs[0])}")

	try:
		g = [ONE]
		for k in range(1, f.order + 1):
			total = ZERO
			for j in range(1, k + 1):
				if f.coeffs[j]:
					total = total + f.coeffs[j] * g[k - j]
			g.append(-total)
		return TruncSeries(f.order, tuple(g))
	except Exception as e:
		log_error(
			message=f"Failed to invert series {f}: {str(e)}",
			title="Polyring Series Error"
		)
		raise DataError(f"Failed to invert series: {str(e)}")
