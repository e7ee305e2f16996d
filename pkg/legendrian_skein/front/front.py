# Copyright (c) 2025, Picurit and contributors
# For license information, please see license.txt

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from legendrian_skein.exceptions import (
	ValidationError, FrontSyntaxError, StrandMismatch, PatternMismatch, ParityError,
)
from legendrian_skein.utils import get_logger

logger = get_logger(__name__)

SIGMA = "s"
LEFT = "l"
RIGHT = "r"

RIGHTWARD = 0
LEFTWARD = 1

MOVES = ("cyclic_rotate", "far_commute", "braid", "lr1", "lr2", "lr3")


class Letter(NamedTuple):
	"""Elementary tangle: crossing s<m>, left cusp l<m> or right cusp r<m>."""

	kind: str
	index: int

	def __str__(self) -> str:
		return f"{self.kind}{self.index}"


def sigma(m: int) -> Letter:
	return Letter(SIGMA, m)


def left_cusp(m: int) -> Letter:
	return Letter(LEFT, m)


def right_cusp(m: int) -> Letter:
	return Letter(RIGHT, m)


_LETTER = re.compile(r"^([slr])(\d+)$")


def parse_letter(token: str) -> Letter:
	match = _LETTER.match(token)
	if not match or int(match.group(2)) < 1:
		raise ValidationError(f"Not a front letter: {token!r}")
	return Letter(match.group(1), int(match.group(2)))


def _count_after(letter: Letter, count: int) -> int:
	if letter.kind == LEFT:
		return count + 2
	if letter.kind == RIGHT:
		return count - 2
	return count


def _check_letter(letter: Letter, count: int, position: int) -> None:
	m = letter.index
	if letter.kind == SIGMA:
		ok = 1 <= m <= count - 1
		need = f"1 <= m <= {count - 1}"
	elif letter.kind == LEFT:
		ok = 1 <= m <= count + 1
		need = f"1 <= m <= {count + 1}"
	elif letter.kind == RIGHT:
		ok = count >= 2 and 1 <= m <= count - 1
		need = f"{count} >= 2 strands and 1 <= m <= {count - 1}"
	else:
		raise StrandMismatch(f"unknown letter kind {letter.kind!r}", position)
	if not ok:
		raise StrandMismatch(f"{letter} does not fit {count} strands ({need})", position)


@dataclass(frozen=True)
class FrontWord:
	"""
	Cyclic word of elementary tangles with an explicit seam.

	Slice k is the vertical line just before letter k; slice 0 is the seam
	and carries base_strands strands. Positions run 1..N from the top.
	"""

	letters: tuple[Letter, ...]
	base_strands: int

	def __post_init__(self):
		letters = tuple(l if isinstance(l, Letter) else Letter(*l) for l in self.letters)
		object.__setattr__(self, "letters", letters)
		if self.base_strands < 0:
			raise StrandMismatch(f"negative strand count {self.base_strands}", 0)
		count = self.base_strands
		for position, letter in enumerate(letters):
			_check_letter(letter, count, position)
			count = _count_after(letter, count)
		if count != self.base_strands:
			raise StrandMismatch(
				f"word ends with {count} strands but the seam has {self.base_strands}", len(letters)
			)

	@classmethod
	def of(cls, text: str, base_strands: int = 0) -> "FrontWord":
		return cls(tuple(parse_letter(t) for t in text.split()), base_strands)

	def __len__(self) -> int:
		return len(self.letters)

	def __str__(self) -> str:
		return " ".join(str(letter) for letter in self.letters)

	@cached_property
	def counts(self) -> tuple[int, ...]:
		"""Strand count at each slice, plus the closing count at the end."""
		out = [self.base_strands]
		for letter in self.letters:
			out.append(_count_after(letter, out[-1]))
		return tuple(out)

	@property
	def slice_count(self) -> int:
		return max(len(self.letters), 1)

	def strands(self, k: int) -> int:
		return self.counts[k % self.slice_count] if self.letters else self.base_strands

	def has_cusps(self) -> bool:
		return any(letter.kind != SIGMA for letter in self.letters)

	@cached_property
	def traces(self) -> tuple[tuple[tuple[int, int, int], ...], ...]:
		"""Component traversals as (slice, position, direction of travel)."""
		return _trace_components(self)


Segment = tuple[int, int]


def _step(word: FrontWord, k: int, p: int, heading: int) -> tuple[int, int, int]:
	n = len(word.letters)
	if heading == RIGHTWARD:
		letter = word.letters[k]
		m = letter.index
		nxt = (k + 1) % n
		if letter.kind == SIGMA:
			return nxt, (m + 1 if p == m else m if p == m + 1 else p), RIGHTWARD
		if letter.kind == LEFT:
			return nxt, (p + 2 if p >= m else p), RIGHTWARD
		if p in (m, m + 1):
			return k, 2 * m + 1 - p, LEFTWARD
		return nxt, (p - 2 if p > m + 1 else p), RIGHTWARD

	prev = (k - 1) % n
	letter = word.letters[prev]
	m = letter.index
	if letter.kind == SIGMA:
		return prev, (m + 1 if p == m else m if p == m + 1 else p), LEFTWARD
	if letter.kind == LEFT:
		if p in (m, m + 1):
			return k, 2 * m + 1 - p, RIGHTWARD
		return prev, (p - 2 if p > m + 1 else p), LEFTWARD
	return prev, (p + 2 if p >= m else p), LEFTWARD


def _trace_components(word: FrontWord) -> tuple:
	if not word.letters:
		return tuple(((0, p, RIGHTWARD),) for p in range(1, word.base_strands + 1))

	seen: set[Segment] = set()
	traces = []
	for k in range(len(word.letters)):
		for p in range(1, word.counts[k] + 1):
			if (k, p) in seen:
				continue
			trace = []
			state = (k, p, RIGHTWARD)
			while True:
				trace.append(state)
				seen.add(state[:2])
				state = _step(word, *state)
				if state == (k, p, RIGHTWARD):
					break
			traces.append(tuple(trace))
	return tuple(traces)


def components(word: FrontWord) -> list[tuple[Segment, ...]]:
	"""
	Partition the strand segments into closed traversals.

	Segment (k, p) is the piece of strand at position p on slice k. Each
	component starts at its smallest segment and is listed in traversal
	order, heading rightward from there.
	"""
	return [tuple((k, p) for k, p, _ in trace) for trace in word.traces]


# Orientation

def _push_forward(letter: Letter, dirs: list) -> list:
	out = list(dirs)
	m = letter.index
	if letter.kind == SIGMA:
		out[m - 1], out[m] = out[m], out[m - 1]
	elif letter.kind == LEFT:
		out[m - 1:m - 1] = [None, None]
	else:
		del out[m - 1:m + 1]
	return out


def _push_backward(letter: Letter, dirs: list) -> list:
	out = list(dirs)
	m = letter.index
	if letter.kind == SIGMA:
		out[m - 1], out[m] = out[m], out[m - 1]
	elif letter.kind == LEFT:
		del out[m - 1:m + 1]
	else:
		out[m - 1:m - 1] = [None, None]
	return out


def _check_slice_dirs(word: FrontWord, slice_dirs: tuple) -> None:
	if len(slice_dirs) != word.slice_count:
		raise ValidationError(f"Expected {word.slice_count} slices of directions, got {len(slice_dirs)}")
	for k in range(word.slice_count):
		dirs = slice_dirs[k]
		if len(dirs) != word.strands(k) or any(d not in (RIGHTWARD, LEFTWARD) for d in dirs):
			raise ValidationError(f"Slice {k} needs {word.strands(k)} directions in {{0, 1}}, got {dirs!r}")
	for k, letter in enumerate(word.letters):
		before = slice_dirs[k]
		after = slice_dirs[(k + 1) % len(word.letters)]
		m = letter.index
		if letter.kind == RIGHT and before[m - 1] == before[m]:
			raise ValidationError(f"Right cusp {letter} at letter {k} joins strands of the same direction")
		if letter.kind == LEFT and after[m - 1] == after[m]:
			raise ValidationError(f"Left cusp {letter} at letter {k} joins strands of the same direction")
		expected = _push_forward(letter, before)
		if letter.kind == LEFT:
			expected[m - 1], expected[m] = after[m - 1], after[m]
		if tuple(expected) != tuple(after):
			raise ValidationError(f"Directions do not follow the strands through letter {k} ({letter})")


@dataclass(frozen=True)
class OrientedFront:
	"""
	Front word with a direction (0 rightward, 1 leftward) on every segment.

	slice_dirs[k][p-1] is the direction of the strand at position p on
	slice k. Directions are carried through crossings and flip at cusps.
	"""

	word: FrontWord
	slice_dirs: tuple[tuple[int, ...], ...]

	def __post_init__(self):
		dirs = tuple(tuple(int(d) for d in s) for s in self.slice_dirs)
		object.__setattr__(self, "slice_dirs", dirs)
		_check_slice_dirs(self.word, dirs)

	@classmethod
	def from_orientation(cls, word: FrontWord, orientation: Union[Mapping[int, int], Sequence[int], None] = None) -> "OrientedFront":
		"""
		Orient each component by the direction of its base segment.

		Args:
			word: The front word
			orientation: Direction per component index (0 rightward, 1 leftward); missing entries are 0

		Returns:
			OrientedFront: The oriented diagram

		Raises:
			ValidationError: If a component index or a direction is out of range
		"""
		traces = word.traces
		if orientation is None:
			orientation = {}
		elif not isinstance(orientation, Mapping):
			orientation = dict(enumerate(orientation))
		for index, direction in orientation.items():
			if not 0 <= index < len(traces):
				raise ValidationError(f"No component {index}; the word has {len(traces)}")
			if direction not in (RIGHTWARD, LEFTWARD):
				raise ValidationError(f"Direction must be 0 or 1, got {direction!r}")

		table = [[None] * word.strands(k) for k in range(word.slice_count)]
		for index, trace in enumerate(traces):
			flip = orientation.get(index, RIGHTWARD)
			for k, p, heading in trace:
				table[k][p - 1] = heading ^ flip
		return cls(word, tuple(tuple(s) for s in table))

	@property
	def letters(self) -> tuple[Letter, ...]:
		return self.word.letters

	@property
	def base_strands(self) -> int:
		return self.word.base_strands

	def direction(self, k: int, p: int) -> int:
		return self.slice_dirs[k % self.word.slice_count][p - 1]

	def slice_after(self, k: int) -> tuple[int, ...]:
		"""Directions on the slice just after letter k."""
		return self.slice_dirs[(k + 1) % self.word.slice_count]

	@cached_property
	def orientation(self) -> tuple[int, ...]:
		"""Direction of each component's base segment."""
		return tuple(self.direction(trace[0][0], trace[0][1]) for trace in self.word.traces)

	@cached_property
	def component_index(self) -> dict[Segment, int]:
		return {(k, p): i for i, trace in enumerate(self.word.traces) for k, p, _ in trace}

	def crossing_sign(self, k: int) -> int:
		"""+1 when both strands of crossing k point the same way, else -1."""
		letter = self.letters[k]
		if letter.kind != SIGMA:
			raise ValidationError(f"Letter {k} ({letter}) is not a crossing")
		dirs = self.slice_dirs[k]
		return 1 if dirs[letter.index - 1] == dirs[letter.index] else -1

	def cusp_is_down(self, k: int) -> bool:
		"""True when the orientation runs downward through cusp k."""
		letter = self.letters[k]
		if letter.kind == LEFT:
			return self.slice_after(k)[letter.index - 1] == LEFTWARD
		if letter.kind == RIGHT:
			return self.slice_dirs[k][letter.index - 1] == RIGHTWARD
		raise ValidationError(f"Letter {k} ({letter}) is not a cusp")

	def cusp_component(self, k: int) -> int:
		letter = self.letters[k]
		if letter.kind == LEFT:
			return self.component_index[((k + 1) % len(self.letters), letter.index)]
		return self.component_index[(k, letter.index)]

	def __str__(self) -> str:
		return render_front(self)


def orient(word: FrontWord, orientation=None) -> OrientedFront:
	return OrientedFront.from_orientation(word, orientation)


def _as_oriented(front: Union[FrontWord, OrientedFront]) -> OrientedFront:
	return front if isinstance(front, OrientedFront) else OrientedFront.from_orientation(front)


# Classical invariants

@dataclass(frozen=True)
class ComponentInvariants:
	index: int
	rotation: int
	up_cusps: int
	down_cusps: int


@dataclass(frozen=True)
class ClassicalInvariants:
	writhe: int
	tb: int
	rotation: int
	left_cusps: int
	right_cusps: int
	up_cusps: int
	down_cusps: int
	components: tuple[ComponentInvariants, ...] = field(default_factory=tuple)

	@property
	def cusps(self) -> int:
		return self.left_cusps + self.right_cusps


def classical_invariants(front: OrientedFront) -> ClassicalInvariants:
	"""
	Writhe, Thurston-Bennequin number and rotation numbers.

	tb = writhe - cusps/2 and r = (down cusps - up cusps)/2. Cusps come in
	left/right pairs on every component, so both are integers.
	"""
	writhe = 0
	left = right = 0
	per_component = [[0, 0] for _ in front.word.traces]
	for k, letter in enumerate(front.letters):
		if letter.kind == SIGMA:
			writhe += front.crossing_sign(k)
			continue
		if letter.kind == LEFT:
			left += 1
		else:
			right += 1
		per_component[front.cusp_component(k)][1 if front.cusp_is_down(k) else 0] += 1

	up = sum(c[0] for c in per_component)
	down = sum(c[1] for c in per_component)
	comps = tuple(
		ComponentInvariants(index=i, rotation=(d - u) // 2, up_cusps=u, down_cusps=d)
		for i, (u, d) in enumerate(per_component)
	)
	return ClassicalInvariants(
		writhe=writhe,
		tb=writhe - (left + right) // 2,
		rotation=(down - up) // 2,
		left_cusps=left,
		right_cusps=right,
		up_cusps=up,
		down_cusps=down,
		components=comps,
	)


def word_area(word: Union[FrontWord, OrientedFront]) -> int:
	"""Sum of the strand counts after each letter."""
	if isinstance(word, OrientedFront):
		word = word.word
	return sum(word.counts[1:])


# Maslov potentials

@dataclass(frozen=True)
class MaslovAssignment:
	"""
	Integer potential on every segment.

	values[k][p-1] is the potential of the segment at position p on slice k;
	moduli[i] = 2|r| of component i, with 0 meaning integer valued.
	"""

	values: tuple[tuple[int, ...], ...]
	moduli: tuple[int, ...]

	def slice_potentials(self, k: int) -> tuple[int, ...]:
		return self.values[k % len(self.values)]

	def shifted(self, front: OrientedFront, shifts: Mapping[int, int]) -> "MaslovAssignment":
		"""Add a constant per component."""
		index = front.component_index
		values = tuple(
			tuple(v + shifts.get(index[(k, p)], 0) for p, v in enumerate(row, start=1))
			for k, row in enumerate(self.values)
		)
		return MaslovAssignment(values, self.moduli)


def maslov(front: OrientedFront, base_values: Mapping[int, int] | None = None, check_parity: bool = True) -> MaslovAssignment:
	"""
	Propagate a Maslov potential from one value per component.

	The value rises by 1 from the lower to the upper half of every cusp and
	is unchanged through crossings.

	A component's base segment is its smallest (slice, position) segment,
	its top segment on the earliest slice it crosses.
	Without base_values the base segment gets its direction (0 or 1). For
	l1 r1 that puts 0 on the upper arc and -1 on the lower one; passing 1
	with check_parity=False gives lower 0, upper 1.

	Args:
		front: Oriented diagram
		base_values: Potential of each component's base segment; defaults to its direction
		check_parity: Require each base value to agree with the base direction mod 2

	Returns:
		MaslovAssignment: Values on every segment and per-component moduli

	Raises:
		ParityError: If check_parity is set and a base value has the wrong parity
		ValidationError: If base_values names a missing component
	"""
	traces = front.word.traces
	base_values = dict(base_values or {})
	for index in base_values:
		if not 0 <= index < len(traces):
			raise ValidationError(f"No component {index}; the diagram has {len(traces)}")

	word = front.word
	table = [[0] * word.strands(k) for k in range(word.slice_count)]
	for index, trace in enumerate(traces):
		k0, p0, _ = trace[0]
		direction = front.direction(k0, p0)
		value = base_values.get(index, direction)
		if check_parity and (value - direction) % 2:
			raise ParityError(
				f"Base value {value} of component c{index + 1} must have the parity of its direction {direction}"
			)
		previous = None
		for k, p, heading in trace:
			if previous is not None:
				value += _cusp_jump(word, previous, (k, p, heading))
			table[k][p - 1] = value
			previous = (k, p, heading)

	invariants = classical_invariants(front)
	moduli = tuple(2 * abs(c.rotation) for c in invariants.components)
	return MaslovAssignment(tuple(tuple(row) for row in table), moduli)


def _cusp_jump(word: FrontWord, previous: tuple[int, int, int], current: tuple[int, int, int]) -> int:
	# Heading flips only at a cusp, on one slice; lower half to upper half adds 1.
	if previous[2] == current[2]:
		return 0
	return 1 if current[1] < previous[1] else -1


# Building fronts

def _shift(letter: Letter, offset: int) -> Letter:
	return Letter(letter.kind, letter.index + offset)


def _slices(front: OrientedFront) -> list[tuple[int, ...]]:
	return list(front.slice_dirs)


def stack(upper: OrientedFront, lower: OrientedFront) -> OrientedFront:
	"""
	Place lower entirely below upper.

	The letters of upper come first; the letters of lower follow with their
	indices shifted by upper's seam count.
	"""
	upper, lower = _as_oriented(upper), _as_oriented(lower)
	offset = upper.base_strands
	upper_seam = upper.slice_dirs[0]
	lower_seam = lower.slice_dirs[0]
	letters = upper.letters + tuple(_shift(letter, offset) for letter in lower.letters)
	slices = [s + lower_seam for s in _slices(upper)[:len(upper.letters)]]
	slices += [upper_seam + s for s in _slices(lower)[:len(lower.letters)]]
	if not letters:
		slices = [upper_seam + lower_seam]
	return OrientedFront(FrontWord(letters, offset + lower.base_strands), tuple(slices))


def reverse_orientation(front: OrientedFront) -> OrientedFront:
	front = _as_oriented(front)
	return OrientedFront(front.word, tuple(tuple(1 - d for d in s) for s in front.slice_dirs))


def mirror(front: OrientedFront) -> OrientedFront:
	"""Reflect top to bottom; crossings keep their signs and cusps swap up/down."""
	front = _as_oriented(front)
	counts = front.word.counts
	letters = []
	for k, letter in enumerate(front.letters):
		size = counts[k] if letter.kind == SIGMA else max(counts[k], counts[k + 1])
		letters.append(Letter(letter.kind, size - letter.index))
	slices = tuple(tuple(reversed(s)) for s in front.slice_dirs)
	return OrientedFront(FrontWord(tuple(letters), front.base_strands), slices)


def basic_front(m: int) -> OrientedFront:
	"""
	Closure of the positive braid s1 s2 ... s(|m|-1) on |m| parallel strands.

	Positive m points every strand rightward, negative m leftward.
	"""
	if m == 0:
		raise ValidationError("basic_front needs a nonzero strand count")
	size = abs(m)
	word = FrontWord(tuple(sigma(i) for i in range(1, size)), size)
	direction = RIGHTWARD if m > 0 else LEFTWARD
	return OrientedFront(word, tuple((direction,) * size for _ in range(word.slice_count)))


def empty_front() -> OrientedFront:
	return OrientedFront(FrontWord((), 0), ((),))


def product_of_basic(positive: Iterable[int], negative: Iterable[int] = ()) -> OrientedFront:
	"""Stack A_{l1}, A_{l2}, ... then A_{-m1}, A_{-m2}, ... from top to bottom."""
	front = empty_front()
	for part in positive:
		front = stack(front, basic_front(part))
	for part in negative:
		front = stack(front, basic_front(-part))
	return front


# Window rewriting

def _solve_window(letters: Sequence[Letter], left: tuple[int, ...], right: tuple[int, ...]) -> list[tuple[int, ...]]:
	"""
	Directions on every slice of a replaced window.

	Known values are pushed in from both boundaries and then through cusp
	pairs; whatever stays free belongs to a closed component born inside
	the window and is oriented rightward.
	"""
	forward = [list(left)]
	for letter in letters:
		forward.append(_push_forward(letter, forward[-1]))
	backward = [list(right)]
	for letter in reversed(letters):
		backward.append(_push_backward(letter, backward[-1]))
	backward.reverse()

	slices = []
	for f, b in zip(forward, backward):
		if len(f) != len(b):
			raise StrandMismatch("window does not match its boundary", 0)
		row = []
		for x, y in zip(f, b):
			if x is not None and y is not None and x != y:
				raise ValidationError("Directions disagree across the rewritten window")
			row.append(x if x is not None else y)
		slices.append(row)

	while True:
		changed = True
		while changed:
			changed = False
			for i, letter in enumerate(letters):
				changed |= _propagate(letter, slices[i], slices[i + 1])
		free = [(i, j) for i, row in enumerate(slices) for j, d in enumerate(row) if d is None]
		if not free:
			break
		i, j = free[0]
		slices[i][j] = RIGHTWARD
	return [tuple(row) for row in slices]


def _propagate(letter: Letter, before: list, after: list) -> bool:
	m = letter.index
	pairs = []
	if letter.kind == SIGMA:
		pairs = [(p, m + 1 if p == m else m if p == m + 1 else p) for p in range(1, len(before) + 1)]
	elif letter.kind == LEFT:
		pairs = [(p, p if p < m else p + 2) for p in range(1, len(before) + 1)]
	else:
		pairs = [(p if p < m else p + 2, p) for p in range(1, len(after) + 1)]

	changed = False
	for p, q in pairs:
		x, y = before[p - 1], after[q - 1]
		if x is None and y is not None:
			before[p - 1] = y
			changed = True
		elif y is None and x is not None:
			after[q - 1] = x
			changed = True

	cusp_side = after if letter.kind == LEFT else before if letter.kind == RIGHT else None
	if cusp_side is not None:
		x, y = cusp_side[m - 1], cusp_side[m]
		if x is None and y is not None:
			cusp_side[m - 1] = 1 - y
			changed = True
		elif y is None and x is not None:
			cusp_side[m] = 1 - x
			changed = True
	return changed


def replace_window(front: OrientedFront, start: int, stop: int, new_letters: Sequence[Letter]) -> OrientedFront:
	"""
	Replace letters[start:stop] and re-derive directions inside the window.

	Args:
		front: Oriented diagram
		start: First replaced letter
		stop: One past the last replaced letter; start == stop inserts
		new_letters: Replacement tangle with the same boundary strand counts

	Returns:
		OrientedFront: The rewritten diagram

	Raises:
		StrandMismatch: If the replacement does not fit the window boundary
	"""
	front = _as_oriented(front)
	n = len(front.letters)
	if not 0 <= start <= stop <= n:
		raise PatternMismatch(f"window [{start}, {stop}) is outside a word of {n} letters")
	left = front.slice_dirs[start % front.word.slice_count]
	right = front.slice_dirs[stop % front.word.slice_count] if n else left
	window = _solve_window(tuple(new_letters), left, right)

	letters = front.letters[:start] + tuple(new_letters) + front.letters[stop:]
	slices = list(front.slice_dirs[:start]) + window[:-1] + list(front.slice_dirs[stop:n])
	if not letters:
		slices = [window[0]]
	word = FrontWord(letters, front.base_strands)
	return OrientedFront(word, tuple(slices))


def commute_pair(first: Letter, second: Letter) -> tuple[Letter, Letter] | None:
	"""
	Swap two adjacent letters whose supports are disjoint.

	Returns the pair in the new order with indices adjusted, or None when the
	letters interact.
	"""
	a, b = first.index, second.index
	kinds = first.kind + second.kind
	if kinds == "ss":
		return (second, first) if abs(a - b) >= 2 else None
	if kinds == "sl":
		if b <= a:
			return second, sigma(a + 2)
		return (second, first) if b >= a + 2 else None
	if kinds == "sr":
		if a <= b - 2:
			return second, first
		return (second, sigma(a - 2)) if a >= b + 2 else None
	if kinds == "ls":
		if b <= a - 2:
			return second, first
		return (sigma(b - 2), first) if b >= a + 2 else None
	if kinds == "rs":
		if b <= a - 2:
			return second, first
		return (sigma(b + 2), first) if b >= a else None
	if kinds == "ll":
		if b <= a:
			return second, left_cusp(a + 2)
		return (left_cusp(b - 2), first) if b >= a + 2 else None
	if kinds == "rr":
		if b >= a:
			return right_cusp(b + 2), first
		return (second, right_cusp(a - 2)) if b <= a - 2 else None
	if kinds == "lr":
		if b <= a - 2:
			return second, left_cusp(a - 2)
		return (right_cusp(b - 2), first) if b >= a + 2 else None
	if b <= a:
		return second, right_cusp(a + 2)
	return left_cusp(b + 2), first


# Reduction patterns: three letters that collapse to one cusp.
def _lr2_target(window: Sequence[Letter]) -> Letter | None:
	x, y, w = window
	if x.kind == LEFT and y.kind == SIGMA and w.kind == SIGMA:
		m = x.index
		if (y.index, w.index) == (m + 1, m):
			return left_cusp(m + 1)
		if m >= 2 and (y.index, w.index) == (m - 1, m):
			return left_cusp(m - 1)
	if x.kind == SIGMA and y.kind == SIGMA and w.kind == RIGHT:
		m = w.index
		if (x.index, y.index) == (m, m + 1):
			return right_cusp(m + 1)
		if m >= 2 and (x.index, y.index) == (m, m - 1):
			return right_cusp(m - 1)
	return None


def _is_fish(window: Sequence[Letter]) -> bool:
	x, y, w = window
	if x.kind != LEFT or y.kind != SIGMA or w.kind != RIGHT or x.index != w.index:
		return False
	return y.index in (x.index + 1, x.index - 1)


def apply_move(
	front: Union[FrontWord, OrientedFront],
	move: str,
	position: int = 0,
	variant: str | None = None,
	strand: int | None = None,
) -> Union[FrontWord, OrientedFront]:
	"""
	Apply one Legendrian isotopy move.

	Moves:
		cyclic_rotate: Move the first letter to the end
		far_commute: Swap letters position and position+1 when they do not interact
		braid, lr3: s_a s_b s_a -> s_b s_a s_b at position, |a - b| = 1
		lr2: Slide a strand past a cusp. Without a variant the three letters at
			position collapse to one cusp; variant "above" or "below" expands
			the cusp at position with a strand from that side
		lr1: Remove the kink at position; with variant "upper" or "lower"
			insert one on strand `strand` at slice `position`

	Args:
		front: Word or oriented diagram; a word comes back as a word
		move: One of MOVES
		position: Letter or slice index the move acts at
		variant: Direction of an expanding move
		strand: Strand position for lr1 insertion

	Returns:
		Same type as front: The moved diagram

	Raises:
		PatternMismatch: If the letters at position do not have the required shape
		ValidationError: If the move name is unknown
	"""
	if move not in MOVES:
		raise ValidationError(f"Unknown move {move!r}; expected one of {', '.join(MOVES)}")
	oriented = _as_oriented(front)
	result = _apply(oriented, move, position, variant, strand)
	return result.word if isinstance(front, FrontWord) else result


def _window(front: OrientedFront, position: int, size: int, move: str) -> tuple[Letter, ...]:
	if position < 0 or position + size > len(front.letters):
		raise PatternMismatch(f"{move} at {position} needs {size} letters; the word has {len(front.letters)}")
	return front.letters[position:position + size]


def _apply(front: OrientedFront, move: str, position: int, variant: str | None, strand: int | None) -> OrientedFront:
	if move == "cyclic_rotate":
		return rotate_to(front, 1)

	if move == "far_commute":
		pair = commute_pair(*_window(front, position, 2, move))
		if pair is None:
			raise PatternMismatch(f"letters at {position} interact and cannot be swapped")
		return replace_window(front, position, position + 2, pair)

	if move in ("braid", "lr3"):
		x, y, w = _window(front, position, 3, move)
		if not (x.kind == y.kind == w.kind == SIGMA and x == w and abs(x.index - y.index) == 1):
			raise PatternMismatch(f"no s_a s_b s_a pattern at {position}")
		return replace_window(front, position, position + 3, (y, x, y))

	if move == "lr2":
		if variant is None:
			target = _lr2_target(_window(front, position, 3, move))
			if target is None:
				raise PatternMismatch(f"no cusp slide pattern at {position}")
			return replace_window(front, position, position + 3, (target,))
		return replace_window(front, position, position + 1, _lr2_expand(front, position, variant))

	if variant is None:
		window = _window(front, position, 3, move)
		if not _is_fish(window):
			raise PatternMismatch(f"no kink at {position}")
		return replace_window(front, position, position + 3, ())
	return replace_window(front, position, position, _lr1_insert(front, position, variant, strand))


def _lr2_expand(front: OrientedFront, position: int, variant: str) -> tuple[Letter, ...]:
	(letter,) = _window(front, position, 1, "lr2")
	k = letter.index
	narrow = min(front.word.counts[position], front.word.counts[position + 1])
	if letter.kind == SIGMA or variant not in ("above", "below"):
		raise PatternMismatch(f"lr2 expands a cusp above or below, got {letter} with {variant!r}")
	if variant == "above" and k < 2:
		raise PatternMismatch(f"no strand above {letter}")
	if variant == "below" and k > narrow:
		raise PatternMismatch(f"no strand below {letter}")
	if letter.kind == LEFT:
		if variant == "above":
			return left_cusp(k - 1), sigma(k), sigma(k - 1)
		return left_cusp(k + 1), sigma(k), sigma(k + 1)
	if variant == "above":
		return sigma(k - 1), sigma(k), right_cusp(k - 1)
	return sigma(k + 1), sigma(k), right_cusp(k + 1)


def _lr1_insert(front: OrientedFront, position: int, variant: str, strand: int | None) -> tuple[Letter, ...]:
	if not 0 <= position <= len(front.letters):
		raise PatternMismatch(f"slice {position} is outside the word")
	count = front.word.strands(position) if front.letters else front.base_strands
	if strand is None or not 1 <= strand <= count:
		raise PatternMismatch(f"lr1 insertion needs a strand in 1..{count}, got {strand!r}")
	if variant == "upper":
		return left_cusp(strand), sigma(strand + 1), right_cusp(strand)
	if variant == "lower":
		return left_cusp(strand + 1), sigma(strand), right_cusp(strand + 1)
	raise PatternMismatch(f"lr1 inserts an 'upper' or 'lower' kink, got {variant!r}")


def rotate_to(front: OrientedFront, k: int) -> OrientedFront:
	"""Move the seam so that letter k comes first."""
	n = len(front.letters)
	if not n:
		return front
	k %= n
	word = FrontWord(front.letters[k:] + front.letters[:k], front.word.counts[k])
	return OrientedFront(word, front.slice_dirs[k:] + front.slice_dirs[:k])


def rotations(front: OrientedFront) -> list[OrientedFront]:
	return [rotate_to(front, k) for k in range(max(len(front.letters), 1))]


def canonical_key(front: OrientedFront) -> tuple:
	"""Least (letters, directions) over all cyclic rotations."""
	front = _as_oriented(front)
	return min((f.letters, f.slice_dirs) for f in rotations(front))


# Text format

def parse_front(text: str) -> FrontWord:
	return load_front(text).front.word


@dataclass(frozen=True)
class LoadedFront:
	front: OrientedFront
	maslov_base: dict[int, int]


_ASSIGNMENT = re.compile(r"^c(\d+)=(.+)$")


def load_front(text: str) -> LoadedFront:
	"""
	Read a front file.

	An optional "strands N" line sets the seam; letter tokens may span
	lines; "orient c<k>=+|-" and "maslov c<k>=<int>" lines set the base
	segment direction and potential of component k. '#' starts a comment.

	Raises:
		FrontSyntaxError: On an unknown token or a malformed line
		StrandMismatch: If the letters do not fit together
	"""
	base_strands = 0
	seen_strands = False
	tokens: list[Letter] = []
	orient_lines: list[tuple[int, str, int]] = []
	maslov_lines: list[tuple[int, str, int]] = []

	for lineno, raw in enumerate(text.splitlines(), start=1):
		line = raw.split("#", 1)[0].strip()
		if not line:
			continue
		words = line.split()
		head = words[0]
		if head == "strands":
			if seen_strands or tokens or len(words) != 2 or not words[1].isdigit():
				raise FrontSyntaxError(f"bad strands line {raw.strip()!r}", line=lineno)
			base_strands = int(words[1])
			seen_strands = True
		elif head in ("orient", "maslov"):
			target = orient_lines if head == "orient" else maslov_lines
			for item in words[1:]:
				match = _ASSIGNMENT.match(item)
				if not match or int(match.group(1)) < 1:
					raise FrontSyntaxError(f"bad {head} assignment {item!r}", line=lineno)
				target.append((int(match.group(1)) - 1, match.group(2), lineno))
		else:
			for token in words:
				try:
					tokens.append(parse_letter(token))
				except ValidationError:
					raise FrontSyntaxError(f"unknown token {token!r}", line=lineno) from None

	word = FrontWord(tuple(tokens), base_strands)
	count = len(word.traces)
	orientation = {}
	for index, value, lineno in orient_lines:
		if index >= count or value not in ("+", "-"):
			raise FrontSyntaxError(f"bad orientation c{index + 1}={value}", line=lineno)
		orientation[index] = RIGHTWARD if value == "+" else LEFTWARD
	maslov_base = {}
	for index, value, lineno in maslov_lines:
		if index >= count or not re.fullmatch(r"-?\d+", value):
			raise FrontSyntaxError(f"bad potential c{index + 1}={value}", line=lineno)
		maslov_base[index] = int(value)

	logger.debug("loaded front with %d letters and %d components", len(word), count)
	return LoadedFront(OrientedFront.from_orientation(word, orientation), maslov_base)


def render_front(front: Union[FrontWord, OrientedFront], maslov_base: Mapping[int, int] | None = None) -> str:
	"""Inverse of load_front."""
	word = front.word if isinstance(front, OrientedFront) else front
	lines = [f"strands {word.base_strands}"]
	if word.letters:
		lines.append(str(word))
	if isinstance(front, OrientedFront) and word.traces:
		lines.append("orient " + " ".join(
			f"c{i + 1}={'+' if d == RIGHTWARD else '-'}" for i, d in enumerate(front.orientation)
		))
	if maslov_base:
		lines.append("maslov " + " ".join(f"c{i + 1}={v}" for i, v in sorted(maslov_base.items())))
	return "\n".join(lines) + "\n"
