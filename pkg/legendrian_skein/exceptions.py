# Copyright (c) 2025, Picurit and contributors
# For license information, please see license.txt


class LegendrianSkeinError(Exception):
	"""Base class for every error raised by the package."""


class ValidationError(LegendrianSkeinError):
	"""Raised when caller input is malformed or violates a precondition."""


class DataError(LegendrianSkeinError):
	"""Raised when processing valid input fails."""


class FrontSyntaxError(ValidationError):
	"""A diagram file does not follow the front text grammar."""

	def __init__(self, message: str, line: int | None = None):
		if line is not None:
			message = f"line {line}: {message}"
		super().__init__(message)
		self.line = line


class StrandMismatch(ValidationError):
	"""Strand counts fail to chain from letter to letter or to close at the seam."""

	def __init__(self, message: str, position: int):
		super().__init__(f"letter {position}: {message}")
		self.position = position


class PatternMismatch(ValidationError):
	"""A move was requested at a position where its local pattern does not occur."""


class ParityError(ValidationError):
	"""A Maslov base value disagrees with the orientation of its segment mod 2."""


class DivisibilityError(ValidationError):
	"""The grading p does not divide twice the rotation number of some component."""


class OddStrandCount(ValidationError):
	"""A slice has an odd number of strands, so no pairing of it exists."""


class NonUnitSubstitution(DataError):
	"""Substituting z = s - 1/s does not give a Laurent polynomial in s."""


class NotInvertible(DataError):
	"""A truncated series has constant coefficient other than 1."""


class NonTermination(DataError):
	"""The skein rewriter exceeded its step budget."""
