"""Exception types shared across the package.

Each exception carries a short machine-readable ``code`` so callers (and the
command line) can map failures onto exit statuses without string matching.
"""

from __future__ import annotations


class ExtforgeError(Exception):
    code = "ERROR"


class CompositionNonzero(ExtforgeError):
    code = "COMPOSITION_NONZERO"


class TruncationExceeded(ExtforgeError):
    code = "TRUNCATION_EXCEEDED"


class UnknownAlgebra(ExtforgeError):
    code = "UNKNOWN_ALGEBRA"


class UnknownModule(ExtforgeError):
    code = "UNKNOWN_MODULE"


class InvalidModule(ExtforgeError):
    code = "INVALID_MODULE"


class InvalidSubalgebra(ExtforgeError):
    code = "INVALID_SUBALGEBRA"


class RangeExceeded(ExtforgeError):
    code = "RANGE_EXCEEDED"


class UnknownAction(ExtforgeError):
    code = "UNKNOWN_ACTION"


class DegreeMismatch(ExtforgeError):
    code = "DEGREE_MISMATCH"


class UnknownIdentity(ExtforgeError):
    code = "UNKNOWN_IDENTITY"


class SplitViolation(ExtforgeError):
    code = "SPLIT_VIOLATION"


class ShapeMismatch(ExtforgeError):
    code = "SHAPE_MISMATCH"


class InconsistentSequence(ExtforgeError):
    code = "INCONSISTENT"

    def __init__(self, message: str, node: int | None = None):
        super().__init__(message)
        self.node = node


class OddDegree(ExtforgeError):
    code = "ODD_DEGREE"
