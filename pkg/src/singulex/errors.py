"""Exception hierarchy.

Every domain error carries a stable machine-readable ``code`` which the CLI
reports verbatim.
"""

from __future__ import annotations


class SingulexError(Exception):
    code = "DOMAIN_ERROR"


class ParseError(SingulexError):
    code = "SYNTAX_ERROR"

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class UnknownVariable(SingulexError):
    code = "UNKNOWN_VARIABLE"


class ContextMismatch(SingulexError):
    code = "CONTEXT_MISMATCH"


class TermCapExceeded(SingulexError):
    code = "TERM_CAP_EXCEEDED"


class DegreeBelowBase(SingulexError):
    code = "DEGREE_BELOW_BASE"


class ZeroPolynomial(SingulexError):
    code = "ZERO_POLYNOMIAL"


class MissingAssignment(SingulexError):
    code = "MISSING_ASSIGNMENT"


class InvalidParameter(SingulexError):
    code = "INVALID_PARAMETER"


class NonvanishingViolated(SingulexError):
    code = "NONVANISHING_VIOLATED"


class ShapeViolation(SingulexError):
    code = "SHAPE_VIOLATION"
