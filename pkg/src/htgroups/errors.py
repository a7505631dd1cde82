"""Exception hierarchy.

Every error carries a stable ``code`` string; the CLI reports it verbatim.
"""


class HTGError(Exception):
    code = "error"


class DomainError(HTGError, ValueError):
    """An argument lies outside the domain of the operation."""

    code = "domain_error"


class ValidationError(DomainError):
    """A table or cone family violates a structural invariant."""

    code = "validation_error"


class PreconditionError(DomainError):
    code = "precondition"


class TypeMismatchError(DomainError):
    """No Thompson-like homeomorphism exists between sets of different type."""

    code = "type_mismatch"


class NotIsomorphicError(DomainError):
    code = "not_isomorphic"


class LayerCapError(HTGError, RuntimeError):
    code = "layer_cap"


class ParseError(HTGError, ValueError):
    code = "parse_error"

    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column
