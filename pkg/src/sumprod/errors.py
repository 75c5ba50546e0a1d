"""Exception types shared across the package.

The CLI maps these onto exit codes: usage-type errors exit 2, resource
errors exit 3.
"""


class SumprodError(Exception):
    """Base class for all package errors."""


class AmbientMismatchError(SumprodError, ValueError):
    """Operands live in different fields (different FieldSpec or prime)."""


class DomainError(SumprodError, ValueError):
    """An operation was called outside its mathematical domain."""


class ResourceError(SumprodError, RuntimeError):
    """A configured computation budget would be exceeded."""


class ParseError(SumprodError, ValueError):
    """Malformed literal, header, set file or certificate.

    ``category`` is a stable short tag (``syntax``, ``range``, ``overflow``,
    ``header``, ``duplicate``, ``empty``) so callers can branch on it.
    """

    def __init__(self, message, category="syntax", line=None, column=None):
        self.category = category
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")
