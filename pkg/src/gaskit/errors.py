"""Exception hierarchy shared across the package.

Everything raised on purpose derives from GasKitError so CLI code can map
failures to exit codes in one place.  Out-of-range ids raise the builtin
IndexError and file problems raise OSError; those two are deliberately not
wrapped.
"""


class GasKitError(Exception):
    """Base class for all gaskit errors."""


class ParseError(GasKitError):
    """Malformed edge-list input.  Carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class KernelSyntaxError(GasKitError):
    """Kernel source rejected by the grammar.

    line/col are 1-based; expected holds the token spellings that would
    have been accepted at that point.
    """

    def __init__(self, line: int, col: int, expected: set, found: str):
        exp = ", ".join(sorted(expected))
        super().__init__(f"{line}:{col}: expected {exp}, found {found}")
        self.line = line
        self.col = col
        self.expected = frozenset(expected)
        self.found = found


class KernelValidationError(GasKitError):
    """Well-formed kernel text that violates a semantic rule."""


class DomainError(GasKitError):
    """Value outside the declared scalar domain, or an operation that
    left it (sqrt of a negative, float literal in an int kernel, ...)."""


class DivisionByZero(GasKitError, ZeroDivisionError):
    """Division or remainder with a zero divisor during evaluation."""


class DirectionError(GasKitError):
    """Accessor needs out-edges on a CSC graph or in-edges on a CSR graph."""


class InvalidK(GasKitError):
    """Partition count outside 1..num_vertices."""


class ConfigError(GasKitError):
    """Bad scheduler configuration (value out of range, unknown key)."""


class DomainMismatch(GasKitError):
    """Plan and graph disagree on the scalar value domain."""


class UnknownAlgorithm(GasKitError):
    """Template name not in the algorithm library."""


class MissingParam(GasKitError):
    """Template invoked without a required parameter."""
