"""Exception hierarchy shared by every snweb module.

Two families matter to callers: ``InputError`` (the diagram, file or argument
was wrong, CLI exit code 1) and ``InconsistencyError`` (two computations that
must agree did not, CLI exit code 2). Everything else is a refinement that
carries context as keyword attributes so log lines can show it.
"""

from typing import Any


class SnwebError(RuntimeError):
    """Base class for all snweb failures."""

    exit_code = 2

    def __init__(self, message: str, **context: Any) -> None:
        super().__init__(message)
        self.message = message
        self.context = context

    def __str__(self) -> str:
        if not self.context:
            return self.message
        details = ", ".join(f"{key}={value}" for key, value in self.context.items())
        return f"{self.message} ({details})"


class InputError(SnwebError):
    """Raised when user-supplied input cannot be processed."""

    exit_code = 1


class InconsistencyError(SnwebError):
    """Raised when an internal cross-check fails; always a bug."""

    exit_code = 2


# poly


class DivisionByZero(InputError):
    """Raised when dividing by the zero polynomial."""


class NotDivisible(InconsistencyError):
    """Raised when an exact division leaves a remainder."""

    def __init__(self, message: str, *, dividend: Any = None, divisor: Any = None) -> None:
        super().__init__(message, dividend=str(dividend), divisor=str(divisor))
        self.dividend = dividend
        self.divisor = divisor


class NonIntegralExponent(InputError):
    """Raised when a variable change would produce fractional exponents."""


# combinat


class NegativeArgument(InputError):
    """Raised when a quantum integer or factorial gets a negative argument."""


class OutOfRange(InputError):
    """Raised when an index or parameter lies outside its allowed range."""


# hecke


class MismatchedAlgebra(InputError):
    """Raised when combining Hecke elements of different H_k or different n."""


# diagram


class WebSyntaxError(InputError):
    """Raised when a diagram file is not well-formed."""


class ValidationError(InputError):
    """Raised when a diagram is well-formed but not a valid sliced web."""

    def __init__(self, message: str, *, slice_index: int | None = None, reason: str | None = None) -> None:
        super().__init__(message, slice_index=slice_index, reason=reason)
        self.slice_index = slice_index
        self.reason = reason


class NotALink(InputError):
    """Raised when a link-only operation receives a web with vertices."""


class NoSuchVertex(InputError):
    """Raised when a vertex index does not exist in the diagram."""


# tensor_eval


class InvalidSignature(InputError):
    """Raised when a generator is applied to strands of the wrong orientation."""


class OpenDiagram(InputError):
    """Raised when a scalar evaluation receives a diagram with boundary."""


class SignatureMismatch(InputError):
    """Raised when operator signatures do not line up."""


# statesum / moy


class HasCrossings(InputError):
    """Raised when a planar-only operation receives crossings."""


class FlowViolation(InputError):
    """Raised when labels at a MOY vertex break the flow condition."""

    def __init__(self, message: str, *, slice_index: int | None = None) -> None:
        super().__init__(message, slice_index=slice_index)
        self.slice_index = slice_index


class NoStates(InputError):
    """Raised when a MOY graph admits no n-state."""


# crosscheck


class HasVertices(InputError):
    """Raised when a link-only oracle receives a web with vertices."""


class NonIntegralResult(InconsistencyError):
    """Raised when a value that must be a Laurent polynomial is not."""
