"""
Error model for the disentropy toolkit.

Library code raises these; the command line dispatcher maps each class to
its exit code and preserves the class name in the structured output.
"""
from typing import Any, Dict, Optional, Sequence


class DisentropyError(Exception):
    """Base toolkit exception."""

    exit_code: int = 2

    def __init__(self, message: str, *, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details: Dict[str, Any] = dict(details or {})

    @property
    def name(self) -> str:
        return type(self).__name__


class UsageError(DisentropyError):
    """Invalid command line usage or parameters."""

    exit_code = 1


class IoError(DisentropyError):
    """File could not be read or written."""

    exit_code = 3


class DomainError(DisentropyError):
    """Argument outside the mathematical domain of an operation."""


class InvalidBase(DomainError):
    """Logarithm base λ ≤ 0 or λ = 1."""


class UnsupportedQ(DomainError):
    """No real branch exists for the requested deformation index."""


class InvalidKappa(DomainError):
    """Kaniadakis index with κ² ≥ 1."""


class DegenerateSupport(DomainError):
    """Normalization over a single-point support."""


class EmptySequence(DomainError):
    """Sequence statistics with zero length."""


class OutOfRange(DomainError):
    """Scalar argument outside its admissible interval."""


class NonIntegerR(DomainError):
    """Matrix q-exponential requested with 1/(1-q) not an integer."""


class EigenDomainError(DomainError):
    """One or more eigenvalues fall outside the scalar function's domain."""

    def __init__(self, message: str, eigenvalues: Sequence[float] = ()):
        super().__init__(message, details={"eigenvalues": [float(v) for v in eigenvalues]})
        self.eigenvalues = [float(v) for v in eigenvalues]


class NotInvolutory(DomainError):
    """Gate generator does not square to the identity."""


class ComplexRisk(DomainError):
    """Fractional power of a negative quasi-probability would go complex."""


class TruncationError(DomainError):
    """Fock series cannot reach the requested tail mass."""


class DegenerateImage(DomainError):
    """Image with fewer than two distinct pixel values."""


class EmptyClass(DomainError):
    """Threshold leaves one segmentation class without weight."""


class FormatError(IoError):
    """Malformed or unsupported file content."""

    def __init__(self, message: str, offset: Optional[int] = None):
        super().__init__(message, details={"offset": offset})
        self.offset = offset
