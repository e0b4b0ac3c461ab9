"""Exception hierarchy shared by every module of the kernel."""


class ExactKernelError(Exception):
    """Base class for all errors raised by exactkernel."""


class NonInvertible(ExactKernelError, ArithmeticError):
    pass


class NotPrime(ExactKernelError, ValueError):
    pass


class DimMismatch(ExactKernelError, ValueError):
    pass


class LengthMismatch(DimMismatch):
    pass


class OutOfBounds(ExactKernelError, IndexError):
    pass


class NonSquare(DimMismatch):
    pass


class NotCoprime(ExactKernelError, ArithmeticError):
    pass


class EmptyState(ExactKernelError, ValueError):
    pass


class Exhausted(ExactKernelError, RuntimeError):
    """A prime stream ran out of primes, or a CRA run hit its prime budget."""


class MatrixFormatError(ExactKernelError, ValueError):
    """Malformed matrix text; ``lineno`` is 1-based (0 when not line-specific)."""

    def __init__(self, message, lineno=0):
        self.lineno = lineno
        if lineno:
            message = f"line {lineno}: {message}"
        super().__init__(message)
