"""Exception hierarchy shared by every rotkin module."""

from __future__ import annotations


class RotkinError(Exception):
    """Base class for all library errors."""


class InvalidInputError(RotkinError, ValueError):
    """Non-finite or malformed numeric input."""


class FrameMismatchError(RotkinError, ValueError):
    """A vector or rate is tagged with a frame the operation cannot accept."""

    def __init__(self, expected, got, what="input"):
        self.expected = expected
        self.got = got
        super().__init__(f"{what} is expressed in {got}, expected {expected}")


class NotSkewError(RotkinError, ValueError):
    def __init__(self, defect: float, tol: float):
        self.defect = defect
        self.tol = tol
        super().__init__(f"matrix is not skew-symmetric: defect {defect:.6g} > tol {tol:.3g}")


class NotOrthogonalError(RotkinError, ValueError):
    def __init__(self, defect: float, tol: float):
        self.defect = defect
        self.tol = tol
        super().__init__(f"matrix is not orthogonal: defect {defect:.6g} > tol {tol:.3g}")


class ImproperRotationError(RotkinError, ValueError):
    def __init__(self, det: float):
        self.det = det
        super().__init__(f"matrix is not a proper rotation: det = {det:.17g}")


class InconsistentDerivativeError(RotkinError, ValueError):
    """Rdot is not tangent to the rotation group at R."""

    def __init__(self, defect: float, tol: float):
        self.defect = defect
        self.tol = tol
        super().__init__(
            f"derivative is not tangent at R: skewness defect {defect:.6g} > tol {tol:.3g}"
        )


class DomainError(RotkinError, ValueError):
    """Evaluation point outside a trajectory's domain."""


class NumericalError(RotkinError, ArithmeticError):
    """An iteration failed to converge or a numerical check failed."""


class GyroLogError(RotkinError, ValueError):
    """Base class for gyro log ingestion failures."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GyroFormatError(GyroLogError):
    pass


class GyroParseError(GyroLogError):
    pass


class GyroOrderingError(GyroLogError):
    pass
