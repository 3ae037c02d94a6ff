"""Frame-tagged rotations, the skew-symmetric operator and frame transforms.

Conventions
-----------
A ``RotationMatrix`` with ``from_frame=BODY`` and ``to_frame=WORLD`` maps
coordinates of a point expressed in the body frame to coordinates of the
same point expressed in the world frame::

    p_world = R @ p_body

Matrices are always presented row-major.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from rotkin.errors import (
    FrameMismatchError,
    ImproperRotationError,
    InvalidInputError,
    NotOrthogonalError,
    NotSkewError,
)

ORTHO_TOL = 1e-9
DET_TOL = 1e-9

_I3 = np.eye(3)


@dataclass(frozen=True)
class Frame:
    """Opaque reference-frame label."""

    name: str

    def __str__(self) -> str:
        return self.name


WORLD = Frame("world")
BODY = Frame("body")


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


def _finite_matrix(M, what="matrix") -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.shape != (3, 3):
        raise InvalidInputError(f"{what} must be 3x3, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidInputError(f"{what} has non-finite entries")
    return M


@dataclass(frozen=True, eq=False)
class Vector3:
    """Three components tagged with the frame they are expressed in.

    ``frame=None`` marks an untagged vector; frame-checked operations reject it.
    """

    components: np.ndarray
    frame: Frame | None = None

    def __post_init__(self):
        c = np.asarray(self.components, dtype=float).reshape(-1)
        if c.shape != (3,):
            raise InvalidInputError(f"expected 3 components, got {c.size}")
        if not np.all(np.isfinite(c)):
            raise InvalidInputError("vector has non-finite components")
        object.__setattr__(self, "components", _frozen(c))

    def __array__(self, dtype=None, copy=None):
        return np.array(self.components, dtype=dtype)

    def __iter__(self):
        return iter(self.components.tolist())

    def __eq__(self, other):
        if not isinstance(other, Vector3):
            return NotImplemented
        return self.frame == other.frame and np.array_equal(self.components, other.components)

    __hash__ = None

    def norm(self) -> float:
        return float(np.linalg.norm(self.components))

    def __repr__(self):
        return f"{type(self).__name__}({self.components.tolist()}, frame={self.frame})"


class AngularVelocity(Vector3):
    """Angular velocity in rad/s; ``expressed_in`` is the vector's frame tag."""

    @property
    def expressed_in(self) -> Frame | None:
        return self.frame


@dataclass(frozen=True, eq=False)
class SkewMatrix:
    """A 3x3 skew-symmetric matrix stored as its three independent entries.

    The materialized matrix satisfies ``S + S.T == 0`` exactly.
    """

    w1: float
    w2: float
    w3: float
    frame: Frame | None = field(default=None, compare=False)

    @property
    def matrix(self) -> np.ndarray:
        w1, w2, w3 = self.w1, self.w2, self.w3
        return np.array(
            [
                [0.0, -w3, w2],
                [w3, 0.0, -w1],
                [-w2, w1, 0.0],
            ]
        )

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __eq__(self, other):
        if not isinstance(other, SkewMatrix):
            return NotImplemented
        return (self.w1, self.w2, self.w3) == (other.w1, other.w2, other.w3)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class RotationMatrix:
    """A validated proper rotation carrying its (from, to) frame pair.

    Build instances through :func:`validate_rotation`; the constructor runs
    the same checks with the default tolerances.
    """

    matrix: np.ndarray
    from_frame: Frame = BODY
    to_frame: Frame = WORLD

    def __post_init__(self):
        M = _check_rotation(self.matrix, self.from_frame, self.to_frame, ORTHO_TOL, DET_TOL)
        object.__setattr__(self, "matrix", _frozen(M))

    def __array__(self, dtype=None, copy=None):
        return np.array(self.matrix, dtype=dtype)

    def __eq__(self, other):
        if not isinstance(other, RotationMatrix):
            return NotImplemented
        return (
            self.from_frame == other.from_frame
            and self.to_frame == other.to_frame
            and np.array_equal(self.matrix, other.matrix)
        )

    __hash__ = None

    @property
    def T(self) -> np.ndarray:
        return self.matrix.T

    def __repr__(self):
        return f"RotationMatrix({self.matrix.tolist()}, {self.from_frame} -> {self.to_frame})"


VectorLike = Union[Vector3, Sequence[float], np.ndarray]


def _components(w: VectorLike) -> np.ndarray:
    if isinstance(w, Vector3):
        return w.components
    c = np.asarray(w, dtype=float).reshape(-1)
    if c.shape != (3,):
        raise InvalidInputError(f"expected 3 components, got {c.size}")
    if not np.all(np.isfinite(c)):
        raise InvalidInputError("vector has non-finite components")
    return c


def _frame_of(w) -> Frame | None:
    return w.frame if isinstance(w, Vector3) else None


def orthogonality_defect(M) -> float:
    """Frobenius norm of ``M.T @ M - I``."""
    M = np.asarray(M, dtype=float)
    return float(np.linalg.norm(M.T @ M - _I3))


def _check_rotation(M, from_frame, to_frame, ortho_tol, det_tol) -> np.ndarray:
    M = _finite_matrix(M, "rotation")
    defect = float(np.linalg.norm(M @ M.T - _I3))
    if defect > ortho_tol:
        raise NotOrthogonalError(defect, ortho_tol)
    det = float(np.linalg.det(M))
    if det <= 0 or abs(det - 1.0) > det_tol:
        raise ImproperRotationError(det)
    if from_frame == to_frame and np.linalg.norm(M - _I3) > ortho_tol:
        raise InvalidInputError(
            f"only the identity may map a frame to itself ({from_frame} -> {to_frame})"
        )
    return M


def validate_rotation(
    M,
    from_frame: Frame = BODY,
    to_frame: Frame = WORLD,
    ortho_tol: float = ORTHO_TOL,
    det_tol: float = DET_TOL,
) -> RotationMatrix:
    """Check ``M`` against the rotation-group constraints and tag it.

    Raises NotOrthogonalError when ``||M M^T - I||_F > ortho_tol`` and
    ImproperRotationError when ``det(M) <= 0`` or ``|det(M) - 1| > det_tol``.
    """
    checked = _check_rotation(M, from_frame, to_frame, ortho_tol, det_tol)
    R = object.__new__(RotationMatrix)
    object.__setattr__(R, "matrix", _frozen(checked))
    object.__setattr__(R, "from_frame", from_frame)
    object.__setattr__(R, "to_frame", to_frame)
    return R


def _trusted_rotation(M: np.ndarray, from_frame: Frame, to_frame: Frame) -> RotationMatrix:
    # Skips validation; callers guarantee M is already on the group.
    R = object.__new__(RotationMatrix)
    object.__setattr__(R, "matrix", _frozen(M))
    object.__setattr__(R, "from_frame", from_frame)
    object.__setattr__(R, "to_frame", to_frame)
    return R


def identity(frame_from: Frame = BODY, frame_to: Frame = WORLD) -> RotationMatrix:
    return _trusted_rotation(_I3, frame_from, frame_to)


def skew(w: VectorLike) -> SkewMatrix:
    """Cross-product matrix of ``w``: ``skew(w).matrix @ x == cross(w, x)``."""
    c = _components(w)
    return SkewMatrix(float(c[0]), float(c[1]), float(c[2]), _frame_of(w))


def unskew(S: SkewMatrix, frame: Frame | None = None) -> Vector3:
    """Inverse of :func:`skew`; reads ``(S32, S13, S21)``."""
    return Vector3((S.w1, S.w2, S.w3), frame if frame is not None else S.frame)


def skewness_defect(S_raw) -> float:
    """Frobenius norm of ``S + S^T``; zero exactly for skew-symmetric input."""
    S_raw = np.asarray(S_raw, dtype=float)
    return float(np.linalg.norm(S_raw + S_raw.T))


def skew_to_nearest(S_raw, tol: float) -> SkewMatrix:
    """Admit a numerically computed matrix as skew-symmetric.

    Returns the skew part ``(S - S^T) / 2`` when the symmetric defect
    ``||S + S^T||_F`` is at most ``tol``; raises NotSkewError otherwise.
    """
    if tol < 0:
        raise InvalidInputError("tol must be non-negative")
    S_raw = _finite_matrix(S_raw)
    defect = skewness_defect(S_raw)
    if defect > tol:
        raise NotSkewError(defect, tol)
    A = 0.5 * (S_raw - S_raw.T)
    return SkewMatrix(float(A[2, 1]), float(A[0, 2]), float(A[1, 0]))


def apply_skew(w: Vector3, x: Vector3) -> Vector3:
    """``w x x`` computed as ``skew(w) @ x``; both operands must share a frame."""
    if w.frame != x.frame:
        raise FrameMismatchError(w.frame, x.frame, "second operand")
    return Vector3(skew(w).matrix @ x.components, w.frame)


def inverse(R: RotationMatrix) -> RotationMatrix:
    return _trusted_rotation(R.matrix.T.copy(), R.to_frame, R.from_frame)


def compose(R_outer: RotationMatrix, R_inner: RotationMatrix) -> RotationMatrix:
    """Chain ``R_outer @ R_inner``; requires ``R_inner.to_frame == R_outer.from_frame``."""
    if R_inner.to_frame != R_outer.from_frame:
        raise FrameMismatchError(R_outer.from_frame, R_inner.to_frame, "inner rotation target")
    return validate_rotation(R_outer.matrix @ R_inner.matrix, R_inner.from_frame, R_outer.to_frame)


def transform_point(R: RotationMatrix, p: Vector3) -> Vector3:
    if p.frame != R.from_frame:
        raise FrameMismatchError(R.from_frame, p.frame, "point")
    return Vector3(R.matrix @ p.components, R.to_frame)


def transform_angular_velocity(R: RotationMatrix, w: AngularVelocity) -> AngularVelocity:
    """Re-express an angular velocity from ``R.from_frame`` in ``R.to_frame``."""
    if w.frame != R.from_frame:
        raise FrameMismatchError(R.from_frame, w.frame, "angular velocity")
    return AngularVelocity(R.matrix @ w.components, R.to_frame)


def conjugate_skew(R: RotationMatrix, w: VectorLike) -> SkewMatrix:
    """``skew(R @ w)``, which equals ``R @ skew(w) @ R.T``."""
    return skew(R.matrix @ _components(w))


def conjugate_skew_explicit(R: RotationMatrix, w: VectorLike) -> np.ndarray:
    """The similarity form ``R @ skew(w) @ R.T`` as a plain matrix."""
    return R.matrix @ skew(w).matrix @ R.matrix.T


def cross(a, b) -> np.ndarray:
    """Componentwise cross product, independent of the skew operator."""
    a1, a2, a3 = (float(v) for v in _components(a))
    b1, b2, b3 = (float(v) for v in _components(b))
    return np.array([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
