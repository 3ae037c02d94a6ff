"""Time derivatives of rotation matrices and recovery of angular velocity.

For ``R`` mapping BODY to WORLD, with ``w_world = R @ w_body``::

    d/dt R     =  skew(w_world) @ R        (world-rate form)
    d/dt R     =  R @ skew(w_body)         (body-rate form)
    d/dt R.T   = -R.T @ skew(w_world)
    d/dt R.T   = -skew(w_body) @ R.T

The world-rate forms assume the two frames share an origin. The body-rate
forms hold even when the body frame translates, which is why gyro
integration uses them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rotkin.core import (
    ORTHO_TOL,
    AngularVelocity,
    Frame,
    RotationMatrix,
    skew,
    skew_to_nearest,
    unskew,
)
from rotkin.errors import FrameMismatchError, InconsistentDerivativeError, NotSkewError

RECOVERY_TOL = ORTHO_TOL


@dataclass(frozen=True, eq=False)
class RotationDerivative:
    """Time derivative of a rotation matrix, in 1/s.

    ``of`` names the (from, to) pair of the differentiated rotation. It is
    advisory; tangency is only judged when a rate is recovered.
    """

    matrix: np.ndarray
    of: tuple[Frame, Frame] | None = None

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def _check_frame(w: AngularVelocity, expected: Frame, what: str):
    if w.frame != expected:
        raise FrameMismatchError(expected, w.frame, what)


def rdot_world_rate(R: RotationMatrix, w_A: AngularVelocity) -> RotationDerivative:
    """``skew(w_A) @ R`` with ``w_A`` expressed in ``R.to_frame``."""
    _check_frame(w_A, R.to_frame, "world rate")
    return RotationDerivative(skew(w_A).matrix @ R.matrix, (R.from_frame, R.to_frame))


def rdot_body_rate(R: RotationMatrix, w_B: AngularVelocity) -> RotationDerivative:
    """``R @ skew(w_B)`` with ``w_B`` expressed in ``R.from_frame``."""
    _check_frame(w_B, R.from_frame, "body rate")
    return RotationDerivative(R.matrix @ skew(w_B).matrix, (R.from_frame, R.to_frame))


def rdot_inverse_world_rate(Rinv: RotationMatrix, w_A: AngularVelocity) -> RotationDerivative:
    """Derivative of the WORLD-to-BODY rotation: ``-Rinv @ skew(w_A)``.

    ``w_A`` must be expressed in ``Rinv.from_frame`` (the world frame).
    """
    _check_frame(w_A, Rinv.from_frame, "world rate")
    return RotationDerivative(-(Rinv.matrix @ skew(w_A).matrix), (Rinv.from_frame, Rinv.to_frame))


def rdot_inverse_body_rate(Rinv: RotationMatrix, w_B: AngularVelocity) -> RotationDerivative:
    """``-skew(w_B) @ Rinv`` with ``w_B`` expressed in ``Rinv.to_frame``."""
    _check_frame(w_B, Rinv.to_frame, "body rate")
    return RotationDerivative(-(skew(w_B).matrix @ Rinv.matrix), (Rinv.from_frame, Rinv.to_frame))


def _recover(S_raw, tol):
    try:
        return skew_to_nearest(S_raw, tol)
    except NotSkewError as exc:
        raise InconsistentDerivativeError(exc.defect, tol) from None


def world_rate_from_rdot(
    R: RotationMatrix, Rdot, tol: float = RECOVERY_TOL
) -> AngularVelocity:
    """Angular velocity in ``R.to_frame`` from ``Rdot @ R.T``.

    Raises InconsistentDerivativeError when ``Rdot @ R.T`` is further than
    ``tol`` from skew-symmetric, i.e. ``Rdot`` is not tangent at ``R``.
    """
    S = _recover(np.asarray(Rdot, dtype=float) @ R.matrix.T, tol)
    return AngularVelocity(unskew(S).components, R.to_frame)


def body_rate_from_rdot(
    R: RotationMatrix, Rdot, tol: float = RECOVERY_TOL
) -> AngularVelocity:
    """Angular velocity in ``R.from_frame`` from ``R.T @ Rdot``."""
    S = _recover(R.matrix.T @ np.asarray(Rdot, dtype=float), tol)
    return AngularVelocity(unskew(S).components, R.from_frame)
