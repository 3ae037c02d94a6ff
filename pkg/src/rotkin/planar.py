"""Rotation in the plane as the z-axis special case of the 3D kinematics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from rotkin.core import BODY, WORLD, AngularVelocity, RotationMatrix, _trusted_rotation
from rotkin.errors import InvalidInputError, NumericalError
from rotkin.kinematics import rdot_body_rate


def _finite(x: float, name: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise InvalidInputError(f"{name} must be finite")
    return x


@dataclass(frozen=True)
class PlanarRotation:
    alpha: float

    def __post_init__(self):
        _finite(self.alpha, "alpha")

    def matrix(self) -> np.ndarray:
        return rot2(self.alpha)

    def embed(self) -> RotationMatrix:
        return embed_planar(self.alpha)


def rot2(alpha: float) -> np.ndarray:
    a = _finite(alpha, "alpha")
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, -s], [s, c]])


def rot2_dot(alpha: float, alpha_dot: float) -> np.ndarray:
    a = _finite(alpha, "alpha")
    ad = _finite(alpha_dot, "alpha_dot")
    c, s = math.cos(a), math.sin(a)
    return np.array([[-s, -c], [c, -s]]) * ad


def embed_planar(alpha: float) -> RotationMatrix:
    """BODY-to-WORLD rotation by ``alpha`` about the shared z-axis."""
    M = np.eye(3)
    M[:2, :2] = rot2(alpha)
    # cos^2 + sin^2 is within a few ulp of 1, so validation would only repeat that.
    return _trusted_rotation(M, BODY, WORLD)


def planar_consistency_check(alpha: float, alpha_dot: float) -> float:
    """Distance between the planar derivative and the body-rate 3D formula.

    The 3D derivative is built from ``embed_planar(alpha)`` and the body rate
    ``(0, 0, alpha_dot)``; its upper-left block is compared against
    :func:`rot2_dot`. Raises NumericalError if the z row or column of the 3D
    derivative is not exactly zero.
    """
    Rdot = rdot_body_rate(embed_planar(alpha), AngularVelocity((0.0, 0.0, alpha_dot), BODY)).matrix
    if np.any(Rdot[2, :] != 0.0) or np.any(Rdot[:, 2] != 0.0):
        raise NumericalError(f"planar derivative leaks out of the plane: {Rdot.tolist()}")
    return float(np.linalg.norm(Rdot[:2, :2] - rot2_dot(alpha, alpha_dot)))
