"""Finite-difference checks of the analytic rotation-derivative formulas.

The harness only evaluates trajectories; it never looks at how they were
produced, so it can audit any integrator or closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from rotkin.core import AngularVelocity, RotationMatrix, skewness_defect
from rotkin.errors import DomainError, InvalidInputError
from rotkin import kinematics
from rotkin.propagation import exp_so3

DEFAULT_H = 1e-5

__all__ = [
    "DEFAULT_H",
    "DerivativeCheckReport",
    "TrajectoryFunction",
    "body_flow",
    "central_difference",
    "check_against_body_rate",
    "check_against_world_rate",
    "skewness_defect",
    "world_flow",
]


@dataclass(frozen=True)
class TrajectoryFunction:
    """A rotation-valued function of time on ``[t_min, t_max]``.

    ``world_rate`` / ``body_rate`` are optional analytic angular velocities.
    """

    rotation: Callable[[float], RotationMatrix]
    t_min: float = -math.inf
    t_max: float = math.inf
    world_rate: Callable[[float], AngularVelocity] | None = None
    body_rate: Callable[[float], AngularVelocity] | None = None

    def __call__(self, t: float) -> RotationMatrix:
        if not (self.t_min <= t <= self.t_max):
            raise DomainError(f"t = {t} outside [{self.t_min}, {self.t_max}]")
        return self.rotation(t)


@dataclass(frozen=True)
class DerivativeCheckReport:
    t: float
    h: float
    analytic_error: float
    skewness_defect: float
    order_estimate: float
    exact: bool = False


def central_difference(f: TrajectoryFunction, t: float, h: float) -> np.ndarray:
    """``(f(t + h) - f(t - h)) / 2h``."""
    if not h > 0:
        raise InvalidInputError("h must be positive")
    return (f(t + h).matrix - f(t - h).matrix) / (2.0 * h)


def _as_trajectory(f) -> TrajectoryFunction:
    return f if isinstance(f, TrajectoryFunction) else TrajectoryFunction(f)


def _check(f, t, h, analytic, skew_of) -> DerivativeCheckReport:
    f = _as_trajectory(f)
    Rt = f(t)
    exact_rdot = analytic(Rt)
    D = central_difference(f, t, h)
    err_h = float(np.linalg.norm(D - exact_rdot))
    err_h2 = float(np.linalg.norm(central_difference(f, t, h / 2) - exact_rdot))
    if err_h == 0.0 or err_h2 == 0.0:
        order, exact = 0.0, True
    else:
        order, exact = math.log2(err_h / err_h2), False
    return DerivativeCheckReport(t, h, err_h, skewness_defect(skew_of(D, Rt.matrix)), order, exact)


def check_against_world_rate(
    f, w_A_fn: Callable[[float], AngularVelocity], t: float, h: float = DEFAULT_H
) -> DerivativeCheckReport:
    """Compare the central difference of ``f`` with ``skew(w_A) @ R``.

    ``skewness_defect`` is measured on ``D @ R.T``; ``order_estimate`` is
    ``log2(err(h) / err(h/2))`` and is reported as 0 with ``exact=True``
    when either error vanishes.
    """
    w = w_A_fn(t)
    return _check(
        f,
        t,
        h,
        lambda R: kinematics.rdot_world_rate(R, w).matrix,
        lambda D, R: D @ R.T,
    )


def check_against_body_rate(
    f, w_B_fn: Callable[[float], AngularVelocity], t: float, h: float = DEFAULT_H
) -> DerivativeCheckReport:
    """Body-rate mirror of :func:`check_against_world_rate`; skewness of ``R.T @ D``."""
    w = w_B_fn(t)
    return _check(
        f,
        t,
        h,
        lambda R: kinematics.rdot_body_rate(R, w).matrix,
        lambda D, R: R.T @ D,
    )


def world_flow(v, R0: RotationMatrix) -> TrajectoryFunction:
    """``t -> exp(t skew(v)) @ R0``, whose world-frame rate is ``v``."""
    v = np.asarray(v, dtype=float)
    w_A = AngularVelocity(v, R0.to_frame)

    def rot(t):
        return RotationMatrix(
            exp_so3(t * v, R0.from_frame, R0.to_frame).matrix @ R0.matrix,
            R0.from_frame,
            R0.to_frame,
        )

    def body(t):
        return AngularVelocity(rot(t).matrix.T @ v, R0.from_frame)

    return TrajectoryFunction(rot, world_rate=lambda t: w_A, body_rate=body)


def body_flow(R0: RotationMatrix, v) -> TrajectoryFunction:
    """``t -> R0 @ exp(t skew(v))``, whose body-frame rate is ``v``."""
    v = np.asarray(v, dtype=float)
    w_B = AngularVelocity(v, R0.from_frame)

    def rot(t):
        return RotationMatrix(
            R0.matrix @ exp_so3(t * v, R0.from_frame, R0.to_frame).matrix,
            R0.from_frame,
            R0.to_frame,
        )

    def world(t):
        return AngularVelocity(rot(t).matrix @ v, R0.to_frame)

    return TrajectoryFunction(rot, world_rate=world, body_rate=lambda t: w_B)
