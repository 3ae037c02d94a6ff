"""Attitude propagation from body-rate (gyro) samples.

Rates are held constant between consecutive timestamps (zero-order hold).
The attitude at sample ``i+1`` is obtained from the attitude at sample ``i``
and the rate measured at sample ``i``. The final sample's rate is never used.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from rotkin.core import (
    BODY,
    ORTHO_TOL,
    AngularVelocity,
    Frame,
    RotationMatrix,
    VectorLike,
    WORLD,
    _components,
    _trusted_rotation,
    orthogonality_defect,
    validate_rotation,
)
from rotkin.errors import FrameMismatchError, InvalidInputError, NumericalError

SMALL_ANGLE = 1e-8
REORTHO_TOL = 1e-14
REORTHO_MAX_ITER = 100


class IntegratorChoice(enum.Enum):
    EULER_RAW = "euler_raw"
    EULER_REPROJECT = "euler_reproject"
    EXPMAP_BODY = "expmap_body"
    EXPMAP_WORLD = "expmap_world"

    @classmethod
    def parse(cls, name: str) -> "IntegratorChoice":
        try:
            return cls[name.strip().upper().replace("-", "_")]
        except KeyError:
            choices = ", ".join(c.name for c in cls)
            raise InvalidInputError(f"unknown integrator {name!r} (choose from {choices})") from None


@dataclass(frozen=True)
class GyroSample:
    t: float
    w_B: AngularVelocity

    def __post_init__(self):
        if not math.isfinite(self.t):
            raise InvalidInputError("sample time must be finite")
        if self.w_B.frame != BODY:
            raise FrameMismatchError(BODY, self.w_B.frame, "gyro rate")


@dataclass(frozen=True, eq=False)
class AttitudeTrajectory:
    """Attitudes at each sample time plus per-step drift diagnostics.

    ``matrices`` is an ``(N, 3, 3)`` stack. Entries produced by
    ``EULER_RAW`` are generally off the rotation group, so they are kept as
    raw matrices; :meth:`rotation` validates one on demand.
    """

    times: np.ndarray
    matrices: np.ndarray
    orth_defect: np.ndarray
    det_defect: np.ndarray
    method: IntegratorChoice
    from_frame: Frame = BODY
    to_frame: Frame = WORLD

    def __len__(self) -> int:
        return len(self.times)

    def rotation(self, i: int, tol: float = ORTHO_TOL) -> RotationMatrix:
        return validate_rotation(self.matrices[i], self.from_frame, self.to_frame, tol, tol)

    @property
    def final(self) -> np.ndarray:
        return self.matrices[-1]

    def __iter__(self) -> Iterator[tuple[float, np.ndarray]]:
        for t, M in zip(self.times.tolist(), self.matrices):
            yield t, M


def _expm(px: float, py: float, pz: float) -> np.ndarray:
    # Rodrigues closed form on plain floats; hot loop of propagate().
    t2 = px * px + py * py + pz * pz
    theta = math.sqrt(t2)
    if theta < SMALL_ANGLE:
        a = 1.0 - t2 / 6.0
        b = 0.5 - t2 / 24.0
    else:
        a = math.sin(theta) / theta
        b = (1.0 - math.cos(theta)) / t2
    xx, yy, zz = px * px, py * py, pz * pz
    xy, xz, yz = px * py, px * pz, py * pz
    # K^2 = phi phi^T - theta^2 I
    return np.array(
        [
            [1.0 - b * (yy + zz), -a * pz + b * xy, a * py + b * xz],
            [a * pz + b * xy, 1.0 - b * (xx + zz), -a * px + b * yz],
            [-a * py + b * xz, a * px + b * yz, 1.0 - b * (xx + yy)],
        ]
    )


def exp_so3(phi: VectorLike, from_frame: Frame = BODY, to_frame: Frame = WORLD) -> RotationMatrix:
    """Rotation by ``|phi|`` radians about ``phi / |phi|``.

    Uses ``I + sin(t)/t K + (1 - cos(t))/t^2 K^2`` with ``K = skew(phi)`` and
    Taylor coefficients below ``t = 1e-8``.
    """
    px, py, pz = (float(v) for v in _components(phi))
    M = _expm(px, py, pz)
    if from_frame == to_frame:
        return validate_rotation(M, from_frame, to_frame)
    return _trusted_rotation(M, from_frame, to_frame)


def orthogonality_error(M) -> float:
    """``||M^T M - I||_F``."""
    return orthogonality_defect(M)


def _check_dt(dt: float):
    if not (dt > 0 and math.isfinite(dt)):
        raise InvalidInputError(f"dt must be positive and finite, got {dt}")


def step_euler_body(R: RotationMatrix, w_B: AngularVelocity, dt: float) -> np.ndarray:
    """First-order step ``R + R @ skew(w_B) * dt``; the result is NOT reprojected."""
    _check_dt(dt)
    if w_B.frame != R.from_frame:
        raise FrameMismatchError(R.from_frame, w_B.frame, "body rate")
    return _euler(R.matrix, *w_B.components.tolist(), dt)


def _euler(M: np.ndarray, wx: float, wy: float, wz: float, dt: float) -> np.ndarray:
    K = np.array([[0.0, -wz, wy], [wz, 0.0, -wx], [-wy, wx, 0.0]])
    return M + (M @ K) * dt


def step_expmap_body(R: RotationMatrix, w_B: AngularVelocity, dt: float) -> RotationMatrix:
    """Exact zero-order-hold step ``R @ exp(skew(w_B) dt)``."""
    _check_dt(dt)
    if w_B.frame != R.from_frame:
        raise FrameMismatchError(R.from_frame, w_B.frame, "body rate")
    wx, wy, wz = w_B.components.tolist()
    return _trusted_rotation(R.matrix @ _expm(wx * dt, wy * dt, wz * dt), R.from_frame, R.to_frame)


def step_expmap_world(R: RotationMatrix, w_A: AngularVelocity, dt: float) -> RotationMatrix:
    """Exact zero-order-hold step ``exp(skew(w_A) dt) @ R``.

    Only meaningful when the frames share an origin.
    """
    _check_dt(dt)
    if w_A.frame != R.to_frame:
        raise FrameMismatchError(R.to_frame, w_A.frame, "world rate")
    wx, wy, wz = w_A.components.tolist()
    return _trusted_rotation(_expm(wx * dt, wy * dt, wz * dt) @ R.matrix, R.from_frame, R.to_frame)


def _reortho(M: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore", invalid="ignore"):
        if np.linalg.det(M) <= 0:
            raise InvalidInputError("reorthonormalize needs det(M) > 0")
        for _ in range(REORTHO_MAX_ITER + 1):
            if np.linalg.norm(M.T @ M - np.eye(3)) <= REORTHO_TOL:
                return M
            M = 0.5 * (M + np.linalg.inv(M).T)
    raise NumericalError(f"reorthonormalization did not converge in {REORTHO_MAX_ITER} iterations")


def reorthonormalize(M, from_frame: Frame = BODY, to_frame: Frame = WORLD) -> RotationMatrix:
    """Nearest rotation to ``M`` by iterating ``M <- (M + M^-T) / 2``.

    Stops once ``||M^T M - I||_F <= 1e-14``. Raises InvalidInputError for
    ``det(M) <= 0`` and NumericalError if 100 iterations do not suffice.
    """
    M = np.asarray(M, dtype=float)
    if M.shape != (3, 3) or not np.all(np.isfinite(M)):
        raise InvalidInputError("reorthonormalize needs a finite 3x3 matrix")
    return validate_rotation(_reortho(M), from_frame, to_frame)


def _check_log(log: Sequence[GyroSample]):
    if len(log) == 0:
        raise InvalidInputError("gyro log is empty")
    for i in range(1, len(log)):
        if not log[i].t > log[i - 1].t:
            raise InvalidInputError(
                f"gyro timestamps must strictly increase (sample {i}: {log[i].t} after {log[i - 1].t})"
            )


def propagate(
    R0: RotationMatrix, log: Sequence[GyroSample], method: IntegratorChoice
) -> AttitudeTrajectory:
    """Dead-reckon attitude through a gyro log, one attitude per sample.

    ``EXPMAP_WORLD`` converts each held body rate to the world frame with
    the current attitude before stepping, so it tracks ``EXPMAP_BODY`` up
    to rounding.
    """
    method = IntegratorChoice(method)
    _check_log(log)
    if R0.from_frame != BODY:
        raise FrameMismatchError(BODY, R0.from_frame, "initial attitude source frame")
    n = len(log)
    times = np.array([s.t for s in log], dtype=float)
    rates = np.array([s.w_B.components for s in log], dtype=float).reshape(n, 3)
    out = np.empty((n, 3, 3))
    M = np.array(R0.matrix)
    out[0] = M
    for i in range(n - 1):
        dt = float(times[i + 1] - times[i])
        wx, wy, wz = rates[i].tolist()
        if method is IntegratorChoice.EULER_RAW:
            M = _euler(M, wx, wy, wz, dt)
        elif method is IntegratorChoice.EULER_REPROJECT:
            M = _reortho(_euler(M, wx, wy, wz, dt))
        elif method is IntegratorChoice.EXPMAP_BODY:
            M = M @ _expm(wx * dt, wy * dt, wz * dt)
        else:
            wa = M @ rates[i]
            M = _expm(wa[0] * dt, wa[1] * dt, wa[2] * dt) @ M
        out[i + 1] = M
    eye = np.eye(3)
    gram = np.einsum("nki,nkj->nij", out, out) - eye
    orth = np.sqrt(np.einsum("nij,nij->n", gram, gram))
    det = np.abs(np.linalg.det(out) - 1.0)
    return AttitudeTrajectory(times, out, orth, det, method, R0.from_frame, R0.to_frame)


def constant_rate_log(w_B, duration: float, dt: float, t0: float = 0.0) -> list[GyroSample]:
    """Evenly spaced samples of a constant body rate covering ``[t0, t0 + duration]``."""
    steps = int(round(duration / dt))
    if steps < 1 or not math.isclose(steps * dt, duration, rel_tol=1e-9):
        raise InvalidInputError(f"duration {duration} is not a whole number of steps of {dt}")
    w = AngularVelocity(_components(w_B), BODY)
    return [GyroSample(t0 + duration * k / steps, w) for k in range(steps + 1)]
