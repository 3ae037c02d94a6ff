"""Seeded randomized property suite behind ``rotkin verify``.

Every property draws from its own generator seeded with ``(seed, index)``,
so adding a property never perturbs the draws of the others. Library calls
go through module attributes so a patched function is what gets tested.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from rotkin import core, kinematics, planar, propagation, verification
from rotkin.core import BODY, WORLD, AngularVelocity, Vector3
from rotkin.errors import FrameMismatchError
from rotkin.sampling import random_axis, random_rotation, random_vector


@dataclass
class PropertyResult:
    name: str
    passed: bool
    max_defect: float
    tol: float
    cases: int
    worst: dict = field(default_factory=dict)
    error: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} max_defect={self.max_defect:.3e} tol={self.tol:.1e} cases={self.cases}"
        if self.error:
            text += f" error={self.error}"
        return text


class _Tracker:
    def __init__(self):
        self.max = 0.0
        self.worst: dict = {}

    def add(self, defect: float, **case):
        if math.isnan(defect):
            defect = math.inf
        if not self.worst or defect > self.max:
            self.max = max(self.max, defect)
            self.worst = {k: np.asarray(v).tolist() for k, v in case.items()}


def _maxabs(a) -> float:
    return float(np.max(np.abs(a)))


def _skew_layout(rng, n=1000):
    tr = _Tracker()
    for _ in range(n):
        w = random_vector(rng)
        S = core.skew(w).matrix
        d = _maxabs(S + S.T) + _maxabs(core.unskew(core.skew(w)).components - w)
        tr.add(d, w=w)
    return tr, 0.0, n


def _cross_product(rng, n=1000):
    tr = _Tracker()
    for _ in range(n):
        w, x = random_vector(rng), random_vector(rng)
        d = float(np.linalg.norm(core.skew(w).matrix @ x - core.cross(w, x)))
        tr.add(d, w=w, x=x)
    return tr, 1e-12, n


def _conjugation(rng, n=1000):
    tr = _Tracker()
    for _ in range(n):
        R, w = random_rotation(rng), random_vector(rng)
        d = float(np.linalg.norm(core.conjugate_skew(R, w).matrix - core.conjugate_skew_explicit(R, w)))
        tr.add(d, R=R.matrix, w=w)
    return tr, 1e-12, n


def _cases(rng, n):
    for _ in range(n):
        R = random_rotation(rng)
        w_B = AngularVelocity(random_vector(rng), BODY)
        yield R, w_B, core.transform_angular_velocity(R, w_B)


def _four_formula(rng, n=1000):
    tr = _Tracker()
    for R, w_B, w_A in _cases(rng, n):
        Rinv = core.inverse(R)
        d1 = _maxabs(kinematics.rdot_world_rate(R, w_A).matrix - kinematics.rdot_body_rate(R, w_B).matrix)
        d2 = _maxabs(
            kinematics.rdot_inverse_world_rate(Rinv, w_A).matrix
            - kinematics.rdot_inverse_body_rate(Rinv, w_B).matrix
        )
        tr.add(max(d1, d2), R=R.matrix, w_B=w_B.components)
    return tr, 1e-12, n


def _transpose_duality(rng, n=1000):
    tr = _Tracker()
    for R, w_B, w_A in _cases(rng, n):
        d = _maxabs(
            kinematics.rdot_world_rate(R, w_A).matrix.T
            - kinematics.rdot_inverse_world_rate(core.inverse(R), w_A).matrix
        )
        tr.add(d, R=R.matrix, w_A=w_A.components)
    return tr, 1e-12, n


def _rdot_skewness(rng, n=1000):
    tr = _Tracker()
    for R, w_B, w_A in _cases(rng, n):
        for Rdot in (kinematics.rdot_world_rate(R, w_A).matrix, kinematics.rdot_body_rate(R, w_B).matrix):
            tr.add(core.skewness_defect(Rdot @ R.matrix.T), R=R.matrix, w_B=w_B.components)
    return tr, 1e-12, n


def _point_velocity(rng, n=100):
    tr = _Tracker()
    P_B = random_vector(rng)
    for _ in range(n):
        R = random_rotation(rng)
        w_A = AngularVelocity(random_vector(rng), WORLD)
        lhs = kinematics.rdot_world_rate(R, w_A).matrix @ P_B
        rhs = core.cross(w_A, R.matrix @ P_B)
        tr.add(float(np.linalg.norm(lhs - rhs)), R=R.matrix, w_A=w_A.components, P_B=P_B)
    return tr, 1e-12, n


def _rate_recovery(rng, n=1000):
    tr = _Tracker()
    for R, w_B, w_A in _cases(rng, n):
        ra = kinematics.world_rate_from_rdot(R, kinematics.rdot_world_rate(R, w_A))
        rb = kinematics.body_rate_from_rdot(R, kinematics.rdot_body_rate(R, w_B))
        d = max(_maxabs(ra.components - w_A.components), _maxabs(rb.components - w_B.components))
        tr.add(d, R=R.matrix, w_B=w_B.components)
    return tr, 1e-12, n


def _planar(rng, n=1000):
    tr = _Tracker()
    for _ in range(n):
        a, ad = rng.uniform(-10, 10, size=2)
        tr.add(planar.planar_consistency_check(a, ad), alpha=a, alpha_dot=ad)
    return tr, 1e-13, n


def _planar_rates(rng, n=1000):
    tr = _Tracker()
    for _ in range(n):
        a, ad = rng.uniform(-10, 10, size=2)
        w_B = AngularVelocity((0.0, 0.0, ad), BODY)
        w_A = core.transform_angular_velocity(planar.embed_planar(a), w_B)
        tr.add(_maxabs(w_A.components - w_B.components), alpha=a, alpha_dot=ad)
    return tr, 1e-15, n


def _random_log(rng, steps):
    t = np.cumsum(rng.uniform(0.001, 0.02, size=steps + 1))
    return [
        propagation.GyroSample(float(ti), AngularVelocity(random_vector(rng, -5, 5), BODY)) for ti in t
    ]


def _expmap_group(rng, n=3):
    tr = _Tracker()
    for _ in range(n):
        log = _random_log(rng, 2000)
        R0 = random_rotation(rng)
        for method in (propagation.IntegratorChoice.EXPMAP_BODY, propagation.IntegratorChoice.EXPMAP_WORLD):
            traj = propagation.propagate(R0, log, method)
            tr.add(float(np.max(traj.orth_defect)), R0=R0.matrix, method=method.name)
    return tr, 1e-9, n


def _left_right(rng, n=5):
    tr = _Tracker()
    for _ in range(n):
        w = random_vector(rng, -3, 3)
        R0 = random_rotation(rng)
        log = propagation.constant_rate_log(w, 2.0, 0.002)
        body = propagation.propagate(R0, log, propagation.IntegratorChoice.EXPMAP_BODY)
        world = propagation.propagate(R0, log, propagation.IntegratorChoice.EXPMAP_WORLD)
        tr.add(float(np.max(np.abs(body.matrices - world.matrices))), R0=R0.matrix, w_B=w)
    return tr, 1e-9, n


def _fd_order(rng, n=10):
    tr = _Tracker()
    for _ in range(n):
        v = random_axis(rng) * rng.uniform(0.5, 2.0)
        R0 = random_rotation(rng)
        t = float(rng.uniform(0.0, 2.0))
        for f, rate, check in (
            (verification.world_flow(v, R0), "world_rate", verification.check_against_world_rate),
            (verification.body_flow(R0, v), "body_rate", verification.check_against_body_rate),
        ):
            coarse = check(f, getattr(f, rate), t, 1e-3)
            fine = check(f, getattr(f, rate), t, 1e-5)
            # defect: distance of the order from 2 beyond 0.2, plus the h=1e-5 error beyond 1e-7
            d = max(abs(coarse.order_estimate - 2.0) - 0.2, 0.0) + max(fine.analytic_error - 1e-7, 0.0)
            tr.add(d, v=v, R0=R0.matrix, t=t, form=rate)
    return tr, 0.0, n


def _frame_discipline(rng, n=100):
    tr = _Tracker()
    for _ in range(n):
        R = random_rotation(rng)
        wrong = AngularVelocity(random_vector(rng), WORLD)
        point = Vector3(random_vector(rng), WORLD)
        rejected = 0
        for call in (
            lambda: core.transform_angular_velocity(R, wrong),
            lambda: core.transform_point(R, point),
            lambda: kinematics.rdot_body_rate(R, wrong),
        ):
            try:
                call()
            except FrameMismatchError:
                rejected += 1
        tr.add(float(3 - rejected), R=R.matrix)
    return tr, 0.0, n


PROPERTIES: list[tuple[str, Callable]] = [
    ("skew_layout", _skew_layout),
    ("cross_product_equivalence", _cross_product),
    ("conjugation_identity", _conjugation),
    ("four_formula_consistency", _four_formula),
    ("transpose_duality", _transpose_duality),
    ("rdot_skewness", _rdot_skewness),
    ("point_velocity_identity", _point_velocity),
    ("rate_recovery_round_trip", _rate_recovery),
    ("planar_consistency", _planar),
    ("planar_world_equals_body_rate", _planar_rates),
    ("expmap_group_preservation", _expmap_group),
    ("left_right_stepping_agreement", _left_right),
    ("finite_difference_order", _fd_order),
    ("frame_tag_discipline", _frame_discipline),
]


def run_suite(seed: int) -> list[PropertyResult]:
    results = []
    for index, (name, prop) in enumerate(PROPERTIES):
        rng = np.random.default_rng([seed, index])
        try:
            tr, tol, cases = prop(rng)
        except Exception as exc:  # a crashing property is a failing property
            results.append(
                PropertyResult(name, False, math.inf, math.nan, 0, error=f"{type(exc).__name__}: {exc}")
            )
            continue
        results.append(PropertyResult(name, tr.max <= tol, tr.max, tol, cases, tr.worst))
    return results


def format_report(seed: int, results: list[PropertyResult]) -> str:
    lines = [f"rotkin verify seed={seed}"]
    for r in results:
        lines.append(r.line())
        if not r.passed and r.worst:
            lines.append("  replay: " + json.dumps({"property": r.name, "seed": seed, "case": r.worst}))
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} properties passed")
    return "\n".join(lines) + "\n"
