"""Seeded random draws of rotations and vectors for property checks."""

from __future__ import annotations

import math

import numpy as np

from rotkin.core import BODY, WORLD, Frame, RotationMatrix
from rotkin.propagation import exp_so3


def random_axis(rng: np.random.Generator) -> np.ndarray:
    while True:
        g = rng.standard_normal(3)
        n = float(np.linalg.norm(g))
        if n > 1e-12:
            return g / n


def random_rotation(
    rng: np.random.Generator, from_frame: Frame = BODY, to_frame: Frame = WORLD
) -> RotationMatrix:
    """Exponential of a random axis (normalized Gaussian) times an angle in [0, pi]."""
    axis = random_axis(rng)
    angle = rng.uniform(0.0, math.pi)
    return exp_so3(axis * angle, from_frame, to_frame)


def random_vector(rng: np.random.Generator, lo: float = -10.0, hi: float = 10.0) -> np.ndarray:
    return rng.uniform(lo, hi, size=3)
