"""Rotation-matrix kinematics with explicit frame tags."""

from rotkin.core import (
    BODY,
    WORLD,
    AngularVelocity,
    Frame,
    RotationMatrix,
    SkewMatrix,
    Vector3,
    apply_skew,
    compose,
    conjugate_skew,
    inverse,
    skew,
    skew_to_nearest,
    transform_angular_velocity,
    transform_point,
    unskew,
    validate_rotation,
)
from rotkin.kinematics import (
    RotationDerivative,
    body_rate_from_rdot,
    rdot_body_rate,
    rdot_inverse_body_rate,
    rdot_inverse_world_rate,
    rdot_world_rate,
    world_rate_from_rdot,
)
from rotkin.planar import embed_planar, planar_consistency_check, rot2, rot2_dot
from rotkin.propagation import (
    AttitudeTrajectory,
    GyroSample,
    IntegratorChoice,
    exp_so3,
    orthogonality_error,
    propagate,
    reorthonormalize,
    step_euler_body,
    step_expmap_body,
    step_expmap_world,
)

__version__ = "0.1.0"

__all__ = [
    "embed_planar",
    "planar_consistency_check",
    "rot2",
    "rot2_dot",
    "AngularVelocity",
    "apply_skew",
    "AttitudeTrajectory",
    "BODY",
    "body_rate_from_rdot",
    "compose",
    "conjugate_skew",
    "exp_so3",
    "Frame",
    "GyroSample",
    "IntegratorChoice",
    "inverse",
    "orthogonality_error",
    "propagate",
    "rdot_body_rate",
    "rdot_inverse_body_rate",
    "rdot_inverse_world_rate",
    "rdot_world_rate",
    "reorthonormalize",
    "RotationDerivative",
    "RotationMatrix",
    "skew",
    "skew_to_nearest",
    "SkewMatrix",
    "step_euler_body",
    "step_expmap_body",
    "step_expmap_world",
    "transform_angular_velocity",
    "transform_point",
    "unskew",
    "validate_rotation",
    "Vector3",
    "WORLD",
    "world_rate_from_rdot",
]
