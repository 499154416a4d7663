"""Arc parameterisation of a fixed-length three-actuator bending section.

A section of backbone length L bends as a circular arc described by

    phi   subtended bend angle [rad], 0 = straight, phi_max <= pi
    theta bending-plane angle [rad] about the base +Z axis, wrapped to [0, 2pi)

Three actuators sit on a pitch circle of radius r at 0, 120 and 240 degrees
from the +X axis.  Because the backbone is inextensible, actuator length
changes must cancel: l1 + l2 + l3 = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintError, DomainError

_TWO_PI = 2.0 * math.pi

# Actuator angular positions on the pitch circle [rad].
_ACTUATOR_ANGLES = (0.0, _TWO_PI / 3.0, 2.0 * _TWO_PI / 3.0)


def wrap_angle(angle: float) -> float:
    """Wrap an angle to [0, 2pi)."""
    a = angle % _TWO_PI
    # float modulo can round up to the period itself for tiny negatives
    if a >= _TWO_PI:
        a = 0.0
    return a


@dataclass(frozen=True)
class RobotGeometry:
    """Physical constants of one bending section."""

    section_length: float = 0.16   # backbone arc length L [m]
    actuator_radius: float = 0.02  # actuator pitch radius r [m]
    phi_max: float = math.pi       # largest commanded bend [rad]

    def __post_init__(self):
        if not (self.section_length > 0.0 and math.isfinite(self.section_length)):
            raise DomainError(f"section_length must be > 0, got {self.section_length}")
        if not (self.actuator_radius > 0.0 and math.isfinite(self.actuator_radius)):
            raise DomainError(f"actuator_radius must be > 0, got {self.actuator_radius}")
        if not (0.0 < self.phi_max <= math.pi):
            raise DomainError(f"phi_max must lie in (0, pi], got {self.phi_max}")
        if self.actuator_radius >= self.section_length:
            raise DomainError(
                "actuator_radius must be smaller than section_length "
                f"({self.actuator_radius} >= {self.section_length})"
            )


@dataclass(frozen=True)
class ArcParams:
    """Bend angle and bending-plane angle of one section."""

    phi: float            # subtended angle [rad], >= 0
    theta: float = 0.0    # bending-plane angle [rad], stored wrapped to [0, 2pi)

    def __post_init__(self):
        if not math.isfinite(self.phi) or self.phi < 0.0:
            raise DomainError(f"phi must be finite and >= 0, got {self.phi}")
        if not math.isfinite(self.theta):
            raise DomainError(f"theta must be finite, got {self.theta}")
        object.__setattr__(self, "theta", wrap_angle(self.theta))


@dataclass(frozen=True)
class JointState:
    """Actuator length changes (l1, l2, l3) [m]; positive = extension."""

    l1: float
    l2: float
    l3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.l1, self.l2, self.l3])

    @property
    def residual(self) -> float:
        """Closure residual l1 + l2 + l3 [m] (zero for a valid state)."""
        return self.l1 + self.l2 + self.l3


def joints_from_arc(arc: ArcParams, geom: RobotGeometry) -> JointState:
    """Map arc parameters to actuator length changes.

    l_i = -r * phi * cos(2pi/3 * (i - 1) - theta).  The third channel is
    computed as -(l1 + l2) so the fixed-length closure holds exactly in
    floating point (the direct cosine differs by under one ulp).
    """
    if arc.phi > geom.phi_max:
        raise DomainError(f"phi out of [0, {geom.phi_max:g}], got {arc.phi:g}")
    scale = -geom.actuator_radius * arc.phi
    l1 = scale * math.cos(_ACTUATOR_ANGLES[0] - arc.theta)
    l2 = scale * math.cos(_ACTUATOR_ANGLES[1] - arc.theta)
    l3 = -(l1 + l2)
    return JointState(l1, l2, l3)


def constraint_tolerance(joints: JointState) -> float:
    """Default closure tolerance, scaled by the largest length change."""
    norm = max(abs(joints.l1), abs(joints.l2), abs(joints.l3))
    return 1e-9 * max(1.0, norm)


def validate_joint_constraint(
    joints: JointState, tol: float | None = None
) -> tuple[bool, float]:
    """Check the fixed-length closure l1 + l2 + l3 = 0.

    Returns (ok, residual).  ``tol`` defaults to 1e-9 * max(1, |l|_inf),
    which accepts noisy external measurements but rejects inconsistent ones.
    """
    if tol is None:
        tol = constraint_tolerance(joints)
    residual = joints.residual
    return abs(residual) <= tol, residual


def arc_from_joints(
    joints: JointState, geom: RobotGeometry, tol: float | None = None
) -> ArcParams:
    """Recover arc parameters from actuator length changes.

    phi falls out of the pairwise-difference quadratic
    sum_i (l_i^2 - l_i l_{i+1}) = (3 r phi / 2)^2, computed here in the
    explicitly non-negative form using squared differences.  theta comes from
    atan2(sqrt(3) (l3 - l2), l2 + l3 - 2 l1).  The all-zero state maps to
    (phi=0, theta=0).
    """
    ok, residual = validate_joint_constraint(joints, tol)
    if not ok:
        raise ConstraintError(
            f"joint state violates l1+l2+l3=0: residual {residual:.3e} m"
        )
    l1, l2, l3 = joints.l1, joints.l2, joints.l3
    quad = 0.5 * ((l1 - l2) ** 2 + (l2 - l3) ** 2 + (l3 - l1) ** 2)
    phi = 2.0 * math.sqrt(quad) / (3.0 * geom.actuator_radius)
    theta = math.atan2(math.sqrt(3.0) * (l3 - l2), l2 + l3 - 2.0 * l1)
    return ArcParams(phi, wrap_angle(theta))


def planar_joints(bend: float, geom: RobotGeometry) -> JointState:
    """Length changes for bending in the theta=0 plane by |bend| = r * phi.

    Convenience for single-plane experiments: channel 1 takes the full
    (signed) contraction and channels 2, 3 split the balancing extension.
    """
    limit = geom.actuator_radius * geom.phi_max
    if not math.isfinite(bend) or abs(bend) > limit:
        raise DomainError(f"bend out of [-{limit:g}, {limit:g}], got {bend}")
    half = bend / 2.0
    return JointState(-bend, half, half)
