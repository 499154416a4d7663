"""Forward kinematics of one constant-curvature section.

The section frame transform factors as a rotation into the bending plane,
a circular-arc sweep about an offset Y axis, and the inverse plane rotation:

    T(phi, theta, xi) = Rz(theta) Px(L/phi) Ry(xi*phi) Px(-L/phi) Rz(-theta)

with xi in [0, 1] sweeping base to tip along the backbone.  Expanded, the
backbone point sits at

    position = ( (L/phi) (1 - cos(xi phi)) cos(theta),
                 (L/phi) (1 - cos(xi phi)) sin(theta),
                 (L/phi) sin(xi phi) )
    rotation = Rz(theta) Ry(xi phi) Rz(-theta)

Below PHI_STRAIGHT the arc is treated as straight (translation xi*L along
+Z, identity rotation); 1 - cos is evaluated as 2 sin^2(x/2) elsewhere so
the expansion stays accurate down to the switch.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .arc_geometry import ArcParams, RobotGeometry
from .errors import DomainError

# Bends below this subtended angle are evaluated with the straight-pose limit.
PHI_STRAIGHT = 1e-7

WORKSPACE_CSV_HEADER = ("phi", "theta", "x", "y", "z")


@dataclass(frozen=True)
class Pose:
    """Rigid transform: 3x3 rotation and position [m] in the base frame."""

    rotation: np.ndarray
    position: np.ndarray

    def matrix(self) -> np.ndarray:
        """Homogeneous 4x4 form."""
        m = np.eye(4)
        m[:3, :3] = self.rotation
        m[:3, 3] = self.position
        return m


@dataclass(frozen=True)
class BackbonePoint:
    """A sample along the backbone at arc fraction xi."""

    xi: float
    pose: Pose


def _rot_z(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _rot_y(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def pose_at(arc: ArcParams, xi: float, geom: RobotGeometry) -> Pose:
    """Pose of the backbone point at arc fraction xi (0 = base, 1 = tip)."""
    if not 0.0 <= xi <= 1.0:
        raise DomainError(f"xi out of [0, 1], got {xi}")
    if arc.phi > geom.phi_max:
        raise DomainError(f"phi out of [0, {geom.phi_max:g}], got {arc.phi:g}")
    L = geom.section_length
    if arc.phi < PHI_STRAIGHT:
        return Pose(np.eye(3), np.array([0.0, 0.0, xi * L]))
    beta = xi * arc.phi
    rho = L / arc.phi                       # arc radius [m]
    reach = rho * 2.0 * math.sin(beta / 2.0) ** 2   # rho * (1 - cos beta)
    position = np.array(
        [reach * math.cos(arc.theta), reach * math.sin(arc.theta), rho * math.sin(beta)]
    )
    rotation = _rot_z(arc.theta) @ _rot_y(beta) @ _rot_z(-arc.theta)
    return Pose(rotation, position)


def curve_positions(arc: ArcParams, xis: np.ndarray, geom: RobotGeometry) -> np.ndarray:
    """Positions at several arc fractions at once; rows match ``xis``."""
    xis = np.asarray(xis, dtype=float)
    if xis.size and (xis.min() < 0.0 or xis.max() > 1.0):
        raise DomainError("xi values must lie in [0, 1]")
    if arc.phi > geom.phi_max:
        raise DomainError(f"phi out of [0, {geom.phi_max:g}], got {arc.phi:g}")
    L = geom.section_length
    if arc.phi < PHI_STRAIGHT:
        out = np.zeros((xis.size, 3))
        out[:, 2] = xis * L
        return out
    beta = xis * arc.phi
    rho = L / arc.phi
    reach = rho * 2.0 * np.sin(beta / 2.0) ** 2
    return np.column_stack(
        (reach * math.cos(arc.theta), reach * math.sin(arc.theta), rho * np.sin(beta))
    )


def backbone_curve(arc: ArcParams, n: int, geom: RobotGeometry) -> list[BackbonePoint]:
    """n poses equally spaced in arc length from base to tip (n >= 2)."""
    if n < 2:
        raise DomainError(f"backbone curve needs n >= 2 samples, got {n}")
    xis = np.linspace(0.0, 1.0, n)
    return [BackbonePoint(float(xi), pose_at(arc, float(xi), geom)) for xi in xis]


def sample_workspace(geom: RobotGeometry, n_phi: int, n_theta: int) -> np.ndarray:
    """Tip positions over a regular (phi, theta) grid.

    Returns an (n_phi * n_theta, 5) array with columns phi, theta, x, y, z,
    ordered row-major with phi varying slowest.  phi spans [0, phi_max]
    inclusive; theta spans [0, 2pi) without the duplicate endpoint.
    """
    if n_phi < 1 or n_theta < 1:
        raise DomainError(f"grid counts must be >= 1, got ({n_phi}, {n_theta})")
    phis = np.linspace(0.0, geom.phi_max, n_phi)
    thetas = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    rows = np.empty((n_phi * n_theta, 5))
    i = 0
    for phi in phis:
        for theta in thetas:
            tip = pose_at(ArcParams(float(phi), float(theta)), 1.0, geom).position
            rows[i, 0] = phi
            rows[i, 1] = theta
            rows[i, 2:] = tip
            i += 1
    return rows


def write_workspace_csv(points: np.ndarray, file: io.TextIOBase | str) -> None:
    """Write a sample_workspace array as CSV with header phi,theta,x,y,z."""
    points = np.asarray(points)
    if points.ndim != 2 or points.shape[1] != 5:
        raise DomainError(f"expected an (n, 5) workspace array, got {points.shape}")

    def _write(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(WORKSPACE_CSV_HEADER)
        for row in points:
            w.writerow([f"{v:.12g}" for v in row])

    if isinstance(file, str):
        with open(file, "w", newline="") as fh:
            _write(fh)
    else:
        _write(file)
