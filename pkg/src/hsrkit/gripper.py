"""Quasi-static grasp model for a three-finger soft gripper.

Three bending sections are mounted on a palm circle, axes parallel to the
palm normal (+Z), each bending in the plane through the palm axis so the
fingers curl inward.  An object sits centred on the axis.  Closing to bend
angle phi presses the commanded (free) finger curves into the object's
envelope; the deepest sample per finger becomes its contact.

Contact force model (per contact c):

    dphi_c = penetration / s_c          angular interference [rad]
    N_c    = k * dphi_c / s_c           normal force from torsional stiffness
    F     += mu * (1 + c_irr * irregularity) * N_c + max(0, -n_z) * N_c

with s_c the contact's arc length from the finger base, n the envelope's
inward normal at the contact (its -Z component cages the object against the
axial pull), mu the friction coefficient and c_irr the irregularity gain.
Absolute forces are model estimates; the structure guarantees the observed
trends -- strictly increasing in k, non-decreasing in phi while contacts
persist, and rougher envelopes of equal size grip harder (ball < pyramid <
box).
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass

import numpy as np

from .arc_geometry import ArcParams, RobotGeometry, wrap_angle
from .empirical_maps import ShapeStiffnessTable
from .errors import DomainError, NoGraspError
from .kinematics import curve_positions

_SQRT5 = math.sqrt(5.0)

STUDY_CSV_HEADER = ("object", "phi_rad", "k_nm_per_rad", "p1_bar", "p2_bar", "failure_force_n")


class ObjectShape(enum.Enum):
    BALL = "ball"
    PYRAMID = "pyramid"
    BOX = "box"


# Envelope roughness on a 0 (smooth) .. 1 (highly faceted) scale.
DEFAULT_IRREGULARITY = {
    ObjectShape.BALL: 0.0,
    ObjectShape.PYRAMID: 0.5,
    ObjectShape.BOX: 1.0,
}


@dataclass(frozen=True)
class GraspObject:
    """A graspable test object centred on the palm axis.

    characteristic_size is the sphere diameter, cube edge, or pyramid base
    edge (= height) [m].  The pyramid sits apex toward the palm.
    """

    shape: ObjectShape
    characteristic_size: float = 0.10
    surface_irregularity: float | None = None  # None -> shape default
    mass: float = 0.1  # [kg], descriptive only; the pull test is quasi-static

    def __post_init__(self):
        if not (self.characteristic_size > 0.0 and math.isfinite(self.characteristic_size)):
            raise DomainError(
                f"characteristic_size must be > 0, got {self.characteristic_size}"
            )
        if self.mass <= 0.0:
            raise DomainError(f"mass must be > 0, got {self.mass}")
        irr = self.surface_irregularity
        if irr is None:
            irr = DEFAULT_IRREGULARITY[self.shape]
        if not 0.0 <= irr <= 1.0:
            raise DomainError(f"surface_irregularity must be in [0, 1], got {irr}")
        object.__setattr__(self, "surface_irregularity", float(irr))


@dataclass(frozen=True)
class GripperConfig:
    """Gripper layout and contact-model constants."""

    palm_radius: float = 0.06                    # finger mount circle [m]
    finger_geom: RobotGeometry = RobotGeometry()
    mount_angles: tuple[float, ...] = (0.0, 2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0)
    fingers_inward: bool = True                  # bend toward the palm axis
    object_center_height: float = 0.09           # envelope centre above palm [m]
    contact_samples: int = 200                   # curve samples per finger
    irregularity_gain: float = 0.5               # c_irr in the force model

    def __post_init__(self):
        if self.palm_radius <= 0.0:
            raise DomainError(f"palm_radius must be > 0, got {self.palm_radius}")
        if len(self.mount_angles) < 1:
            raise DomainError("need at least one finger")
        spots = sorted(wrap_angle(a) for a in self.mount_angles)
        gaps = [b - a for a, b in zip(spots, spots[1:])]
        gaps.append(2.0 * math.pi - (spots[-1] - spots[0]))
        if len(spots) > 1 and min(gaps) < 1e-9:
            raise DomainError("mount_angles must be distinct modulo 2*pi")
        if self.contact_samples < 2:
            raise DomainError(f"contact_samples must be >= 2, got {self.contact_samples}")
        if self.irregularity_gain < 0.0:
            raise DomainError(f"irregularity_gain must be >= 0, got {self.irregularity_gain}")
        if self.object_center_height <= 0.0:
            raise DomainError(
                f"object_center_height must be > 0, got {self.object_center_height}"
            )


@dataclass(frozen=True)
class Contact:
    """Innermost penetration of one finger into the object envelope."""

    finger: int
    xi: float                 # arc fraction of the contact
    point: np.ndarray         # contact location [m]
    inward_normal: np.ndarray # unit envelope normal, pointing into the object
    penetration: float        # depth of the free curve inside the envelope [m]
    moment_arm: float         # arc length from finger base to contact [m]

    @property
    def angular_interference(self) -> float:
        """Bend-back angle the envelope imposes on the finger [rad]."""
        return self.penetration / self.moment_arm


@dataclass(frozen=True)
class GraspState:
    """Commanded finger configuration plus resolved contacts (None = free)."""

    config: GripperConfig
    obj: GraspObject
    phi: float
    stiffness: float
    contacts: tuple[Contact | None, ...]

    @property
    def n_contacts(self) -> int:
        return sum(c is not None for c in self.contacts)


# ---------------------------------------------------------------------------
# envelope penetration (positive inside, negative outside)


def _ball_depths(q: np.ndarray, size: float) -> np.ndarray:
    r = 0.5 * size
    return r - np.linalg.norm(q, axis=1)


def _box_depths(q: np.ndarray, size: float) -> np.ndarray:
    half = 0.5 * size
    return (half - np.abs(q)).min(axis=1)


def _pyramid_depths(q: np.ndarray, size: float) -> np.ndarray:
    """Square pyramid, apex down at -size/2, base edge = height = size.

    Interior distance of a convex solid is the least distance to its face
    planes: the base plane z = +size/2 and four slants 2|x| - z <= size/2,
    2|y| - z <= size/2 (unit normals carry the 1/sqrt(5)).
    """
    half = 0.5 * size
    base = half - q[:, 2]
    sx = (half - (2.0 * np.abs(q[:, 0]) - q[:, 2])) / _SQRT5
    sy = (half - (2.0 * np.abs(q[:, 1]) - q[:, 2])) / _SQRT5
    return np.minimum(base, np.minimum(sx, sy))


def _penetration_depths(obj: GraspObject, q: np.ndarray) -> np.ndarray:
    if obj.shape is ObjectShape.BALL:
        return _ball_depths(q, obj.characteristic_size)
    if obj.shape is ObjectShape.BOX:
        return _box_depths(q, obj.characteristic_size)
    return _pyramid_depths(q, obj.characteristic_size)


def _inward_normal(q: np.ndarray) -> np.ndarray:
    """Unit inward normal at interior point q (object-centred frame).

    Points from the contact toward the envelope centre.  For the ball this
    is the exact surface normal; for the faceted solids it is a smoothed
    convex-envelope normal.  A nearest-face normal would flip direction when
    a contact slides across a facet edge, making the pull-out force jump
    discontinuously under a small change of bend angle, so the continuous
    central direction is used for every shape.
    """
    d = np.linalg.norm(q)
    if d < 1e-12:
        return np.array([0.0, 0.0, -1.0])  # degenerate: centre hit
    return -q / d


# ---------------------------------------------------------------------------
# grasp resolution


def close_grasp(
    config: GripperConfig, obj: GraspObject, phi: float, stiffness: float
) -> GraspState:
    """Close all fingers to bend angle phi at bending stiffness ``stiffness``.

    Resolves the innermost envelope contact per finger.  Raises NoGraspError
    if nothing touches (e.g. straight fingers around a small object).
    """
    geom = config.finger_geom
    if not 0.0 <= phi <= geom.phi_max:
        raise DomainError(f"phi out of [0, {geom.phi_max:g}], got {phi}")
    if not (stiffness > 0.0 and math.isfinite(stiffness)):
        raise DomainError(f"stiffness must be > 0, got {stiffness}")
    centre = np.array([0.0, 0.0, config.object_center_height])
    # skip xi=0: the mount point has no moment arm and cannot be a contact
    xis = np.linspace(0.0, 1.0, config.contact_samples + 1)[1:]
    contacts: list[Contact | None] = []
    for idx, alpha in enumerate(config.mount_angles):
        base = np.array(
            [config.palm_radius * math.cos(alpha), config.palm_radius * math.sin(alpha), 0.0]
        )
        theta = alpha + math.pi if config.fingers_inward else alpha
        pts = base + curve_positions(ArcParams(phi, theta), xis, geom)
        depths = _penetration_depths(obj, pts - centre)
        i_best = int(np.argmax(depths))
        if depths[i_best] <= 0.0:
            contacts.append(None)
            continue
        xi_c = float(xis[i_best])
        point = pts[i_best]
        contacts.append(
            Contact(
                finger=idx,
                xi=xi_c,
                point=point,
                inward_normal=_inward_normal(point - centre),
                penetration=float(depths[i_best]),
                moment_arm=xi_c * geom.section_length,
            )
        )
    if all(c is None for c in contacts):
        raise NoGraspError(
            f"no finger reaches the {obj.shape.value} at phi={phi:g} rad"
        )
    return GraspState(config, obj, phi, stiffness, tuple(contacts))


def contact_normal_force(state: GraspState, contact: Contact) -> float:
    """Normal force [N] one contact applies to the object."""
    return state.stiffness * contact.angular_interference / contact.moment_arm


def failure_force(
    state: GraspState,
    mu: float = 0.8,
    irregularity_gain: float | None = None,
) -> float:
    """Axial pull force [N] at which the grasp fails.

    Sums, per contact, the friction capacity (scaled up on irregular
    envelopes) and the component of the normal force that directly opposes
    the pull.  ``irregularity_gain`` defaults to the grasp's config value.
    """
    if mu < 0.0:
        raise DomainError(f"mu must be >= 0, got {mu}")
    c_irr = state.config.irregularity_gain if irregularity_gain is None else irregularity_gain
    if c_irr < 0.0:
        raise DomainError(f"irregularity_gain must be >= 0, got {c_irr}")
    live = [c for c in state.contacts if c is not None]
    if not live:
        raise DomainError("grasp state has no contacts")
    mu_eff = mu * (1.0 + c_irr * state.obj.surface_irregularity)
    total = 0.0
    for c in live:
        n_c = contact_normal_force(state, c)
        total += mu_eff * n_c + max(0.0, -float(c.inward_normal[2])) * n_c
    return total


# ---------------------------------------------------------------------------
# study sweep


@dataclass(frozen=True)
class StudyRow:
    """One grip-study record; failure_force is None when nothing touches."""

    object_name: str
    phi: float
    stiffness: float
    p1: float
    p2: float
    failure_force: float | None


def sweep_grip_study(
    config: GripperConfig,
    objects,
    table: ShapeStiffnessTable,
    mu: float = 0.8,
) -> list[StudyRow]:
    """Failure forces over every (object, table operating point) pair.

    Rows follow the given object order, then table order (phi blocks by
    ascending P1), mirroring the pull-off bench sweep.
    """
    rows: list[StudyRow] = []
    for obj in objects:
        for phi, p1, p2, k in zip(table.phi, table.p1, table.p2, table.k):
            try:
                state = close_grasp(config, obj, float(phi), float(k))
                force: float | None = failure_force(state, mu)
            except NoGraspError:
                force = None
            rows.append(
                StudyRow(obj.shape.value, float(phi), float(k), float(p1), float(p2), force)
            )
    return rows


def write_study_csv(rows, file) -> None:
    """Write study rows as CSV; missing grasps produce an empty force field."""

    def _write(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(STUDY_CSV_HEADER)
        for r in rows:
            force = "" if r.failure_force is None else f"{r.failure_force:.12g}"
            w.writerow(
                [r.object_name, f"{r.phi:.12g}", f"{r.stiffness:.12g}",
                 f"{r.p1:.12g}", f"{r.p2:.12g}", force]
            )

    if isinstance(file, str):
        with open(file, "w", newline="") as fh:
            _write(fh)
    else:
        _write(file)
