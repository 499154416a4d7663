"""Bending-stiffness estimation from motion-tracker and load-cell data.

The bench procedure: hold a pressure set-point, record the three backbone
markers (base / mid / tip), apply a known tip torque step delta_tau, record
again.  Each recording is time-averaged, a circular arc is fitted through
the mean marker positions, and the rotational stiffness follows as

    K = delta_tau / delta_phi      [Nm/rad]

Pull-off failure forces come from a load-cell trace smoothed with a
trailing moving average before taking the peak.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .arc_geometry import ArcParams, RobotGeometry, wrap_angle
from .errors import DataError, DomainError, IndeterminateStiffnessError
from .kinematics import pose_at

# Smallest bend change treated as measurable [rad].
MIN_MEASURABLE_DPHI = 1e-4

# Marker arc fractions: base, mid, tip.
MARKER_XIS = (0.0, 0.5, 1.0)

TRACKER_CSV_HEADER = ("t", "bx", "by", "bz", "mx", "my", "mz", "tx", "ty", "tz")
FORCE_CSV_HEADER = ("t", "f")


@dataclass(frozen=True)
class TrackerSample:
    """One motion-capture frame: time [s] and (3, 3) marker positions [m].

    Rows are base, mid, tip in the robot base frame.
    """

    time: float
    markers: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.markers, dtype=float)
        if m.shape != (3, 3) or not np.all(np.isfinite(m)):
            raise DataError(f"markers must be a finite (3, 3) array, got shape {m.shape}")
        object.__setattr__(self, "markers", m)


@dataclass(frozen=True)
class PerturbationRecord:
    """A baseline/perturbed tracker pair with the applied torque step."""

    baseline: tuple[TrackerSample, ...]
    perturbed: tuple[TrackerSample, ...]
    delta_torque: float  # applied tip torque step [Nm]

    def __post_init__(self):
        object.__setattr__(self, "baseline", tuple(self.baseline))
        object.__setattr__(self, "perturbed", tuple(self.perturbed))
        if not self.baseline or not self.perturbed:
            raise DataError("both tracker sequences must be non-empty")
        if not (math.isfinite(self.delta_torque) and self.delta_torque > 0.0):
            raise DomainError(f"delta_torque must be > 0, got {self.delta_torque}")


@dataclass(frozen=True)
class ForceTrace:
    """A load-cell recording: times [s] and forces [N]."""

    times: np.ndarray
    forces: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        f = np.asarray(self.forces, dtype=float)
        if t.ndim != 1 or t.shape != f.shape or t.size == 0:
            raise DataError("times and forces must be equal-length non-empty 1-D arrays")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(f))):
            raise DataError("force trace contains non-finite values")
        if np.any(f < 0.0):
            raise DataError("forces must be >= 0")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "forces", f)


# ---------------------------------------------------------------------------
# arc fitting


def mean_markers(samples) -> np.ndarray:
    """Time-averaged (3, 3) marker positions of a tracker sequence."""
    samples = tuple(samples)
    if not samples:
        raise DataError("cannot average an empty tracker sequence")
    return np.mean([s.markers for s in samples], axis=0)


def fit_arc(
    markers: np.ndarray,
    geom: RobotGeometry,
    straight_tol: float = 1e-9,
) -> ArcParams:
    """Fit arc parameters to base / mid / tip marker positions.

    The three markers are projected onto their common plane where the
    circumscribed circle gives the arc radius; phi is the angle subtended
    by the base-to-tip chord, phi = 2 asin(chord / (2 rho)).  theta is read
    off the bending direction in the base XY plane (positions suffice; no
    marker orientations are used).  Collinear markers within ``straight_tol``
    (relative to the marker spacing) fit the straight pose.
    """
    pts = np.asarray(markers, dtype=float)
    if pts.shape != (3, 3) or not np.all(np.isfinite(pts)):
        raise DataError(f"expected finite (3, 3) marker array, got shape {pts.shape}")
    base, mid, tip = pts
    v_mid = mid - base
    v_tip = tip - base
    n_mid = np.linalg.norm(v_mid)
    n_tip = np.linalg.norm(v_tip)
    n_sep = np.linalg.norm(tip - mid)
    scale = geom.section_length
    if min(n_mid, n_tip, n_sep) < 1e-9 * scale:
        raise DataError("degenerate marker set: two markers coincide")

    normal = np.cross(v_mid, v_tip)
    n_norm = np.linalg.norm(normal)
    if n_norm <= straight_tol * n_mid * n_tip:
        return ArcParams(0.0, 0.0)

    # Circumcircle in the markers' common plane.
    e1 = v_mid / n_mid
    e2 = np.cross(normal / n_norm, e1)
    # base -> (0, 0), mid -> (b1, 0), tip -> (c1, c2)
    b1 = n_mid
    c1 = float(v_tip @ e1)
    c2 = float(v_tip @ e2)
    # perpendicular bisector intersection (c2 != 0 since markers not collinear)
    u1 = b1 / 2.0
    u2 = (c1 * c1 + c2 * c2 - c1 * b1) / (2.0 * c2)
    rho = math.hypot(u1, u2)

    chord = n_tip
    half = min(1.0, chord / (2.0 * rho))
    phi = 2.0 * math.asin(half)

    # Bend direction from the in-plane XY excursions of both moving markers.
    wx = v_mid[0] + v_tip[0]
    wy = v_mid[1] + v_tip[1]
    theta = wrap_angle(math.atan2(wy, wx))
    return ArcParams(phi, theta)


def estimate_stiffness(record: PerturbationRecord, geom: RobotGeometry) -> float:
    """Rotational stiffness K = delta_tau / |delta_phi| [Nm/rad].

    Both sequences are time-averaged before fitting.  A bend change at or
    below MIN_MEASURABLE_DPHI cannot be attributed to the torque step and
    raises IndeterminateStiffnessError.
    """
    phi_base = fit_arc(mean_markers(record.baseline), geom).phi
    phi_pert = fit_arc(mean_markers(record.perturbed), geom).phi
    dphi = abs(phi_pert - phi_base)
    if dphi <= MIN_MEASURABLE_DPHI:
        raise IndeterminateStiffnessError(
            f"bend change {dphi:.3e} rad is below the measurable threshold "
            f"{MIN_MEASURABLE_DPHI:g} rad"
        )
    return record.delta_torque / dphi


# ---------------------------------------------------------------------------
# force traces


def moving_average(trace: ForceTrace, window: int) -> ForceTrace:
    """Trailing moving average; the first window-1 outputs use partial windows."""
    if window < 1:
        raise DomainError(f"window must be >= 1, got {window}")
    n = trace.forces.size
    sums = np.convolve(trace.forces, np.ones(window))[:n]
    counts = np.minimum(np.arange(1, n + 1), window)
    return ForceTrace(trace.times.copy(), sums / counts)


def peak_failure_force(trace: ForceTrace, window: int = 50) -> float:
    """Peak of the moving-average-filtered trace [N]."""
    return float(moving_average(trace, window).forces.max())


# ---------------------------------------------------------------------------
# CSV wire formats


def read_tracker_csv(path: str) -> list[TrackerSample]:
    """Read a tracker sequence (header t,bx,by,bz,mx,my,mz,tx,ty,tz)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != TRACKER_CSV_HEADER:
            raise DataError(
                f"{path}: expected header {','.join(TRACKER_CSV_HEADER)}, got {header}"
            )
        samples = []
        prev_t = None
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 10:
                raise DataError(f"{path}:{lineno}: expected 10 fields, got {len(row)}")
            try:
                vals = [float(v) for v in row]
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from exc
            t = vals[0]
            if prev_t is not None and t <= prev_t:
                raise DataError(f"{path}:{lineno}: time stamps must strictly increase")
            prev_t = t
            samples.append(TrackerSample(t, np.array(vals[1:]).reshape(3, 3)))
    if not samples:
        raise DataError(f"{path}: no tracker samples")
    return samples


def write_tracker_csv(samples, file) -> None:
    """Write a tracker sequence in the wire format accepted by read_tracker_csv."""

    def _write(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRACKER_CSV_HEADER)
        for s in samples:
            w.writerow(
                [f"{s.time:.6f}"] + [f"{v:.9f}" for v in np.asarray(s.markers).ravel()]
            )

    if isinstance(file, str):
        with open(file, "w", newline="") as fh:
            _write(fh)
    else:
        _write(file)


def read_force_csv(path: str) -> ForceTrace:
    """Read a load-cell trace (header t,f)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != FORCE_CSV_HEADER:
            raise DataError(f"{path}: expected header t,f, got {header}")
        times, forces = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise DataError(f"{path}:{lineno}: expected 2 fields, got {len(row)}")
            try:
                times.append(float(row[0]))
                forces.append(float(row[1]))
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from exc
    if not times:
        raise DataError(f"{path}: no force samples")
    return ForceTrace(np.array(times), np.array(forces))


# ---------------------------------------------------------------------------
# synthetic data (desk-scale stand-in for the motion-capture bench)


def synthetic_tracker_sequence(
    arc: ArcParams,
    geom: RobotGeometry,
    n: int = 50,
    rate_hz: float = 100.0,
    noise_sigma: float = 0.0,
    rng: np.random.Generator | None = None,
    t0: float = 0.0,
) -> list[TrackerSample]:
    """Tracker frames of a section held at ``arc``.

    Marker positions come from the forward kinematics at xi = 0, 0.5, 1;
    optional iid Gaussian noise (sigma in metres) lands on every coordinate.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if noise_sigma < 0.0:
        raise DomainError(f"noise_sigma must be >= 0, got {noise_sigma}")
    markers = np.array([pose_at(arc, xi, geom).position for xi in MARKER_XIS])
    if noise_sigma > 0.0 and rng is None:
        rng = np.random.default_rng()
    out = []
    for i in range(n):
        m = markers
        if noise_sigma > 0.0:
            m = markers + rng.normal(0.0, noise_sigma, size=(3, 3))
        out.append(TrackerSample(t0 + i / rate_hz, m))
    return out


def synthetic_perturbation_record(
    phi: float,
    theta: float,
    k_true: float,
    delta_torque: float,
    geom: RobotGeometry,
    n: int = 50,
    noise_sigma: float = 0.0,
    rng: np.random.Generator | None = None,
) -> PerturbationRecord:
    """Baseline/perturbed pair for a linear-spring section of stiffness k_true.

    The torque step advances the bend by delta_torque / k_true, so feeding
    the record back through estimate_stiffness recovers k_true exactly in
    the noise-free case.
    """
    if k_true <= 0.0:
        raise DomainError(f"k_true must be > 0, got {k_true}")
    baseline = synthetic_tracker_sequence(
        ArcParams(phi, theta), geom, n=n, noise_sigma=noise_sigma, rng=rng
    )
    perturbed = synthetic_tracker_sequence(
        ArcParams(phi + delta_torque / k_true, theta),
        geom,
        n=n,
        noise_sigma=noise_sigma,
        rng=rng,
    )
    return PerturbationRecord(tuple(baseline), tuple(perturbed), delta_torque)
