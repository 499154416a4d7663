"""Empirical pressure/stiffness calibration maps.

Two kinds of bench calibration ship with the package (see hsrkit/data):

* stiffness grids  -- bending stiffness K [Nm/rad] measured over a grid of
  antagonistic chamber pressures (P1, P2) [bar], one grid for the actuator
  bundle alone and one for the full section with its backbone.  The rig only
  measures the P2 >= P1 half, so the lower triangle of the grid is
  unmeasured; those cells are hard domain boundaries, never extrapolated.

* shape/pressure/stiffness table -- operating points (phi, P1, P2, K)
  demonstrating decoupled shape and stiffness control: each bend angle block
  spans a range of stiffnesses at (nearly) constant shape.

Queries interpolate linearly and are exact at measured nodes.  Grid cells
along the measured diagonal have only three measured corners and use the
matching triangular patch, which keeps the interpolant continuous and
monotone wherever the data are monotone.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np
from scipy.interpolate import LinearNDInterpolator

from .errors import DataError, DomainError, InfeasibleStiffnessError, OutOfDomainError

GRID_CSV_HEADER = ("p1_bar", "p2_bar", "k_nm_per_rad")
SHAPE_CSV_HEADER = ("phi_rad", "p1_bar", "p2_bar", "k_nm_per_rad")

_DIAG_TOL = 1e-12  # slack when testing the P2 >= P1 convention


class GridLabel(enum.Enum):
    WITHOUT_BACKBONE = "without_backbone"
    WITH_BACKBONE = "with_backbone"


@dataclass(frozen=True)
class StiffnessGrid:
    """Stiffness samples on a (P1, P2) pressure grid; NaN marks unmeasured."""

    p1_axis: np.ndarray  # strictly increasing [bar]
    p2_axis: np.ndarray  # strictly increasing [bar]
    k: np.ndarray        # shape (len(p1_axis), len(p2_axis)) [Nm/rad]
    label: GridLabel | None = None

    def __post_init__(self):
        p1 = np.asarray(self.p1_axis, dtype=float)
        p2 = np.asarray(self.p2_axis, dtype=float)
        k = np.asarray(self.k, dtype=float)
        if p1.ndim != 1 or p2.ndim != 1 or p1.size < 2 or p2.size < 2:
            raise DataError("pressure axes must be 1-D with at least two values")
        if np.any(np.diff(p1) <= 0.0) or np.any(np.diff(p2) <= 0.0):
            raise DataError("pressure axes must be strictly increasing")
        if k.shape != (p1.size, p2.size):
            raise DataError(
                f"k must have shape ({p1.size}, {p2.size}), got {k.shape}"
            )
        if not np.any(np.isfinite(k)):
            raise DataError("grid has no measured cells")
        for i in range(p1.size):
            for j in range(p2.size):
                if np.isfinite(k[i, j]) and p2[j] < p1[i] - _DIAG_TOL:
                    raise DataError(
                        f"measured cell at P1={p1[i]:g}, P2={p2[j]:g} violates "
                        "the P2 >= P1 actuation convention"
                    )
        _check_monotone(k, p1, p2)
        object.__setattr__(self, "p1_axis", p1)
        object.__setattr__(self, "p2_axis", p2)
        object.__setattr__(self, "k", k)

    @property
    def n_measured(self) -> int:
        return int(np.sum(np.isfinite(self.k)))


def _check_monotone(k: np.ndarray, p1: np.ndarray, p2: np.ndarray) -> None:
    """Measured stiffness must be non-decreasing along each axis."""
    for i in range(k.shape[0]):
        row = k[i][np.isfinite(k[i])]
        if np.any(np.diff(row) < 0.0):
            raise DataError(f"stiffness decreases along the row P1={p1[i]:g}")
    for j in range(k.shape[1]):
        col = k[:, j][np.isfinite(k[:, j])]
        if np.any(np.diff(col) < 0.0):
            raise DataError(f"stiffness decreases along the column P2={p2[j]:g}")


@dataclass(frozen=True)
class ShapeStiffnessTable:
    """Operating points grouped in bend-angle blocks.

    Within a block (fixed phi) rows are ordered by P1, and both P2 and K
    must increase strictly with P1 -- that is what makes the inverse lookup
    pressures_for_shape_and_stiffness well defined.
    """

    phi: np.ndarray  # [rad], one entry per row
    p1: np.ndarray   # [bar]
    p2: np.ndarray   # [bar]
    k: np.ndarray    # [Nm/rad]

    def __post_init__(self):
        phi = np.asarray(self.phi, dtype=float)
        p1 = np.asarray(self.p1, dtype=float)
        p2 = np.asarray(self.p2, dtype=float)
        k = np.asarray(self.k, dtype=float)
        if not (phi.shape == p1.shape == p2.shape == k.shape) or phi.ndim != 1:
            raise DataError("table columns must be equal-length 1-D arrays")
        if phi.size == 0:
            raise DataError("table is empty")
        order = np.lexsort((p1, phi))
        phi, p1, p2, k = phi[order], p1[order], p2[order], k[order]
        blocks = np.unique(phi)
        size = None
        for b in blocks:
            sel = phi == b
            if size is None:
                size = int(np.sum(sel))
            elif int(np.sum(sel)) != size:
                raise DataError("all phi blocks must contain the same number of rows")
            if size < 2:
                raise DataError("each phi block needs at least two rows")
            for name, col in (("P1", p1[sel]), ("P2", p2[sel]), ("K", k[sel])):
                if np.any(np.diff(col) <= 0.0):
                    raise DataError(
                        f"{name} must increase strictly with P1 in the "
                        f"phi={b:g} block"
                    )
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)
        object.__setattr__(self, "k", k)

    @property
    def block_phis(self) -> np.ndarray:
        return np.unique(self.phi)

    def block(self, phi: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(p1, p2, k) rows of the block at a tabulated phi."""
        sel = self.phi == phi
        if not np.any(sel):
            raise DomainError(f"no block tabulated at phi={phi:g}")
        return self.p1[sel], self.p2[sel], self.k[sel]


# ---------------------------------------------------------------------------
# loading


def _label_from_name(name: str) -> GridLabel | None:
    if "without_backbone" in name:
        return GridLabel.WITHOUT_BACKBONE
    if "with_backbone" in name:
        return GridLabel.WITH_BACKBONE
    return None


def load_table(path: str) -> StiffnessGrid | ShapeStiffnessTable:
    """Load a calibration CSV, dispatching on its header."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataError(f"{path}: empty file")
        header = tuple(h.strip() for h in header)
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise DataError(
                    f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}"
                )
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from exc
    if header == GRID_CSV_HEADER:
        return _grid_from_rows(rows, path, _label_from_name(path))
    if header == SHAPE_CSV_HEADER:
        data = np.asarray(rows, dtype=float)
        if data.size == 0:
            raise DataError(f"{path}: no data rows")
        return ShapeStiffnessTable(data[:, 0], data[:, 1], data[:, 2], data[:, 3])
    raise DataError(f"{path}: unrecognised header {','.join(header)}")


def _grid_from_rows(rows, path: str, label: GridLabel | None) -> StiffnessGrid:
    if not rows:
        raise DataError(f"{path}: no data rows")
    data = np.asarray(rows, dtype=float)
    p1_axis = np.unique(data[:, 0])
    p2_axis = np.unique(data[:, 1])
    k = np.full((p1_axis.size, p2_axis.size), np.nan)
    for p1v, p2v, kv in data:
        i = int(np.searchsorted(p1_axis, p1v))
        j = int(np.searchsorted(p2_axis, p2v))
        if np.isfinite(k[i, j]):
            raise DataError(f"{path}: duplicate cell at P1={p1v:g}, P2={p2v:g}")
        k[i, j] = kv
    try:
        return StiffnessGrid(p1_axis, p2_axis, k, label)
    except DataError as exc:
        raise DataError(f"{path}: {exc}") from exc


def bundled_data_dir() -> str:
    """Directory holding the calibration tables shipped with the package."""
    return str(resources.files("hsrkit").joinpath("data"))


def load_bundled_grid(label: GridLabel | str) -> StiffnessGrid:
    if isinstance(label, str):
        label = GridLabel(label)
    path = f"{bundled_data_dir()}/table1_{label.value}.csv"
    grid = load_table(path)
    assert isinstance(grid, StiffnessGrid)
    return grid


def load_bundled_shape_table() -> ShapeStiffnessTable:
    table = load_table(f"{bundled_data_dir()}/table2_shape_pressure_stiffness.csv")
    assert isinstance(table, ShapeStiffnessTable)
    return table


# ---------------------------------------------------------------------------
# grid queries


def stiffness_at(grid: StiffnessGrid, p1: float, p2: float) -> float:
    """Interpolated stiffness [Nm/rad] at chamber pressures (p1, p2) [bar].

    Bilinear inside fully measured cells; cells cut by the P2 >= P1
    diagonal interpolate linearly over their three measured corners.
    Queries outside the measured region raise OutOfDomainError.
    """
    a1, a2, k = grid.p1_axis, grid.p2_axis, grid.k
    if not (math.isfinite(p1) and math.isfinite(p2)):
        raise DomainError(f"pressures must be finite, got ({p1}, {p2})")
    if p1 < a1[0] or p1 > a1[-1] or p2 < a2[0] or p2 > a2[-1]:
        raise OutOfDomainError(
            f"(P1={p1:g}, P2={p2:g}) outside the measured pressure range "
            f"[{a1[0]:g}, {a1[-1]:g}] x [{a2[0]:g}, {a2[-1]:g}]"
        )
    if p2 < p1 - _DIAG_TOL:
        raise OutOfDomainError(
            f"(P1={p1:g}, P2={p2:g}) lies in the unmeasured P2 < P1 region"
        )
    i = min(int(np.searchsorted(a1, p1, side="right")) - 1, a1.size - 2)
    j = min(int(np.searchsorted(a2, p2, side="right")) - 1, a2.size - 2)
    u = (p1 - a1[i]) / (a1[i + 1] - a1[i])
    v = (p2 - a2[j]) / (a2[j + 1] - a2[j])
    k00 = k[i, j]
    k01 = k[i, j + 1]
    k10 = k[i + 1, j]
    k11 = k[i + 1, j + 1]
    finite = [np.isfinite(c) for c in (k00, k01, k10, k11)]
    if all(finite):
        return float(
            (1.0 - u) * ((1.0 - v) * k00 + v * k01) + u * ((1.0 - v) * k10 + v * k11)
        )
    if finite == [True, True, False, True]:
        # diagonal cell: measured corners (0,0), (0,1), (1,1)
        return float(k00 + u * (k11 - k01) + v * (k01 - k00))
    raise OutOfDomainError(
        f"(P1={p1:g}, P2={p2:g}) falls in an unmeasured grid cell"
    )


def stiffness_range_increase(grid: StiffnessGrid) -> float:
    """Stiffness span over natural stiffness, in percent.

    100 * (K_max - K_natural) / K_natural, with K_natural the unpressurised
    (0, 0) cell and K_max the largest measured cell.
    """
    if grid.p1_axis[0] != 0.0 or grid.p2_axis[0] != 0.0:
        raise DomainError("grid does not include the zero-pressure cell")
    k_nat = grid.k[0, 0]
    if not np.isfinite(k_nat):
        raise DomainError("zero-pressure cell is unmeasured")
    k_max = float(np.nanmax(grid.k))
    return 100.0 * (k_max - k_nat) / k_nat


# ---------------------------------------------------------------------------
# shape table queries


def _virtual_block(
    table: ShapeStiffnessTable, phi: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rows of the table linearly interpolated in phi between blocks."""
    phis = table.block_phis
    if not math.isfinite(phi) or phi < phis[0] or phi > phis[-1]:
        raise DomainError(
            f"phi out of the tabulated range [{phis[0]:g}, {phis[-1]:g}], got {phi}"
        )
    i = min(int(np.searchsorted(phis, phi, side="right")) - 1, phis.size - 2)
    s = (phi - phis[i]) / (phis[i + 1] - phis[i])
    p1_lo, p2_lo, k_lo = table.block(phis[i])
    p1_hi, p2_hi, k_hi = table.block(phis[i + 1])
    p1 = (1.0 - s) * p1_lo + s * p1_hi
    p2 = (1.0 - s) * p2_lo + s * p2_hi
    k = (1.0 - s) * k_lo + s * k_hi
    return p1, p2, k


def achievable_stiffness_range(table: ShapeStiffnessTable, phi: float) -> tuple[float, float]:
    """Stiffness interval [K_min, K_max] reachable at bend phi."""
    _, _, k = _virtual_block(table, phi)
    return float(k[0]), float(k[-1])


def pressures_for_shape_and_stiffness(
    table: ShapeStiffnessTable, phi: float, k: float
) -> tuple[float, float]:
    """Chamber pressures (P1, P2) [bar] realising bend phi at stiffness k.

    Piecewise linear: first in phi between tabulated blocks, then in K along
    the (virtual) block.  Tabulated operating points are returned exactly.
    Raises InfeasibleStiffnessError (with the achievable interval) when k
    falls outside the block's stiffness span.
    """
    p1_rows, p2_rows, k_rows = _virtual_block(table, phi)
    if not math.isfinite(k):
        raise DomainError(f"k must be finite, got {k}")
    if k < k_rows[0] or k > k_rows[-1]:
        raise InfeasibleStiffnessError(k, float(k_rows[0]), float(k_rows[-1]))
    i = min(int(np.searchsorted(k_rows, k, side="right")) - 1, k_rows.size - 2)
    t = (k - k_rows[i]) / (k_rows[i + 1] - k_rows[i])
    p1 = (1.0 - t) * p1_rows[i] + t * p1_rows[i + 1]
    p2 = (1.0 - t) * p2_rows[i] + t * p2_rows[i + 1]
    return float(p1), float(p2)


def stiffness_for_pressure(table: ShapeStiffnessTable, phi: float, p1: float) -> float:
    """Forward interpolant along a block: stiffness at bend phi and pressure P1.

    Inverse companion of pressures_for_shape_and_stiffness; round trips with
    it to floating-point accuracy.
    """
    p1_rows, _, k_rows = _virtual_block(table, phi)
    if p1 < p1_rows[0] or p1 > p1_rows[-1]:
        raise DomainError(
            f"P1 out of the block range [{p1_rows[0]:g}, {p1_rows[-1]:g}], got {p1}"
        )
    i = min(int(np.searchsorted(p1_rows, p1, side="right")) - 1, p1_rows.size - 2)
    t = (p1 - p1_rows[i]) / (p1_rows[i + 1] - p1_rows[i])
    return float((1.0 - t) * k_rows[i] + t * k_rows[i + 1])


def shape_for_pressures(table: ShapeStiffnessTable, p1: float, p2: float) -> float:
    """Bend angle phi [rad] at chamber pressures (p1, p2) [bar].

    Piecewise-linear interpolation on the triangulated tabulated points;
    exact at the points themselves.  Queries outside their convex hull raise
    OutOfDomainError.
    """
    if not (math.isfinite(p1) and math.isfinite(p2)):
        raise DomainError(f"pressures must be finite, got ({p1}, {p2})")
    pts = np.column_stack((table.p1, table.p2))
    interp = LinearNDInterpolator(pts, table.phi)
    val = float(interp(p1, p2))
    if math.isnan(val):
        raise OutOfDomainError(
            f"(P1={p1:g}, P2={p2:g}) outside the tabulated operating region"
        )
    return val
