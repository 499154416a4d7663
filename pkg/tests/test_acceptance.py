"""Top-level acceptance gate.

One test per shipped guarantee, each printing a single
``ACCEPTANCE <n> PASS|FAIL`` line (run with ``pytest -s`` to see them all).
The calibration literals embedded here were transcribed independently of
the bundled CSV files, so these tests catch silent data edits.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from hsrkit import (
    ArcParams,
    GraspObject,
    GripperConfig,
    ObjectShape,
    RobotGeometry,
    arc_from_joints,
    close_grasp,
    estimate_stiffness,
    failure_force,
    joints_from_arc,
    load_bundled_grid,
    load_bundled_shape_table,
    pose_at,
    pressures_for_shape_and_stiffness,
    sample_workspace,
    stiffness_at,
    stiffness_for_pressure,
    stiffness_range_increase,
    sweep_grip_study,
    synthetic_perturbation_record,
)
from test_kinematics import oracle_pose_matrix

TWO_PI = 2.0 * math.pi


@contextmanager
def criterion(num: int, title: str):
    try:
        yield
    except Exception:
        print(f"ACCEPTANCE {num} FAIL: {title}")
        raise
    print(f"ACCEPTANCE {num} PASS: {title}")


# ---------------------------------------------------------------------------
# reference values, transcribed by hand from the stiffness bench records


# (P1 [bar], P2 [bar]) -> K [Nm/rad], actuator bundle without backbone
K_WITHOUT = {
    (3.0, 3.0): 1.39,
    (2.5, 2.5): 1.22, (2.5, 3.0): 1.32,
    (2.0, 2.0): 0.94, (2.0, 2.5): 1.07, (2.0, 3.0): 1.12,
    (1.5, 1.5): 0.62, (1.5, 2.0): 0.71, (1.5, 2.5): 0.86, (1.5, 3.0): 0.92,
    (1.0, 1.0): 0.49, (1.0, 1.5): 0.57, (1.0, 2.0): 0.63, (1.0, 2.5): 0.70,
    (1.0, 3.0): 0.73,
    (0.5, 0.5): 0.42, (0.5, 1.0): 0.46, (0.5, 1.5): 0.51, (0.5, 2.0): 0.59,
    (0.5, 2.5): 0.62, (0.5, 3.0): 0.62,
    (0.0, 0.0): 0.39, (0.0, 0.5): 0.40, (0.0, 1.0): 0.43, (0.0, 1.5): 0.48,
    (0.0, 2.0): 0.53, (0.0, 2.5): 0.58, (0.0, 3.0): 0.61,
}

# same measurement with the articulated backbone installed
K_WITH = {
    (3.0, 3.0): 3.21,
    (2.5, 2.5): 2.60, (2.5, 3.0): 2.84,
    (2.0, 2.0): 1.76, (2.0, 2.5): 1.96, (2.0, 3.0): 2.40,
    (1.5, 1.5): 0.97, (1.5, 2.0): 1.26, (1.5, 2.5): 1.63, (1.5, 3.0): 1.87,
    (1.0, 1.0): 0.70, (1.0, 1.5): 0.82, (1.0, 2.0): 0.97, (1.0, 2.5): 1.21,
    (1.0, 3.0): 1.45,
    (0.5, 0.5): 0.56, (0.5, 1.0): 0.68, (0.5, 1.5): 0.75, (0.5, 2.0): 0.82,
    (0.5, 2.5): 0.93, (0.5, 3.0): 1.24,
    (0.0, 0.0): 0.52, (0.0, 0.5): 0.54, (0.0, 1.0): 0.62, (0.0, 1.5): 0.70,
    (0.0, 2.0): 0.79, (0.0, 2.5): 0.90, (0.0, 3.0): 1.12,
}

# (phi [rad], P1 [bar], P2 [bar], K [Nm/rad]) decoupled operating points
SHAPE_ROWS = [
    (0.4, 0.50, 1.86, 0.63), (0.4, 0.75, 1.90, 0.81),
    (0.4, 1.00, 1.96, 1.11), (0.4, 1.25, 2.09, 1.32),
    (0.6, 0.50, 2.11, 0.71), (0.6, 0.75, 2.17, 0.85),
    (0.6, 1.00, 2.24, 1.40), (0.6, 1.25, 2.39, 1.71),
    (0.8, 0.50, 2.36, 0.86), (0.8, 0.75, 2.42, 1.42),
    (0.8, 1.00, 2.52, 1.90), (0.8, 1.25, 2.67, 2.18),
    (1.0, 0.50, 2.60, 1.56), (1.0, 0.75, 2.68, 1.98),
    (1.0, 1.00, 2.80, 2.33), (1.0, 1.25, 2.98, 2.58),
]


def in_hull_point(rng):
    p1 = rng.uniform(0.0, 3.0)
    return p1, rng.uniform(p1, 3.0)


def test_acceptance_1_bundled_calibration_data():
    with criterion(1, "bundled calibration data reproduces the bench records"):
        for label, expect in (("without_backbone", K_WITHOUT), ("with_backbone", K_WITH)):
            grid = load_bundled_grid(label)
            assert grid.n_measured == len(expect) == 28
            for i, p1 in enumerate(grid.p1_axis):
                for j, p2 in enumerate(grid.p2_axis):
                    cell = grid.k[i, j]
                    if (p1, p2) in expect:
                        assert cell == expect[(p1, p2)], (label, p1, p2)
                    else:
                        assert np.isnan(cell), (label, p1, p2)
        table = load_bundled_shape_table()
        got = list(zip(table.phi, table.p1, table.p2, table.k))
        assert len(got) == 16
        assert got == SHAPE_ROWS


def test_acceptance_2_stiffness_range_summaries():
    with criterion(2, "stiffness range grows 256.41% / 517.31%, about 2x"):
        t0 = time.perf_counter()
        inc_without = stiffness_range_increase(load_bundled_grid("without_backbone"))
        inc_with = stiffness_range_increase(load_bundled_grid("with_backbone"))
        elapsed = time.perf_counter() - t0
        assert abs(inc_without - 256.41) <= 0.01
        assert abs(inc_with - 517.31) <= 0.01
        assert 1.9 <= inc_with / inc_without <= 2.1
        assert elapsed < 0.25


def test_acceptance_3_joint_map_round_trip():
    with criterion(3, "10,000 arc<->joint round trips at 1e-9, exact closure"):
        geom = RobotGeometry()
        rng = np.random.default_rng(3)
        t0 = time.perf_counter()
        for _ in range(10_000):
            phi = rng.uniform(1e-6, math.pi)
            theta = rng.uniform(0.0, TWO_PI)
            joints = joints_from_arc(ArcParams(phi, theta), geom)
            assert abs(joints.residual) <= 1e-12 * geom.actuator_radius
            back = arc_from_joints(joints, geom)
            assert abs(back.phi - phi) <= 1e-9
            dtheta = (back.theta - theta) % TWO_PI
            assert min(dtheta, TWO_PI - dtheta) <= 1e-9
        assert time.perf_counter() - t0 < 1.0


def test_acceptance_4_forward_kinematics_oracle():
    with criterion(4, "pose matches the direct matrix-product oracle at 1e-12"):
        geom = RobotGeometry()
        rng = np.random.default_rng(4)
        for _ in range(1_000):
            # the straight-limit neighbourhood is checked separately: below
            # ~1e-3 rad the five-factor product itself loses digits to
            # cancellation and cannot serve as a 1e-12 reference
            phi = rng.uniform(1e-3, math.pi)
            theta = rng.uniform(0.0, TWO_PI)
            xi = rng.uniform(0.0, 1.0)
            got = pose_at(ArcParams(phi, theta), xi, geom).matrix()
            np.testing.assert_allclose(
                got, oracle_pose_matrix(phi, theta, xi, geom), atol=1e-12
            )
        for phi in (1e-8, 1e-7):
            for xi in (0.25, 1.0):
                got = pose_at(ArcParams(phi, 0.9), xi, geom).matrix()
                np.testing.assert_allclose(
                    got, oracle_pose_matrix(phi, 0.9, xi, geom), atol=1e-6
                )


def test_acceptance_5_workspace_symmetry():
    with criterion(5, "workspace is rotationally symmetric about +Z at 1e-9"):
        geom = RobotGeometry()
        rng = np.random.default_rng(5)
        for _ in range(100):
            phi = rng.uniform(0.0, math.pi)
            theta = rng.uniform(0.0, TWO_PI)
            delta = rng.uniform(-TWO_PI, TWO_PI)
            c, s = math.cos(delta), math.sin(delta)
            rz = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
            lhs = pose_at(ArcParams(phi, theta + delta), 1.0, geom).position
            rhs = rz @ pose_at(ArcParams(phi, theta), 1.0, geom).position
            np.testing.assert_allclose(lhs, rhs, atol=1e-9)
        points = sample_workspace(geom, 20, 36)
        for phi in np.unique(points[:, 0]):
            ring = points[points[:, 0] == phi]
            assert np.ptp(ring[:, 4]) <= 1e-9
            assert np.ptp(np.hypot(ring[:, 2], ring[:, 3])) <= 1e-9


def test_acceptance_6_stiffness_estimation_pipeline():
    with criterion(6, "estimator recovers K: 1e-6 clean, 5% at 0.5 mm noise"):
        geom = RobotGeometry()
        k_true, d_tau = 0.52, 0.1
        clean = synthetic_perturbation_record(0.5, 0.3, k_true, d_tau, geom)
        assert estimate_stiffness(clean, geom) == pytest.approx(k_true, rel=1e-6)
        rng = np.random.default_rng(6)
        estimates = []
        for _ in range(100):
            rec = synthetic_perturbation_record(
                0.5, 0.3, k_true, d_tau, geom, n=50, noise_sigma=5e-4, rng=rng
            )
            estimates.append(estimate_stiffness(rec, geom))
        assert abs(np.mean(estimates) - k_true) <= 0.05 * k_true


def test_acceptance_7_decoupled_control():
    with criterion(7, "tabulated (phi, K) solve exactly; interpolants round-trip"):
        table = load_bundled_shape_table()
        for phi, p1, p2, k in SHAPE_ROWS:
            assert pressures_for_shape_and_stiffness(table, phi, k) == (p1, p2)
        for phi in (0.4, 0.6, 0.8, 1.0):
            _, _, ks = table.block(phi)
            for k in (ks[:-1] + np.diff(ks) * 0.37):
                p1, _ = pressures_for_shape_and_stiffness(table, phi, float(k))
                assert abs(stiffness_for_pressure(table, phi, p1) - k) <= 1e-9


def test_acceptance_8_grip_study_trends():
    with criterion(8, "grip sweep: K-monotone, phi-monotone, ball<pyramid<box"):
        config = GripperConfig()
        table = load_bundled_shape_table()
        objects = [GraspObject(s) for s in (ObjectShape.BALL, ObjectShape.PYRAMID, ObjectShape.BOX)]
        t0 = time.perf_counter()
        rows = sweep_grip_study(config, objects, table)
        assert len(rows) == 48
        by_object = {o.shape.value: [r for r in rows if r.object_name == o.shape.value]
                     for o in objects}
        phis = (0.4, 0.6, 0.8, 1.0)
        for group in by_object.values():
            assert all(r.failure_force is not None for r in group)
            for phi in phis:  # (a) strictly increasing in K at fixed phi
                forces = [r.failure_force for r in group if r.phi == phi]
                assert all(b > a for a, b in zip(forces, forces[1:]))
        for obj in objects:  # (b) non-decreasing in phi at fixed K
            for k in sorted({r.stiffness for r in rows}):
                forces = [failure_force(close_grasp(config, obj, phi, k)) for phi in phis]
                assert all(b >= a for a, b in zip(forces, forces[1:]))
        for i in range(16):  # (c) ordering at every operating point
            f_ball = by_object["ball"][i].failure_force
            f_pyr = by_object["pyramid"][i].failure_force
            f_box = by_object["box"][i].failure_force
            assert f_ball < f_pyr < f_box
        assert time.perf_counter() - t0 < 5.0


def test_acceptance_9_interpolation_monotonicity_and_dominance():
    with criterion(9, "1,000 in-hull queries per grid: monotone, backbone wins"):
        without = load_bundled_grid("without_backbone")
        with_bb = load_bundled_grid("with_backbone")
        rng = np.random.default_rng(9)
        for grid in (without, with_bb):
            for _ in range(1_000):
                p1, p2 = in_hull_point(rng)
                k0 = stiffness_at(grid, p1, p2)
                p1_up = p1 + rng.uniform(0.0, 1.0) * (p2 - p1)
                assert stiffness_at(grid, p1_up, p2) >= k0 - 1e-12
                p2_up = p2 + rng.uniform(0.0, 1.0) * (3.0 - p2)
                assert stiffness_at(grid, p1, p2_up) >= k0 - 1e-12
        for _ in range(1_000):
            p1, p2 = in_hull_point(rng)
            assert stiffness_at(with_bb, p1, p2) > stiffness_at(without, p1, p2)
