"""Arc <-> joint maps: frozen examples plus randomized round-trip sweeps."""

import math

import numpy as np
import pytest

from hsrkit import (
    ArcParams,
    ConstraintError,
    DomainError,
    JointState,
    RobotGeometry,
    arc_from_joints,
    joints_from_arc,
    planar_joints,
    validate_joint_constraint,
    wrap_angle,
)

TWO_PI = 2.0 * math.pi


def circular_diff(a: float, b: float) -> float:
    """Smallest absolute angle between two headings."""
    d = (a - b) % TWO_PI
    return min(d, TWO_PI - d)


# ---------------------------------------------------------------------------
# wrap_angle


def test_wrap_angle_identity_inside_range():
    assert wrap_angle(1.234) == 1.234


def test_wrap_angle_examples():
    assert wrap_angle(TWO_PI) == 0.0
    assert abs(wrap_angle(-math.pi / 2.0) - 1.5 * math.pi) < 1e-15
    assert abs(wrap_angle(7.0 * math.pi) - math.pi) < 1e-12
    assert wrap_angle(-1e-18) == 0.0  # rounds up to the period, then clamps


# ---------------------------------------------------------------------------
# constructors and validation


def test_geometry_validation():
    with pytest.raises(DomainError):
        RobotGeometry(section_length=0.0)
    with pytest.raises(DomainError):
        RobotGeometry(actuator_radius=-0.01)
    with pytest.raises(DomainError):
        RobotGeometry(phi_max=3.5)
    with pytest.raises(DomainError):
        RobotGeometry(phi_max=0.0)
    with pytest.raises(DomainError):
        RobotGeometry(section_length=0.02, actuator_radius=0.02)


def test_arc_params_validation():
    with pytest.raises(DomainError):
        ArcParams(-0.1)
    with pytest.raises(DomainError):
        ArcParams(float("nan"))
    with pytest.raises(DomainError):
        ArcParams(1.0, float("inf"))
    # theta is stored wrapped
    assert abs(ArcParams(1.0, -math.pi / 2.0).theta - 1.5 * math.pi) < 1e-15


# ---------------------------------------------------------------------------
# joints_from_arc: frozen values


def test_planar_bend_quarter_circle(geom):
    # phi = pi/2 in the theta = 0 plane: channel 1 contracts by r*phi,
    # channels 2 and 3 extend by half that each.
    j = joints_from_arc(ArcParams(math.pi / 2.0, 0.0), geom)
    assert j.l1 == pytest.approx(-0.01 * math.pi, abs=1e-15)
    assert j.l2 == pytest.approx(0.005 * math.pi, abs=1e-15)
    assert j.l3 == pytest.approx(0.005 * math.pi, abs=1e-15)


def test_bend_toward_second_actuator(geom):
    # theta = 2pi/3 points the bend at actuator 2, which takes the full
    # contraction -r*phi while 1 and 3 split the extension.
    j = joints_from_arc(ArcParams(1.0, TWO_PI / 3.0), geom)
    assert j.l2 == pytest.approx(-0.02, abs=1e-15)
    assert j.l1 == pytest.approx(0.01, abs=1e-15)
    assert j.l3 == pytest.approx(0.01, abs=1e-15)


def test_straight_section_means_zero_joints(geom):
    j = joints_from_arc(ArcParams(0.0, 1.0), geom)
    assert (j.l1, j.l2, j.l3) == (0.0, 0.0, 0.0)


def test_joints_out_of_range_phi(geom):
    with pytest.raises(DomainError):
        joints_from_arc(ArcParams(3.2), geom)


def test_closure_is_exact(geom, rng):
    # l3 is computed as -(l1 + l2), so the closure residual is exactly zero.
    for _ in range(200):
        arc = ArcParams(rng.uniform(0.0, math.pi), rng.uniform(0.0, TWO_PI))
        assert joints_from_arc(arc, geom).residual == 0.0


def test_third_channel_matches_direct_cosine(geom, rng):
    # -(l1 + l2) and the direct -r phi cos(4pi/3 - theta) agree to ~1 ulp.
    r = geom.actuator_radius
    for _ in range(500):
        phi = rng.uniform(0.0, math.pi)
        theta = rng.uniform(0.0, TWO_PI)
        j = joints_from_arc(ArcParams(phi, theta), geom)
        direct = -r * phi * math.cos(2.0 * TWO_PI / 3.0 - theta)
        # cancellation in the sum is absolute at the scale of the terms, r*phi
        assert abs(j.l3 - direct) <= 4.0 * np.finfo(float).eps * (r * phi + abs(direct))


# ---------------------------------------------------------------------------
# arc_from_joints


def test_arc_from_joints_quarter_circle(geom):
    arc = arc_from_joints(JointState(-0.01 * math.pi, 0.005 * math.pi, 0.005 * math.pi), geom)
    assert arc.phi == pytest.approx(math.pi / 2.0, abs=1e-12)
    assert arc.theta == pytest.approx(0.0, abs=1e-12)


def test_arc_from_joints_zero_state(geom):
    arc = arc_from_joints(JointState(0.0, 0.0, 0.0), geom)
    assert arc.phi == 0.0
    assert arc.theta == 0.0


def test_arc_from_joints_rejects_closure_violation(geom):
    with pytest.raises(ConstraintError):
        arc_from_joints(JointState(0.01, 0.01, 0.01), geom)


def test_arc_from_joints_custom_tolerance(geom):
    # A residual of 1e-6 m fails the default gate but can be let through.
    joints = JointState(-0.02, 0.01, 0.010001)
    with pytest.raises(ConstraintError):
        arc_from_joints(joints, geom)
    arc = arc_from_joints(joints, geom, tol=1e-5)
    assert arc.phi == pytest.approx(1.0, rel=1e-3)


def test_validate_joint_constraint_reports_residual():
    ok, residual = validate_joint_constraint(JointState(0.001, 0.001, 0.001))
    assert not ok
    assert residual == pytest.approx(0.003)
    ok, residual = validate_joint_constraint(JointState(-0.002, 0.001, 0.001))
    assert ok
    assert residual == 0.0


# ---------------------------------------------------------------------------
# round trips and symmetries


def test_round_trip_random_sweep(geom, rng):
    for _ in range(2000):
        phi = rng.uniform(1e-6, math.pi)
        theta = rng.uniform(0.0, TWO_PI)
        back = arc_from_joints(joints_from_arc(ArcParams(phi, theta), geom), geom)
        assert abs(back.phi - phi) <= 1e-9
        assert circular_diff(back.theta, theta) <= 1e-9


def test_opposite_plane_negates_joints(geom, rng):
    for _ in range(200):
        phi = rng.uniform(0.0, math.pi)
        theta = rng.uniform(0.0, TWO_PI)
        j = joints_from_arc(ArcParams(phi, theta), geom).as_array()
        j_opp = joints_from_arc(ArcParams(phi, theta + math.pi), geom).as_array()
        np.testing.assert_allclose(j_opp, -j, atol=1e-12)


def test_third_turn_permutes_channels(geom, rng):
    # Rotating the bending plane by one actuator pitch relabels the channels.
    for _ in range(200):
        phi = rng.uniform(0.0, math.pi)
        theta = rng.uniform(0.0, TWO_PI)
        j = joints_from_arc(ArcParams(phi, theta), geom).as_array()
        j_rot = joints_from_arc(ArcParams(phi, theta + TWO_PI / 3.0), geom).as_array()
        np.testing.assert_allclose(j_rot, j[[2, 0, 1]], atol=1e-12)


def test_scaling_phi_scales_joints(geom, rng):
    for _ in range(100):
        phi = rng.uniform(0.0, math.pi / 2.0)
        theta = rng.uniform(0.0, TWO_PI)
        j1 = joints_from_arc(ArcParams(phi, theta), geom).as_array()
        j2 = joints_from_arc(ArcParams(2.0 * phi, theta), geom).as_array()
        np.testing.assert_allclose(j2, 2.0 * j1, rtol=1e-12, atol=1e-18)


# ---------------------------------------------------------------------------
# planar helper


def test_planar_joints_shape(geom):
    j = planar_joints(0.03, geom)
    assert (j.l1, j.l2, j.l3) == (-0.03, 0.015, 0.015)
    arc = arc_from_joints(j, geom)
    assert arc.phi == pytest.approx(1.5, abs=1e-12)  # bend / r
    assert arc.theta == pytest.approx(0.0, abs=1e-12)


def test_planar_joints_negative_bend_flips_plane(geom):
    arc = arc_from_joints(planar_joints(-0.03, geom), geom)
    assert arc.phi == pytest.approx(1.5, abs=1e-12)
    assert arc.theta == pytest.approx(math.pi, abs=1e-12)


def test_planar_joints_limit(geom):
    limit = geom.actuator_radius * geom.phi_max
    planar_joints(limit, geom)  # boundary is allowed
    with pytest.raises(DomainError):
        planar_joints(limit * 1.0001, geom)
