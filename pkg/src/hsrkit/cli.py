"""Command-line interface.

Exit codes: 0 success, 2 bad input or out-of-domain value, 3 infeasible
query (stiffness not achievable at the requested bend), 4 I/O failure.

Report commands (workspace, grip-study) write CSV and, unless --format says
otherwise, a matching SVG figure into --out-dir.  The calibration tables are
resolved from --data-dir, the HSRKIT_DATA_DIR environment variable, or the
bundled copies, in that order.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import empirical_maps as maps
from .arc_geometry import ArcParams, JointState, RobotGeometry, arc_from_joints, joints_from_arc
from .config import load_geometry
from .errors import (
    DataError,
    DomainError,
    IndeterminateStiffnessError,
    InfeasibleStiffnessError,
)
from .estimation import PerturbationRecord, estimate_stiffness, read_tracker_csv
from .gripper import GraspObject, GripperConfig, ObjectShape, sweep_grip_study, write_study_csv
from .kinematics import pose_at, sample_workspace, write_workspace_csv

ENV_DATA_DIR = "HSRKIT_DATA_DIR"

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4


def _geometry(args) -> RobotGeometry:
    if args.config:
        return load_geometry(args.config)
    return RobotGeometry()


def _data_dir(args) -> str:
    if args.data_dir:
        return args.data_dir
    env = os.environ.get(ENV_DATA_DIR)
    if env:
        return env
    return maps.bundled_data_dir()


def _shape_table(args) -> maps.ShapeStiffnessTable:
    path = os.path.join(_data_dir(args), "table2_shape_pressure_stiffness.csv")
    table = maps.load_table(path)
    if not isinstance(table, maps.ShapeStiffnessTable):
        raise DataError(f"{path}: expected a shape/pressure/stiffness table")
    return table


def _outputs(args, basename: str) -> tuple[str | None, str | None]:
    os.makedirs(args.out_dir, exist_ok=True)
    csv_path = os.path.join(args.out_dir, basename + ".csv")
    svg_path = os.path.join(args.out_dir, basename + ".svg")
    if args.format == "csv":
        return csv_path, None
    if args.format == "svg":
        return None, svg_path
    return csv_path, svg_path


def cmd_fk(args) -> int:
    geom = _geometry(args)
    pose = pose_at(ArcParams(args.phi, args.theta), args.xi, geom)
    x, y, z = pose.position
    print(f"position_m: {x:.9f} {y:.9f} {z:.9f}")
    print("rotation:")
    for row in pose.rotation:
        print(f"  {row[0]: .9f} {row[1]: .9f} {row[2]: .9f}")
    return EXIT_OK


def cmd_ik(args) -> int:
    geom = _geometry(args)
    joints = JointState(args.l1, args.l2, args.l3)
    arc = arc_from_joints(joints, geom)
    back = joints_from_arc(arc, geom)
    residual = max(
        abs(back.l1 - joints.l1), abs(back.l2 - joints.l2), abs(back.l3 - joints.l3)
    )
    print(f"phi_rad: {arc.phi:.9f}")
    print(f"theta_rad: {arc.theta:.9f}")
    print(f"residual_m: {residual:.3e}")
    return EXIT_OK


def cmd_workspace(args) -> int:
    geom = _geometry(args)
    points = sample_workspace(geom, args.n_phi, args.n_theta)
    csv_path, svg_path = _outputs(args, "workspace")
    if csv_path:
        write_workspace_csv(points, csv_path)
        print(f"wrote {csv_path} ({points.shape[0]} rows)")
    if svg_path:
        from .plotting import save_workspace_figure

        save_workspace_figure(points, svg_path)
        print(f"wrote {svg_path}")
    return EXIT_OK


def cmd_solve(args) -> int:
    table = _shape_table(args)
    p1, p2 = maps.pressures_for_shape_and_stiffness(table, args.phi, args.k)
    print(f"p1_bar: {p1:.6g}")
    print(f"p2_bar: {p2:.6g}")
    return EXIT_OK


def cmd_estimate(args) -> int:
    geom = _geometry(args)
    record = PerturbationRecord(
        tuple(read_tracker_csv(args.baseline)),
        tuple(read_tracker_csv(args.perturbed)),
        args.delta_torque,
    )
    k = estimate_stiffness(record, geom)
    print(f"stiffness_nm_per_rad: {k:.9f}")
    return EXIT_OK


def cmd_grip_study(args) -> int:
    geom = _geometry(args)
    config = GripperConfig(finger_geom=geom)
    try:
        shapes = [ObjectShape(name.strip()) for name in args.objects.split(",") if name.strip()]
    except ValueError as exc:
        raise DomainError(f"unknown object in --objects: {exc}") from exc
    if not shapes:
        raise DomainError("--objects must name at least one object")
    objects = [GraspObject(s, characteristic_size=args.size) for s in shapes]
    table = _shape_table(args)
    rows = sweep_grip_study(config, objects, table, mu=args.mu)
    csv_path, svg_path = _outputs(args, "grip_study")
    if csv_path:
        write_study_csv(rows, csv_path)
        print(f"wrote {csv_path} ({len(rows)} rows)")
    if svg_path:
        from .plotting import save_grip_study_figure

        save_grip_study_figure(rows, svg_path)
        print(f"wrote {svg_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON geometry/actuator config file")
    common.add_argument("--data-dir", help=f"calibration table directory (or ${ENV_DATA_DIR})")
    common.add_argument("--out-dir", default=".", help="directory for report outputs")
    common.add_argument(
        "--format", choices=("csv", "svg", "both"), default="both",
        help="report output format (default: both)",
    )

    parser = argparse.ArgumentParser(
        prog="hsrkit",
        description="Kinematics, stiffness maps, and grasp studies for hybrid soft robot sections",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fk", parents=[common], help="tip/backbone pose for a bend")
    p.add_argument("--phi", type=float, required=True, help="bend angle [rad]")
    p.add_argument("--theta", type=float, default=0.0, help="bending-plane angle [rad]")
    p.add_argument("--xi", type=float, default=1.0, help="arc fraction in [0, 1]")
    p.set_defaults(func=cmd_fk)

    p = sub.add_parser("ik", parents=[common], help="arc parameters from length changes")
    p.add_argument("l1", type=float, help="actuator 1 length change [m]")
    p.add_argument("l2", type=float, help="actuator 2 length change [m]")
    p.add_argument("l3", type=float, help="actuator 3 length change [m]")
    p.set_defaults(func=cmd_ik)

    p = sub.add_parser("workspace", parents=[common], help="sample reachable tip positions")
    p.add_argument("--n-phi", type=int, default=30, help="bend angle samples")
    p.add_argument("--n-theta", type=int, default=60, help="bending-plane samples")
    p.set_defaults(func=cmd_workspace)

    p = sub.add_parser("solve", parents=[common], help="pressures for a bend and stiffness")
    p.add_argument("--phi", type=float, required=True, help="bend angle [rad]")
    p.add_argument("--k", type=float, required=True, help="target stiffness [Nm/rad]")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("estimate", parents=[common], help="stiffness from tracker recordings")
    p.add_argument("baseline", help="baseline tracker CSV")
    p.add_argument("perturbed", help="perturbed tracker CSV")
    p.add_argument("--delta-torque", type=float, required=True, help="applied torque step [Nm]")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("grip-study", parents=[common], help="failure-force sweep over the stiffness table")
    p.add_argument("--objects", default="ball,pyramid,box", help="comma-separated object list")
    p.add_argument("--mu", type=float, default=0.8, help="friction coefficient")
    p.add_argument("--size", type=float, default=0.10, help="object characteristic size [m]")
    p.set_defaults(func=cmd_grip_study)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleStiffnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (DomainError, DataError, IndeterminateStiffnessError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
