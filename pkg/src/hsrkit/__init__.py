"""hsrkit: modelling toolkit for fixed-length hybrid soft robot sections.

Covers the constant-curvature arc/joint maps and forward kinematics, the
pneumatic actuator extension model, bench stiffness estimation, the bundled
pressure/stiffness calibration maps, and a three-finger grasp model, plus a
CLI (``hsrkit``) that renders study reports as CSV and SVG.
"""

from .arc_geometry import (
    ArcParams,
    JointState,
    RobotGeometry,
    arc_from_joints,
    joints_from_arc,
    planar_joints,
    validate_joint_constraint,
    wrap_angle,
)
from .empirical_maps import (
    GridLabel,
    ShapeStiffnessTable,
    StiffnessGrid,
    achievable_stiffness_range,
    bundled_data_dir,
    load_bundled_grid,
    load_bundled_shape_table,
    load_table,
    pressures_for_shape_and_stiffness,
    shape_for_pressures,
    stiffness_at,
    stiffness_for_pressure,
    stiffness_range_increase,
)
from .errors import (
    ConstraintError,
    DataError,
    DomainError,
    IndeterminateStiffnessError,
    InfeasibleStiffnessError,
    NoGraspError,
    OutOfDomainError,
    OverpressureError,
)
from .estimation import (
    ForceTrace,
    PerturbationRecord,
    TrackerSample,
    estimate_stiffness,
    fit_arc,
    mean_markers,
    moving_average,
    peak_failure_force,
    read_force_csv,
    read_tracker_csv,
    synthetic_perturbation_record,
    synthetic_tracker_sequence,
    write_tracker_csv,
)
from .gripper import (
    Contact,
    GraspObject,
    GraspState,
    GripperConfig,
    ObjectShape,
    StudyRow,
    close_grasp,
    failure_force,
    sweep_grip_study,
    write_study_csv,
)
from .kinematics import (
    BackbonePoint,
    Pose,
    backbone_curve,
    curve_positions,
    pose_at,
    sample_workspace,
    write_workspace_csv,
)
from .pma import PmaSpec, free_extension

__version__ = "0.1.0"

__all__ = [
    "ArcParams",
    "BackbonePoint",
    "ConstraintError",
    "Contact",
    "DataError",
    "DomainError",
    "ForceTrace",
    "GraspObject",
    "GraspState",
    "GridLabel",
    "GripperConfig",
    "IndeterminateStiffnessError",
    "InfeasibleStiffnessError",
    "JointState",
    "NoGraspError",
    "ObjectShape",
    "OutOfDomainError",
    "OverpressureError",
    "PerturbationRecord",
    "PmaSpec",
    "Pose",
    "RobotGeometry",
    "ShapeStiffnessTable",
    "StiffnessGrid",
    "StudyRow",
    "TrackerSample",
    "__version__",
    "achievable_stiffness_range",
    "arc_from_joints",
    "backbone_curve",
    "bundled_data_dir",
    "close_grasp",
    "curve_positions",
    "estimate_stiffness",
    "failure_force",
    "fit_arc",
    "free_extension",
    "joints_from_arc",
    "load_bundled_grid",
    "load_bundled_shape_table",
    "load_table",
    "mean_markers",
    "moving_average",
    "peak_failure_force",
    "planar_joints",
    "pose_at",
    "pressures_for_shape_and_stiffness",
    "read_force_csv",
    "read_tracker_csv",
    "sample_workspace",
    "shape_for_pressures",
    "stiffness_at",
    "stiffness_for_pressure",
    "stiffness_range_increase",
    "sweep_grip_study",
    "synthetic_perturbation_record",
    "synthetic_tracker_sequence",
    "validate_joint_constraint",
    "wrap_angle",
    "write_study_csv",
    "write_tracker_csv",
    "write_workspace_csv",
]
