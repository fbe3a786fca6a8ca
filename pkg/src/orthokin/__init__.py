"""Kinetostatic analysis of the Orthoglide 3-axis translational parallel machine.

Modules:
- screw: couples, leg wrench systems, couple-space rank
- model: machine geometry, poses, leg frames, config loading
- kinematics: inverse/forward kinematics, Jacobian pair
- kinetostatics: conditioning index, amplification factors, manipulability ellipsoid
- singularity: serial/parallel/parallelogram/leg-variant/constraint singularities, biglide
- statics: parallelogram bar force and stress
- workspace: grid sampling and CSV maps
- cli: the ``orthokin`` command
"""

from .errors import (
    BranchError,
    DegenerateFrameError,
    InconsistentConfigurationError,
    InvalidInputError,
    NonConvergenceError,
    OrthokinError,
    OutOfWorkspaceError,
    ParallelogramSingularityError,
    ParallelSingularityError,
    SerialSingularityError,
    SingularIterateError,
    SingularityError,
)
from .kinematics import (
    JacobianPair,
    forward_kinematics,
    inverse_kinematics,
    is_reachable,
    jacobian_pair,
    solve_forward,
)
from .kinetostatics import (
    INFINITY,
    KinetostaticReport,
    amplification_factors,
    conditioning_index,
    kinetostatic_report,
    manipulability_ellipsoid,
)
from .model import (
    BiglideGeometry,
    JointVector,
    LegFrame,
    LegVariant,
    OrthoglideGeometry,
    ToolPose,
    default_orthoglide,
    leg_frames,
    load_geometry,
)
from .screw import (
    Screw,
    WrenchSystem,
    couple_space_rank,
    is_pure_translational,
    leg_wrench_system,
    pure_couple,
)
from .singularity import (
    BiglideState,
    SingularityReport,
    VariantFinding,
    VariantLabel,
    biglide_classify,
    biglide_vertical_amplification,
    classify_configuration,
    constraint_singularity_scan,
    parallelogram_angle,
)
from .statics import ParallelogramLoad, StaticsResult, bar_force, bar_stress, static_balance_check
from .workspace import WorkspaceSample, WorkspaceSummary, sample_box, summarize

__version__ = "0.1.0"
