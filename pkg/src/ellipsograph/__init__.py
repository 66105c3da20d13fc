"""Trammel-of-Archimedes ellipsograph toolkit.

Closed-form kinematics of the two-shuttle trammel, an independent Newton
constraint solver that cross-checks it, shuttle-collision and channel-limit
analysis, deterministic SVG/CSV drawing export, and a parts-cost engine.
"""

from .bom import Bom, PartLine, default_catalog, load_catalog, save_catalog, totals
from .clearance import (
    ClearanceReport,
    ForbiddenArc,
    ShuttleFootprint,
    collides,
    collision_arcs,
    drawable_trace_domain,
    forbidden_arcs,
    overrun_arcs,
    shuttle_rects,
)
from .export import (
    OutOfPage,
    PageSpec,
    Trace,
    fits_page,
    sample_trace,
    to_csv,
    to_svg,
)
from .geometry import (
    STUD,
    AngleSet,
    EllipseSpec,
    Point2,
    Tolerances,
    focal_sum,
    foci,
    implicit_residual,
    normalize_angle,
    point_at,
)
from .solver import (
    ConstraintState,
    NewtonResult,
    NonConvergence,
    SingularJacobian,
    SolverConfig,
    jacobian,
    newton_solve,
    residuals,
    solve_at,
    sweep,
    sweep_detailed,
)
from .trammel import (
    RodState,
    TrammelConfig,
    design_for_ellipse,
    required_channel_half_length,
    rod_state,
    semi_axes,
)

__version__ = "0.1.0"

__all__ = [
    "AngleSet",
    "Bom",
    "ClearanceReport",
    "ConstraintState",
    "EllipseSpec",
    "ForbiddenArc",
    "NewtonResult",
    "NonConvergence",
    "OutOfPage",
    "PageSpec",
    "PartLine",
    "Point2",
    "RodState",
    "STUD",
    "ShuttleFootprint",
    "SingularJacobian",
    "SolverConfig",
    "Tolerances",
    "Trace",
    "TrammelConfig",
    "collides",
    "collision_arcs",
    "default_catalog",
    "design_for_ellipse",
    "drawable_trace_domain",
    "fits_page",
    "focal_sum",
    "foci",
    "forbidden_arcs",
    "implicit_residual",
    "jacobian",
    "load_catalog",
    "newton_solve",
    "normalize_angle",
    "overrun_arcs",
    "point_at",
    "required_channel_half_length",
    "residuals",
    "rod_state",
    "sample_trace",
    "save_catalog",
    "semi_axes",
    "shuttle_rects",
    "solve_at",
    "sweep",
    "sweep_detailed",
    "to_csv",
    "to_svg",
    "totals",
]
