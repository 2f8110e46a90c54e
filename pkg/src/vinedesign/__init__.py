"""vinedesign: design optimization for planar growing serial-chain robots.

Synthesizes minimal-joint designs (shared link lengths plus per-target joint
configurations) that reach a set of target positions and approach
orientations under hardware constraints, and evaluates designs via benchmark
and workspace analyses.
"""
from .cost import CostBreakdown, CostWeights, TargetCost, link_cost, total_cost
from .design import (
    BenchmarkResult,
    Constraints,
    DesignSolution,
    FeasibilityTolerance,
    Region,
    WorkspaceResult,
    WorkspaceSample,
    benchmark_table,
    check_feasibility,
    design_search,
    generate_feasible_instance,
    optimize_configuration,
    tradeoff_sweep,
    workspace_analysis,
)
from .errors import (
    ContractError,
    DegenerateGeometryError,
    DimensionError,
    InvalidTargetError,
    OptimizerFailureError,
    ValidationError,
    VineDesignError,
)
from .kinematics import (
    ChainPose,
    Configuration,
    Design,
    Target,
    forward_kinematics,
    point_segment_distance,
    wrap_angle,
)
from .problem_io import (
    ProblemSpec,
    SolutionDocument,
    build_solution_document,
    load_problem,
    load_solution,
    problem_from_dict,
    problem_to_dict,
    save_problem,
    save_solution,
    solution_from_dict,
    solution_to_dict,
    solve_problem,
)
from .stochastic_search import BoxBounds, SearchParams, SearchTrace, ass_minimize, derive_seed
from .svg_render import render_svg, render_workspace_svg

__version__ = "0.1.0"

__all__ = [
    "BenchmarkResult",
    "BoxBounds",
    "ChainPose",
    "Configuration",
    "Constraints",
    "ContractError",
    "CostBreakdown",
    "CostWeights",
    "DegenerateGeometryError",
    "Design",
    "DesignSolution",
    "DimensionError",
    "FeasibilityTolerance",
    "InvalidTargetError",
    "OptimizerFailureError",
    "ProblemSpec",
    "Region",
    "SearchParams",
    "SearchTrace",
    "SolutionDocument",
    "Target",
    "TargetCost",
    "ValidationError",
    "VineDesignError",
    "WorkspaceResult",
    "WorkspaceSample",
    "ass_minimize",
    "benchmark_table",
    "build_solution_document",
    "check_feasibility",
    "derive_seed",
    "design_search",
    "forward_kinematics",
    "generate_feasible_instance",
    "link_cost",
    "load_problem",
    "load_solution",
    "optimize_configuration",
    "point_segment_distance",
    "problem_from_dict",
    "problem_to_dict",
    "render_svg",
    "render_workspace_svg",
    "save_problem",
    "save_solution",
    "solution_from_dict",
    "solution_to_dict",
    "solve_problem",
    "total_cost",
    "tradeoff_sweep",
    "workspace_analysis",
    "wrap_angle",
]
