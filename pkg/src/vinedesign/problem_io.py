"""Problem and solution JSON documents.

All angles in files are degrees. Documents are validated strictly: unknown
keys are rejected and violations name the offending field. Serialization is
deterministic (sorted keys, shortest round-trip floats) so identical inputs
produce byte-identical files. See docs/formats.md for the schemas.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
import tempfile
import warnings
from dataclasses import dataclass, replace

from .cost import CostWeights
from .design import (
    Constraints,
    DesignSolution,
    FeasibilityTolerance,
    evaluate_solution,
)
from .errors import InvalidTargetError, ValidationError
from .kinematics import Configuration, Design, Target
from .stochastic_search import SearchParams

FORMAT_VERSION = 1


@dataclass(frozen=True)
class ProblemSpec:
    """A full problem statement: base, targets, and every knob the solver
    takes. Targets are stored in the base frame (base subtracted)."""

    targets: tuple[Target, ...]
    base: tuple[float, float] = (0.0, 0.0)
    constraints: Constraints = Constraints()
    weights: CostWeights = CostWeights()
    tolerance: FeasibilityTolerance = FeasibilityTolerance()
    search: SearchParams = SearchParams()

    def __post_init__(self):
        if len(self.targets) == 0:
            raise ValidationError("at least one target is required", field="targets")


def _require_keys(data: dict, allowed: dict, field: str) -> None:
    unknown = set(data) - set(allowed)
    if unknown:
        raise ValidationError(f"unknown key(s) {sorted(unknown)}", field=field)


def _number(data: dict, key: str, field: str, default=None):
    if key not in data:
        if default is None:
            raise ValidationError("missing required value", field=f"{field}.{key}")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"expected a number, got {value!r}", field=f"{field}.{key}")
    return float(value)


def _integer(data: dict, key: str, field: str, default=None):
    value = _number(data, key, field, default)
    if value != int(value):
        raise ValidationError(f"expected an integer, got {value!r}", field=f"{field}.{key}")
    return int(value)


def _target_from_dict(data: dict, field: str) -> Target:
    _require_keys(data, {"x": 0, "y": 0, "phiDegrees": 0}, field)
    x = _number(data, "x", field)
    y = _number(data, "y", field)
    phi = _number(data, "phiDegrees", field)
    if not -180.0 <= phi <= 180.0:
        wrapped = 180.0 - (180.0 - phi) % 360.0
        warnings.warn(
            f"{field}.phiDegrees = {phi} wrapped to {wrapped}", stacklevel=2
        )
        phi = wrapped
    try:
        return Target.from_degrees(x, y, phi)
    except InvalidTargetError as exc:
        raise ValidationError(str(exc), field=field) from exc


_CONSTRAINT_KEYS = {
    "jointAngleMin": "joint_angle_min",
    "jointAngleMax": "joint_angle_max",
    "baseAngleMin": "base_angle_min",
    "baseAngleMax": "base_angle_max",
    "linkLengthMin": "link_length_min",
    "linkLengthMax": "link_length_max",
    "maxLinkBudget": "max_link_budget",
}


def _constraints_from_dict(data: dict, field: str = "constraints") -> Constraints:
    _require_keys(data, _CONSTRAINT_KEYS, field)
    try:
        return Constraints.from_degrees(
            joint_angle_min=_number(data, "jointAngleMin", field, -30.0),
            joint_angle_max=_number(data, "jointAngleMax", field, 30.0),
            base_angle_min=_number(data, "baseAngleMin", field, -180.0),
            base_angle_max=_number(data, "baseAngleMax", field, 180.0),
            link_length_min=_number(data, "linkLengthMin", field, 0.10),
            link_length_max=_number(data, "linkLengthMax", field, 1.0),
            max_link_budget=_integer(data, "maxLinkBudget", field, 8),
        )
    except ValueError as exc:
        raise ValidationError(str(exc), field=field) from exc


def _weights_from_dict(data: dict, field: str = "weights") -> CostWeights:
    _require_keys(data, {"wd": 0, "wo": 0, "clampLo": 0, "clampHi": 0}, field)
    try:
        return CostWeights(
            w_d=_number(data, "wd", field, 1.0),
            w_o=_number(data, "wo", field, 1.0),
            clamp_lo=_number(data, "clampLo", field, 0.3),
            clamp_hi=_number(data, "clampHi", field, 0.9),
        )
    except ValueError as exc:
        raise ValidationError(str(exc), field=field) from exc


def _tolerance_from_dict(data: dict, field: str = "tolerance") -> FeasibilityTolerance:
    _require_keys(data, {"maxDistance": 0, "maxOrientationError": 0}, field)
    try:
        return FeasibilityTolerance.from_degrees(
            max_distance=_number(data, "maxDistance", field, 0.01),
            max_orientation_degrees=_number(data, "maxOrientationError", field, 2.0),
        )
    except ValueError as exc:
        raise ValidationError(str(exc), field=field) from exc


_SEARCH_KEYS = {
    "K": "samples",
    "N": "iterations",
    "alpha": "alpha",
    "shapeExponent": "shape_exponent",
    "epsilon": "epsilon",
    "seed": "seed",
    "convergenceWindow": "convergence_window",
    "convergenceTol": "convergence_tol",
    "normalizeVariance": "normalize_variance",
}


def _search_from_dict(data: dict, field: str = "search") -> SearchParams:
    _require_keys(data, _SEARCH_KEYS, field)
    defaults = SearchParams()
    normalize = data.get("normalizeVariance", defaults.normalize_variance)
    if not isinstance(normalize, bool):
        raise ValidationError("expected a boolean", field=f"{field}.normalizeVariance")
    try:
        return SearchParams(
            samples=_integer(data, "K", field, defaults.samples),
            iterations=_integer(data, "N", field, defaults.iterations),
            alpha=_number(data, "alpha", field, defaults.alpha),
            shape_exponent=_number(data, "shapeExponent", field, defaults.shape_exponent),
            epsilon=_number(data, "epsilon", field, defaults.epsilon),
            seed=_integer(data, "seed", field, defaults.seed),
            convergence_window=_integer(data, "convergenceWindow", field, defaults.convergence_window),
            convergence_tol=_number(data, "convergenceTol", field, defaults.convergence_tol),
            normalize_variance=normalize,
        )
    except ValueError as exc:
        raise ValidationError(str(exc), field=field) from exc


def problem_from_dict(data) -> ProblemSpec:
    if not isinstance(data, dict):
        raise ValidationError("problem document must be a JSON object", field="$")
    allowed = {"base": 0, "targets": 0, "constraints": 0, "weights": 0, "tolerance": 0, "search": 0}
    _require_keys(data, allowed, "$")
    base = data.get("base", [0.0, 0.0])
    if not (
        isinstance(base, list)
        and len(base) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in base)
    ):
        raise ValidationError("base must be a 2-element numeric array", field="base")
    bx = float(base[0])
    by = float(base[1])

    raw_targets = data.get("targets")
    if not isinstance(raw_targets, list) or len(raw_targets) == 0:
        raise ValidationError("targets must be a non-empty array", field="targets")
    targets = []
    for idx, entry in enumerate(raw_targets):
        if not isinstance(entry, dict):
            raise ValidationError("target must be an object", field=f"targets[{idx}]")
        # solve in the base frame
        shifted = dict(entry)
        if "x" in shifted:
            shifted["x"] = _number(entry, "x", f"targets[{idx}]") - bx
        if "y" in shifted:
            shifted["y"] = _number(entry, "y", f"targets[{idx}]") - by
        targets.append(_target_from_dict(shifted, f"targets[{idx}]"))

    def section(key, parser, default):
        if key not in data:
            return default
        raw = data[key]
        if not isinstance(raw, dict):
            raise ValidationError("expected an object", field=key)
        return parser(raw)

    return ProblemSpec(
        targets=tuple(targets),
        base=(bx, by),
        constraints=section("constraints", _constraints_from_dict, Constraints()),
        weights=section("weights", _weights_from_dict, CostWeights()),
        tolerance=section("tolerance", _tolerance_from_dict, FeasibilityTolerance()),
        search=section("search", _search_from_dict, SearchParams()),
    )


def _deg(radians_value: float) -> float:
    # keep round-tripped degree values readable (30.0, not 29.999999999999996)
    return round(math.degrees(radians_value), 10)


def problem_to_dict(problem: ProblemSpec) -> dict:
    bx, by = problem.base
    c = problem.constraints
    w = problem.weights
    t = problem.tolerance
    s = problem.search
    return {
        "base": [bx, by],
        "targets": [
            {
                "x": target.position[0] + bx,
                "y": target.position[1] + by,
                "phiDegrees": _deg(target.orientation),
            }
            for target in problem.targets
        ],
        "constraints": {
            "jointAngleMin": _deg(c.joint_angle_min),
            "jointAngleMax": _deg(c.joint_angle_max),
            "baseAngleMin": _deg(c.base_angle_min),
            "baseAngleMax": _deg(c.base_angle_max),
            "linkLengthMin": c.link_length_min,
            "linkLengthMax": c.link_length_max,
            "maxLinkBudget": c.max_link_budget,
        },
        "weights": {
            "wd": w.w_d,
            "wo": w.w_o,
            "clampLo": w.clamp_lo,
            "clampHi": w.clamp_hi,
        },
        "tolerance": {
            "maxDistance": t.max_distance,
            "maxOrientationError": _deg(t.max_orientation),
        },
        "search": {
            "K": s.samples,
            "N": s.iterations,
            "alpha": s.alpha,
            "shapeExponent": s.shape_exponent,
            "epsilon": s.epsilon,
            "seed": s.seed,
            "convergenceWindow": s.convergence_window,
            "convergenceTol": s.convergence_tol,
            "normalizeVariance": s.normalize_variance,
        },
    }


def _dump(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _atomic_write(path, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_problem(path) -> ProblemSpec:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(
                f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", field="$"
            ) from exc
    return problem_from_dict(data)


def save_problem(problem: ProblemSpec, path) -> None:
    _atomic_write(path, _dump(problem_to_dict(problem)))


def problem_hash(problem: ProblemSpec) -> str:
    canonical = json.dumps(problem_to_dict(problem), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass(frozen=True, eq=False)
class SolutionDocument:
    """Persisted solve result: quantized design/configurations plus the
    residuals recomputed from those quantized values, so a reader can verify
    the file against the embedded problem exactly."""

    problem: ProblemSpec
    design: Design
    configurations: tuple[Configuration, ...]
    active_links: tuple[int, ...]
    per_target_feasible: tuple[bool, ...]
    distance_residuals: tuple[float, ...]
    orientation_residuals: tuple[float, ...]
    per_target_cost: tuple[float, ...]
    trace_summary: dict
    seed: int

    @property
    def feasible(self) -> bool:
        return all(self.per_target_feasible)


def build_solution_document(problem: ProblemSpec, solution: DesignSolution) -> SolutionDocument:
    """Quantize (lengths to 0.1 mm, angles to 1e-6 degree) and re-evaluate so
    the document is self-consistent."""
    design = Design(tuple(round(v, 4) for v in solution.design.lengths))
    configs = tuple(
        Configuration.from_degrees(tuple(round(a, 6) for a in c.degrees))
        for c in solution.configurations
    )
    breakdown, flags = evaluate_solution(
        design, configs, problem.targets, problem.weights, problem.tolerance, problem.constraints
    )
    return SolutionDocument(
        problem=problem,
        design=design,
        configurations=configs,
        active_links=tuple(tc.best_link for tc in breakdown.per_target),
        per_target_feasible=tuple(flags),
        distance_residuals=tuple(tc.distance_term for tc in breakdown.per_target),
        orientation_residuals=tuple(tc.orientation_term for tc in breakdown.per_target),
        per_target_cost=tuple(tc.weighted_cost for tc in breakdown.per_target),
        trace_summary={
            "budget": solution.budget,
            "budgetsTried": list(solution.budgets_tried),
            "iterations": solution.trace.iterations,
            "evaluations": solution.trace.evaluations,
            "bestCost": solution.trace.best_cost,
        },
        seed=problem.search.seed,
    )


def solution_to_dict(doc: SolutionDocument) -> dict:
    return {
        "formatVersion": FORMAT_VERSION,
        "problemHash": problem_hash(doc.problem),
        "problem": problem_to_dict(doc.problem),
        "seed": doc.seed,
        "feasible": doc.feasible,
        "design": {"lengths": [round(v, 4) for v in doc.design.lengths]},
        "targets": [
            {
                "targetIndex": j,
                "configurationDegrees": [round(a, 6) for a in doc.configurations[j].degrees],
                "activeLink": doc.active_links[j],
                "feasible": doc.per_target_feasible[j],
                "distanceResidual": doc.distance_residuals[j],
                "orientationResidualDegrees": math.degrees(doc.orientation_residuals[j]),
                "cost": doc.per_target_cost[j],
            }
            for j in range(len(doc.configurations))
        ],
        "trace": doc.trace_summary,
    }


def solution_from_dict(data) -> SolutionDocument:
    if not isinstance(data, dict):
        raise ValidationError("solution document must be a JSON object", field="$")
    allowed = {"formatVersion": 0, "problemHash": 0, "problem": 0, "seed": 0, "feasible": 0,
               "design": 0, "targets": 0, "trace": 0}
    _require_keys(data, allowed, "$")
    if data.get("formatVersion") != FORMAT_VERSION:
        raise ValidationError(
            f"unsupported format version {data.get('formatVersion')!r}", field="formatVersion"
        )
    problem = problem_from_dict(data.get("problem"))
    recorded_hash = data.get("problemHash")
    if recorded_hash != problem_hash(problem):
        raise ValidationError("problem hash does not match the embedded problem", field="problemHash")
    design_data = data.get("design")
    if not isinstance(design_data, dict) or "lengths" not in design_data:
        raise ValidationError("design.lengths is required", field="design")
    design = Design(tuple(float(v) for v in design_data["lengths"]))

    entries = data.get("targets")
    if not isinstance(entries, list) or len(entries) != len(problem.targets):
        raise ValidationError("per-target entries must match the problem targets", field="targets")
    configs, links, flags, dists, orients, costs = [], [], [], [], [], []
    for idx, entry in enumerate(entries):
        field = f"targets[{idx}]"
        if not isinstance(entry, dict):
            raise ValidationError("expected an object", field=field)
        try:
            configs.append(Configuration.from_degrees(entry["configurationDegrees"]))
            links.append(int(entry["activeLink"]))
            flags.append(bool(entry["feasible"]))
            dists.append(float(entry["distanceResidual"]))
            orients.append(math.radians(float(entry["orientationResidualDegrees"])))
            costs.append(float(entry["cost"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed entry: {exc}", field=field) from exc
    return SolutionDocument(
        problem=problem,
        design=design,
        configurations=tuple(configs),
        active_links=tuple(links),
        per_target_feasible=tuple(flags),
        distance_residuals=tuple(dists),
        orientation_residuals=tuple(orients),
        per_target_cost=tuple(costs),
        trace_summary=dict(data.get("trace", {})),
        seed=int(data.get("seed", 0)),
    )


def save_solution(doc: SolutionDocument, path) -> None:
    _atomic_write(path, _dump(solution_to_dict(doc)))


def load_solution(path) -> SolutionDocument:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(
                f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", field="$"
            ) from exc
    return solution_from_dict(data)


def solve_problem(problem: ProblemSpec, *, budget: int | None = None,
                  restarts: int | None = None, seed: int | None = None) -> SolutionDocument:
    """Run design_search on a problem spec and wrap the result as a document."""
    from .design import DEFAULT_RESTARTS, design_search

    if seed is not None:
        problem = replace(problem, search=replace(problem.search, seed=seed))
    solution = design_search(
        problem.targets,
        problem.constraints,
        problem.weights,
        problem.tolerance,
        problem.search,
        budget=budget,
        restarts=DEFAULT_RESTARTS if restarts is None else restarts,
    )
    return build_solution_document(problem, solution)
