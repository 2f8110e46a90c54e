"""Design synthesis and analysis: link-budget search, feasibility checks,
random feasible instances, the benchmark grid, workspace estimation, and
constraint trade-off sweeps.

The packed optimization vector is x = [lengths (n), q_1 (n), ..., q_m (n)]:
one shared set of link lengths plus one joint configuration per target.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from scipy.optimize import least_squares

from .cost import CostBreakdown, CostWeights, batch_total_cost, total_cost
from .errors import ContractError
from .kinematics import Configuration, Design, Target, forward_kinematics, wrap_angle
from .stochastic_search import BoxBounds, SearchParams, SearchTrace, ass_minimize, derive_seed

DEFAULT_RESTARTS = 5
WORKSPACE_ITERATIONS = 200

# Per-restart continuation ladder: (samples, iterations, epsilon) per stage.
# The first stage explores from the initial sigma; later stages restart from
# the incumbent best with the adapted sigma scaled back up, and progressively
# lower variance floors so the sampling can contract to fine scales.
_STAGES = ((200, 700, 1e-3), (200, 350, 1e-4), (400, 300, 1e-6), (400, 250, 1e-8))
_SIGMA_REHEAT = 4.0
# Fixed meters-per-radian balance for the contact-polish residuals; kept
# independent of the active FeasibilityTolerance so the optimized
# configurations do not change when only the acceptance thresholds change.
_POLISH_ORIENTATION_SCALE = 0.01 / math.radians(2.0)


@dataclass(frozen=True)
class Constraints:
    """Hardware limits: bend range per joint (base rotates freely), link
    length range, and the largest link budget the outer search may try.
    Angles in radians."""

    joint_angle_min: float = -math.pi / 6
    joint_angle_max: float = math.pi / 6
    base_angle_min: float = -math.pi
    base_angle_max: float = math.pi
    link_length_min: float = 0.10
    link_length_max: float = 1.0
    max_link_budget: int = 8

    def __post_init__(self):
        if self.joint_angle_min >= self.joint_angle_max:
            raise ValueError("joint angle bounds are inverted")
        if self.base_angle_min >= self.base_angle_max:
            raise ValueError("base angle bounds are inverted")
        if not 0.0 < self.link_length_min < self.link_length_max:
            raise ValueError("link length bounds must satisfy 0 < min < max")
        if self.max_link_budget < 2:
            raise ValueError("link budget must allow at least 2 links")

    @classmethod
    def from_degrees(
        cls,
        joint_angle_min: float = -30.0,
        joint_angle_max: float = 30.0,
        base_angle_min: float = -180.0,
        base_angle_max: float = 180.0,
        link_length_min: float = 0.10,
        link_length_max: float = 1.0,
        max_link_budget: int = 8,
    ) -> "Constraints":
        return cls(
            joint_angle_min=math.radians(joint_angle_min),
            joint_angle_max=math.radians(joint_angle_max),
            base_angle_min=math.radians(base_angle_min),
            base_angle_max=math.radians(base_angle_max),
            link_length_min=link_length_min,
            link_length_max=link_length_max,
            max_link_budget=max_link_budget,
        )

    def with_bend_limit_degrees(self, limit: float) -> "Constraints":
        """Same constraints with a symmetric +/- limit (degrees) on the bends."""
        return replace(
            self, joint_angle_min=-math.radians(limit), joint_angle_max=math.radians(limit)
        )

    def config_bounds(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        lo = np.full(n, self.joint_angle_min)
        hi = np.full(n, self.joint_angle_max)
        lo[0], hi[0] = self.base_angle_min, self.base_angle_max
        return lo, hi

    def x_bounds(self, n: int, m: int) -> BoxBounds:
        """Box for the packed [lengths, q_1..q_m] vector."""
        q_lo, q_hi = self.config_bounds(n)
        lower = np.concatenate([np.full(n, self.link_length_min)] + [q_lo] * m)
        upper = np.concatenate([np.full(n, self.link_length_max)] + [q_hi] * m)
        return BoxBounds(lower, upper)

    def design_ok(self, design: Design, atol: float = 1e-9) -> bool:
        lengths = np.asarray(design.lengths)
        return bool(
            np.all(lengths >= self.link_length_min - atol)
            and np.all(lengths <= self.link_length_max + atol)
        )

    def config_ok(self, config: Configuration, atol: float = 1e-9) -> bool:
        angles = np.asarray(config.angles)
        lo, hi = self.config_bounds(config.n)
        return bool(np.all(angles >= lo - atol) and np.all(angles <= hi + atol))


@dataclass(frozen=True)
class FeasibilityTolerance:
    """What counts as "reached": max residual distance (meters) and max
    orientation error (radians)."""

    max_distance: float = 0.01
    max_orientation: float = math.radians(2.0)

    def __post_init__(self):
        if self.max_distance <= 0.0 or self.max_orientation <= 0.0:
            raise ValueError("feasibility tolerances must be positive")

    @classmethod
    def from_degrees(cls, max_distance: float = 0.01, max_orientation_degrees: float = 2.0):
        return cls(max_distance=max_distance, max_orientation=math.radians(max_orientation_degrees))


@dataclass(frozen=True, eq=False)
class DesignSolution:
    """A design with one configuration per target, feasibility flags, the
    per-target end-effector links, and the winning search trace."""

    design: Design
    configurations: tuple[Configuration, ...]
    per_target_feasible: tuple[bool, ...]
    active_links: tuple[int, ...]
    trace: SearchTrace
    budget: int
    budgets_tried: tuple[int, ...]

    @property
    def feasible(self) -> bool:
        return all(self.per_target_feasible)

    @property
    def used_links(self) -> int:
        return self.design.n


def evaluate_solution(
    design: Design,
    configs: Sequence[Configuration],
    targets: Sequence[Target],
    weights: CostWeights,
    tol: FeasibilityTolerance,
    constraints: Constraints | None = None,
) -> tuple[CostBreakdown, list[bool]]:
    """Cost breakdown plus per-target feasibility flags in one pass."""
    breakdown = total_cost(design, configs, targets, weights)
    design_ok = constraints is None or constraints.design_ok(design)
    flags = []
    for j, tc in enumerate(breakdown.per_target):
        ok = (
            tc.distance_term <= tol.max_distance
            and tc.orientation_term <= tol.max_orientation
            and design_ok
            and (constraints is None or constraints.config_ok(configs[j]))
        )
        flags.append(bool(ok))
    return breakdown, flags


def check_feasibility(
    design: Design,
    configs: Sequence[Configuration],
    targets: Sequence[Target],
    weights: CostWeights = CostWeights(),
    tol: FeasibilityTolerance = FeasibilityTolerance(),
    constraints: Constraints | None = None,
) -> list[bool]:
    """Per-target flags: best-link residuals within tolerance and, when
    constraints are given, all angle/length limits satisfied."""
    _, flags = evaluate_solution(design, configs, targets, weights, tol, constraints)
    return flags


def _unpack(x: np.ndarray, n: int, m: int) -> tuple[Design, tuple[Configuration, ...]]:
    design = Design(tuple(float(v) for v in x[:n]))
    configs = tuple(
        Configuration(tuple(float(v) for v in x[n * (1 + j) : n * (2 + j)])) for j in range(m)
    )
    return design, configs


def _initial_guess(
    n: int, m: int, targets: Sequence[Target], constraints: Constraints
) -> tuple[np.ndarray, np.ndarray, BoxBounds]:
    """Lengths at the box midpoint, base angles aimed at the targets'
    centroid, bends at zero; sigma at half the box width."""
    bounds = constraints.x_bounds(n, m)
    mu = np.zeros(bounds.dim)
    mu[:n] = 0.5 * (constraints.link_length_min + constraints.link_length_max)
    cx = sum(t.position[0] for t in targets) / len(targets)
    cy = sum(t.position[1] for t in targets) / len(targets)
    base = math.atan2(cy, cx)
    for j in range(m):
        mu[n * (1 + j)] = base
    mu = bounds.clip(mu)
    sigma = 0.5 * bounds.width
    return mu, sigma, bounds


@dataclass(frozen=True, eq=False)
class _Candidate:
    design: Design
    configs: tuple[Configuration, ...]
    flags: tuple[bool, ...]
    active_links: tuple[int, ...]
    cost: float
    trace: SearchTrace
    budget: int

    @property
    def score(self) -> tuple:
        # more feasible targets first; among fully feasible candidates prefer
        # fewer used links (minimal-material goal), then lower cost
        used = max(self.active_links) if all(self.flags) else 0
        return (-sum(self.flags), used, self.cost)


def _restart_mu0(
    r: int, n: int, mu0_default: np.ndarray, bounds: BoxBounds, constraints: Constraints, seed: int
) -> np.ndarray:
    """Initial mean for restart r: the default policy first, then a
    long-first-link pattern (vine designs favor minimal distal material),
    then uniform random draws."""
    kind = r % 3
    if kind == 0:
        return mu0_default
    mu0 = mu0_default.copy()
    if kind == 1:
        mu0[:n] = constraints.link_length_min
        mu0[0] = min(max(0.55, constraints.link_length_min), constraints.link_length_max)
        return mu0
    rng = np.random.default_rng(derive_seed(seed, r, 0xA11))
    return rng.uniform(bounds.lower, bounds.upper)


def _raw_lambda(pose, target: Target, i: int) -> float:
    v, w = pose.link_endpoints(i)
    seg = w - v
    return float((np.asarray(target.position) - v) @ seg) / max(float(seg @ seg), 1e-300)


def _refine_contacts(
    candidate: _Candidate,
    targets: Sequence[Target],
    constraints: Constraints,
    weights: CostWeights,
    tol: FeasibilityTolerance,
) -> _Candidate | None:
    """Close the last millimeters with a bounded least-squares solve.

    The sampling search reliably lands in the right basin (per-target active
    links, lengths within centimeters) but cannot track the curved, sometimes
    corner-thin zero-residual manifold with a diagonal Gaussian. Freezing the
    active-link assignment turns the remaining problem into smooth
    root-finding: per target, the clamped contact point must hit the target
    and the link orientation must match. Variables are the shared lengths
    plus, per target, the joint angles up to the active link and the contact
    parameter; everything is box-bounded.
    """
    n = candidate.design.n
    assign = candidate.active_links
    x0 = list(candidate.design.lengths)
    lo = [constraints.link_length_min] * n
    hi = [constraints.link_length_max] * n
    for config, target, i in zip(candidate.configs, targets, assign):
        pose = forward_kinematics(candidate.design, config)
        lam = min(max(_raw_lambda(pose, target, i), weights.clamp_lo), weights.clamp_hi)
        x0.extend(config.angles[:i])
        x0.append(lam)
        q_lo, q_hi = constraints.config_bounds(i)
        lo.extend(q_lo)
        lo.append(weights.clamp_lo)
        hi.extend(q_hi)
        hi.append(weights.clamp_hi)

    def residuals(z: np.ndarray) -> np.ndarray:
        lengths = z[:n]
        out = np.empty(3 * len(targets))
        off = n
        for j, (target, i) in enumerate(zip(targets, assign)):
            q = z[off : off + i]
            lam = z[off + i]
            off += i + 1
            theta = np.cumsum(q)
            partial = lengths[:i].copy()
            partial[i - 1] *= lam
            x = float(partial @ np.cos(theta))
            y = float(partial @ np.sin(theta))
            out[3 * j] = x - target.position[0]
            out[3 * j + 1] = y - target.position[1]
            out[3 * j + 2] = (
                wrap_angle(target.orientation - theta[i - 1]) * _POLISH_ORIENTATION_SCALE
            )
        return out

    x0 = np.clip(np.asarray(x0, dtype=float), lo, hi)
    try:
        fit = least_squares(residuals, x0, bounds=(lo, hi), method="trf", xtol=1e-12, ftol=1e-12)
    except Exception:
        return None

    lengths = tuple(float(v) for v in fit.x[:n])
    configs = []
    off = n
    for config, i in zip(candidate.configs, assign):
        q = list(fit.x[off : off + i]) + list(config.angles[i:])
        off += i + 1
        configs.append(Configuration(tuple(float(v) for v in q)))
    try:
        design = Design(lengths)
    except ValueError:
        return None
    configs = tuple(configs)
    breakdown, flags = evaluate_solution(design, configs, targets, weights, tol, constraints)
    return _Candidate(
        design=design,
        configs=configs,
        flags=tuple(flags),
        active_links=tuple(tc.best_link for tc in breakdown.per_target),
        cost=breakdown.total,
        trace=candidate.trace,
        budget=candidate.budget,
    )


def _search_budget(
    targets: Sequence[Target],
    n: int,
    constraints: Constraints,
    weights: CostWeights,
    tol: FeasibilityTolerance,
    params: SearchParams,
    restarts: int,
) -> _Candidate:
    """Best of up to ``restarts`` runs at a fixed budget; stops early once a
    run satisfies every target.

    Each restart runs a continuation ladder of ass_minimize stages (the first
    explores from the initial guess, later ones contract around the incumbent
    with reheated adapted sigmas and lower variance floors), then a bounded
    least-squares polish of the contact equations under the frozen active-link
    assignment."""
    m = len(targets)
    mu0_default, sigma0, bounds = _initial_guess(n, m, targets, constraints)

    def objective(batch: np.ndarray) -> np.ndarray:
        return batch_total_cost(batch, n, targets, weights)

    best: _Candidate | None = None
    for r in range(restarts):
        x = _restart_mu0(r, n, mu0_default, bounds, constraints, params.seed)
        sigma = sigma0
        trace = None
        for p, (samples, iterations, epsilon) in enumerate(_STAGES):
            run_params = replace(
                params,
                seed=derive_seed(params.seed, n, r, p),
                samples=max(params.samples, samples) if p else params.samples,
                iterations=min(params.iterations, iterations),
                epsilon=min(params.epsilon, epsilon),
            )
            trace = ass_minimize(objective, x, sigma, bounds, run_params, vectorized=True)
            x = trace.best_x
            sigma = np.minimum(
                np.maximum(trace.final_sigma * _SIGMA_REHEAT, 1e-7), 0.25 * bounds.width
            )
        design, configs = _unpack(x, n, m)
        breakdown, flags = evaluate_solution(design, configs, targets, weights, tol, constraints)
        candidate = _Candidate(
            design=design,
            configs=configs,
            flags=tuple(flags),
            active_links=tuple(tc.best_link for tc in breakdown.per_target),
            cost=breakdown.total,
            trace=trace,
            budget=n,
        )
        if not all(flags):
            refined = _refine_contacts(candidate, targets, constraints, weights, tol)
            if refined is not None and refined.score < candidate.score:
                candidate = refined
        if best is None or candidate.score < best.score:
            best = candidate
        if all(candidate.flags):
            break
    return best


def _to_solution(candidate: _Candidate, budgets_tried: Sequence[int], trim: bool) -> DesignSolution:
    design, configs = candidate.design, candidate.configs
    if trim and all(candidate.flags):
        used = max(candidate.active_links)
        if used < design.n:
            design = Design(design.lengths[:used])
            configs = tuple(Configuration(c.angles[:used]) for c in configs)
    return DesignSolution(
        design=design,
        configurations=configs,
        per_target_feasible=candidate.flags,
        active_links=candidate.active_links,
        trace=candidate.trace,
        budget=candidate.budget,
        budgets_tried=tuple(budgets_tried),
    )


def design_search(
    targets: Sequence[Target],
    constraints: Constraints = Constraints(),
    weights: CostWeights = CostWeights(),
    tol: FeasibilityTolerance = FeasibilityTolerance(),
    params: SearchParams = SearchParams(),
    *,
    budget: int | None = None,
    restarts: int = DEFAULT_RESTARTS,
) -> DesignSolution:
    """Find shared link lengths plus per-target configurations reaching every
    target.

    Walks the link budget up from 2 and returns the first budget whose best
    restart satisfies all targets, with unused distal links trimmed off.
    ``budget`` pins a single budget instead (no outer loop). When nothing is
    fully feasible the best attempt (most targets, then fewest used links,
    then cost) is returned untrimmed with its flags.
    """
    if len(targets) == 0:
        raise ContractError("at least one target is required")
    budgets = [budget] if budget is not None else list(range(2, constraints.max_link_budget + 1))
    if min(budgets) < 2:
        raise ValueError("the link budget must be at least 2")

    best: _Candidate | None = None
    tried: list[int] = []
    for n in budgets:
        tried.append(n)
        candidate = _search_budget(targets, n, constraints, weights, tol, params, restarts)
        if all(candidate.flags):
            return _to_solution(candidate, tried, trim=True)
        if best is None or candidate.score < best.score:
            best = candidate
    return _to_solution(best, tried, trim=False)


def generate_feasible_instance(
    m: int,
    n_true: int = 5,
    constraints: Constraints = Constraints(),
    seed: int = 0,
    *,
    with_solution: bool = False,
):
    """Random targets that a ``n_true``-link design provably reaches.

    Samples one random design and m random configurations, then places each
    target on a uniformly chosen link (index >= 2) at a projection parameter
    in [0.3, 0.9], with the link's cumulative angle as the required
    orientation. A budget >= n_true therefore always admits a solution.
    """
    if m < 1 or n_true < 2:
        raise ValueError("need m >= 1 targets and n_true >= 2 links")
    rng = np.random.default_rng(seed)
    lengths = rng.uniform(constraints.link_length_min, constraints.link_length_max, size=n_true)
    design = Design(tuple(lengths))
    lo, hi = constraints.config_bounds(n_true)

    targets: list[Target] = []
    configs: list[Configuration] = []
    while len(targets) < m:
        config = Configuration(tuple(rng.uniform(lo, hi)))
        pose = forward_kinematics(design, config)
        link = int(rng.integers(2, n_true + 1))
        lam = rng.uniform(0.3, 0.9)
        v, w = pose.link_endpoints(link)
        point = v + lam * (w - v)
        if np.hypot(*point) == 0.0:
            continue
        targets.append(
            Target((float(point[0]), float(point[1])), wrap_angle(float(pose.cumulative_angles[link - 1])))
        )
        configs.append(config)
    if with_solution:
        return targets, design, tuple(configs)
    return targets


@dataclass(frozen=True, eq=False)
class BenchmarkResult:
    """Success-rate grid over (link budget, target count)."""

    n_values: tuple[int, ...]
    m_values: tuple[int, ...]
    per_target_rate: np.ndarray
    per_instance_rate: np.ndarray
    trials_per_cell: int

    def write_csv(self, path) -> None:
        import csv

        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["linkBudget"] + [str(m) for m in self.m_values])
            for i, n in enumerate(self.n_values):
                writer.writerow([n] + [f"{v:.4f}" for v in self.per_target_rate[i]])


def _benchmark_trial(job) -> tuple[int, float, bool]:
    index, n, m, n_true, constraints, weights, tol, params, restarts, instance_seed, search_seed = job
    targets = generate_feasible_instance(m, n_true, constraints, instance_seed)
    solution = design_search(
        targets,
        constraints,
        weights,
        tol,
        replace(params, seed=search_seed),
        budget=n,
        restarts=restarts,
    )
    fraction = sum(solution.per_target_feasible) / m
    return index, fraction, solution.feasible


def benchmark_table(
    m_values: Sequence[int],
    n_values: Sequence[int],
    trials_per_cell: int = 20,
    constraints: Constraints = Constraints(),
    weights: CostWeights = CostWeights(),
    tol: FeasibilityTolerance = FeasibilityTolerance(),
    params: SearchParams = SearchParams(),
    seed: int = 0,
    *,
    n_true: int = 5,
    restarts: int = DEFAULT_RESTARTS,
    workers: int = 1,
) -> BenchmarkResult:
    """Fraction of targets satisfied per (budget, target-count) cell.

    Every cell draws fresh random instances (guaranteed solvable for budgets
    >= n_true) and runs the search at exactly that budget, no outer loop.
    Cell/trial seeds derive from (seed, n, m, trial) so any worker count or
    scheduling yields the same table.
    """
    if trials_per_cell < 1:
        raise ValueError("need at least one trial per cell")
    jobs = []
    index = 0
    for n in n_values:
        for m in m_values:
            for trial in range(trials_per_cell):
                jobs.append(
                    (
                        index,
                        n,
                        m,
                        n_true,
                        constraints,
                        weights,
                        tol,
                        params,
                        restarts,
                        derive_seed(seed, n, m, trial, 0),
                        derive_seed(seed, n, m, trial, 1),
                    )
                )
                index += 1

    results = [None] * len(jobs)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for idx, fraction, feasible in pool.map(_benchmark_trial, jobs, chunksize=1):
                results[idx] = (fraction, feasible)
    else:
        for job in jobs:
            idx, fraction, feasible = _benchmark_trial(job)
            results[idx] = (fraction, feasible)

    shape = (len(n_values), len(m_values))
    per_target = np.zeros(shape)
    per_instance = np.zeros(shape)
    index = 0
    for i in range(shape[0]):
        for j in range(shape[1]):
            cell = results[index : index + trials_per_cell]
            per_target[i, j] = float(np.mean([c[0] for c in cell]))
            per_instance[i, j] = float(np.mean([c[1] for c in cell]))
            index += trials_per_cell
    return BenchmarkResult(
        n_values=tuple(n_values),
        m_values=tuple(m_values),
        per_target_rate=per_target,
        per_instance_rate=per_instance,
        trials_per_cell=trials_per_cell,
    )


@dataclass(frozen=True)
class Region:
    """Sampling box over (x, y, phi); phi in radians."""

    x_min: float = 0.1
    x_max: float = 0.9
    y_min: float = 0.1
    y_max: float = 0.9
    phi_min: float = -math.pi / 2
    phi_max: float = math.pi / 2

    def __post_init__(self):
        if self.x_min >= self.x_max or self.y_min >= self.y_max or self.phi_min >= self.phi_max:
            raise ValueError("region bounds are inverted")

    @classmethod
    def from_degrees(cls, x_min, x_max, y_min, y_max, phi_min_degrees, phi_max_degrees) -> "Region":
        return cls(x_min, x_max, y_min, y_max, math.radians(phi_min_degrees), math.radians(phi_max_degrees))


@dataclass(frozen=True, eq=False)
class WorkspaceSample:
    x: float
    y: float
    phi: float
    feasible: bool
    config: Configuration
    distance_residual: float
    orientation_residual: float


@dataclass(frozen=True, eq=False)
class WorkspaceResult:
    success_rate: float
    samples: tuple[WorkspaceSample, ...]
    region: Region

    def write_csv(self, path) -> None:
        import csv

        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["x", "y", "phiDegrees", "feasible", "distanceResidual",
                 "orientationResidualDegrees", "configurationDegrees"]
            )
            for s in self.samples:
                writer.writerow(
                    [
                        f"{s.x:.6f}",
                        f"{s.y:.6f}",
                        f"{math.degrees(s.phi):.6f}",
                        int(s.feasible),
                        f"{s.distance_residual:.6f}",
                        f"{math.degrees(s.orientation_residual):.6f}",
                        ";".join(f"{a:.4f}" for a in s.config.degrees),
                    ]
                )


def _refine_config_contact(
    design: Design,
    config: Configuration,
    target: Target,
    constraints: Constraints,
    weights: CostWeights,
) -> Configuration | None:
    """Lengths-frozen variant of the contact polish: solve for the joint
    angles and contact parameter on the current best link."""
    n = design.n
    breakdown = total_cost(design, [config], [target], weights)
    i = breakdown.per_target[0].best_link
    pose = forward_kinematics(design, config)
    lam0 = min(max(_raw_lambda(pose, target, i), weights.clamp_lo), weights.clamp_hi)
    q_lo, q_hi = constraints.config_bounds(i)
    lo = list(q_lo) + [weights.clamp_lo]
    hi = list(q_hi) + [weights.clamp_hi]
    x0 = np.clip(np.asarray(list(config.angles[:i]) + [lam0]), lo, hi)
    lengths = np.asarray(design.lengths)

    def residuals(z: np.ndarray) -> np.ndarray:
        theta = np.cumsum(z[:i])
        partial = lengths[:i].copy()
        partial[i - 1] *= z[i]
        return np.array(
            [
                float(partial @ np.cos(theta)) - target.position[0],
                float(partial @ np.sin(theta)) - target.position[1],
                wrap_angle(target.orientation - theta[i - 1]) * _POLISH_ORIENTATION_SCALE,
            ]
        )

    try:
        fit = least_squares(residuals, x0, bounds=(lo, hi), method="trf", xtol=1e-12, ftol=1e-12)
    except Exception:
        return None
    q = list(fit.x[:i]) + list(config.angles[i:])
    return Configuration(tuple(float(v) for v in q))


def optimize_configuration(
    design: Design,
    target: Target,
    constraints: Constraints = Constraints(),
    weights: CostWeights = CostWeights(),
    params: SearchParams = SearchParams(),
    *,
    restarts: int = 1,
) -> tuple[Configuration, SearchTrace]:
    """Best joint configuration for one target with the lengths frozen.

    Same recipe as the design search at a smaller scale: a short sampling
    ladder followed by the lengths-frozen contact polish."""
    n = design.n
    lo, hi = constraints.config_bounds(n)
    bounds = BoxBounds(lo, hi)
    mu0_default = bounds.clip(
        np.array([math.atan2(target.position[1], target.position[0])] + [0.0] * (n - 1))
    )
    sigma0 = 0.5 * bounds.width
    lengths = np.asarray(design.lengths)

    def objective(batch: np.ndarray) -> np.ndarray:
        packed = np.concatenate([np.broadcast_to(lengths, (batch.shape[0], n)), batch], axis=1)
        return batch_total_cost(packed, n, [target], weights)

    best: tuple[float, Configuration, SearchTrace] | None = None
    for r in range(restarts):
        if r == 0:
            x = mu0_default
        else:
            rng = np.random.default_rng(derive_seed(params.seed, r, 0xC0F))
            x = rng.uniform(bounds.lower, bounds.upper)
        sigma = sigma0
        trace = None
        for p, epsilon in enumerate((params.epsilon, 1e-6)):
            run_params = replace(
                params,
                seed=derive_seed(params.seed, r, p),
                epsilon=min(params.epsilon, epsilon),
            )
            trace = ass_minimize(objective, x, sigma, bounds, run_params, vectorized=True)
            x = trace.best_x
            sigma = np.minimum(
                np.maximum(trace.final_sigma * _SIGMA_REHEAT, 1e-7), 0.25 * bounds.width
            )
        config = Configuration(tuple(float(v) for v in x))
        refined = _refine_config_contact(design, config, target, constraints, weights)
        for cand in (config,) if refined is None else (config, refined):
            breakdown = total_cost(design, [cand], [target], weights)
            cost = breakdown.total
            if best is None or cost < best[0]:
                best = (cost, cand, trace)
        if best[0] <= 1e-12:
            break
    return best[1], best[2]


def _workspace_job(job) -> WorkspaceSample:
    design, x, y, phi, constraints, weights, tol, params, restarts = job
    target = Target((x, y), phi)
    config, _ = optimize_configuration(
        design, target, constraints, weights, params, restarts=restarts
    )
    breakdown, flags = evaluate_solution(design, [config], [target], weights, tol, constraints)
    tc = breakdown.per_target[0]
    return WorkspaceSample(
        x=x,
        y=y,
        phi=phi,
        feasible=flags[0],
        config=config,
        distance_residual=tc.distance_term,
        orientation_residual=tc.orientation_term,
    )


def workspace_analysis(
    design: Design,
    region: Region = Region(),
    n_samples: int = 1000,
    constraints: Constraints = Constraints(),
    weights: CostWeights = CostWeights(),
    tol: FeasibilityTolerance = FeasibilityTolerance(),
    params: SearchParams = SearchParams(),
    seed: int = 0,
    *,
    restarts: int = 1,
    workers: int = 1,
    on_sample: Callable[[WorkspaceSample], None] | None = None,
) -> WorkspaceResult:
    """Monte-Carlo reachability of a fixed design.

    Samples (x, y, phi) uniformly in the region and optimizes only the joint
    configuration per sample (lengths frozen, iterations capped at
    WORKSPACE_ITERATIONS since the dimension is just n). All sample points
    are drawn up front from one stream; per-sample search seeds derive from
    (seed, index), so the result is identical for any worker count.
    """
    rng = np.random.default_rng(seed)
    xs = rng.uniform(region.x_min, region.x_max, size=n_samples)
    ys = rng.uniform(region.y_min, region.y_max, size=n_samples)
    phis = rng.uniform(region.phi_min, region.phi_max, size=n_samples)
    capped = replace(params, iterations=min(params.iterations, WORKSPACE_ITERATIONS))
    jobs = [
        (
            design,
            float(xs[i]),
            float(ys[i]),
            float(phis[i]),
            constraints,
            weights,
            tol,
            replace(capped, seed=derive_seed(seed, i)),
            restarts,
        )
        for i in range(n_samples)
    ]

    samples: list[WorkspaceSample] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            iterator = pool.map(_workspace_job, jobs, chunksize=8)
            for sample in iterator:
                samples.append(sample)
                if on_sample is not None:
                    on_sample(sample)
    else:
        for job in jobs:
            sample = _workspace_job(job)
            samples.append(sample)
            if on_sample is not None:
                on_sample(sample)

    rate = sum(s.feasible for s in samples) / n_samples if n_samples else 0.0
    return WorkspaceResult(success_rate=rate, samples=tuple(samples), region=region)


def tradeoff_sweep(
    targets: Sequence[Target],
    constraint_variants: Sequence[Constraints],
    weights: CostWeights = CostWeights(),
    tol: FeasibilityTolerance = FeasibilityTolerance(),
    params: SearchParams = SearchParams(),
    *,
    budget: int | None = None,
    restarts: int = DEFAULT_RESTARTS,
) -> list[DesignSolution]:
    """design_search under each constraint variant, for side-by-side tables."""
    if len(constraint_variants) == 0:
        raise ContractError("at least one constraint variant is required")
    return [
        design_search(targets, variant, weights, tol, params, budget=budget, restarts=restarts)
        for variant in constraint_variants
    ]
