"""Adaptive stochastic search: gradient-free box-constrained minimization.

Each iteration draws K Gaussian perturbations around the current mean, clips
them into the box, evaluates the objective, min-max normalizes the negated
costs into [0, 1], maps them through exp(shape_exponent * L), and moves the
mean/variance toward the weight-favored samples. The best clipped sample ever
evaluated is returned (the drifting mean can sit above it on rugged
landscapes); the final mean is kept on the trace for fidelity checks.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionError, OptimizerFailureError


@dataclass(frozen=True)
class SearchParams:
    """Hyperparameters of one search run.

    samples/iterations/alpha/shape_exponent/epsilon are the K, N, alpha, S
    exponent and variance floor of the update rule; convergence_window and
    convergence_tol stop a run whose best cost has plateaued. With
    normalize_variance the sigma update divides by the weight sum like the
    mean update does; the unnormalized variant is kept for comparison but
    diverges for realistic sample counts.
    """

    samples: int = 200
    iterations: int = 1000
    alpha: float = 0.8
    shape_exponent: float = 10.0
    epsilon: float = 1e-3
    seed: int = 0
    convergence_window: int = 50
    convergence_tol: float = 1e-4
    normalize_variance: bool = True

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("min-max normalization needs at least 2 samples per iteration")
        if self.iterations < 1:
            raise ValueError("at least one iteration is required")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.epsilon <= 0.0:
            raise ValueError(f"variance floor must be positive, got {self.epsilon}")


@dataclass(frozen=True, eq=False)
class BoxBounds:
    """Elementwise box for the packed optimization vector."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if lower.shape != upper.shape or lower.ndim != 1:
            raise DimensionError(f"bounds shapes differ: {lower.shape} vs {upper.shape}")
        if np.any(lower > upper):
            raise ValueError("lower bound exceeds upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def clip(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower, self.upper)

    def contains(self, x: np.ndarray, atol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower - atol) and np.all(x <= self.upper + atol))


@dataclass(frozen=True, eq=False)
class SearchTrace:
    """Outcome of one run: best sample ever, per-iteration running best, and
    the final sampling distribution."""

    best_x: np.ndarray
    best_cost: float
    cost_history: np.ndarray
    iterations: int
    evaluations: int
    final_mu: np.ndarray
    final_sigma: np.ndarray


def _update_distribution(
    mu: np.ndarray,
    deltas: np.ndarray,
    costs: np.ndarray,
    bounds: BoxBounds,
    params: SearchParams,
) -> tuple[np.ndarray, np.ndarray]:
    """One mean/variance update from evaluated perturbations.

    deltas are the effective (post-clip) displacements from mu; costs are the
    objective values at mu + deltas. All-equal costs degenerate to uniform
    weights (normalized scores defined as zero).
    """
    scores = -costs
    span = scores.max() - scores.min()
    if span > 0.0:
        scores = (scores - scores.min()) / span
    else:
        scores = np.zeros_like(scores)
    weights = np.exp(params.shape_exponent * scores)
    weight_sum = weights.sum()
    mu_next = bounds.clip(mu + params.alpha * (weights[:, None] * deltas).sum(axis=0) / weight_sum)
    second_moment = (weights[:, None] * deltas**2).sum(axis=0)
    if params.normalize_variance:
        second_moment /= weight_sum
    sigma_next = np.sqrt(second_moment + params.epsilon)
    return mu_next, sigma_next


def ass_minimize(
    objective: Callable,
    mu0: Sequence[float],
    sigma0: Sequence[float],
    bounds: BoxBounds,
    params: SearchParams = SearchParams(),
    *,
    vectorized: bool = False,
    workers: int = 1,
) -> SearchTrace:
    """Minimize a black-box objective over a box.

    ``objective`` maps a 1-D vector to a float, or — with vectorized=True — a
    (K, D) batch to a (K,) cost array. Perturbations are drawn from a single
    seeded stream before any dispatch and all reductions run in sample-index
    order, so results are identical for any ``workers`` count. Non-finite
    objective values are discarded with a warning; an iteration where every
    sample is non-finite aborts the run.
    """
    mu = np.asarray(mu0, dtype=float).copy()
    sigma = np.asarray(sigma0, dtype=float).copy()
    if mu.shape != sigma.shape or mu.shape != bounds.lower.shape:
        raise DimensionError(
            f"mu {mu.shape}, sigma {sigma.shape} and bounds {bounds.lower.shape} must agree"
        )
    if np.any(sigma <= 0.0):
        raise ValueError("initial sigma must be positive elementwise")
    if not bounds.contains(mu):
        raise ValueError("initial mean must lie within bounds")

    rng = np.random.default_rng(params.seed)
    best_x = mu.copy()
    best_cost = math.inf
    history = []
    evaluations = 0

    for iteration in range(params.iterations):
        draws = rng.normal(size=(params.samples, mu.size)) * sigma
        x = bounds.clip(mu + draws)
        deltas = x - mu

        if vectorized:
            costs = np.asarray(objective(x), dtype=float)
        elif workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                costs = np.fromiter(pool.map(objective, x), dtype=float, count=params.samples)
        else:
            costs = np.fromiter((objective(row) for row in x), dtype=float, count=params.samples)
        evaluations += params.samples

        finite = np.isfinite(costs)
        if not finite.all():
            warnings.warn(
                f"discarding {int((~finite).sum())} non-finite objective values "
                f"at iteration {iteration}",
                stacklevel=2,
            )
            if not finite.any():
                raise OptimizerFailureError(
                    f"all {params.samples} samples were non-finite at iteration {iteration}"
                )
            x, deltas, costs = x[finite], deltas[finite], costs[finite]

        k = int(np.argmin(costs))
        if costs[k] < best_cost:
            best_cost = float(costs[k])
            best_x = x[k].copy()
        history.append(best_cost)

        mu, sigma = _update_distribution(mu, deltas, costs, bounds, params)

        w = params.convergence_window
        if len(history) > w:
            improvement = history[-1 - w] - history[-1]
            reference = max(abs(history[-1 - w]), 1e-12)
            if improvement / reference < params.convergence_tol:
                break

    return SearchTrace(
        best_x=best_x,
        best_cost=best_cost,
        cost_history=np.asarray(history),
        iterations=len(history),
        evaluations=evaluations,
        final_mu=mu,
        final_sigma=sigma,
    )


def derive_seed(master: int, *key: int) -> int:
    """A reproducible child seed for job (master, *key), independent of
    scheduling order."""
    words = [int(master) & 0xFFFFFFFFFFFFFFFF] + [int(k) & 0xFFFFFFFF for k in key]
    return int(np.random.SeedSequence(words).generate_state(1, np.uint64)[0])
