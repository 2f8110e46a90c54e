"""Per-link and total reaching cost.

For each target the cost of a candidate end-effector link combines the
clamped point-to-segment distance and the absolute (wrapped) orientation
mismatch, weighted and divided by the squared target distance so closer
targets — the harder ones under a bend limit — dominate. The first link is
never a candidate: it can only point straight at the base ray. The total is
the sum over targets of the per-target minimum across links.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ContractError, DimensionError, InvalidTargetError
from .kinematics import (
    ChainPose,
    Configuration,
    Design,
    Target,
    forward_kinematics,
    point_segment_distance,
    wrap_angle,
)


@dataclass(frozen=True)
class CostWeights:
    """Weights balancing meters against radians, plus the projection clamp."""

    w_d: float = 1.0
    w_o: float = 1.0
    clamp_lo: float = 0.3
    clamp_hi: float = 0.9

    def __post_init__(self):
        if self.w_d <= 0.0 or self.w_o <= 0.0:
            raise ValueError(f"weights must be positive, got w_d={self.w_d}, w_o={self.w_o}")
        if not (0.0 <= self.clamp_lo < self.clamp_hi <= 1.0):
            raise ValueError(
                f"clamp range must satisfy 0 <= lo < hi <= 1, got [{self.clamp_lo}, {self.clamp_hi}]"
            )


@dataclass(frozen=True)
class TargetCost:
    """Best-link decomposition of one target's contribution."""

    target_index: int
    best_link: int
    distance_term: float
    orientation_term: float
    weighted_cost: float


@dataclass(frozen=True)
class CostBreakdown:
    total: float
    per_target: tuple[TargetCost, ...]


def link_cost(
    pose: ChainPose,
    config: Configuration,
    target: Target,
    i: int,
    weights: CostWeights = CostWeights(),
) -> tuple[float, float, float]:
    """Cost of using 1-based link i as the end effector for one target.

    Returns (cost, distance term in meters, orientation term in radians).
    Link 1 is rejected: its orientation is pinned to the base ray.
    """
    n = len(pose.cumulative_angles)
    if not 2 <= i <= n:
        raise IndexError(f"end-effector link index must be in [2, {n}], got {i}")
    v, w = pose.link_endpoints(i)
    d, _, _ = point_segment_distance(target.position, v, w, weights.clamp_lo, weights.clamp_hi)
    o = abs(wrap_angle(target.orientation - float(pose.cumulative_angles[i - 1])))
    cost = (weights.w_d * d + weights.w_o * o) / target.norm**2
    return cost, d, o


def total_cost(
    design: Design,
    configs: Sequence[Configuration],
    targets: Sequence[Target],
    weights: CostWeights = CostWeights(),
) -> CostBreakdown:
    """Sum over targets of the minimum link cost; ties pick the lowest link."""
    if len(targets) == 0:
        raise ContractError("at least one target is required")
    if len(configs) != len(targets):
        raise DimensionError(f"{len(configs)} configurations for {len(targets)} targets")
    if design.n < 2:
        raise ContractError("cost needs at least 2 links; the first link is never an end effector")
    for t in targets:
        if t.norm == 0.0:
            raise InvalidTargetError("target at the base has no defined weight")

    per_target = []
    total = 0.0
    for j, (config, target) in enumerate(zip(configs, targets)):
        pose = forward_kinematics(design, config)
        best = None
        for i in range(2, design.n + 1):
            cost, d, o = link_cost(pose, config, target, i, weights)
            if best is None or cost < best[0]:
                best = (cost, i, d, o)
        cost, i, d, o = best
        per_target.append(
            TargetCost(
                target_index=j,
                best_link=i,
                distance_term=d,
                orientation_term=o,
                weighted_cost=cost,
            )
        )
        total += cost
    return CostBreakdown(total=total, per_target=tuple(per_target))


def batch_total_cost(
    x: np.ndarray,
    n: int,
    targets: Sequence[Target],
    weights: CostWeights = CostWeights(),
) -> np.ndarray:
    """Vectorized total cost for a batch of packed optimization vectors.

    Each row of ``x`` is [lengths (n), q_1 (n), ..., q_m (n)] with angles in
    radians. Returns one total cost per row. Agrees with :func:`total_cost`
    on every row; the optimizer uses this path so the scalar one stays an
    independent cross-check.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    m = len(targets)
    if x.shape[1] != n * (1 + m):
        raise DimensionError(f"expected rows of length {n * (1 + m)}, got {x.shape[1]}")
    if n < 2:
        raise ContractError("cost needs at least 2 links")
    lengths = x[:, :n]
    totals = np.zeros(x.shape[0])
    for j, target in enumerate(targets):
        q = x[:, n * (1 + j) : n * (2 + j)]
        theta = np.cumsum(q, axis=1)
        steps_x = lengths * np.cos(theta)
        steps_y = lengths * np.sin(theta)
        nodes_x = np.concatenate([np.zeros((x.shape[0], 1)), np.cumsum(steps_x, axis=1)], axis=1)
        nodes_y = np.concatenate([np.zeros((x.shape[0], 1)), np.cumsum(steps_y, axis=1)], axis=1)
        # links 2..n -> segments (nodes[i-1], nodes[i]) for i = 2..n
        vx, vy = nodes_x[:, 1:-1], nodes_y[:, 1:-1]
        seg_x = nodes_x[:, 2:] - vx
        seg_y = nodes_y[:, 2:] - vy
        seg_sq = np.maximum(seg_x**2 + seg_y**2, 1e-300)
        tx, ty = target.position
        lam = ((tx - vx) * seg_x + (ty - vy) * seg_y) / seg_sq
        lam = np.clip(lam, weights.clamp_lo, weights.clamp_hi)
        d = np.hypot(tx - (vx + lam * seg_x), ty - (vy + lam * seg_y))
        o = np.abs(np.pi - np.mod(np.pi - (target.orientation - theta[:, 1:]), 2.0 * np.pi))
        link_costs = (weights.w_d * d + weights.w_o * o) / target.norm**2
        totals += link_costs.min(axis=1)
    return totals
