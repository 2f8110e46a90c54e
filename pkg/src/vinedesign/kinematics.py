"""Planar serial-chain kinematics and point-to-segment geometry.

The robot is a chain of rigid links anchored at the origin. The first joint
(the base) rotates freely; every other joint has a bounded bend. All angles in
this module are radians; files, CLI and API surfaces convert from degrees at
the boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometryError, DimensionError, InvalidTargetError

TWO_PI = 2.0 * math.pi


def wrap_angle(angle: float) -> float:
    """Wrap an angle in radians into (-pi, pi]."""
    return math.pi - (math.pi - angle) % TWO_PI


def wrap_angles(angles: np.ndarray) -> np.ndarray:
    """Vectorized :func:`wrap_angle`."""
    return np.pi - np.mod(np.pi - np.asarray(angles, dtype=float), TWO_PI)


@dataclass(frozen=True)
class Target:
    """A goal position (meters, relative to the base) with a prescribed
    end-effector orientation (radians, wrapped into (-pi, pi])."""

    position: tuple[float, float]
    orientation: float

    def __post_init__(self):
        x, y = self.position
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(self.orientation)):
            raise InvalidTargetError(f"target must be finite, got ({x}, {y}, {self.orientation})")
        if math.hypot(x, y) == 0.0:
            raise InvalidTargetError("target cannot sit at the base (zero norm)")
        object.__setattr__(self, "position", (float(x), float(y)))
        object.__setattr__(self, "orientation", wrap_angle(float(self.orientation)))

    @classmethod
    def from_degrees(cls, x: float, y: float, phi_degrees: float) -> "Target":
        return cls((x, y), math.radians(phi_degrees))

    @property
    def orientation_degrees(self) -> float:
        return math.degrees(self.orientation)

    @property
    def norm(self) -> float:
        return math.hypot(*self.position)


@dataclass(frozen=True)
class Design:
    """Link lengths in meters, base to tip. The only manufactured quantity."""

    lengths: tuple[float, ...]

    def __post_init__(self):
        lengths = tuple(float(v) for v in self.lengths)
        if len(lengths) == 0:
            raise ValueError("a design needs at least one link")
        if any(not math.isfinite(v) or v <= 0.0 for v in lengths):
            raise ValueError(f"link lengths must be finite and positive, got {lengths}")
        object.__setattr__(self, "lengths", lengths)

    @property
    def n(self) -> int:
        return len(self.lengths)

    @property
    def total_length(self) -> float:
        return sum(self.lengths)


@dataclass(frozen=True)
class Configuration:
    """Joint angles in radians for one target; angles[0] is the free base
    rotation, the rest are bend angles relative to the previous link."""

    angles: tuple[float, ...]

    def __post_init__(self):
        angles = tuple(float(v) for v in self.angles)
        if len(angles) == 0:
            raise ValueError("a configuration needs at least one joint angle")
        if any(not math.isfinite(v) for v in angles):
            raise ValueError(f"joint angles must be finite, got {angles}")
        object.__setattr__(self, "angles", angles)

    @classmethod
    def from_degrees(cls, angles_degrees) -> "Configuration":
        return cls(tuple(math.radians(a) for a in angles_degrees))

    @property
    def degrees(self) -> tuple[float, ...]:
        return tuple(math.degrees(a) for a in self.angles)

    @property
    def n(self) -> int:
        return len(self.angles)


@dataclass(frozen=True, eq=False)
class ChainPose:
    """Forward-kinematics result: node positions (n+1, 2) and the cumulative
    link angles (n,). Cumulative angles are cached because the orientation
    cost reuses them."""

    nodes: np.ndarray
    cumulative_angles: np.ndarray

    def link_endpoints(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Endpoints (v, w) of 1-based link i."""
        return self.nodes[i - 1], self.nodes[i]

    @property
    def tip(self) -> np.ndarray:
        return self.nodes[-1]


def forward_kinematics(design: Design, config: Configuration) -> ChainPose:
    """Chain node positions for a design and one joint configuration.

    nodes[0] is the base at the origin; nodes[i] = nodes[i-1] +
    lengths[i] * (cos th_i, sin th_i) with th_i the cumulative angle sum.
    """
    if design.n != config.n:
        raise DimensionError(
            f"design has {design.n} links but configuration has {config.n} angles"
        )
    theta = np.cumsum(np.asarray(config.angles, dtype=float))
    steps = np.asarray(design.lengths, dtype=float)[:, None] * np.stack(
        [np.cos(theta), np.sin(theta)], axis=1
    )
    nodes = np.vstack([np.zeros((1, 2)), np.cumsum(steps, axis=0)])
    return ChainPose(nodes=nodes, cumulative_angles=theta)


def point_segment_distance(
    t, v, w, clamp_lo: float = 0.3, clamp_hi: float = 0.9
) -> tuple[float, float, np.ndarray]:
    """Distance from point t to the segment v-w with a clamped projection.

    The projection parameter lambda = (t-v).(w-v)/|w-v|^2 is clipped into
    [clamp_lo, clamp_hi] before the closest point v + lambda*(w-v) is formed,
    so the "closest" point is kept away from the segment ends. Returns
    (distance, clipped lambda, closest point).
    """
    if not (0.0 <= clamp_lo < clamp_hi <= 1.0):
        raise ValueError(f"clamp range must satisfy 0 <= lo < hi <= 1, got [{clamp_lo}, {clamp_hi}]")
    t = np.asarray(t, dtype=float)
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    seg = w - v
    seg_sq = float(seg @ seg)
    if seg_sq == 0.0:
        raise DegenerateGeometryError(f"segment endpoints coincide at {tuple(v)}")
    lam = float((t - v) @ seg) / seg_sq
    lam = min(max(lam, clamp_lo), clamp_hi)
    closest = v + lam * seg
    return float(np.hypot(*(t - closest))), lam, closest
