"""Deterministic SVG rendering of solutions and workspace scans.

Output is plain SVG 1.1 text with fixed-precision coordinates and stable
element ordering, so renders of the same document are byte-identical and can
be golden-file tested.
"""
from __future__ import annotations

import math

from .design import WorkspaceResult
from .kinematics import forward_kinematics
from .problem_io import SolutionDocument

LINK_PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#17becf",
)

_STAR_OUTER = 9.0
_STAR_INNER = 3.6
_ARROW_LEN = 26.0


def _fmt(value: float) -> str:
    out = f"{value:.2f}"
    return "0.00" if out == "-0.00" else out


def _star_points(cx: float, cy: float) -> str:
    pts = []
    for k in range(10):
        radius = _STAR_OUTER if k % 2 == 0 else _STAR_INNER
        angle = -math.pi / 2 + k * math.pi / 5
        pts.append(f"{_fmt(cx + radius * math.cos(angle))},{_fmt(cy + radius * math.sin(angle))}")
    return " ".join(pts)


def _arrow(cx: float, cy: float, phi: float, color: str) -> list[str]:
    # screen y grows downward, so the world angle gets a sign flip
    dx, dy = math.cos(phi), -math.sin(phi)
    tip_x, tip_y = cx + _ARROW_LEN * dx, cy + _ARROW_LEN * dy
    left = (tip_x - 7 * dx - 3.5 * dy, tip_y - 7 * dy + 3.5 * dx)
    right = (tip_x - 7 * dx + 3.5 * dy, tip_y - 7 * dy - 3.5 * dx)
    return [
        f'<line x1="{_fmt(cx)}" y1="{_fmt(cy)}" x2="{_fmt(tip_x)}" y2="{_fmt(tip_y)}" '
        f'stroke="{color}" stroke-width="1.5" />',
        f'<polygon points="{_fmt(tip_x)},{_fmt(tip_y)} {_fmt(left[0])},{_fmt(left[1])} '
        f'{_fmt(right[0])},{_fmt(right[1])}" fill="{color}" />',
    ]


def render_svg(doc: SolutionDocument, *, scale: float = 200.0, margin: float = 45.0) -> str:
    """One pane per target configuration; links beyond the active one dashed."""
    if doc.design.n == 0:
        raise ValueError("cannot render a design with no links")
    poses = [forward_kinematics(doc.design, config) for config in doc.configurations]

    xs = [0.0] + [float(v) for pose in poses for v in pose.nodes[:, 0]]
    ys = [0.0] + [float(v) for pose in poses for v in pose.nodes[:, 1]]
    for target in doc.problem.targets:
        xs.append(target.position[0])
        ys.append(target.position[1])
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)

    pane_w = (x_hi - x_lo) * scale + 2 * margin
    pane_h = (y_hi - y_lo) * scale + 2 * margin
    total_w = pane_w * len(poses)

    def to_screen(pane: int, x: float, y: float) -> tuple[float, float]:
        sx = pane * pane_w + margin + (x - x_lo) * scale
        sy = margin + (y_hi - y) * scale
        return sx, sy

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(total_w)}" height="{_fmt(pane_h)}" '
        f'viewBox="0 0 {_fmt(total_w)} {_fmt(pane_h)}">',
        '<rect width="100%" height="100%" fill="white" />',
    ]
    for j, pose in enumerate(poses):
        target = doc.problem.targets[j]
        active = doc.active_links[j]
        lines.append(f'<g id="target-{j}">')
        lines.append(
            f'<rect x="{_fmt(j * pane_w)}" y="0" width="{_fmt(pane_w)}" height="{_fmt(pane_h)}" '
            'fill="none" stroke="#cccccc" stroke-width="1" />'
        )
        lines.append(
            f'<text x="{_fmt(j * pane_w + 10)}" y="22" font-family="sans-serif" '
            f'font-size="14" fill="#333333">Target {j + 1}</text>'
        )
        for i in range(1, doc.design.n + 1):
            v, w = pose.link_endpoints(i)
            x1, y1 = to_screen(j, float(v[0]), float(v[1]))
            x2, y2 = to_screen(j, float(w[0]), float(w[1]))
            color = LINK_PALETTE[(i - 1) % len(LINK_PALETTE)]
            dash = ' stroke-dasharray="7 5"' if i > active else ""
            lines.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                f'stroke="{color}" stroke-width="4" stroke-linecap="round"{dash} />'
            )
        for i in range(doc.design.n):
            node = pose.nodes[i]
            cx, cy = to_screen(j, float(node[0]), float(node[1]))
            lines.append(
                f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="3" fill="#444444" />'
            )
        tx, ty = to_screen(j, target.position[0], target.position[1])
        lines.extend(_arrow(tx, ty, target.orientation, "#555555"))
        lines.append(f'<polygon points="{_star_points(tx, ty)}" fill="#f4b41a" stroke="#8a6400" />')
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_workspace_svg(result: WorkspaceResult, *, size: float = 480.0) -> str:
    """Scatter of sampled poses; feasible and infeasible get CSS classes, the
    tick on each dot points along the sampled orientation."""
    region = result.region
    span_x = region.x_max - region.x_min
    span_y = region.y_max - region.y_min
    scale = size / max(span_x, span_y)
    margin = 30.0
    width = span_x * scale + 2 * margin
    height = span_y * scale + 2 * margin

    def to_screen(x: float, y: float) -> tuple[float, float]:
        return margin + (x - region.x_min) * scale, margin + (region.y_max - y) * scale

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        "<style>",
        ".feasible { fill: #2ca02c; stroke: #2ca02c; }",
        ".infeasible { fill: #d0d0d0; stroke: #d0d0d0; }",
        "</style>",
        '<rect width="100%" height="100%" fill="white" />',
        f'<rect x="{_fmt(margin)}" y="{_fmt(margin)}" width="{_fmt(span_x * scale)}" '
        f'height="{_fmt(span_y * scale)}" fill="none" stroke="#999999" />',
    ]
    for s in result.samples:
        cx, cy = to_screen(s.x, s.y)
        cls = "feasible" if s.feasible else "infeasible"
        tick_x = cx + 6.0 * math.cos(s.phi)
        tick_y = cy - 6.0 * math.sin(s.phi)
        lines.append(
            f'<g class="{cls}"><circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="2.2" />'
            f'<line x1="{_fmt(cx)}" y1="{_fmt(cy)}" x2="{_fmt(tick_x)}" y2="{_fmt(tick_y)}" '
            'stroke-width="1" /></g>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
