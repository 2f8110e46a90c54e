// Per-target chain panes rendered from a solution document. The UI does no
// optimization: everything drawn comes from server data (lengths + per-target
// configurations), so a rendered chain can never violate the constraints the
// server enforced.

import { chainNodes, Viewport, worldToScreen } from "./geometry.js";
import { SolutionDocument } from "./types.js";

export const LINK_COLORS = [
  "#1f77b4",
  "#ff7f0e",
  "#2ca02c",
  "#d62728",
  "#9467bd",
  "#8c564b",
  "#e377c2",
  "#17becf",
];

export interface ChainSegment {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  color: string;
  dashed: boolean;
}

export interface TargetBadge {
  index: number;
  feasible: boolean;
  activeLink: number;
  distanceMm: number;
  orientationDeg: number;
}

export interface ChainPane {
  targetIndex: number;
  segments: ChainSegment[];
  target: { x: number; y: number; phiDegrees: number };
  badge: TargetBadge;
}

export function buildPanes(doc: SolutionDocument, viewport: Viewport): ChainPane[] {
  return doc.targets.map((entry) => {
    const nodes = chainNodes(doc.design.lengths, entry.configurationDegrees);
    const segments: ChainSegment[] = [];
    for (let i = 1; i < nodes.length; i++) {
      const [x1, y1] = worldToScreen(viewport, nodes[i - 1][0], nodes[i - 1][1]);
      const [x2, y2] = worldToScreen(viewport, nodes[i][0], nodes[i][1]);
      segments.push({
        x1,
        y1,
        x2,
        y2,
        color: LINK_COLORS[(i - 1) % LINK_COLORS.length],
        dashed: i > entry.activeLink,
      });
    }
    const spec = doc.problem.targets[entry.targetIndex];
    return {
      targetIndex: entry.targetIndex,
      segments,
      target: { x: spec.x, y: spec.y, phiDegrees: spec.phiDegrees },
      badge: {
        index: entry.targetIndex,
        feasible: entry.feasible,
        activeLink: entry.activeLink,
        distanceMm: entry.distanceResidual * 1000,
        orientationDeg: entry.orientationResidualDegrees,
      },
    };
  });
}

export function summarize(doc: SolutionDocument): string {
  const lengths = doc.design.lengths.map((v) => v.toFixed(4)).join(", ");
  const total = doc.design.lengths.reduce((a, b) => a + b, 0);
  const state = doc.feasible ? "feasible" : "infeasible";
  return `${state}, ${doc.design.lengths.length} links [${lengths}] m, total ${total.toFixed(3)} m`;
}
