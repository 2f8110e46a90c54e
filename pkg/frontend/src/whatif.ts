// What-if table: link count and feasibility per bend limit, from trade-off
// solution documents.

import { SolutionDocument } from "./types.js";

export interface WhatIfRow {
  bendLimitDegrees: number;
  links: number;
  feasible: boolean;
  totalLength: number;
}

export function buildWhatIfTable(angles: number[], solutions: SolutionDocument[]): WhatIfRow[] {
  return solutions.map((doc, i) => ({
    bendLimitDegrees: angles[i],
    links: doc.design.lengths.length,
    feasible: doc.feasible,
    totalLength: doc.design.lengths.reduce((a, b) => a + b, 0),
  }));
}

/** link-count change between two solves (e.g. after raising the bend limit) */
export function linkDrop(before: SolutionDocument, after: SolutionDocument): number {
  return before.design.lengths.length - after.design.lengths.length;
}
