// Progressive workspace overlay: accumulates streamed samples, tracks paint
// coverage, and filters by orientation for the heatmap slider.

import { WorkspaceJobResult, WorkspaceSamplePoint } from "./types.js";

export interface OverlayStats {
  received: number;
  painted: number;
  expectedTotal: number;
  successRate: number;
}

export class WorkspaceOverlay {
  private samples: WorkspaceSamplePoint[] = [];
  private seen = new Set<string>();
  private paintedCount = 0;
  private expectedTotal = 0;

  constructor(private paint: (sample: WorkspaceSamplePoint) => void) {}

  /** feed a job-result snapshot; paints every not-yet-seen sample exactly once */
  update(result: WorkspaceJobResult): void {
    this.expectedTotal = result.total;
    for (const sample of result.samples.slice(this.samples.length)) {
      const key = `${sample.x},${sample.y},${sample.phiDegrees}`;
      this.samples.push(sample);
      if (!this.seen.has(key)) {
        this.seen.add(key);
        this.paint(sample);
        this.paintedCount++;
      }
    }
  }

  stats(): OverlayStats {
    const feasible = this.samples.filter((s) => s.feasible).length;
    return {
      received: this.samples.length,
      painted: this.paintedCount,
      expectedTotal: this.expectedTotal,
      successRate: this.samples.length ? feasible / this.samples.length : 0,
    };
  }

  /** samples whose orientation lies within +/- halfWidth of centerDegrees */
  filterByOrientation(centerDegrees: number, halfWidth: number): WorkspaceSamplePoint[] {
    return this.samples.filter((s) => {
      let diff = (s.phiDegrees - centerDegrees) % 360;
      if (diff > 180) diff -= 360;
      if (diff < -180) diff += 360;
      return Math.abs(diff) <= halfWidth;
    });
  }

  all(): readonly WorkspaceSamplePoint[] {
    return this.samples;
  }
}
