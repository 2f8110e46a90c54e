// Wire types mirroring the server's JSON documents (docs/formats.md).

export interface TargetSpec {
  x: number;
  y: number;
  phiDegrees: number;
}

export interface ConstraintsSpec {
  jointAngleMin: number;
  jointAngleMax: number;
  baseAngleMin: number;
  baseAngleMax: number;
  linkLengthMin: number;
  linkLengthMax: number;
  maxLinkBudget: number;
}

export interface WeightsSpec {
  wd: number;
  wo: number;
  clampLo: number;
  clampHi: number;
}

export interface ToleranceSpec {
  maxDistance: number;
  maxOrientationError: number;
}

export interface SearchSpec {
  K: number;
  N: number;
  alpha: number;
  shapeExponent: number;
  epsilon: number;
  seed: number;
  convergenceWindow: number;
  convergenceTol: number;
  normalizeVariance: boolean;
}

export interface ProblemDocument {
  base: [number, number];
  targets: TargetSpec[];
  constraints: ConstraintsSpec;
  weights: WeightsSpec;
  tolerance: ToleranceSpec;
  search: SearchSpec;
}

export interface SolutionTargetEntry {
  targetIndex: number;
  configurationDegrees: number[];
  activeLink: number;
  feasible: boolean;
  distanceResidual: number;
  orientationResidualDegrees: number;
  cost: number;
}

export interface SolutionDocument {
  formatVersion: number;
  problemHash: string;
  problem: ProblemDocument;
  seed: number;
  feasible: boolean;
  design: { lengths: number[] };
  targets: SolutionTargetEntry[];
  trace: {
    budget: number;
    budgetsTried: number[];
    iterations: number;
    evaluations: number;
    bestCost: number;
  };
}

export interface WorkspaceSamplePoint {
  x: number;
  y: number;
  phiDegrees: number;
  feasible: boolean;
}

export interface WorkspaceJobResult {
  seed: number;
  total: number;
  successRate: number;
  samples: WorkspaceSamplePoint[];
}

export type JobStatus = "pending" | "running" | "done" | "failed";

export interface JobRecord<R> {
  jobId: string;
  kind: string;
  status: JobStatus;
  progress: number;
  result?: R;
  error?: string;
}

export const DEFAULT_CONSTRAINTS: ConstraintsSpec = {
  jointAngleMin: -30,
  jointAngleMax: 30,
  baseAngleMin: -180,
  baseAngleMax: 180,
  linkLengthMin: 0.1,
  linkLengthMax: 1.0,
  maxLinkBudget: 8,
};

export const DEFAULT_WEIGHTS: WeightsSpec = { wd: 1, wo: 1, clampLo: 0.3, clampHi: 0.9 };

export const DEFAULT_TOLERANCE: ToleranceSpec = { maxDistance: 0.01, maxOrientationError: 2 };

export const DEFAULT_SEARCH: SearchSpec = {
  K: 200,
  N: 1000,
  alpha: 0.8,
  shapeExponent: 10,
  epsilon: 0.001,
  seed: 0,
  convergenceWindow: 50,
  convergenceTol: 0.0001,
  normalizeVariance: true,
};
