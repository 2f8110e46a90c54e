// Editable session state and its (de)serialization to problem documents.
// The state must serialize to a valid problem at all times; exports are
// canonical JSON so that export -> import -> export is byte-identical.

import {
  ConstraintsSpec,
  DEFAULT_CONSTRAINTS,
  DEFAULT_SEARCH,
  DEFAULT_TOLERANCE,
  DEFAULT_WEIGHTS,
  ProblemDocument,
  SearchSpec,
  SolutionDocument,
  TargetSpec,
  ToleranceSpec,
  WeightsSpec,
} from "./types.js";
import { wrapDegrees } from "./geometry.js";

export const BEND_LIMIT_RANGE: [number, number] = [5, 90];
export const BUDGET_RANGE: [number, number] = [2, 8];
export const MIN_TARGET_NORM = 1e-6;

export interface SessionState {
  targets: TargetSpec[];
  constraints: ConstraintsSpec;
  weights: WeightsSpec;
  tolerance: ToleranceSpec;
  search: SearchSpec;
  lastSolution: SolutionDocument | null;
}

export function newSession(): SessionState {
  return {
    targets: [],
    constraints: { ...DEFAULT_CONSTRAINTS },
    weights: { ...DEFAULT_WEIGHTS },
    tolerance: { ...DEFAULT_TOLERANCE },
    search: { ...DEFAULT_SEARCH },
    lastSolution: null,
  };
}

export class SessionError extends Error {}

export function validateTarget(target: TargetSpec): void {
  if (!Number.isFinite(target.x) || !Number.isFinite(target.y) || !Number.isFinite(target.phiDegrees)) {
    throw new SessionError("target coordinates must be finite");
  }
  if (Math.hypot(target.x, target.y) < MIN_TARGET_NORM) {
    throw new SessionError("a target cannot sit on the base");
  }
}

export function addTarget(state: SessionState, target: TargetSpec): SessionState {
  validateTarget(target);
  const clean = { ...target, phiDegrees: wrapDegrees(target.phiDegrees) };
  return { ...state, targets: [...state.targets, clean] };
}

export function moveTarget(state: SessionState, index: number, x: number, y: number): SessionState {
  const target = { ...state.targets[index], x, y };
  validateTarget(target);
  const targets = state.targets.slice();
  targets[index] = target;
  return { ...state, targets };
}

export function rotateTarget(state: SessionState, index: number, phiDegrees: number): SessionState {
  const targets = state.targets.slice();
  targets[index] = { ...targets[index], phiDegrees: wrapDegrees(phiDegrees) };
  return { ...state, targets };
}

export function deleteTarget(state: SessionState, index: number): SessionState {
  return { ...state, targets: state.targets.filter((_, i) => i !== index) };
}

export function setBendLimit(state: SessionState, limitDegrees: number): SessionState {
  const limit = Math.min(Math.max(limitDegrees, BEND_LIMIT_RANGE[0]), BEND_LIMIT_RANGE[1]);
  return {
    ...state,
    constraints: { ...state.constraints, jointAngleMin: -limit, jointAngleMax: limit },
  };
}

export function setBudget(state: SessionState, budget: number): SessionState {
  const clamped = Math.min(Math.max(Math.round(budget), BUDGET_RANGE[0]), BUDGET_RANGE[1]);
  return { ...state, constraints: { ...state.constraints, maxLinkBudget: clamped } };
}

export function setLengthBounds(state: SessionState, min: number, max: number): SessionState {
  if (!(min > 0 && min < max)) {
    throw new SessionError("length bounds must satisfy 0 < min < max");
  }
  return {
    ...state,
    constraints: { ...state.constraints, linkLengthMin: min, linkLengthMax: max },
  };
}

export function setSeed(state: SessionState, seed: number): SessionState {
  return { ...state, search: { ...state.search, seed: Math.round(seed) } };
}

export function canSolve(state: SessionState): boolean {
  return state.targets.length > 0;
}

export function toProblem(state: SessionState): ProblemDocument {
  if (!canSolve(state)) {
    throw new SessionError("place at least one target before solving");
  }
  state.targets.forEach(validateTarget);
  return {
    base: [0, 0],
    targets: state.targets.map((t) => ({ x: t.x, y: t.y, phiDegrees: t.phiDegrees })),
    constraints: { ...state.constraints },
    weights: { ...state.weights },
    tolerance: { ...state.tolerance },
    search: { ...state.search },
  };
}

function sortKeysDeep(value: unknown): unknown {
  if (Array.isArray(value)) return value.map(sortKeysDeep);
  if (value !== null && typeof value === "object") {
    const out: Record<string, unknown> = {};
    for (const key of Object.keys(value as Record<string, unknown>).sort()) {
      out[key] = sortKeysDeep((value as Record<string, unknown>)[key]);
    }
    return out;
  }
  return value;
}

/** canonical problem JSON (sorted keys), suitable for byte-exact round trips */
export function exportSession(state: SessionState): string {
  return JSON.stringify(sortKeysDeep(toProblem(state)), null, 2) + "\n";
}

export function importSession(text: string): SessionState {
  let data: ProblemDocument;
  try {
    data = JSON.parse(text) as ProblemDocument;
  } catch (err) {
    throw new SessionError(`not valid JSON: ${(err as Error).message}`);
  }
  if (!Array.isArray(data.targets) || data.targets.length === 0) {
    throw new SessionError("problem has no targets");
  }
  const base = data.base ?? [0, 0];
  const session = newSession();
  session.targets = data.targets.map((t) => {
    const target = { x: t.x - base[0], y: t.y - base[1], phiDegrees: wrapDegrees(t.phiDegrees) };
    validateTarget(target);
    return target;
  });
  session.constraints = { ...DEFAULT_CONSTRAINTS, ...(data.constraints ?? {}) };
  session.weights = { ...DEFAULT_WEIGHTS, ...(data.weights ?? {}) };
  session.tolerance = { ...DEFAULT_TOLERANCE, ...(data.tolerance ?? {}) };
  session.search = { ...DEFAULT_SEARCH, ...(data.search ?? {}) };
  return session;
}
