import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import {
  BEND_LIMIT_RANGE,
  BUDGET_RANGE,
  SessionError,
  addTarget,
  canSolve,
  deleteTarget,
  exportSession,
  importSession,
  moveTarget,
  newSession,
  rotateTarget,
  setBendLimit,
  setBudget,
  setLengthBounds,
  setSeed,
  toProblem,
} from "../src/session.js";

const FIXTURE = new URL("../fixtures/four_targets_problem.json", import.meta.url);

describe("session editing", () => {
  it("adds, moves, rotates and deletes targets", () => {
    let s = newSession();
    s = addTarget(s, { x: 0.5, y: 0.5, phiDegrees: 45 });
    s = addTarget(s, { x: 0.7, y: 0.2, phiDegrees: 380 });
    expect(s.targets[1].phiDegrees).toBeCloseTo(20);
    s = moveTarget(s, 0, 0.6, 0.4);
    expect(s.targets[0]).toMatchObject({ x: 0.6, y: 0.4 });
    s = rotateTarget(s, 0, -190);
    expect(s.targets[0].phiDegrees).toBeCloseTo(170);
    s = deleteTarget(s, 0);
    expect(s.targets).toHaveLength(1);
  });

  it("rejects targets at the base, so state always serializes validly", () => {
    const s = newSession();
    expect(() => addTarget(s, { x: 0, y: 0, phiDegrees: 0 })).toThrow(SessionError);
    expect(() => addTarget(s, { x: Number.NaN, y: 1, phiDegrees: 0 })).toThrow(SessionError);
    const withTarget = addTarget(s, { x: 0.5, y: 0.1, phiDegrees: 0 });
    expect(() => moveTarget(withTarget, 0, 0, 0)).toThrow(SessionError);
  });

  it("solve is disabled with no targets", () => {
    const s = newSession();
    expect(canSolve(s)).toBe(false);
    expect(() => toProblem(s)).toThrow(SessionError);
    expect(canSolve(addTarget(s, { x: 0.4, y: 0.4, phiDegrees: 0 }))).toBe(true);
  });

  it("clamps sliders to their documented ranges", () => {
    let s = newSession();
    s = setBendLimit(s, 200);
    expect(s.constraints.jointAngleMax).toBe(BEND_LIMIT_RANGE[1]);
    s = setBendLimit(s, 1);
    expect(s.constraints.jointAngleMax).toBe(BEND_LIMIT_RANGE[0]);
    expect(s.constraints.jointAngleMin).toBe(-BEND_LIMIT_RANGE[0]);
    s = setBudget(s, 100);
    expect(s.constraints.maxLinkBudget).toBe(BUDGET_RANGE[1]);
    s = setBudget(s, 0);
    expect(s.constraints.maxLinkBudget).toBe(BUDGET_RANGE[0]);
    expect(() => setLengthBounds(s, 0.5, 0.2)).toThrow(SessionError);
    s = setSeed(s, 42.7);
    expect(s.search.seed).toBe(43);
  });
});

describe("session round trips", () => {
  it("export -> import -> export is byte-identical", () => {
    let s = newSession();
    s = addTarget(s, { x: 0.4, y: 0.65, phiDegrees: 90 });
    s = addTarget(s, { x: 0.8, y: 0.6, phiDegrees: 0 });
    s = setBendLimit(s, 45);
    s = setSeed(s, 7);
    const exported = exportSession(s);
    const reexported = exportSession(importSession(exported));
    expect(reexported).toBe(exported);
  });

  it("imports the bundled scenario and preserves its content", () => {
    const text = readFileSync(FIXTURE, "utf-8");
    const s = importSession(text);
    expect(s.targets).toHaveLength(4);
    expect(s.targets[0]).toMatchObject({ x: 0.4, y: 0.65, phiDegrees: 90 });
    expect(s.constraints.jointAngleMax).toBe(30);
    const again = importSession(exportSession(s));
    expect(exportSession(again)).toBe(exportSession(s));
  });

  it("rejects malformed imports", () => {
    expect(() => importSession("not json")).toThrow(SessionError);
    expect(() => importSession('{"targets": []}')).toThrow(SessionError);
  });
});
