// App wiring: canvas editor + solve / what-if / workspace panels.

import { ApiClient, ApiError, StaleResponseError } from "./api.js";
import { CanvasEditor } from "./canvas.js";
import { buildPanes, summarize } from "./chainview.js";
import { Viewport, makeViewport, worldToScreen } from "./geometry.js";
import {
  SessionState,
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
  setSeed,
  toProblem,
} from "./session.js";
import { SolutionDocument } from "./types.js";
import { buildWhatIfTable } from "./whatif.js";
import { WorkspaceOverlay } from "./workspace.js";

const api = new ApiClient("");
let state: SessionState = newSession();

const $ = <T extends HTMLElement>(id: string): T => document.getElementById(id) as T;

const editor = new CanvasEditor($("canvas") as unknown as SVGSVGElement, {
  onAdd: (t) => update(addTarget(state, t)),
  onMove: (i, x, y) => update(moveTarget(state, i, x, y)),
  onRotate: (i, phi) => update(rotateTarget(state, i, phi)),
  onDelete: (i) => update(deleteTarget(state, i)),
});
editor.onRerender = () => editor.render(state);

function update(next: SessionState): void {
  state = next;
  editor.render(state);
  $("solve-btn").toggleAttribute("disabled", !canSolve(state));
  $("target-count").textContent = `${state.targets.length} target(s)`;
}

function setStatus(text: string): void {
  $("status").textContent = text;
}

// ---- controls ----

$("bend-limit").addEventListener("input", (e) => {
  const limit = Number((e.target as HTMLInputElement).value);
  $("bend-limit-label").textContent = `±${limit}°`;
  update(setBendLimit(state, limit));
});
$("budget").addEventListener("input", (e) => {
  const budget = Number((e.target as HTMLInputElement).value);
  $("budget-label").textContent = String(budget);
  update(setBudget(state, budget));
});
$("seed").addEventListener("change", (e) => {
  update(setSeed(state, Number((e.target as HTMLInputElement).value)));
});
$("snap-toggle").addEventListener("change", (e) => {
  editor.snapToGrid = (e.target as HTMLInputElement).checked;
});

$("export-btn").addEventListener("click", () => {
  const blob = new Blob([exportSession(state)], { type: "application/json" });
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = "problem.json";
  a.click();
  URL.revokeObjectURL(a.href);
});

$("import-input").addEventListener("change", async (e) => {
  const file = (e.target as HTMLInputElement).files?.[0];
  if (!file) return;
  try {
    update(importSession(await file.text()));
    setStatus("session imported");
  } catch (err) {
    setStatus(`import failed: ${(err as Error).message}`);
  }
});

$("load-demo").addEventListener("click", async () => {
  const response = await fetch("fixtures/four_targets_problem.json");
  update(importSession(await response.text()));
  setStatus("demo scenario loaded");
});

// ---- solve panel ----

function renderSolution(doc: SolutionDocument): void {
  state = { ...state, lastSolution: doc };
  $("solution-summary").textContent = summarize(doc);
  const host = $("panes");
  host.innerHTML = "";
  const viewport: Viewport = makeViewport(300, 260, 180);
  for (const pane of buildPanes(doc, viewport)) {
    const div = document.createElement("div");
    div.className = "pane";
    const badge = pane.badge;
    const badgeClass = badge.feasible ? "badge ok" : "badge miss";
    const segments = pane.segments
      .map(
        (s) =>
          `<line x1="${s.x1.toFixed(1)}" y1="${s.y1.toFixed(1)}" x2="${s.x2.toFixed(1)}" ` +
          `y2="${s.y2.toFixed(1)}" stroke="${s.color}" stroke-width="4" stroke-linecap="round"` +
          (s.dashed ? ' stroke-dasharray="7 5"' : "") + " />",
      )
      .join("");
    const [tx, ty] = worldToScreen(viewport, pane.target.x, pane.target.y);
    div.innerHTML =
      `<h4>Target ${pane.targetIndex + 1} <span class="${badgeClass}">` +
      `${badge.feasible ? "reached" : "missed"}</span></h4>` +
      `<svg width="300" height="260">${segments}` +
      `<circle cx="${tx.toFixed(1)}" cy="${ty.toFixed(1)}" r="6" fill="#f4b41a" stroke="#8a6400" /></svg>` +
      `<p>link ${badge.activeLink}, d ${badge.distanceMm.toFixed(2)} mm, ` +
      `o ${badge.orientationDeg.toFixed(3)}°</p>`;
    host.appendChild(div);
  }
}

$("solve-btn").addEventListener("click", async () => {
  try {
    setStatus("solving…");
    const doc = await api.solve(toProblem(state));
    renderSolution(doc);
    setStatus(doc.feasible ? "solved" : "completed, but infeasible");
  } catch (err) {
    if (err instanceof StaleResponseError) return;
    setStatus(`solve failed: ${(err as ApiError).message}`);
  }
});

// ---- what-if panel ----

$("whatif-btn").addEventListener("click", async () => {
  const angles = ($("whatif-angles") as HTMLInputElement).value
    .split(",")
    .map((v) => Number(v.trim()))
    .filter((v) => Number.isFinite(v) && v > 0);
  if (!angles.length || !canSolve(state)) return;
  try {
    setStatus("running what-if sweep…");
    const solutions = await api.tradeoff(toProblem(state), angles);
    const rows = buildWhatIfTable(angles, solutions)
      .map(
        (r) =>
          `<tr><td>±${r.bendLimitDegrees}°</td><td>${r.links}</td>` +
          `<td>${r.feasible ? "yes" : "no"}</td><td>${r.totalLength.toFixed(3)} m</td></tr>`,
      )
      .join("");
    $("whatif-table").innerHTML =
      "<tr><th>bend limit</th><th>links</th><th>feasible</th><th>total</th></tr>" + rows;
    setStatus("what-if sweep done");
  } catch (err) {
    if (err instanceof StaleResponseError) return;
    setStatus(`what-if failed: ${(err as ApiError).message}`);
  }
});

// ---- workspace panel ----

$("workspace-btn").addEventListener("click", async () => {
  const doc = state.lastSolution;
  if (!doc) {
    setStatus("solve first: the workspace scan needs a design");
    return;
  }
  const canvas = $("workspace-canvas") as unknown as HTMLCanvasElement;
  const ctx = canvas.getContext("2d")!;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const toPx = (x: number, y: number): [number, number] => [
    ((x - 0.1) / 0.8) * canvas.width,
    (1 - (y - 0.1) / 0.8) * canvas.height,
  ];
  const overlay = new WorkspaceOverlay((s) => {
    const [px, py] = toPx(s.x, s.y);
    ctx.fillStyle = s.feasible ? "#2ca02c" : "#d0d0d0";
    ctx.fillRect(px - 2, py - 2, 4, 4);
  });
  try {
    setStatus("scanning workspace…");
    const result = await api.workspace(
      {
        problem: toProblem(state),
        design: { lengths: doc.design.lengths },
        samples: Number(($("workspace-samples") as HTMLInputElement).value) || 500,
        seed: state.search.seed,
      },
      (job) => {
        if (job.result) overlay.update(job.result);
        const stats = overlay.stats();
        $("workspace-stats").textContent =
          `${stats.painted}/${stats.expectedTotal} painted, ` +
          `success ${(stats.successRate * 100).toFixed(1)}%`;
      },
    );
    setStatus(`workspace done: ${(result.successRate * 100).toFixed(1)}% reachable`);
  } catch (err) {
    if (err instanceof StaleResponseError) return;
    setStatus(`workspace failed: ${(err as ApiError).message}`);
  }
});

update(state);
setStatus("ready — double-click the canvas to place a target");
