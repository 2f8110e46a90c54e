// SVG canvas editor: draggable targets with rotatable orientation handles,
// snap-to-grid, pan/zoom. Pure DOM glue around session.ts and geometry.ts.

import {
  DEFAULT_SCALE,
  Viewport,
  distance,
  makeViewport,
  pan,
  screenToWorld,
  snap,
  worldToScreen,
  zoom,
} from "./geometry.js";
import { SessionState } from "./session.js";
import { TargetSpec } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const HANDLE_LEN = 34;

export interface EditorCallbacks {
  onAdd(target: TargetSpec): void;
  onMove(index: number, x: number, y: number): void;
  onRotate(index: number, phiDegrees: number): void;
  onDelete(index: number): void;
}

type DragState =
  | { kind: "none" }
  | { kind: "target"; index: number }
  | { kind: "handle"; index: number }
  | { kind: "pan"; lastX: number; lastY: number };

export class CanvasEditor {
  viewport: Viewport;
  snapToGrid = false;
  gridStep = 0.05;
  private drag: DragState = { kind: "none" };
  private targets: TargetSpec[] = [];

  constructor(
    private svg: SVGSVGElement,
    private callbacks: EditorCallbacks,
  ) {
    const rect = svg.getBoundingClientRect();
    this.viewport = makeViewport(rect.width || 720, rect.height || 480, DEFAULT_SCALE);
    svg.addEventListener("pointerdown", (e) => this.onPointerDown(e));
    svg.addEventListener("pointermove", (e) => this.onPointerMove(e));
    svg.addEventListener("pointerup", () => (this.drag = { kind: "none" }));
    svg.addEventListener("dblclick", (e) => this.onDoubleClick(e));
    svg.addEventListener("wheel", (e) => this.onWheel(e), { passive: false });
  }

  render(state: SessionState): void {
    this.targets = state.targets;
    while (this.svg.firstChild) this.svg.removeChild(this.svg.firstChild);
    this.drawGrid();
    this.drawBase();
    state.targets.forEach((t, i) => this.drawTarget(t, i));
  }

  private el<K extends keyof SVGElementTagNameMap>(
    tag: K,
    attrs: Record<string, string | number>,
  ): SVGElementTagNameMap[K] {
    const node = document.createElementNS(SVG_NS, tag);
    for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, String(value));
    this.svg.appendChild(node);
    return node;
  }

  private drawGrid(): void {
    const step = 0.1 * this.viewport.scale;
    const [ox, oy] = worldToScreen(this.viewport, 0, 0);
    for (let x = ox % step; x < this.viewport.width; x += step) {
      this.el("line", { x1: x, y1: 0, x2: x, y2: this.viewport.height, stroke: "#eee" });
    }
    for (let y = oy % step; y < this.viewport.height; y += step) {
      this.el("line", { x1: 0, y1: y, x2: this.viewport.width, y2: y, stroke: "#eee" });
    }
  }

  private drawBase(): void {
    const [x, y] = worldToScreen(this.viewport, 0, 0);
    this.el("circle", { cx: x, cy: y, r: 7, fill: "#333" });
    this.el("text", { x: x + 10, y: y + 16, "font-size": 12, fill: "#333" }).textContent = "base";
  }

  private drawTarget(target: TargetSpec, index: number): void {
    const [x, y] = worldToScreen(this.viewport, target.x, target.y);
    const phi = (target.phiDegrees * Math.PI) / 180;
    const hx = x + HANDLE_LEN * Math.cos(phi);
    const hy = y - HANDLE_LEN * Math.sin(phi);
    this.el("line", {
      x1: x, y1: y, x2: hx, y2: hy, stroke: "#d62728", "stroke-width": 2,
      class: "orientation-handle", "data-index": index,
    });
    this.el("circle", {
      cx: hx, cy: hy, r: 6, fill: "#d62728", class: "handle-knob", "data-index": index,
      cursor: "grab",
    });
    this.el("circle", {
      cx: x, cy: y, r: 9, fill: "#f4b41a", stroke: "#8a6400", class: "target-dot",
      "data-index": index, cursor: "move",
    });
    this.el("text", { x: x + 12, y: y - 10, "font-size": 12, fill: "#555" }).textContent =
      `${index + 1} (${target.x.toFixed(2)} m, ${target.y.toFixed(2)} m, ${target.phiDegrees.toFixed(0)}°)`;
  }

  private eventPoint(e: PointerEvent | MouseEvent): [number, number] {
    const rect = this.svg.getBoundingClientRect();
    return [e.clientX - rect.left, e.clientY - rect.top];
  }

  private onPointerDown(e: PointerEvent): void {
    const element = e.target as Element;
    const index = Number(element.getAttribute("data-index"));
    if (element.classList.contains("target-dot")) {
      if (e.shiftKey) {
        this.callbacks.onDelete(index);
      } else {
        this.drag = { kind: "target", index };
      }
    } else if (element.classList.contains("handle-knob") || element.classList.contains("orientation-handle")) {
      this.drag = { kind: "handle", index };
    } else {
      const [px, py] = this.eventPoint(e);
      this.drag = { kind: "pan", lastX: px, lastY: py };
    }
  }

  private onPointerMove(e: PointerEvent): void {
    if (this.drag.kind === "none") return;
    const [px, py] = this.eventPoint(e);
    if (this.drag.kind === "pan") {
      this.viewport = pan(this.viewport, px - this.drag.lastX, py - this.drag.lastY);
      this.drag = { kind: "pan", lastX: px, lastY: py };
      this.requestRender();
      return;
    }
    const [wx, wy] = screenToWorld(this.viewport, px, py);
    if (this.drag.kind === "target") {
      let x = wx;
      let y = wy;
      if (this.snapToGrid) {
        x = snap(x, this.gridStep);
        y = snap(y, this.gridStep);
      }
      if (distance(x, y, 0, 0) > 1e-6) this.callbacks.onMove(this.drag.index, x, y);
    } else if (this.drag.kind === "handle") {
      const target = this.targets[this.drag.index];
      const phi = (Math.atan2(wy - target.y, wx - target.x) * 180) / Math.PI;
      this.callbacks.onRotate(this.drag.index, this.snapToGrid ? snap(phi, 5) : phi);
    }
  }

  private onDoubleClick(e: MouseEvent): void {
    const [px, py] = this.eventPoint(e);
    let [x, y] = screenToWorld(this.viewport, px, py);
    if (this.snapToGrid) {
      x = snap(x, this.gridStep);
      y = snap(y, this.gridStep);
    }
    if (distance(x, y, 0, 0) > 1e-6) this.callbacks.onAdd({ x, y, phiDegrees: 0 });
  }

  private onWheel(e: WheelEvent): void {
    e.preventDefault();
    const [px, py] = this.eventPoint(e);
    this.viewport = zoom(this.viewport, e.deltaY < 0 ? 1.15 : 1 / 1.15, px, py);
    this.requestRender();
  }

  private renderQueued = false;
  onRerender: (() => void) | null = null;

  private requestRender(): void {
    if (this.renderQueued) return;
    this.renderQueued = true;
    requestAnimationFrame(() => {
      this.renderQueued = false;
      if (this.onRerender) this.onRerender();
    });
  }
}
