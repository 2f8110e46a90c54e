// Pure geometry shared by the canvas editor and the chain renderer.

export interface Viewport {
  /** pixels per meter */
  scale: number;
  /** world coordinate at the screen origin (top-left), meters */
  originX: number;
  originY: number;
  /** canvas size in pixels */
  width: number;
  height: number;
}

export const DEFAULT_SCALE = 400;

export function makeViewport(width: number, height: number, scale = DEFAULT_SCALE): Viewport {
  // center the world origin at 20% from the left, vertically centered
  return {
    scale,
    originX: -(0.2 * width) / scale,
    originY: (height / 2) / scale,
    width,
    height,
  };
}

/** world (meters, y up) -> screen (pixels, y down) */
export function worldToScreen(v: Viewport, x: number, y: number): [number, number] {
  return [(x - v.originX) * v.scale, (v.originY - y) * v.scale];
}

export function screenToWorld(v: Viewport, px: number, py: number): [number, number] {
  return [v.originX + px / v.scale, v.originY - py / v.scale];
}

export function zoom(v: Viewport, factor: number, centerPx: number, centerPy: number): Viewport {
  const [wx, wy] = screenToWorld(v, centerPx, centerPy);
  const scale = Math.min(Math.max(v.scale * factor, 40), 4000);
  return {
    ...v,
    scale,
    originX: wx - centerPx / scale,
    originY: wy + centerPy / scale,
  };
}

export function pan(v: Viewport, dxPx: number, dyPx: number): Viewport {
  return { ...v, originX: v.originX - dxPx / v.scale, originY: v.originY + dyPx / v.scale };
}

export function snap(value: number, grid: number): number {
  return Math.round(value / grid) * grid;
}

export function wrapDegrees(angle: number): number {
  // into (-180, 180]
  return 180 - (((180 - angle) % 360) + 360) % 360;
}

/** chain node positions from link lengths (m) and joint angles (deg) */
export function chainNodes(lengths: number[], anglesDegrees: number[]): [number, number][] {
  const nodes: [number, number][] = [[0, 0]];
  let theta = 0;
  for (let i = 0; i < lengths.length; i++) {
    theta += (anglesDegrees[i] * Math.PI) / 180;
    const [px, py] = nodes[nodes.length - 1];
    nodes.push([px + lengths[i] * Math.cos(theta), py + lengths[i] * Math.sin(theta)]);
  }
  return nodes;
}

export function distance(ax: number, ay: number, bx: number, by: number): number {
  return Math.hypot(bx - ax, by - ay);
}
