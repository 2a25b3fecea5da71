import { projectPoint, type Projected } from "./camera.js";
import { colorOf, type Rgb } from "./palette.js";
import type { CameraState, Scene } from "./types.js";

export interface NormalizedPoint {
  x: number;
  y: number;
  z: number;
  t: number;
  index: number;
}

/** Scale scene coordinates into [-0.5, 0.5] per axis so address-sized values
 * and tiny array indices both fill the view. Degenerate axes collapse to 0. */
export function normalizePoints(scene: Scene): NormalizedPoint[] {
  if (scene.points.length === 0) {
    return [];
  }
  const axes = ["x", "y", "z"] as const;
  const lo = { x: Infinity, y: Infinity, z: Infinity };
  const hi = { x: -Infinity, y: -Infinity, z: -Infinity };
  for (const point of scene.points) {
    for (const axis of axes) {
      lo[axis] = Math.min(lo[axis], point[axis]);
      hi[axis] = Math.max(hi[axis], point[axis]);
    }
  }
  const rescale = (axis: (typeof axes)[number], value: number) => {
    const span = hi[axis] - lo[axis];
    return span === 0 ? 0 : (value - lo[axis]) / span - 0.5;
  };
  return scene.points.map((point, index) => ({
    x: rescale("x", point.x),
    y: rescale("y", point.y),
    z: rescale("z", point.z),
    t: point.t,
    index,
  }));
}

export interface ProjectedPoint extends Projected {
  index: number;
  color: Rgb;
}

/** Project every scene point for the given camera, back to front. The result
 * always has exactly one entry per scene point; nothing is culled. */
export function projectScene(
  points: NormalizedPoint[],
  camera: CameraState,
  width: number,
  height: number
): ProjectedPoint[] {
  const projected = points.map((p) => ({
    ...projectPoint(p.x, p.y, p.z, camera, width, height),
    index: p.index,
    color: colorOf(p.t),
  }));
  projected.sort((a, b) => b.depth - a.depth);
  return projected;
}

export type DrawPoint = (p: ProjectedPoint) => void;

/** Render via a drawing callback; returns the number of points drawn, which
 * equals the scene's point count for every valid scene. */
export function renderScene(
  scene: Scene,
  camera: CameraState,
  width: number,
  height: number,
  draw: DrawPoint
): number {
  const projected = projectScene(normalizePoints(scene), camera, width, height);
  for (const point of projected) {
    draw(point);
  }
  return projected.length;
}
