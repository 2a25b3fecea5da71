import type { ProjectedPoint } from "./render.js";
import type { Scene, ViewState } from "./types.js";

const PICK_RADIUS = 8;

/** Index of the nearest projected point within the pick radius of the
 * cursor, preferring closer (smaller depth) points; null when nothing is
 * near enough. */
export function pickPoint(
  projected: ProjectedPoint[],
  x: number,
  y: number
): number | null {
  let best: ProjectedPoint | null = null;
  let bestDist = Infinity;
  for (const point of projected) {
    const dx = point.sx - x;
    const dy = point.sy - y;
    const dist = Math.hypot(dx, dy);
    if (dist > Math.max(PICK_RADIUS, point.radius)) {
      continue;
    }
    if (dist < bestDist || (dist === bestDist && best !== null && point.depth < best.depth)) {
      best = point;
      bestDist = dist;
    }
  }
  return best === null ? null : best.index;
}

/** Hover text block for one point. Field order is pinned: address, variable,
 * access ordinal (complete_map only), loads, stores, modifies, timestamp.
 * Returns null for an invalid id (hover is then a no-op). */
export function hoverText(scene: Scene, index: number): string | null {
  if (!Number.isInteger(index) || index < 0 || index >= scene.points.length) {
    return null;
  }
  const point = scene.points[index];
  const lines = [`address: ${point.meta.address}`, `variable: ${point.meta.variable}`];
  if (scene.kind === "complete_map") {
    lines.push(`access #: ${point.x}`);
  }
  lines.push(
    `loads: ${point.meta.loads}`,
    `stores: ${point.meta.stores}`,
    `modifies: ${point.meta.modifies}`,
    `timestamp: ${point.meta.timestamp}`
  );
  return lines.join("\n");
}

export function setHover(state: ViewState, index: number | null): ViewState {
  if (index !== null && (index < 0 || index >= state.scene.points.length)) {
    return state;
  }
  return { ...state, hovered: index };
}

export function clearHover(state: ViewState): ViewState {
  return { ...state, hovered: null };
}
