import type { CameraState } from "./types.js";

const MIN_DISTANCE = 1.2;
const MAX_DISTANCE = 12;
const MAX_PITCH = Math.PI / 2 - 0.05;
const FOCAL = 1.6;

// minimum projected depth; keeps every point drawable even when the camera
// is zoomed far in
const NEAR = 0.05;

export function defaultCamera(): CameraState {
  return { yaw: Math.PI / 5, pitch: Math.PI / 8, distance: 3 };
}

export function orbit(camera: CameraState, dYaw: number, dPitch: number): CameraState {
  const pitch = Math.max(-MAX_PITCH, Math.min(MAX_PITCH, camera.pitch + dPitch));
  return { ...camera, yaw: camera.yaw + dYaw, pitch };
}

export function zoom(camera: CameraState, factor: number): CameraState {
  if (!(factor > 0)) {
    throw new RangeError(`zoom factor must be positive: ${factor}`);
  }
  const distance = Math.max(MIN_DISTANCE, Math.min(MAX_DISTANCE, camera.distance * factor));
  return { ...camera, distance };
}

export interface Projected {
  /** Screen x in pixels. */
  sx: number;
  /** Screen y in pixels (down). */
  sy: number;
  /** Camera-space depth; larger is further away. */
  depth: number;
  /** Point radius in pixels. */
  radius: number;
}

/** Project a point already normalized to roughly [-0.5, 0.5]^3 onto a
 * viewport. Orbit camera looking at the origin. */
export function projectPoint(
  x: number,
  y: number,
  z: number,
  camera: CameraState,
  width: number,
  height: number
): Projected {
  const cosYaw = Math.cos(camera.yaw);
  const sinYaw = Math.sin(camera.yaw);
  const cosPitch = Math.cos(camera.pitch);
  const sinPitch = Math.sin(camera.pitch);
  const rx = x * cosYaw + z * sinYaw;
  const rz = -x * sinYaw + z * cosYaw;
  const ry = y * cosPitch - rz * sinPitch;
  const rd = y * sinPitch + rz * cosPitch;
  const depth = Math.max(NEAR, rd + camera.distance);
  const scale = (FOCAL / depth) * Math.min(width, height) * 0.5;
  return {
    sx: width / 2 + rx * scale,
    sy: height / 2 - ry * scale,
    depth,
    radius: Math.max(1.5, scale * 0.02),
  };
}
