export type SceneKind = "complete_map" | "array2d" | "array3d";

export type ColorConvention = "per_event" | "last_access" | "first_access";

export interface PointMeta {
  address: string;
  variable: string;
  loads: number;
  stores: number;
  modifies: number;
  timestamp: number;
}

export interface ScenePoint {
  x: number;
  y: number;
  z: number;
  /** Normalized event time: 0 = oldest access, 1 = most recent. */
  t: number;
  meta: PointMeta;
}

export interface AxisLabels {
  x: string;
  y: string;
  z: string;
}

export interface Scene {
  kind: SceneKind;
  axis_labels: AxisLabels;
  total_events: number;
  source: string;
  color_convention: ColorConvention;
  out_of_layout: number;
  points: ScenePoint[];
}

export interface CameraState {
  /** Rotation around the vertical axis, radians. */
  yaw: number;
  /** Elevation angle, radians, clamped to avoid gimbal flips. */
  pitch: number;
  /** Distance from the scene center in normalized scene units. */
  distance: number;
}

export interface ViewState {
  scene: Scene;
  camera: CameraState;
  hovered: number | null;
  palette: string;
}
