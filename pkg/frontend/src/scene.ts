import type { Scene, ScenePoint, ViewState } from "./types.js";
import { defaultCamera } from "./camera.js";

const KINDS = new Set(["complete_map", "array2d", "array3d"]);
const CONVENTIONS = new Set(["per_event", "last_access", "first_access"]);
const ADDRESS_RE = /^0x[0-9a-f]+$/;

/** A scene document that does not satisfy the export schema; `path` points
 * at the offending field. */
export class SchemaError extends Error {
  readonly path: string;

  constructor(path: string, detail: string) {
    super(`SchemaError at ${path}: ${detail}`);
    this.name = "SchemaError";
    this.path = path;
  }
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function requireString(value: unknown, path: string): string {
  if (typeof value !== "string") {
    throw new SchemaError(path, "expected a string");
  }
  return value;
}

function requireCount(value: unknown, path: string): number {
  if (typeof value !== "number" || !Number.isInteger(value) || value < 0) {
    throw new SchemaError(path, "expected a non-negative integer");
  }
  return value;
}

function requireNumber(value: unknown, path: string): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new SchemaError(path, "expected a finite number");
  }
  return value;
}

function parsePoint(value: unknown, path: string): ScenePoint {
  if (!isRecord(value)) {
    throw new SchemaError(path, "expected an object");
  }
  const t = requireNumber(value.t, `${path}.t`);
  if (t < 0 || t > 1) {
    throw new SchemaError(`${path}.t`, "normalized time must lie in [0, 1]");
  }
  const meta = value.meta;
  if (!isRecord(meta)) {
    throw new SchemaError(`${path}.meta`, "expected an object");
  }
  const address = requireString(meta.address, `${path}.meta.address`);
  if (!ADDRESS_RE.test(address)) {
    throw new SchemaError(`${path}.meta.address`, "expected 0x-prefixed lowercase hex");
  }
  return {
    x: requireNumber(value.x, `${path}.x`),
    y: requireNumber(value.y, `${path}.y`),
    z: requireNumber(value.z, `${path}.z`),
    t,
    meta: {
      address,
      variable: requireString(meta.variable, `${path}.meta.variable`),
      loads: requireCount(meta.loads, `${path}.meta.loads`),
      stores: requireCount(meta.stores, `${path}.meta.stores`),
      modifies: requireCount(meta.modifies, `${path}.meta.modifies`),
      timestamp: requireCount(meta.timestamp, `${path}.meta.timestamp`),
    },
  };
}

/** Parse and validate a scene document; throws SchemaError with the path of
 * the first offending field. */
export function parseScene(text: string): Scene {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new SchemaError(".", `not valid JSON (${(err as Error).message})`);
  }
  if (!isRecord(doc)) {
    throw new SchemaError(".", "expected an object");
  }
  const kind = requireString(doc.kind, ".kind");
  if (!KINDS.has(kind)) {
    throw new SchemaError(".kind", `unknown scene kind ${JSON.stringify(kind)}`);
  }
  const labels = doc.axis_labels;
  if (!isRecord(labels)) {
    throw new SchemaError(".axis_labels", "expected an object");
  }
  const axisLabels = {
    x: requireString(labels.x, ".axis_labels.x"),
    y: requireString(labels.y, ".axis_labels.y"),
    z: requireString(labels.z, ".axis_labels.z"),
  };
  const convention = requireString(doc.color_convention, ".color_convention");
  if (!CONVENTIONS.has(convention)) {
    throw new SchemaError(".color_convention", `unknown convention ${JSON.stringify(convention)}`);
  }
  if (!Array.isArray(doc.points)) {
    throw new SchemaError(".points", "expected an array");
  }
  const points = doc.points.map((point, i) => parsePoint(point, `.points[${i}]`));
  return {
    kind: kind as Scene["kind"],
    axis_labels: axisLabels,
    total_events: requireCount(doc.total_events, ".total_events"),
    source: requireString(doc.source, ".source"),
    color_convention: convention as Scene["color_convention"],
    out_of_layout: requireCount(doc.out_of_layout, ".out_of_layout"),
    points,
  };
}

/** Load scene JSON into a fresh view state (camera reset, nothing hovered). */
export function loadScene(text: string): ViewState {
  const scene = parseScene(text);
  return {
    scene,
    camera: defaultCamera(),
    hovered: null,
    palette: "heat",
  };
}
