import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { defaultCamera, orbit, projectPoint, zoom } from "../src/camera.js";
import { normalizePoints, renderScene } from "../src/render.js";
import { parseScene } from "../src/scene.js";

const FIXTURES = join(__dirname, "fixtures");

const scene = (name: string) => parseScene(readFileSync(join(FIXTURES, name), "utf-8"));

describe("renderScene", () => {
  it.each([
    "bmm_complete.json",
    "bmm_array2d.json",
    "walk_array3d.json",
    "rand_complete.json",
  ])("draws exactly one point per scene point for %s", (name) => {
    const loaded = scene(name);
    let drawn = 0;
    const count = renderScene(loaded, defaultCamera(), 800, 600, () => {
      drawn += 1;
    });
    expect(count).toBe(loaded.points.length);
    expect(drawn).toBe(loaded.points.length);
  });

  it("orders draw calls back to front", () => {
    const loaded = scene("walk_array3d.json");
    const depths: number[] = [];
    renderScene(loaded, defaultCamera(), 800, 600, (p) => depths.push(p.depth));
    const sorted = [...depths].sort((a, b) => b - a);
    expect(depths).toEqual(sorted);
  });

  it("keeps drawing every point at extreme zoom", () => {
    const loaded = scene("bmm_complete.json");
    let camera = defaultCamera();
    for (let i = 0; i < 50; i++) {
      camera = zoom(camera, 1 / 1.5);
    }
    let drawn = 0;
    renderScene(loaded, camera, 800, 600, () => {
      drawn += 1;
    });
    expect(drawn).toBe(loaded.points.length);
  });
});

describe("normalizePoints", () => {
  it("fits each axis into [-0.5, 0.5]", () => {
    const loaded = scene("rand_complete.json");
    for (const p of normalizePoints(loaded)) {
      expect(Math.abs(p.x)).toBeLessThanOrEqual(0.5);
      expect(Math.abs(p.y)).toBeLessThanOrEqual(0.5);
      expect(Math.abs(p.z)).toBeLessThanOrEqual(0.5);
    }
  });

  it("collapses degenerate axes to the center", () => {
    const loaded = scene("walk_array3d.json");
    const flattened = {
      ...loaded,
      points: loaded.points.map((p) => ({ ...p, y: 3 })),
    };
    for (const p of normalizePoints(flattened)) {
      expect(p.y).toBe(0);
    }
  });

  it("returns nothing for an empty scene", () => {
    const loaded = scene("walk_array3d.json");
    expect(normalizePoints({ ...loaded, points: [] })).toEqual([]);
  });
});

describe("camera", () => {
  it("clamps pitch while orbiting", () => {
    let camera = defaultCamera();
    for (let i = 0; i < 100; i++) {
      camera = orbit(camera, 0.1, 0.3);
    }
    expect(camera.pitch).toBeLessThan(Math.PI / 2);
  });

  it("clamps zoom distance", () => {
    let camera = defaultCamera();
    for (let i = 0; i < 100; i++) {
      camera = zoom(camera, 1.5);
    }
    const far = camera.distance;
    for (let i = 0; i < 200; i++) {
      camera = zoom(camera, 1 / 1.5);
    }
    expect(camera.distance).toBeLessThan(far);
    expect(camera.distance).toBeGreaterThan(0);
    expect(() => zoom(camera, 0)).toThrow(RangeError);
  });

  it("projects the origin to the viewport center", () => {
    const projected = projectPoint(0, 0, 0, defaultCamera(), 640, 480);
    expect(projected.sx).toBeCloseTo(320);
    expect(projected.sy).toBeCloseTo(240);
  });
});
