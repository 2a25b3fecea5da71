import { orbit, zoom } from "./camera.js";
import { clearHover, hoverText, pickPoint, setHover } from "./hover.js";
import { cssColor } from "./palette.js";
import { loadScene } from "./scene.js";
import { normalizePoints, projectScene, type ProjectedPoint } from "./render.js";
import type { ViewState } from "./types.js";

const canvas = document.getElementById("view") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const hoverPanel = document.getElementById("hover")!;
const statusPanel = document.getElementById("status")!;
const fileInput = document.getElementById("file") as HTMLInputElement;

let state: ViewState | null = null;
let projected: ProjectedPoint[] = [];

function resizeCanvas(): void {
  canvas.width = canvas.clientWidth * devicePixelRatio;
  canvas.height = canvas.clientHeight * devicePixelRatio;
  draw();
}

function draw(): void {
  ctx.setTransform(devicePixelRatio, 0, 0, devicePixelRatio, 0, 0);
  const width = canvas.clientWidth;
  const height = canvas.clientHeight;
  ctx.fillStyle = "#14141c";
  ctx.fillRect(0, 0, width, height);
  if (state === null) {
    return;
  }
  projected = projectScene(normalizePoints(state.scene), state.camera, width, height);
  for (const point of projected) {
    ctx.beginPath();
    ctx.arc(point.sx, point.sy, point.radius, 0, Math.PI * 2);
    ctx.fillStyle = cssColor(point.color);
    ctx.fill();
    if (state.hovered === point.index) {
      ctx.strokeStyle = "#ffffff";
      ctx.lineWidth = 1.5;
      ctx.stroke();
    }
  }
}

function showScene(text: string, name: string): void {
  try {
    state = loadScene(text);
  } catch (err) {
    state = null;
    statusPanel.textContent = `${name}: ${(err as Error).message}`;
    hoverPanel.textContent = "";
    draw();
    return;
  }
  const scene = state.scene;
  statusPanel.textContent =
    `${name} | ${scene.kind} | ${scene.points.length} points | ` +
    `${scene.total_events} events | color: ${scene.color_convention} | ` +
    `axes x=${scene.axis_labels.x} y=${scene.axis_labels.y} z=${scene.axis_labels.z}`;
  hoverPanel.textContent = "";
  draw();
}

fileInput.addEventListener("change", () => {
  const file = fileInput.files?.[0];
  if (!file) {
    return;
  }
  file.text().then((text) => showScene(text, file.name));
});

let dragging = false;
let lastX = 0;
let lastY = 0;

canvas.addEventListener("mousedown", (event) => {
  dragging = true;
  lastX = event.clientX;
  lastY = event.clientY;
});

window.addEventListener("mouseup", () => {
  dragging = false;
});

canvas.addEventListener("mousemove", (event) => {
  if (state === null) {
    return;
  }
  if (dragging) {
    const dYaw = (event.clientX - lastX) * 0.01;
    const dPitch = (event.clientY - lastY) * 0.01;
    lastX = event.clientX;
    lastY = event.clientY;
    state = { ...state, camera: orbit(state.camera, dYaw, dPitch) };
    draw();
    return;
  }
  const rect = canvas.getBoundingClientRect();
  const index = pickPoint(projected, event.clientX - rect.left, event.clientY - rect.top);
  state = index === null ? clearHover(state) : setHover(state, index);
  hoverPanel.textContent = index === null ? "" : hoverText(state.scene, index) ?? "";
  draw();
});

canvas.addEventListener("mouseleave", () => {
  if (state !== null) {
    state = clearHover(state);
    hoverPanel.textContent = "";
    draw();
  }
});

canvas.addEventListener(
  "wheel",
  (event) => {
    if (state === null) {
      return;
    }
    event.preventDefault();
    const factor = event.deltaY > 0 ? 1.1 : 1 / 1.1;
    state = { ...state, camera: zoom(state.camera, factor) };
    draw();
  },
  { passive: false }
);

window.addEventListener("resize", resizeCanvas);

const sceneUrl = new URLSearchParams(window.location.search).get("scene");
if (sceneUrl !== null) {
  fetch(sceneUrl)
    .then((response) => {
      if (!response.ok) {
        throw new Error(`HTTP ${response.status}`);
      }
      return response.text();
    })
    .then((text) => showScene(text, sceneUrl))
    .catch((err) => {
      statusPanel.textContent = `${sceneUrl}: ${(err as Error).message}`;
    });
}

resizeCanvas();
