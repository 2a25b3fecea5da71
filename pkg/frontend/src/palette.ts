/** Heat ramp: darker means an older access, brighter a more recent one.
 *
 * The stops match the report renderer of the analysis CLI. Every channel is
 * non-decreasing along the ramp and each segment strictly increases at least
 * one channel, so relative luminance is strictly monotone in t.
 */

export type Rgb = [number, number, number];

export const HEAT_STOPS: ReadonlyArray<readonly [number, Rgb]> = [
  [0.0, [0, 0, 0]],
  [0.35, [170, 20, 0]],
  [0.7, [255, 150, 0]],
  [1.0, [255, 255, 220]],
];

/** Color for a normalized time in [0, 1]; channels are floats in 0..255. */
export function colorOf(t: number): Rgb {
  if (!Number.isFinite(t) || t < 0 || t > 1) {
    throw new RangeError(`normalized time out of range: ${t}`);
  }
  for (let i = 1; i < HEAT_STOPS.length; i++) {
    const [posA, rgbA] = HEAT_STOPS[i - 1];
    const [posB, rgbB] = HEAT_STOPS[i];
    if (t <= posB) {
      const f = (t - posA) / (posB - posA);
      return [
        rgbA[0] + (rgbB[0] - rgbA[0]) * f,
        rgbA[1] + (rgbB[1] - rgbA[1]) * f,
        rgbA[2] + (rgbB[2] - rgbA[2]) * f,
      ];
    }
  }
  return [...HEAT_STOPS[HEAT_STOPS.length - 1][1]];
}

function linearize(channel: number): number {
  const c = channel / 255;
  return c <= 0.04045 ? c / 12.92 : Math.pow((c + 0.055) / 1.055, 2.4);
}

/** WCAG relative luminance in [0, 1]. */
export function luminance(rgb: Rgb): number {
  return 0.2126 * linearize(rgb[0]) + 0.7152 * linearize(rgb[1]) + 0.0722 * linearize(rgb[2]);
}

export function cssColor(rgb: Rgb): string {
  return `rgb(${Math.round(rgb[0])},${Math.round(rgb[1])},${Math.round(rgb[2])})`;
}
