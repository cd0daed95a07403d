/**
 * Pure geometry behind the scatter: the pan/zoom transform, convex hulls
 * for cluster outlines, and the label declutter rule.
 */

/** Screen transform p' = k*p + (x, y). k is clamped positive, so it inverts. */
export interface Transform {
  x: number;
  y: number;
  k: number;
}

export const IDENTITY: Transform = { x: 0, y: 0, k: 1 };
export const MIN_ZOOM = 0.2;
export const MAX_ZOOM = 40;

/** Zoom at which every label is shown regardless of frequency rank. */
export const FULL_LABEL_ZOOM = 2;
/** Share of labels kept below FULL_LABEL_ZOOM, highest frequency first. */
export const LOW_ZOOM_LABEL_SHARE = 0.5;
export const MIN_VISIBLE_LABELS = 12;

export function apply(t: Transform, x: number, y: number): [number, number] {
  return [t.x + t.k * x, t.y + t.k * y];
}

export function panBy(t: Transform, dx: number, dy: number): Transform {
  return { x: t.x + dx, y: t.y + dy, k: t.k };
}

/** Rescale by factor, keeping the screen point (px, py) fixed. */
export function zoomAt(t: Transform, px: number, py: number, factor: number): Transform {
  const k = Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, t.k * factor));
  const ratio = k / t.k;
  return {
    k,
    x: px - (px - t.x) * ratio,
    y: py - (py - t.y) * ratio,
  };
}

export function isIdentity(t: Transform): boolean {
  return t.x === 0 && t.y === 0 && t.k === 1;
}

/**
 * How many labels to draw at a given zoom, out of `total` ranked by
 * frequency. Low zoom keeps the top half (with a floor so small maps stay
 * fully labelled); zooming in past FULL_LABEL_ZOOM reveals everything.
 */
export function visibleLabelCount(total: number, zoom: number): number {
  if (total <= 0) return 0;
  if (zoom >= FULL_LABEL_ZOOM) return total;
  const kept = Math.max(MIN_VISIBLE_LABELS, Math.ceil(total * LOW_ZOOM_LABEL_SHARE));
  return Math.min(total, kept);
}

type Pt = [number, number];

function cross(o: Pt, a: Pt, b: Pt): number {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/**
 * Convex hull by monotone chain, counter-clockwise, no duplicate endpoint.
 * Collinear and duplicate input points collapse; fewer than 3 distinct
 * points return what is left (a segment or a single point).
 */
export function convexHull(points: Pt[]): Pt[] {
  const uniq = Array.from(new Map(points.map((p) => [`${p[0]},${p[1]}`, p])).values());
  if (uniq.length <= 2) return uniq;
  uniq.sort((a, b) => a[0] - b[0] || a[1] - b[1]);

  const lower: Pt[] = [];
  for (const p of uniq) {
    while (lower.length >= 2 && cross(lower[lower.length - 2], lower[lower.length - 1], p) <= 0) {
      lower.pop();
    }
    lower.push(p);
  }
  const upper: Pt[] = [];
  for (let i = uniq.length - 1; i >= 0; i--) {
    const p = uniq[i];
    while (upper.length >= 2 && cross(upper[upper.length - 2], upper[upper.length - 1], p) <= 0) {
      upper.pop();
    }
    upper.push(p);
  }
  lower.pop();
  upper.pop();
  // fully collinear input collapses to its two extreme points
  return lower.concat(upper);
}
