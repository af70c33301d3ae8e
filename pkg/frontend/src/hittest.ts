// Client-side hit-testing on the published layout intervals. This mirrors
// the engine's semantics exactly: angles are radians clockwise from
// 12 o'clock, arcs and bands are half-open [start, end), r == 0 is always
// the hub, r >= outer_radius is outside.

import type { LayoutDoc } from "./types.js";

export const TAU = 2 * Math.PI;

export type Hit =
  | { kind: "hub" }
  | { kind: "cell"; sector: string; depth: number }
  | { kind: "gap" }
  | { kind: "outside" };

export function toPolar(doc: LayoutDoc, x: number, y: number): { r: number; theta: number } {
  const dx = x - doc.center.x;
  const dy = y - doc.center.y;
  const r = Math.hypot(dx, dy);
  let theta = Math.atan2(dx, -dy) % TAU;
  if (theta < 0) theta += TAU;
  if (theta >= TAU) theta = 0;
  return { r, theta };
}

export function polarToXy(doc: LayoutDoc, r: number, theta: number): { x: number; y: number } {
  return {
    x: doc.center.x + r * Math.sin(theta),
    y: doc.center.y - r * Math.cos(theta),
  };
}

export function hitTest(doc: LayoutDoc, x: number, y: number): Hit {
  const { r, theta } = toPolar(doc, x, y);
  if (r === 0 || r < doc.hub_radius) return { kind: "hub" };
  if (r >= doc.outer_radius) return { kind: "outside" };
  for (const arc of doc.sectors) {
    const width = arc.theta_end - arc.theta_start;
    let d = (theta - arc.theta_start) % TAU;
    if (d < 0) d += TAU;
    if (d < width) {
      for (const band of arc.bands) {
        if (band.r_inner <= r && r < band.r_outer) {
          return { kind: "cell", sector: arc.sector, depth: band.depth };
        }
      }
      return { kind: "gap" };
    }
  }
  return { kind: "gap" };
}

export function sameHit(a: Hit | null, b: Hit | null): boolean {
  if (a === null || b === null) return a === b;
  if (a.kind !== b.kind) return false;
  if (a.kind === "cell" && b.kind === "cell") {
    return a.sector === b.sector && a.depth === b.depth;
  }
  return true;
}

export function cellCentroid(
  doc: LayoutDoc,
  sector: string,
  depth: number,
): { x: number; y: number } | null {
  for (const arc of doc.sectors) {
    if (arc.sector !== sector) continue;
    for (const band of arc.bands) {
      if (band.depth === depth) {
        const theta = (arc.theta_start + arc.theta_end) / 2;
        const r = (band.r_inner + band.r_outer) / 2;
        return polarToXy(doc, r, theta);
      }
    }
  }
  return null;
}
