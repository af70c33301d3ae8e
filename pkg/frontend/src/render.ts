// Canvas rendering of the cake: hub, sector wedges, band boundaries, avatar
// initials, overflow badges, hover highlight, drag ghost. Pure draw code;
// all inputs come from the view state.

import { TAU } from "./hittest.js";
import { matchesQuery } from "./state.js";
import type { ViewState } from "./state.js";
import type { BandDoc, LayoutDoc, ModelDoc, SectorArcDoc } from "./types.js";

const PALETTE = [
  "#e0a458",
  "#7fb069",
  "#6494aa",
  "#d1603d",
  "#9a879d",
  "#c8b88a",
  "#5d737e",
  "#b56576",
];

const HUB_FILL = "#f6e7cb";
const GHOST_ALPHA = 0.75;

// canvas arc angles: 0 at 3 o'clock growing clockwise (y-down), ours start
// at 12 o'clock, so shift by a quarter turn
function canvasAngle(theta: number): number {
  return theta - Math.PI / 2;
}

export function sectorColor(model: ModelDoc, sectorId: string): string {
  const index = model.sectors.findIndex((s) => s.id === sectorId);
  const declared = index >= 0 ? model.sectors[index].color : null;
  return declared ?? PALETTE[((index % PALETTE.length) + PALETTE.length) % PALETTE.length];
}

export function initials(name: string): string {
  const parts = name.split(/\s+/).filter(Boolean);
  if (parts.length === 0) return "?";
  if (parts.length === 1) return parts[0].slice(0, 2).toUpperCase();
  return (parts[0][0] + parts[parts.length - 1][0]).toUpperCase();
}

export function render(
  ctx: CanvasRenderingContext2D,
  state: ViewState,
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  const { model, layout } = state;
  if (!model || !layout) return;
  if (model.contacts.length === 0 && model.sectors.length === 0) {
    drawEmptyState(ctx, width, height);
    return;
  }

  for (const arc of layout.sectors) {
    drawSector(ctx, layout, model, arc, state);
  }
  drawHub(ctx, layout);
  if (state.hover && state.hover.kind === "cell") {
    highlightCell(ctx, layout, state.hover.sector, state.hover.depth);
  }
  for (const arc of layout.sectors) {
    drawSectorLabel(ctx, layout, model, arc);
  }
  if (state.drag && state.drag.started) {
    drawGhost(ctx, model, state.drag.contact, state.drag.x, state.drag.y);
  }
}

function drawEmptyState(ctx: CanvasRenderingContext2D, width: number, height: number): void {
  ctx.fillStyle = "#777";
  ctx.font = "16px system-ui, sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  ctx.fillText("The cake is empty.", width / 2, height / 2 - 12);
  ctx.fillText("Add your first contact, then create a sector for them.", width / 2, height / 2 + 12);
}

function annularSectorPath(
  ctx: CanvasRenderingContext2D,
  layout: LayoutDoc,
  thetaStart: number,
  thetaEnd: number,
  rInner: number,
  rOuter: number,
): void {
  const { x, y } = layout.center;
  const a0 = canvasAngle(thetaStart);
  const a1 = canvasAngle(thetaEnd);
  ctx.beginPath();
  ctx.arc(x, y, rOuter, a0, a1, false);
  ctx.arc(x, y, rInner, a1, a0, true);
  ctx.closePath();
}

function drawSector(
  ctx: CanvasRenderingContext2D,
  layout: LayoutDoc,
  model: ModelDoc,
  arc: SectorArcDoc,
  state: ViewState,
): void {
  const base = sectorColor(model, arc.sector);
  const bandCount = arc.bands.length;
  for (const band of arc.bands) {
    annularSectorPath(ctx, layout, arc.theta_start, arc.theta_end, band.r_inner, band.r_outer);
    // inner bands (stronger ties) get the saturated color, outer ones fade
    ctx.fillStyle = base;
    ctx.globalAlpha = 0.85 - (0.5 * band.depth) / Math.max(bandCount, 1);
    ctx.fill();
    ctx.globalAlpha = 1;
    ctx.strokeStyle = "#ffffff";
    ctx.lineWidth = 1.5;
    ctx.stroke();
    drawBandContent(ctx, layout, model, arc, band, state);
  }
}

function drawBandContent(
  ctx: CanvasRenderingContext2D,
  layout: LayoutDoc,
  model: ModelDoc,
  arc: SectorArcDoc,
  band: BandDoc,
  state: ViewState,
): void {
  const names = new Map(model.contacts.map((c) => [c.id, c.name]));
  for (const p of band.placements) {
    if (state.drag?.started && state.drag.contact === p.contact) continue;
    const name = names.get(p.contact) ?? "?";
    const dimmed =
      state.query !== "" &&
      !matchesQuery({ id: p.contact, name, avatar: null }, state.query);
    drawAvatar(ctx, p.x, p.y, p.r, name, dimmed ? 0.25 : 1);
  }
  if (band.overflow > 0) {
    const theta = (arc.theta_start + arc.theta_end) / 2;
    const r = (band.r_inner + band.r_outer) / 2;
    const x = layout.center.x + r * Math.sin(theta);
    const y = layout.center.y - r * Math.cos(theta);
    ctx.fillStyle = "#333";
    ctx.font = "bold 12px system-ui, sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText(`+${band.overflow}`, x, y);
  }
}

function drawAvatar(
  ctx: CanvasRenderingContext2D,
  x: number,
  y: number,
  r: number,
  name: string,
  alpha: number,
): void {
  ctx.globalAlpha = alpha;
  ctx.beginPath();
  ctx.arc(x, y, r, 0, TAU);
  ctx.fillStyle = "#fffdf7";
  ctx.fill();
  ctx.strokeStyle = "#44403c";
  ctx.lineWidth = 1;
  ctx.stroke();
  ctx.fillStyle = "#44403c";
  ctx.font = `${Math.max(8, Math.floor(r * 0.9))}px system-ui, sans-serif`;
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  ctx.fillText(initials(name), x, y);
  ctx.globalAlpha = 1;
}

function drawHub(ctx: CanvasRenderingContext2D, layout: LayoutDoc): void {
  if (layout.hub_radius <= 0) return;
  ctx.beginPath();
  ctx.arc(layout.center.x, layout.center.y, layout.hub_radius, 0, TAU);
  ctx.fillStyle = HUB_FILL;
  ctx.fill();
  ctx.strokeStyle = "#d6c29a";
  ctx.lineWidth = 1.5;
  ctx.stroke();
  ctx.fillStyle = "#8a7a55";
  ctx.font = "13px system-ui, sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  ctx.fillText("me", layout.center.x, layout.center.y);
}

function highlightCell(
  ctx: CanvasRenderingContext2D,
  layout: LayoutDoc,
  sector: string,
  depth: number,
): void {
  const arc = layout.sectors.find((s) => s.sector === sector);
  const band = arc?.bands.find((b) => b.depth === depth);
  if (!arc || !band) return;
  annularSectorPath(ctx, layout, arc.theta_start, arc.theta_end, band.r_inner, band.r_outer);
  ctx.fillStyle = "rgba(255, 255, 255, 0.35)";
  ctx.fill();
  ctx.strokeStyle = "#1c1917";
  ctx.lineWidth = 2;
  ctx.stroke();
}

function drawSectorLabel(
  ctx: CanvasRenderingContext2D,
  layout: LayoutDoc,
  model: ModelDoc,
  arc: SectorArcDoc,
): void {
  const sector = model.sectors.find((s) => s.id === arc.sector);
  if (!sector) return;
  const theta = (arc.theta_start + arc.theta_end) / 2;
  const r = layout.outer_radius + 14;
  const x = layout.center.x + r * Math.sin(theta);
  const y = layout.center.y - r * Math.cos(theta);
  ctx.fillStyle = "#44403c";
  ctx.font = "14px system-ui, sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  ctx.fillText(sector.label, x, y);
}

function drawGhost(
  ctx: CanvasRenderingContext2D,
  model: ModelDoc,
  contact: string,
  x: number,
  y: number,
): void {
  const name = model.contacts.find((c) => c.id === contact)?.name ?? "?";
  ctx.globalAlpha = GHOST_ALPHA;
  drawAvatar(ctx, x, y, 14, name, GHOST_ALPHA);
  ctx.globalAlpha = 1;
}
