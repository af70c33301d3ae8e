// View state and the pure helpers that derive everything the renderer needs.
// The state never contains locally-computed model data: `model` and `layout`
// are always the documents the service last served.

import type { Hit } from "./hittest.js";
import type { Command, ContactDoc, LayoutDoc, ModelDoc } from "./types.js";

export interface DragState {
  contact: string;
  // null when dragging out of the unsorted pool
  from: { sector: string; depth: number } | null;
  x: number;
  y: number;
  started: boolean; // true once the pointer moved past the click threshold
}

export interface ViewState {
  model: ModelDoc | null;
  layout: LayoutDoc | null;
  hover: Hit | null;
  focused: string | null;
  drag: DragState | null;
  query: string;
  error: string | null;
  offline: boolean;
}

export function initialState(): ViewState {
  return {
    model: null,
    layout: null,
    hover: null,
    focused: null,
    drag: null,
    query: "",
    error: null,
    offline: false,
  };
}

// case folding restricted to the basic Latin range, matching the engine
export function foldLatin(s: string): string {
  let out = "";
  for (const ch of s) {
    out += ch >= "A" && ch <= "Z" ? String.fromCharCode(ch.charCodeAt(0) + 32) : ch;
  }
  return out;
}

export function matchesQuery(contact: ContactDoc, query: string): boolean {
  return foldLatin(contact.name).includes(foldLatin(query));
}

export function unsortedContacts(model: ModelDoc): ContactDoc[] {
  const assigned = new Set(model.assignments.map((a) => a.contact));
  return model.contacts
    .filter((c) => !assigned.has(c.id))
    .sort((a, b) => (a.name < b.name ? -1 : a.name > b.name ? 1 : a.id < b.id ? -1 : 1));
}

export function assignmentOf(
  model: ModelDoc,
  contact: string,
): { sector: string; depth: number }[] {
  return model.assignments
    .filter((a) => a.contact === contact)
    .map((a) => ({ sector: a.sector, depth: a.depth }));
}

export function freshContactId(model: ModelDoc): string {
  const taken = new Set(model.contacts.map((c) => c.id));
  let n = 1;
  while (taken.has(`c${n}`)) n += 1;
  return `c${n}`;
}

// What dropping a dragged contact on a hit should do; null means snap back.
export function dropCommand(drag: DragState, hit: Hit | "pool"): Command | null {
  if (hit === "pool") {
    if (!drag.from) return null; // already unsorted
    return { op: "unassign", contact: drag.contact, sector: drag.from.sector };
  }
  if (hit.kind !== "cell") return null;
  const to = { sector: hit.sector, depth: hit.depth };
  if (!drag.from) {
    return { op: "assign", contact: drag.contact, sector: to.sector, depth: to.depth };
  }
  if (drag.from.sector === to.sector && drag.from.depth === to.depth) {
    return null; // dropped where it came from
  }
  return { op: "move", contact: drag.contact, from: drag.from, to };
}

// Linear interpolation between two served layouts for the focus animation.
// Arcs and bands are matched by position (the sector set never changes
// during a focus toggle); placements are matched by contact id, contacts
// present on only one side keep their final position.
export function tweenLayout(a: LayoutDoc, b: LayoutDoc, t: number): LayoutDoc {
  if (t >= 1 || a.sectors.length !== b.sectors.length) return b;
  const mix = (x: number, y: number) => x + (y - x) * t;
  return {
    center: { x: mix(a.center.x, b.center.x), y: mix(a.center.y, b.center.y) },
    hub_radius: mix(a.hub_radius, b.hub_radius),
    outer_radius: mix(a.outer_radius, b.outer_radius),
    sectors: b.sectors.map((arcB, i) => {
      const arcA = a.sectors[i];
      if (arcA.sector !== arcB.sector) return arcB;
      return {
        sector: arcB.sector,
        theta_start: mix(arcA.theta_start, arcB.theta_start),
        theta_end: mix(arcA.theta_end, arcB.theta_end),
        bands: arcB.bands.map((bandB, d) => {
          const bandA = arcA.bands[d];
          if (!bandA) return bandB;
          const before = new Map(bandA.placements.map((p) => [p.contact, p]));
          return {
            depth: bandB.depth,
            r_inner: mix(bandA.r_inner, bandB.r_inner),
            r_outer: mix(bandA.r_outer, bandB.r_outer),
            overflow: bandB.overflow,
            placements: bandB.placements.map((p) => {
              const prev = before.get(p.contact);
              return prev
                ? { contact: p.contact, x: mix(prev.x, p.x), y: mix(prev.y, p.y), r: p.r }
                : p;
            }),
          };
        }),
      };
    }),
  };
}
