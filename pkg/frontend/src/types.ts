// Wire documents exchanged with the service. Field names are fixed by the
// service API; do not rename.

export interface ContactDoc {
  id: string;
  name: string;
  avatar: string | null;
}

export interface SubsectorDoc {
  id: string;
  label: string;
}

export interface SectorDoc {
  id: string;
  label: string;
  color: string | null;
  subsectors: SubsectorDoc[];
}

export interface AssignmentDoc {
  contact: string;
  sector: string;
  depth: number;
}

export interface ModelDoc {
  version: number;
  contacts: ContactDoc[];
  sectors: SectorDoc[];
  assignments: AssignmentDoc[];
}

export interface PlacementDoc {
  contact: string;
  x: number;
  y: number;
  r: number;
}

export interface BandDoc {
  depth: number;
  r_inner: number;
  r_outer: number;
  placements: PlacementDoc[];
  overflow: number;
}

export interface SectorArcDoc {
  sector: string;
  theta_start: number;
  theta_end: number;
  bands: BandDoc[];
}

export interface LayoutDoc {
  center: { x: number; y: number };
  hub_radius: number;
  outer_radius: number;
  sectors: SectorArcDoc[];
}

export type Command =
  | { op: "add_contact"; contact: { id: string; name: string; avatar: string | null } }
  | { op: "remove_contact"; contact: string }
  | { op: "create_sector"; label: string; subsectors: string[] }
  | { op: "rename_sector"; sector: string; label: string }
  | { op: "rename_subsector"; sector: string; depth: number; label: string }
  | { op: "delete_sector"; sector: string }
  | { op: "add_subsector"; sector: string; label: string; at_depth?: number }
  | { op: "remove_subsector"; sector: string; depth: number }
  | { op: "assign"; contact: string; sector: string; depth: number }
  | { op: "unassign"; contact: string; sector: string }
  | {
      op: "move";
      contact: string;
      from: { sector: string; depth: number };
      to: { sector: string; depth: number };
    };

export interface BatchError {
  error: string;
  message: string;
  index?: number;
  path?: string;
}
