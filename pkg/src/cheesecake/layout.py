"""Deterministic radial geometry: sector arcs, band radii, avatar spots, hit-testing.

Angle convention: radians measured clockwise from 12 o'clock. Screen x grows
right and y grows down, so angle t at radius r around center (cx, cy) maps to
``(cx + r*sin(t), cy - r*cos(t))``. Sector arcs and band radii are half-open
intervals [start, end), which gives every point a unique owner.

Everything here is a pure function of its inputs: identical model + config
yield a bit-for-bit identical layout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidConfig, UnknownCell, UnknownFocusSector, UnknownSector
from .model import Cheesecake

TAU = 2.0 * math.pi

# inflates the required center-to-center distance so that pairwise spacing
# still holds after trig round-off
SPACING_SLACK = 1.0 + 1e-9

# default share of the viewport taken by the cake and by the hub
DEFAULT_OUTER_RATIO = 0.45
DEFAULT_HUB_RATIO = 0.12


@dataclass(frozen=True)
class LayoutConfig:
    center: tuple[float, float]
    outer_radius: float
    hub_radius: float = 0.0
    start_angle: float = 0.0  # radians, clockwise from 12 o'clock
    sector_gap: float = 0.0
    focus: str | None = None
    focus_fraction: float = 0.5
    avatar_radius: float = 12.0
    avatar_padding: float = 2.0


@dataclass(frozen=True)
class AvatarPlacement:
    contact_id: str
    x: float
    y: float
    radius: float


@dataclass(frozen=True)
class BandLayout:
    depth: int
    r_inner: float
    r_outer: float
    placements: tuple[AvatarPlacement, ...]
    overflow_count: int


@dataclass(frozen=True)
class SectorLayout:
    sector_id: str
    theta_start: float
    theta_end: float
    bands: tuple[BandLayout, ...]

    @property
    def width(self) -> float:
        return self.theta_end - self.theta_start


@dataclass(frozen=True)
class Layout:
    config: LayoutConfig
    sectors: tuple[SectorLayout, ...]

    def sector(self, sector_id: str) -> SectorLayout:
        for s in self.sectors:
            if s.sector_id == sector_id:
                return s
        raise UnknownSector(sector_id)


@dataclass(frozen=True)
class HitResult:
    kind: str  # "hub" | "cell" | "gap" | "outside"
    sector_id: str | None = None
    depth: int | None = None


HIT_HUB = HitResult("hub")
HIT_GAP = HitResult("gap")
HIT_OUTSIDE = HitResult("outside")


def cell_hit(sector_id: str, depth: int) -> HitResult:
    return HitResult("cell", sector_id, depth)


def polar_to_xy(center: tuple[float, float], r: float, theta: float) -> tuple[float, float]:
    cx, cy = center
    return (cx + r * math.sin(theta), cy - r * math.cos(theta))


def xy_to_polar(center: tuple[float, float], x: float, y: float) -> tuple[float, float]:
    cx, cy = center
    dx, dy = x - cx, y - cy
    r = math.hypot(dx, dy)
    theta = math.atan2(dx, -dy) % TAU
    if theta >= TAU:  # mod of a tiny negative can round up to TAU itself
        theta = 0.0
    return (r, theta)


def viewport_config(
    width: float,
    height: float,
    focus: str | None = None,
    **overrides,
) -> LayoutConfig:
    """Config for a centered cake filling a width x height viewport.

    outer_radius defaults to 0.45 and hub_radius to 0.12 of the smaller
    viewport side; any LayoutConfig field passed as a keyword wins over
    the derived default.
    """
    if not (width > 0 and height > 0):
        raise InvalidConfig("viewport width and height must be > 0")
    side = min(width, height)
    fields = {
        "center": (width / 2.0, height / 2.0),
        "outer_radius": DEFAULT_OUTER_RATIO * side,
        "hub_radius": DEFAULT_HUB_RATIO * side,
        "focus": focus,
    }
    for key, value in overrides.items():
        if value is not None:
            fields[key] = value
    try:
        return LayoutConfig(**fields)
    except TypeError as e:
        raise InvalidConfig(str(e)) from None


def compute_layout(model: Cheesecake, config: LayoutConfig) -> Layout:
    _check_config(model, config)
    arcs = _sector_arcs(model, config)
    hub, outer = config.hub_radius, config.outer_radius
    contact_by_id = {c.id: c for c in model.contacts}

    sector_layouts = []
    for sector, t0, t1 in arcs:
        depth_count = sector.depth_count
        bands = []
        for d in range(depth_count):
            r_in = _band_boundary(hub, outer, d, depth_count)
            r_out = _band_boundary(hub, outer, d + 1, depth_count)
            occupants = sorted(
                (contact_by_id[cid] for cid in model.cell_contacts(sector.id, d)),
                key=lambda c: (c.display_name, c.id),
            )
            placements, overflow = place_avatars(
                config.center,
                t0,
                t1,
                r_in,
                r_out,
                [c.id for c in occupants],
                config.avatar_radius,
                config.avatar_padding,
            )
            bands.append(BandLayout(d, r_in, r_out, placements, overflow))
        sector_layouts.append(SectorLayout(sector.id, t0, t1, tuple(bands)))
    return Layout(config=config, sectors=tuple(sector_layouts))


def hit_test(layout: Layout, point: tuple[float, float]) -> HitResult:
    config = layout.config
    r, theta = xy_to_polar(config.center, point[0], point[1])
    if r == 0.0 or r < config.hub_radius:
        return HIT_HUB
    if r >= config.outer_radius:
        return HIT_OUTSIDE
    for arc in layout.sectors:
        if not _arc_contains(arc.theta_start, arc.theta_end, theta):
            continue
        for band in arc.bands:
            if band.r_inner <= r < band.r_outer:
                return cell_hit(arc.sector_id, band.depth)
        return HIT_GAP  # unreachable: bands tile [hub, outer)
    return HIT_GAP


def cell_centroid(layout: Layout, sector_id: str, depth: int) -> tuple[float, float]:
    for arc in layout.sectors:
        if arc.sector_id != sector_id:
            continue
        for band in arc.bands:
            if band.depth == depth:
                mid_theta = (arc.theta_start + arc.theta_end) / 2.0
                mid_r = (band.r_inner + band.r_outer) / 2.0
                return polar_to_xy(layout.config.center, mid_r, mid_theta)
        raise UnknownCell(sector_id, depth)
    raise UnknownCell(sector_id, depth)


def place_avatars(
    center: tuple[float, float],
    theta_start: float,
    theta_end: float,
    r_inner: float,
    r_outer: float,
    contact_ids: list[str],
    avatar_radius: float,
    avatar_padding: float,
) -> tuple[tuple[AvatarPlacement, ...], int]:
    """Fill a cell with avatar centers, inner rows first, and count the rest.

    The band height is cut into the largest number of rows whose radial pitch
    keeps avatar centers at least ``2*avatar_radius + avatar_padding`` apart.
    Contacts fill rows from the innermost out, in the given order; within a
    row they sit at the minimal angular step that honors the same spacing,
    centered on the arc's mid-angle. Occupied rows are then re-centered
    radially in the band, so a lone contact lands exactly on the cell
    centroid. Row capacity is decided at the pre-centering radii; the final
    radii are never smaller, so spacing survives the shift.
    """
    n = len(contact_ids)
    if n == 0:
        return (), 0
    width = theta_end - theta_start
    height = r_outer - r_inner
    spacing = (2.0 * avatar_radius + avatar_padding) * SPACING_SLACK
    rows = max(1, math.floor(height / spacing))
    pitch = height / rows

    filled: list[tuple[float, float, list[str]]] = []  # (radius, step, occupants)
    idx = 0
    for i in range(rows):
        if idx >= n:
            break
        rho = r_inner + (i + 0.5) * pitch
        step, cap = _row_step_and_capacity(rho, width, spacing)
        take = contact_ids[idx : idx + cap]
        idx += len(take)
        filled.append((rho, step, take))

    shift = (rows - len(filled)) * pitch / 2.0
    mid = (theta_start + theta_end) / 2.0
    placements = []
    for rho, step, occupants in filled:
        m = len(occupants)
        radius = rho + shift
        for j, cid in enumerate(occupants):
            theta = mid + (j - (m - 1) / 2.0) * step
            x, y = polar_to_xy(center, radius, theta)
            placements.append(AvatarPlacement(cid, x, y, avatar_radius))
    return tuple(placements), n - idx


def layout_to_doc(layout: Layout) -> dict:
    """Render a layout as its wire document (plain JSON-ready dict)."""
    cx, cy = layout.config.center
    return {
        "center": {"x": cx, "y": cy},
        "hub_radius": layout.config.hub_radius,
        "outer_radius": layout.config.outer_radius,
        "sectors": [
            {
                "sector": arc.sector_id,
                "theta_start": arc.theta_start,
                "theta_end": arc.theta_end,
                "bands": [
                    {
                        "depth": band.depth,
                        "r_inner": band.r_inner,
                        "r_outer": band.r_outer,
                        "placements": [
                            {"contact": p.contact_id, "x": p.x, "y": p.y, "r": p.radius}
                            for p in band.placements
                        ],
                        "overflow": band.overflow_count,
                    }
                    for band in arc.bands
                ],
            }
            for arc in layout.sectors
        ],
    }


# -- internals ------------------------------------------------------------


def _check_config(model: Cheesecake, config: LayoutConfig) -> None:
    if config.outer_radius <= 0:
        raise InvalidConfig("outer_radius must be > 0")
    if not 0 <= config.hub_radius < config.outer_radius:
        raise InvalidConfig("hub_radius must be in [0, outer_radius)")
    if config.sector_gap < 0:
        raise InvalidConfig("sector_gap must be >= 0")
    if not 0.0 < config.focus_fraction < 1.0:
        raise InvalidConfig("focus_fraction must be in (0, 1)")
    if config.avatar_radius <= 0:
        raise InvalidConfig("avatar_radius must be > 0")
    if config.avatar_padding < 0:
        raise InvalidConfig("avatar_padding must be >= 0")
    n = len(model.sectors)
    if n and config.sector_gap * n >= TAU:
        raise InvalidConfig("sector gaps leave no room for sectors")
    if config.focus is not None and not model.has_sector(config.focus):
        raise UnknownFocusSector(config.focus)


def _sector_arcs(model: Cheesecake, config: LayoutConfig):
    n = len(model.sectors)
    if n == 0:
        return []
    usable = TAU - n * config.sector_gap
    if config.focus is not None and n > 1:
        focused = config.focus_fraction * usable
        other = (usable - focused) / (n - 1)
        widths = [focused if s.id == config.focus else other for s in model.sectors]
    else:
        widths = [usable / n] * n
    start = config.start_angle % TAU
    if start >= TAU:
        start = 0.0
    arcs = []
    t = start
    for sector, w in zip(model.sectors, widths):
        arcs.append((sector, t, t + w))
        t += w + config.sector_gap
    return arcs


def _band_boundary(hub: float, outer: float, d: int, count: int) -> float:
    # lerp between endpoints so d=0 is exactly hub and d=count exactly outer
    t = d / count
    return hub * (1.0 - t) + outer * t


def _arc_contains(theta_start: float, theta_end: float, theta: float) -> bool:
    width = theta_end - theta_start
    return (theta - theta_start) % TAU < width


def _row_step_and_capacity(rho: float, width: float, spacing: float) -> tuple[float, int]:
    if spacing >= 2.0 * rho:
        # no chord of this circle reaches the required spacing; one fits
        return 0.0, 1
    step = 2.0 * math.asin(spacing / (2.0 * rho))
    return step, max(1, math.floor(width / step))
