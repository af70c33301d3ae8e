"""Shared test utilities: seeded model builders and independent oracles."""

from __future__ import annotations

import math
import random

from cheesecake import (
    Cells,
    Cheesecake,
    Contact,
    DepthThreshold,
    SelectionUnion,
    WholeSectors,
    hit_test,
)

TAU = 2 * math.pi

FIRST_NAMES = [
    "Ana", "Bruno", "Carmen", "Diego", "Elena", "Fermin", "Gloria", "Hugo",
    "Irene", "Javier", "Karla", "Luis", "Marta", "Nuria", "Oscar", "Paula",
    "Quique", "Rosa", "Sergio", "Teresa",
]


def make_random_model(
    rng: random.Random,
    n_sectors: tuple[int, int] = (2, 8),
    n_bands: tuple[int, int] = (1, 4),
    n_contacts: tuple[int, int] = (0, 20),
    assign_prob: float = 0.6,
) -> Cheesecake:
    model = Cheesecake()
    for i in range(rng.randint(*n_contacts)):
        name = rng.choice(FIRST_NAMES)
        model = model.add_contact(Contact(id=f"c{i + 1}", display_name=name))
    for i in range(rng.randint(*n_sectors)):
        bands = [f"band{j}" for j in range(rng.randint(*n_bands))]
        model = model.create_sector(f"context{i + 1}", bands)
    for contact in model.contacts:
        for sector in model.sectors:
            if rng.random() < assign_prob:
                model = model.assign(
                    contact.id, sector.id, rng.randrange(sector.depth_count)
                )
    return model


def random_selection(rng: random.Random, model: Cheesecake, depth_budget: int = 2):
    """A random well-formed selection over the model's sectors."""
    kinds = ["cells", "sectors", "threshold"]
    if depth_budget > 0:
        kinds.append("union")
    kind = rng.choice(kinds)
    sectors = list(model.sectors)
    if kind == "cells" and sectors:
        cells = []
        for _ in range(rng.randint(0, 4)):
            s = rng.choice(sectors)
            cells.append((s.id, rng.randrange(s.depth_count)))
        return Cells(cells)
    if kind == "sectors" and sectors:
        picked = rng.sample(sectors, k=rng.randint(0, len(sectors)))
        return WholeSectors([s.id for s in picked])
    if kind == "union":
        return SelectionUnion(
            [random_selection(rng, model, depth_budget - 1) for _ in range(rng.randint(0, 3))]
        )
    return DepthThreshold(rng.randint(0, 4))


def brute_force_audience(model: Cheesecake, selection) -> frozenset[str]:
    """Resolve a selection by direct scans of the assignment list.

    Deliberately avoids the engine's cell-set expansion so the two paths
    can check each other.
    """
    if isinstance(selection, Cells):
        out = set()
        for sid, depth in selection.cells:
            for a in model.assignments:
                if a.sector_id == sid and a.depth == depth:
                    out.add(a.contact_id)
        return frozenset(out)
    if isinstance(selection, WholeSectors):
        return frozenset(
            a.contact_id for a in model.assignments if a.sector_id in selection.sector_ids
        )
    if isinstance(selection, DepthThreshold):
        return frozenset(
            a.contact_id for a in model.assignments if a.depth <= selection.depth
        )
    if isinstance(selection, SelectionUnion):
        out = set()
        for part in selection.parts:
            out |= brute_force_audience(model, part)
        return frozenset(out)
    raise TypeError(selection)


def polar_point(center, r, theta):
    return (center[0] + r * math.sin(theta), center[1] - r * math.cos(theta))


def to_polar(center, x, y):
    dx, dy = x - center[0], y - center[1]
    return math.hypot(dx, dy), math.atan2(dx, -dy) % TAU


def count_partition_violations(layout, rng: random.Random, samples: int, r_limit=None):
    """Round-trip sampled points against the layout's published intervals.

    Every point must get exactly one verdict, and a Cell verdict must satisfy
    the published arc and band intervals directly.
    """
    config = layout.config
    max_r = r_limit if r_limit is not None else config.outer_radius
    violations = 0
    for _ in range(samples):
        r = max_r * math.sqrt(rng.random())
        theta = rng.uniform(0, TAU)
        x, y = polar_point(config.center, r, theta)
        result = hit_test(layout, (x, y))
        pr, pt = to_polar(config.center, x, y)
        arcs_hit = [
            arc
            for arc in layout.sectors
            if (pt - arc.theta_start) % TAU < arc.theta_end - arc.theta_start
        ]
        if len(arcs_hit) > 1:
            violations += 1
            continue
        if result.kind == "hub":
            ok = pr == 0.0 or pr < config.hub_radius
        elif result.kind == "outside":
            ok = pr >= config.outer_radius
        elif result.kind == "gap":
            ok = config.hub_radius <= pr < config.outer_radius and not arcs_hit
        else:
            ok = False
            if arcs_hit and arcs_hit[0].sector_id == result.sector_id:
                for band in arcs_hit[0].bands:
                    if band.depth == result.depth:
                        ok = band.r_inner <= pr < band.r_outer
        if not ok:
            violations += 1
    return violations


def simulate_capacity(width, r_inner, r_outer, avatar_radius, avatar_padding):
    """Independent re-derivation of how many avatars a cell holds."""
    spacing = (2 * avatar_radius + avatar_padding) * (1 + 1e-9)
    height = r_outer - r_inner
    rows = max(1, math.floor(height / spacing))
    pitch = height / rows
    total = 0
    for i in range(rows):
        rho = r_inner + (i + 0.5) * pitch
        if spacing >= 2 * rho:
            total += 1
        else:
            total += max(1, math.floor(width / (2 * math.asin(spacing / (2 * rho)))))
    return total


def check_integrity(model: Cheesecake) -> None:
    """Assert the model invariants the operations must maintain."""
    contact_ids = {c.id for c in model.contacts}
    assert len(contact_ids) == len(model.contacts), "duplicate contact ids"
    sector_ids = [s.id for s in model.sectors]
    assert len(set(sector_ids)) == len(sector_ids), "duplicate sector ids"
    depth_count = {s.id: s.depth_count for s in model.sectors}
    pairs = set()
    for a in model.assignments:
        assert a.contact_id in contact_ids, f"assignment to missing contact {a}"
        assert a.sector_id in depth_count, f"assignment to missing sector {a}"
        assert 0 <= a.depth < depth_count[a.sector_id], f"assignment depth out of range {a}"
        pair = (a.contact_id, a.sector_id)
        assert pair not in pairs, f"second assignment for {pair}"
        pairs.add(pair)
