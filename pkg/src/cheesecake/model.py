"""Immutable contact model: a circle of context sectors split into tie-strength bands.

A :class:`Cheesecake` holds a roster of contacts, an ordered list of sectors
(one per social context, clockwise placement order), and assignments of
contacts to (sector, depth) cells. Depth counts bands from the center out:
depth 0 is the innermost band of a sector and holds the strongest ties.

Every operation returns a new model; values are hashable and safe to share
between threads. A contact may appear in several sectors but has at most one
depth per sector. Models are stored in canonical form (contacts sorted by id,
assignments sorted by contact then sector), so dataclass equality is
canonical-form equality.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Union

from .errors import (
    DepthOutOfRange,
    DuplicateContactId,
    EmptyLabel,
    EmptySubsectorList,
    LastSubsector,
    UnknownAssignment,
    UnknownContact,
    UnknownDepth,
    UnknownSector,
)


@dataclass(frozen=True)
class Contact:
    id: str
    display_name: str
    avatar_ref: str | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("contact id must be non-empty")
        if not self.display_name:
            raise ValueError("contact display_name must be non-empty")


@dataclass(frozen=True)
class Subsector:
    id: str
    label: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("subsector id must be non-empty")
        if not self.label:
            raise ValueError("subsector label must be non-empty")


@dataclass(frozen=True)
class Sector:
    id: str
    label: str
    color: str | None = None
    subsectors: tuple[Subsector, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "subsectors", tuple(self.subsectors))
        if not self.id:
            raise ValueError("sector id must be non-empty")
        if not self.label:
            raise ValueError("sector label must be non-empty")
        if not self.subsectors:
            raise ValueError("sector needs at least one subsector")
        ids = [s.id for s in self.subsectors]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate subsector id in sector {self.id!r}")

    @property
    def depth_count(self) -> int:
        return len(self.subsectors)


@dataclass(frozen=True)
class Assignment:
    contact_id: str
    sector_id: str
    depth: int


@dataclass(frozen=True)
class Cheesecake:
    contacts: tuple[Contact, ...] = ()
    sectors: tuple[Sector, ...] = ()
    assignments: tuple[Assignment, ...] = ()

    def __post_init__(self):
        # normalize to canonical form: equality and hashing then match the
        # canonical document ordering
        object.__setattr__(
            self, "contacts", tuple(sorted(self.contacts, key=lambda c: c.id))
        )
        object.__setattr__(self, "sectors", tuple(self.sectors))
        object.__setattr__(
            self,
            "assignments",
            tuple(sorted(self.assignments, key=lambda a: (a.contact_id, a.sector_id))),
        )

    # -- lookups ---------------------------------------------------------

    def contact(self, contact_id: str) -> Contact:
        for c in self.contacts:
            if c.id == contact_id:
                return c
        raise UnknownContact(contact_id)

    def sector(self, sector_id: str) -> Sector:
        for s in self.sectors:
            if s.id == sector_id:
                return s
        raise UnknownSector(sector_id)

    def has_contact(self, contact_id: str) -> bool:
        return any(c.id == contact_id for c in self.contacts)

    def has_sector(self, sector_id: str) -> bool:
        return any(s.id == sector_id for s in self.sectors)

    def assignment_for(self, contact_id: str, sector_id: str) -> Assignment | None:
        for a in self.assignments:
            if a.contact_id == contact_id and a.sector_id == sector_id:
                return a
        return None

    def cell_contacts(self, sector_id: str, depth: int) -> frozenset[str]:
        return frozenset(
            a.contact_id
            for a in self.assignments
            if a.sector_id == sector_id and a.depth == depth
        )

    # -- roster ops ------------------------------------------------------

    def add_contact(self, contact: Contact) -> "Cheesecake":
        if self.has_contact(contact.id):
            raise DuplicateContactId(contact.id)
        return replace(self, contacts=self.contacts + (contact,))

    def remove_contact(self, contact_id: str) -> "Cheesecake":
        if not self.has_contact(contact_id):
            raise UnknownContact(contact_id)
        return replace(
            self,
            contacts=tuple(c for c in self.contacts if c.id != contact_id),
            assignments=tuple(
                a for a in self.assignments if a.contact_id != contact_id
            ),
        )

    # -- sector ops ------------------------------------------------------

    def create_sector(self, label: str, subsector_labels: Iterable[str]) -> "Cheesecake":
        labels = list(subsector_labels)
        if not labels:
            raise EmptySubsectorList()
        if not label or any(not l for l in labels):
            raise EmptyLabel()
        sid = _fresh_id("s", {s.id for s in self.sectors})
        subsectors = tuple(
            Subsector(id=f"b{i + 1}", label=l) for i, l in enumerate(labels)
        )
        sector = Sector(id=sid, label=label, subsectors=subsectors)
        return replace(self, sectors=self.sectors + (sector,))

    def rename_sector(self, sector_id: str, new_label: str) -> "Cheesecake":
        sector = self.sector(sector_id)
        if not new_label:
            raise EmptyLabel()
        return self._swap_sector(replace(sector, label=new_label))

    def rename_subsector(self, sector_id: str, depth: int, new_label: str) -> "Cheesecake":
        sector = self.sector(sector_id)
        if not 0 <= depth < sector.depth_count:
            raise UnknownDepth(sector_id, depth)
        if not new_label:
            raise EmptyLabel()
        subs = list(sector.subsectors)
        subs[depth] = replace(subs[depth], label=new_label)
        return self._swap_sector(replace(sector, subsectors=tuple(subs)))

    def delete_sector(self, sector_id: str) -> "Cheesecake":
        self.sector(sector_id)
        return replace(
            self,
            sectors=tuple(s for s in self.sectors if s.id != sector_id),
            assignments=tuple(a for a in self.assignments if a.sector_id != sector_id),
        )

    def add_subsector(self, sector_id: str, label: str, at_depth: int) -> "Cheesecake":
        sector = self.sector(sector_id)
        if not 0 <= at_depth <= sector.depth_count:
            raise DepthOutOfRange(sector_id, at_depth, sector.depth_count)
        if not label:
            raise EmptyLabel()
        new_id = _fresh_id("b", {s.id for s in sector.subsectors})
        subs = list(sector.subsectors)
        subs.insert(at_depth, Subsector(id=new_id, label=label))
        assignments = tuple(
            replace(a, depth=a.depth + 1)
            if a.sector_id == sector_id and a.depth >= at_depth
            else a
            for a in self.assignments
        )
        model = self._swap_sector(replace(sector, subsectors=tuple(subs)))
        return replace(model, assignments=assignments)

    def remove_subsector(self, sector_id: str, depth: int) -> "Cheesecake":
        sector = self.sector(sector_id)
        if not 0 <= depth < sector.depth_count:
            raise UnknownDepth(sector_id, depth)
        if sector.depth_count == 1:
            raise LastSubsector(sector_id)
        subs = list(sector.subsectors)
        del subs[depth]
        # occupants of the removed band move to the adjacent outer band
        # (toward weaker ties); the old outermost falls back to the new
        # outermost. Deeper assignments reindex by -1.
        outermost = len(subs) - 1
        moved: dict[tuple[str, str], Assignment] = {}
        for a in self.assignments:
            if a.sector_id != sector_id:
                moved[(a.contact_id, a.sector_id)] = a
                continue
            if a.depth < depth:
                new_depth = a.depth
            elif a.depth == depth:
                new_depth = min(depth, outermost)
            else:
                new_depth = a.depth - 1
            new = replace(a, depth=new_depth)
            key = (a.contact_id, a.sector_id)
            prior = moved.get(key)
            if prior is None or new.depth < prior.depth:
                moved[key] = new  # on collision the stronger tie wins
        model = self._swap_sector(replace(sector, subsectors=tuple(subs)))
        return replace(model, assignments=tuple(moved.values()))

    # -- assignment ops --------------------------------------------------

    def assign(self, contact_id: str, sector_id: str, depth: int) -> "Cheesecake":
        if not self.has_contact(contact_id):
            raise UnknownContact(contact_id)
        sector = self.sector(sector_id)
        if not 0 <= depth < sector.depth_count:
            raise DepthOutOfRange(sector_id, depth, sector.depth_count)
        kept = tuple(
            a
            for a in self.assignments
            if not (a.contact_id == contact_id and a.sector_id == sector_id)
        )
        return replace(self, assignments=kept + (Assignment(contact_id, sector_id, depth),))

    def unassign(self, contact_id: str, sector_id: str) -> "Cheesecake":
        if not self.has_contact(contact_id):
            raise UnknownContact(contact_id)
        self.sector(sector_id)
        if self.assignment_for(contact_id, sector_id) is None:
            raise UnknownAssignment(contact_id, sector_id)
        return replace(
            self,
            assignments=tuple(
                a
                for a in self.assignments
                if not (a.contact_id == contact_id and a.sector_id == sector_id)
            ),
        )

    def move(
        self,
        contact_id: str,
        from_cell: tuple[str, int],
        to_cell: tuple[str, int],
    ) -> "Cheesecake":
        from_sector, from_depth = from_cell
        existing = self.assignment_for(contact_id, from_sector)
        if existing is None or existing.depth != from_depth:
            raise UnknownAssignment(contact_id, from_sector, from_depth)
        to_sector, to_depth = to_cell
        return self.unassign(contact_id, from_sector).assign(
            contact_id, to_sector, to_depth
        )

    # -- queries ---------------------------------------------------------

    def unsorted(self) -> frozenset[str]:
        assigned = {a.contact_id for a in self.assignments}
        return frozenset(c.id for c in self.contacts if c.id not in assigned)

    def audience(self, selection: "Selection") -> frozenset[str]:
        cells = resolve_cells(self, selection)
        return frozenset(
            a.contact_id for a in self.assignments if (a.sector_id, a.depth) in cells
        )

    def search(self, query: str) -> list[str]:
        folded = _fold_latin(query)
        hits = [c for c in self.contacts if folded in _fold_latin(c.display_name)]
        hits.sort(key=lambda c: (c.display_name, c.id))
        return [c.id for c in hits]

    # -- internals -------------------------------------------------------

    def _swap_sector(self, sector: Sector) -> "Cheesecake":
        return replace(
            self,
            sectors=tuple(sector if s.id == sector.id else s for s in self.sectors),
        )


# -- selections ----------------------------------------------------------


@dataclass(frozen=True)
class Cells:
    """An explicit set of (sector_id, depth) cells."""

    cells: frozenset[tuple[str, int]]

    def __init__(self, cells: Iterable[tuple[str, int]]):
        object.__setattr__(
            self, "cells", frozenset((sid, int(d)) for sid, d in cells)
        )


@dataclass(frozen=True)
class WholeSectors:
    """Every band of the named sectors."""

    sector_ids: frozenset[str]

    def __init__(self, sector_ids: Iterable[str]):
        object.__setattr__(self, "sector_ids", frozenset(sector_ids))


@dataclass(frozen=True)
class DepthThreshold:
    """All cells at depth <= depth in every sector, clipped per sector."""

    depth: int

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("threshold depth must be non-negative")


@dataclass(frozen=True)
class SelectionUnion:
    parts: tuple["Selection", ...]

    def __init__(self, parts: Iterable["Selection"]):
        object.__setattr__(self, "parts", tuple(parts))


Selection = Union[Cells, WholeSectors, DepthThreshold, SelectionUnion]


def resolve_cells(model: Cheesecake, selection: Selection) -> frozenset[tuple[str, int]]:
    """Expand a selection to the concrete cell set it covers."""
    if isinstance(selection, Cells):
        for sid, d in selection.cells:
            sector = model.sector(sid)
            if not 0 <= d < sector.depth_count:
                raise DepthOutOfRange(sid, d, sector.depth_count)
        return selection.cells
    if isinstance(selection, WholeSectors):
        out = set()
        for sid in selection.sector_ids:
            sector = model.sector(sid)
            out.update((sid, d) for d in range(sector.depth_count))
        return frozenset(out)
    if isinstance(selection, DepthThreshold):
        out = set()
        for sector in model.sectors:
            top = min(selection.depth, sector.depth_count - 1)
            out.update((sector.id, d) for d in range(top + 1))
        return frozenset(out)
    if isinstance(selection, SelectionUnion):
        out = set()
        for part in selection.parts:
            out.update(resolve_cells(model, part))
        return frozenset(out)
    raise TypeError(f"not a selection: {selection!r}")


def _fresh_id(prefix: str, taken: set[str]) -> str:
    # deterministic so that replaying a command log reproduces ids exactly
    n = 1
    while f"{prefix}{n}" in taken:
        n += 1
    return f"{prefix}{n}"


def _fold_latin(s: str) -> str:
    # case folding restricted to the basic Latin range, no locale logic
    return "".join(
        chr(ord(ch) + 32) if "A" <= ch <= "Z" else ch for ch in s
    )
