"""Canonical JSON document for the model, CSV roster import, group export.

Document shape (version 1)::

    {"version": 1,
     "contacts":    [{"id": "...", "name": "...", "avatar": null | "uri"}],
     "sectors":     [{"id": "...", "label": "...", "color": null | "#RRGGBB",
                      "subsectors": [{"id": "...", "label": "..."}]}],
     "assignments": [{"contact": "...", "sector": "...", "depth": 0}]}

The subsector array index IS the depth (0 = innermost). Serialization is
canonical and byte-deterministic: keys in the order above, contacts sorted by
id, sectors in stored order, assignments sorted by (contact, sector), compact
UTF-8 JSON terminated by a single LF.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass

from .errors import (
    BadHeader,
    BadRow,
    DuplicateContactId,
    ParseError,
    SchemaViolation,
    UnsupportedVersion,
)
from .model import Assignment, Cheesecake, Contact, Sector, Subsector

DOC_VERSION = 1

_COLOR_RE = re.compile(r"^#[0-9a-fA-F]{6}$")
_CSV_HEADER = ["id", "name", "avatar"]


def canonical_json_bytes(obj) -> bytes:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False).encode("utf-8") + b"\n"


def model_to_doc(model: Cheesecake) -> dict:
    return {
        "version": DOC_VERSION,
        "contacts": [
            {"id": c.id, "name": c.display_name, "avatar": c.avatar_ref}
            for c in model.contacts
        ],
        "sectors": [
            {
                "id": s.id,
                "label": s.label,
                "color": s.color,
                "subsectors": [{"id": b.id, "label": b.label} for b in s.subsectors],
            }
            for s in model.sectors
        ],
        "assignments": [
            {"contact": a.contact_id, "sector": a.sector_id, "depth": a.depth}
            for a in model.assignments
        ],
    }


def serialize(model: Cheesecake) -> bytes:
    return canonical_json_bytes(model_to_doc(model))


def deserialize(data: bytes | str) -> Cheesecake:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError("", f"not UTF-8: {e}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError("", f"invalid JSON: {e.msg} (line {e.lineno} column {e.colno})") from None
    return doc_to_model(doc)


def doc_to_model(doc) -> Cheesecake:
    """Validate a parsed document and build the model it describes.

    Validation walks the document in order and reports the first violation
    with the path of the offending element.
    """
    _require(isinstance(doc, dict), "", "document must be a JSON object")
    _reject_unknown(doc, ("version", "contacts", "sectors", "assignments"), "")

    version = _field(doc, "version", "")
    _require(isinstance(version, int) and not isinstance(version, bool), "version", "must be an integer")
    if version != DOC_VERSION:
        raise UnsupportedVersion(version)

    raw_contacts = _field(doc, "contacts", "")
    _require(isinstance(raw_contacts, list), "contacts", "must be an array")
    contacts = []
    seen_contacts: set[str] = set()
    for i, obj in enumerate(raw_contacts):
        path = f"contacts[{i}]"
        _require(isinstance(obj, dict), path, "must be an object")
        _reject_unknown(obj, ("id", "name", "avatar"), path)
        cid = _nonempty_str(obj, "id", path)
        name = _nonempty_str(obj, "name", path)
        avatar = _field(obj, "avatar", path)
        _require(avatar is None or isinstance(avatar, str), f"{path}.avatar", "must be null or a string")
        _require(cid not in seen_contacts, f"{path}.id", f"duplicate contact id {cid!r}")
        seen_contacts.add(cid)
        contacts.append(Contact(id=cid, display_name=name, avatar_ref=avatar or None))

    raw_sectors = _field(doc, "sectors", "")
    _require(isinstance(raw_sectors, list), "sectors", "must be an array")
    sectors = []
    seen_sectors: set[str] = set()
    for i, obj in enumerate(raw_sectors):
        path = f"sectors[{i}]"
        _require(isinstance(obj, dict), path, "must be an object")
        _reject_unknown(obj, ("id", "label", "color", "subsectors"), path)
        sid = _nonempty_str(obj, "id", path)
        label = _nonempty_str(obj, "label", path)
        color = _field(obj, "color", path)
        if color is not None:
            _require(
                isinstance(color, str) and _COLOR_RE.match(color),
                f"{path}.color",
                'must be null or "#RRGGBB"',
            )
        raw_subs = _field(obj, "subsectors", path)
        _require(isinstance(raw_subs, list), f"{path}.subsectors", "must be an array")
        _require(len(raw_subs) >= 1, f"{path}.subsectors", "needs at least one subsector")
        subsectors = []
        seen_subs: set[str] = set()
        for j, sub in enumerate(raw_subs):
            sub_path = f"{path}.subsectors[{j}]"
            _require(isinstance(sub, dict), sub_path, "must be an object")
            _reject_unknown(sub, ("id", "label"), sub_path)
            bid = _nonempty_str(sub, "id", sub_path)
            blabel = _nonempty_str(sub, "label", sub_path)
            _require(bid not in seen_subs, f"{sub_path}.id", f"duplicate subsector id {bid!r}")
            seen_subs.add(bid)
            subsectors.append(Subsector(id=bid, label=blabel))
        _require(sid not in seen_sectors, f"{path}.id", f"duplicate sector id {sid!r}")
        seen_sectors.add(sid)
        sectors.append(Sector(id=sid, label=label, color=color, subsectors=tuple(subsectors)))

    depth_counts = {s.id: s.depth_count for s in sectors}
    raw_assignments = _field(doc, "assignments", "")
    _require(isinstance(raw_assignments, list), "assignments", "must be an array")
    assignments = []
    seen_pairs: set[tuple[str, str]] = set()
    for i, obj in enumerate(raw_assignments):
        path = f"assignments[{i}]"
        _require(isinstance(obj, dict), path, "must be an object")
        _reject_unknown(obj, ("contact", "sector", "depth"), path)
        cid = _nonempty_str(obj, "contact", path)
        sid = _nonempty_str(obj, "sector", path)
        depth = _field(obj, "depth", path)
        _require(cid in seen_contacts, f"{path}.contact", f"unknown contact {cid!r}")
        _require(sid in depth_counts, f"{path}.sector", f"unknown sector {sid!r}")
        _require(
            isinstance(depth, int) and not isinstance(depth, bool),
            f"{path}.depth",
            "must be an integer",
        )
        _require(
            0 <= depth < depth_counts[sid],
            f"{path}.depth",
            f"depth {depth} out of range for sector {sid!r}",
        )
        _require(
            (cid, sid) not in seen_pairs,
            path,
            f"contact {cid!r} assigned twice in sector {sid!r}",
        )
        seen_pairs.add((cid, sid))
        assignments.append(Assignment(contact_id=cid, sector_id=sid, depth=depth))

    return Cheesecake(
        contacts=tuple(contacts),
        sectors=tuple(sectors),
        assignments=tuple(assignments),
    )


def import_roster_csv(data: bytes | str) -> list[Contact]:
    """Parse a roster CSV with the exact header ``id,name,avatar``."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise BadHeader(f"<not UTF-8: {e}>") from None
    reader = csv.reader(io.StringIO(data))
    rows = enumerate(reader, start=1)
    try:
        _, header = next(rows)
    except StopIteration:
        raise BadHeader("") from None
    if header != _CSV_HEADER:
        raise BadHeader(",".join(header))
    contacts = []
    seen: set[str] = set()
    for line, row in rows:
        if not row:
            continue  # tolerate blank lines
        if len(row) != 3:
            raise BadRow(line, f"expected 3 fields, got {len(row)}")
        cid, name, avatar = row
        if not cid:
            raise BadRow(line, "empty id")
        if not name:
            raise BadRow(line, "empty name")
        if cid in seen:
            raise DuplicateContactId(cid, line)
        seen.add(cid)
        contacts.append(Contact(id=cid, display_name=name, avatar_ref=avatar or None))
    return contacts


@dataclass(frozen=True)
class ContactGroup:
    """A named contact list, the interop unit pushed to host platforms."""

    name: str
    contact_ids: tuple[str, ...]


def export_groups(model: Cheesecake) -> list[ContactGroup]:
    """One group per cell, named "<sector_label>/<subsector_label>", plus "unsorted".

    Groups come out in sector then depth order; labels may repeat, so the
    result is a list, not a mapping.
    """
    groups = []
    for sector in model.sectors:
        for depth, sub in enumerate(sector.subsectors):
            members = sorted(model.cell_contacts(sector.id, depth))
            groups.append(ContactGroup(f"{sector.label}/{sub.label}", tuple(members)))
    groups.append(ContactGroup("unsorted", tuple(sorted(model.unsorted()))))
    return groups


def groups_to_doc(groups: list[ContactGroup]) -> list[dict]:
    return [{"name": g.name, "contacts": list(g.contact_ids)} for g in groups]


def _field(obj: dict, key: str, parent: str):
    if key not in obj:
        prefix = f"{parent}." if parent else ""
        raise SchemaViolation(f"{prefix}{key}", "missing field")
    return obj[key]


def _nonempty_str(obj: dict, key: str, parent: str) -> str:
    value = _field(obj, key, parent)
    prefix = f"{parent}." if parent else ""
    _require(isinstance(value, str), f"{prefix}{key}", "must be a string")
    _require(value != "", f"{prefix}{key}", "must be non-empty")
    return value


def _reject_unknown(obj: dict, allowed: tuple[str, ...], parent: str) -> None:
    for key in obj:
        if key not in allowed:
            prefix = f"{parent}." if parent else ""
            raise SchemaViolation(f"{prefix}{key}", "unknown field")


def _require(cond, path: str, message: str) -> None:
    if not cond:
        raise SchemaViolation(path, message)
