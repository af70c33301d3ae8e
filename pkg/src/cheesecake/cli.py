"""Command-line interface over a single document file.

Every state-changing command reads the document, applies one model operation,
and rewrites the file atomically (temp file + rename), so a crash can never
leave a torn document and replaying a command sequence from the same starting
document is byte-for-byte reproducible.

Exit codes: 0 success, 1 usage error, 2 model or validation error (the error
code name is printed on stderr).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from .document import (
    canonical_json_bytes,
    deserialize,
    export_groups,
    groups_to_doc,
    import_roster_csv,
    serialize,
)
from .errors import CheesecakeError
from .layout import compute_layout, layout_to_doc, viewport_config
from .model import Cells, Cheesecake, Contact, DepthThreshold

DEFAULT_DOC = "cheesecake.json"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 instead of argparse's default 2
        raise _UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cheesecake", description=__doc__.splitlines()[0])
    parser.add_argument("--doc", default=DEFAULT_DOC, help="document file (default: %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_, **kwargs):
        p = sub.add_parser(name, help=help_, **kwargs)
        p.add_argument("--doc", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        return p

    add("init", "create a new empty document")

    p = add("import", "add contacts from a roster CSV (header: id,name,avatar)")
    p.add_argument("--csv", required=True, metavar="FILE")

    p = add("contact", "manage the roster")
    contact_sub = p.add_subparsers(dest="action", required=True, metavar="ACTION")
    q = contact_sub.add_parser("add", help="add a contact")
    q.add_argument("id")
    q.add_argument("name")
    q.add_argument("--avatar", default=None, metavar="URI")
    q = contact_sub.add_parser("rm", help="remove a contact and its assignments")
    q.add_argument("id")

    p = add("sector", "manage sectors")
    sector_sub = p.add_subparsers(dest="action", required=True, metavar="ACTION")
    q = sector_sub.add_parser("add", help="append a sector with the given bands")
    q.add_argument("label")
    q.add_argument("subsectors", nargs="+", metavar="SUBSECTOR")
    q = sector_sub.add_parser("rm", help="delete a sector and its assignments")
    q.add_argument("sector")
    q = sector_sub.add_parser("rename", help="relabel a sector")
    q.add_argument("sector")
    q.add_argument("label")

    p = add("subsector", "manage tie-strength bands")
    band_sub = p.add_subparsers(dest="action", required=True, metavar="ACTION")
    q = band_sub.add_parser("add", help="insert a band (default: outermost)")
    q.add_argument("sector")
    q.add_argument("label")
    q.add_argument("--at", type=int, default=None, metavar="DEPTH")
    q = band_sub.add_parser("rm", help="remove a band; occupants move outward")
    q.add_argument("sector")
    q.add_argument("depth", type=int)
    q = band_sub.add_parser("rename", help="relabel a band")
    q.add_argument("sector")
    q.add_argument("depth", type=int)
    q.add_argument("label")

    p = add("assign", "put a contact into a (sector, depth) cell")
    p.add_argument("contact")
    p.add_argument("sector")
    p.add_argument("depth", type=int)

    p = add("unassign", "take a contact out of a sector")
    p.add_argument("contact")
    p.add_argument("sector")

    p = add("move", "move a contact between cells")
    p.add_argument("contact")
    p.add_argument("from_sector")
    p.add_argument("from_depth", type=int)
    p.add_argument("to_sector")
    p.add_argument("to_depth", type=int)

    add("show", "print a text summary of the document")

    p = add("audience", "resolve a selection to contact ids")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--cells", metavar="SID:D,SID:D", help="explicit cells")
    group.add_argument("--threshold", type=int, metavar="D", help="all cells with depth <= D")

    p = add("layout", "emit the layout document for a viewport")
    p.add_argument("--width", type=float, required=True)
    p.add_argument("--height", type=float, required=True)
    p.add_argument("--focus", default=None, metavar="SID")
    p.add_argument("--outer-radius", type=float, default=None)
    p.add_argument("--hub-radius", type=float, default=None)
    p.add_argument("--start-angle", type=float, default=None)
    p.add_argument("--sector-gap", type=float, default=None)
    p.add_argument("--focus-fraction", type=float, default=None)
    p.add_argument("--avatar-radius", type=float, default=None)
    p.add_argument("--avatar-padding", type=float, default=None)

    add("export-groups", "emit one named group per cell plus the unsorted pool")

    p = add("serve", "run the demo HTTP service")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static", default=None, metavar="DIR", help="webui asset directory")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(str(e), file=sys.stderr)
        return 1
    except SystemExit as e:  # --help
        return 0 if e.code in (0, None) else 1
    try:
        return _dispatch(args)
    except _UsageError as e:
        print(str(e), file=sys.stderr)
        return 1
    except CheesecakeError as e:
        print(f"{e.code}: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"IoError: {e}", file=sys.stderr)
        return 2


def run():  # console_scripts entry point
    raise SystemExit(main())


def _dispatch(args) -> int:
    doc_path = Path(args.doc)
    command = args.command

    if command == "init":
        write_doc_atomic(doc_path, serialize(Cheesecake()))
        return 0

    if command == "serve":
        from .service import serve_forever

        serve_forever(doc_path, host=args.host, port=args.port, static_dir=args.static)
        return 0

    model = deserialize(doc_path.read_bytes())

    if command == "import":
        for contact in import_roster_csv(Path(args.csv).read_bytes()):
            model = model.add_contact(contact)
        write_doc_atomic(doc_path, serialize(model))
        return 0

    if command == "contact":
        if args.action == "add":
            model = model.add_contact(
                Contact(id=args.id, display_name=args.name, avatar_ref=args.avatar)
            )
        else:
            model = model.remove_contact(args.id)
        write_doc_atomic(doc_path, serialize(model))
        return 0

    if command == "sector":
        if args.action == "add":
            model = model.create_sector(args.label, args.subsectors)
        elif args.action == "rm":
            model = model.delete_sector(args.sector)
        else:
            model = model.rename_sector(args.sector, args.label)
        write_doc_atomic(doc_path, serialize(model))
        return 0

    if command == "subsector":
        if args.action == "add":
            at = args.at if args.at is not None else model.sector(args.sector).depth_count
            model = model.add_subsector(args.sector, args.label, at)
        elif args.action == "rm":
            model = model.remove_subsector(args.sector, args.depth)
        else:
            model = model.rename_subsector(args.sector, args.depth, args.label)
        write_doc_atomic(doc_path, serialize(model))
        return 0

    if command == "assign":
        model = model.assign(args.contact, args.sector, args.depth)
        write_doc_atomic(doc_path, serialize(model))
        return 0

    if command == "unassign":
        model = model.unassign(args.contact, args.sector)
        write_doc_atomic(doc_path, serialize(model))
        return 0

    if command == "move":
        model = model.move(
            args.contact,
            (args.from_sector, args.from_depth),
            (args.to_sector, args.to_depth),
        )
        write_doc_atomic(doc_path, serialize(model))
        return 0

    if command == "show":
        _print_summary(model)
        return 0

    if command == "audience":
        if args.cells is not None:
            selection = Cells(parse_cells_arg(args.cells))
        else:
            if args.threshold < 0:
                raise _UsageError("cheesecake audience: threshold must be >= 0")
            selection = DepthThreshold(args.threshold)
        ids = sorted(model.audience(selection))
        sys.stdout.buffer.write(canonical_json_bytes(ids))
        return 0

    if command == "layout":
        config = viewport_config(
            args.width,
            args.height,
            focus=args.focus,
            outer_radius=args.outer_radius,
            hub_radius=args.hub_radius,
            start_angle=args.start_angle,
            sector_gap=args.sector_gap,
            focus_fraction=args.focus_fraction,
            avatar_radius=args.avatar_radius,
            avatar_padding=args.avatar_padding,
        )
        doc = layout_to_doc(compute_layout(model, config))
        sys.stdout.buffer.write(canonical_json_bytes(doc))
        return 0

    if command == "export-groups":
        doc = groups_to_doc(export_groups(model))
        sys.stdout.buffer.write(canonical_json_bytes(doc))
        return 0

    raise _UsageError(f"cheesecake: unknown command {command!r}")


def parse_cells_arg(text: str) -> list[tuple[str, int]]:
    cells = []
    for part in text.split(","):
        sid, sep, depth = part.rpartition(":")
        if not sep or not sid:
            raise _UsageError(f"cheesecake audience: bad cell {part!r}, expected SECTOR:DEPTH")
        try:
            cells.append((sid, int(depth)))
        except ValueError:
            raise _UsageError(f"cheesecake audience: bad depth in {part!r}") from None
    return cells


def write_doc_atomic(path: Path, data: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent) or ".", prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _print_summary(model: Cheesecake) -> None:
    print(
        f"{len(model.sectors)} sectors, {len(model.contacts)} contacts, "
        f"unsorted: {len(model.unsorted())}"
    )
    for sector in model.sectors:
        bands = ", ".join(
            f"{sub.label}({len(model.cell_contacts(sector.id, d))})"
            for d, sub in enumerate(sector.subsectors)
        )
        print(f"  [{sector.id}] {sector.label}: {bands}")


if __name__ == "__main__":
    run()
