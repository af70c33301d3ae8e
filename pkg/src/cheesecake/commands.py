"""Commands: named model operations expressed as plain JSON objects.

Each command is an object with an ``op`` field naming a model operation plus
that operation's parameters, for example::

    {"op": "add_contact", "contact": {"id": "c1", "name": "Ana", "avatar": null}}
    {"op": "remove_contact", "contact": "c1"}
    {"op": "create_sector", "label": "work", "subsectors": ["close", "distant"]}
    {"op": "rename_sector", "sector": "s1", "label": "office"}
    {"op": "rename_subsector", "sector": "s1", "depth": 0, "label": "inner"}
    {"op": "delete_sector", "sector": "s1"}
    {"op": "add_subsector", "sector": "s1", "label": "mid", "at_depth": 1}
    {"op": "remove_subsector", "sector": "s1", "depth": 1}
    {"op": "assign", "contact": "c1", "sector": "s1", "depth": 0}
    {"op": "unassign", "contact": "c1", "sector": "s1"}
    {"op": "move", "contact": "c1", "from": {"sector": "s1", "depth": 1},
                                    "to":   {"sector": "s2", "depth": 0}}

``at_depth`` may be omitted to append the new subsector at the outside.
Structurally malformed commands raise :class:`BadCommand`; commands that
violate model state raise the operation's own error.
"""

from __future__ import annotations

from .errors import BadCommand, CheesecakeError
from .model import Cheesecake, Contact

COMMAND_OPS = (
    "add_contact",
    "remove_contact",
    "create_sector",
    "rename_sector",
    "rename_subsector",
    "delete_sector",
    "add_subsector",
    "remove_subsector",
    "assign",
    "unassign",
    "move",
)


class BatchFailure(Exception):
    """A command in a batch failed; the whole batch is void."""

    def __init__(self, index: int, error: CheesecakeError):
        self.index = index
        self.error = error
        super().__init__(f"command {index} failed: {error}")


def apply_command(model: Cheesecake, command, path: str = "") -> Cheesecake:
    if not isinstance(command, dict):
        raise BadCommand(path, "command must be an object")
    op = command.get("op")
    if op is None:
        raise BadCommand(_join(path, "op"), "missing field")
    if op not in COMMAND_OPS:
        raise BadCommand(_join(path, "op"), f"unknown op {op!r}")

    if op == "add_contact":
        fields = _obj(command, "contact", path)
        cpath = _join(path, "contact")
        cid = _str(fields, "id", cpath)
        name = _str(fields, "name", cpath)
        if not cid:
            raise BadCommand(_join(cpath, "id"), "must be non-empty")
        if not name:
            raise BadCommand(_join(cpath, "name"), "must be non-empty")
        avatar = fields.get("avatar")
        if avatar is not None and not isinstance(avatar, str):
            raise BadCommand(_join(cpath, "avatar"), "must be null or a string")
        _only(fields, ("id", "name", "avatar"), cpath)
        _only(command, ("op", "contact"), path)
        return model.add_contact(Contact(id=cid, display_name=name, avatar_ref=avatar or None))
    if op == "remove_contact":
        _only(command, ("op", "contact"), path)
        return model.remove_contact(_str(command, "contact", path))
    if op == "create_sector":
        _only(command, ("op", "label", "subsectors"), path)
        label = _str(command, "label", path)
        subs = command.get("subsectors")
        if not isinstance(subs, list) or not all(isinstance(s, str) for s in subs):
            raise BadCommand(_join(path, "subsectors"), "must be an array of strings")
        return model.create_sector(label, subs)
    if op == "rename_sector":
        _only(command, ("op", "sector", "label"), path)
        return model.rename_sector(_str(command, "sector", path), _str(command, "label", path))
    if op == "rename_subsector":
        _only(command, ("op", "sector", "depth", "label"), path)
        return model.rename_subsector(
            _str(command, "sector", path),
            _int(command, "depth", path),
            _str(command, "label", path),
        )
    if op == "delete_sector":
        _only(command, ("op", "sector"), path)
        return model.delete_sector(_str(command, "sector", path))
    if op == "add_subsector":
        _only(command, ("op", "sector", "label", "at_depth"), path)
        sector_id = _str(command, "sector", path)
        label = _str(command, "label", path)
        if "at_depth" in command:
            at_depth = _int(command, "at_depth", path)
        else:
            at_depth = model.sector(sector_id).depth_count
        return model.add_subsector(sector_id, label, at_depth)
    if op == "remove_subsector":
        _only(command, ("op", "sector", "depth"), path)
        return model.remove_subsector(_str(command, "sector", path), _int(command, "depth", path))
    if op == "assign":
        _only(command, ("op", "contact", "sector", "depth"), path)
        return model.assign(
            _str(command, "contact", path),
            _str(command, "sector", path),
            _int(command, "depth", path),
        )
    if op == "unassign":
        _only(command, ("op", "contact", "sector"), path)
        return model.unassign(_str(command, "contact", path), _str(command, "sector", path))
    # move
    _only(command, ("op", "contact", "from", "to"), path)
    contact = _str(command, "contact", path)
    src = _cell(command, "from", path)
    dst = _cell(command, "to", path)
    return model.move(contact, src, dst)


def apply_batch(model: Cheesecake, commands) -> Cheesecake:
    """Apply commands in order; all-or-nothing.

    Raises :class:`BadCommand` if the batch is not a list of objects, and
    :class:`BatchFailure` (carrying the failing index) if any command fails.
    The input model is immutable, so failure leaves no partial state behind.
    """
    if not isinstance(commands, list):
        raise BadCommand("", "expected a JSON array of commands")
    for i, command in enumerate(commands):
        try:
            model = apply_command(model, command, path=f"commands[{i}]")
        except BadCommand:
            raise
        except CheesecakeError as e:
            raise BatchFailure(i, e) from e
    return model


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _str(obj: dict, key: str, path: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise BadCommand(_join(path, key), "must be a string")
    return value


def _int(obj: dict, key: str, path: str) -> int:
    value = obj.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise BadCommand(_join(path, key), "must be an integer")
    return value


def _obj(obj: dict, key: str, path: str) -> dict:
    value = obj.get(key)
    if not isinstance(value, dict):
        raise BadCommand(_join(path, key), "must be an object")
    return value


def _cell(obj: dict, key: str, path: str) -> tuple[str, int]:
    fields = _obj(obj, key, path)
    cell_path = _join(path, key)
    _only(fields, ("sector", "depth"), cell_path)
    return (_str(fields, "sector", cell_path), _int(fields, "depth", cell_path))


def _only(obj: dict, allowed: tuple[str, ...], path: str) -> None:
    for key in obj:
        if key not in allowed:
            raise BadCommand(_join(path, key), "unknown field")
