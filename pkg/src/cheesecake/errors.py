"""Error types shared by the model, the layout engine, and the document layer.

Every error exposes a stable ``code`` (the class name) so the CLI and the
HTTP service can report failures in a machine-readable way.
"""


class CheesecakeError(Exception):
    """Base class for all engine errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class DuplicateContactId(CheesecakeError):
    def __init__(self, contact_id: str, line: int | None = None):
        self.contact_id = contact_id
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate contact id {contact_id!r}{where}")


class UnknownContact(CheesecakeError):
    def __init__(self, contact_id: str):
        self.contact_id = contact_id
        super().__init__(f"unknown contact {contact_id!r}")


class UnknownSector(CheesecakeError):
    def __init__(self, sector_id: str):
        self.sector_id = sector_id
        super().__init__(f"unknown sector {sector_id!r}")


class UnknownDepth(CheesecakeError):
    def __init__(self, sector_id: str, depth: int):
        self.sector_id = sector_id
        self.depth = depth
        super().__init__(f"sector {sector_id!r} has no band at depth {depth}")


class DepthOutOfRange(CheesecakeError):
    def __init__(self, sector_id: str, depth: int, count: int):
        self.sector_id = sector_id
        self.depth = depth
        self.count = count
        super().__init__(
            f"depth {depth} out of range for sector {sector_id!r} with {count} band(s)"
        )


class EmptySubsectorList(CheesecakeError):
    def __init__(self):
        super().__init__("a sector needs at least one subsector")


class EmptyLabel(CheesecakeError):
    def __init__(self):
        super().__init__("label must be non-empty")


class LastSubsector(CheesecakeError):
    def __init__(self, sector_id: str):
        self.sector_id = sector_id
        super().__init__(f"cannot remove the last subsector of sector {sector_id!r}")


class UnknownAssignment(CheesecakeError):
    def __init__(self, contact_id: str, sector_id: str, depth: int | None = None):
        self.contact_id = contact_id
        self.sector_id = sector_id
        self.depth = depth
        at = f" at depth {depth}" if depth is not None else ""
        super().__init__(
            f"contact {contact_id!r} has no assignment in sector {sector_id!r}{at}"
        )


class InvalidConfig(CheesecakeError):
    pass


class UnknownFocusSector(CheesecakeError):
    def __init__(self, sector_id: str):
        self.sector_id = sector_id
        super().__init__(f"focus names unknown sector {sector_id!r}")


class UnknownCell(CheesecakeError):
    def __init__(self, sector_id: str, depth: int):
        self.sector_id = sector_id
        self.depth = depth
        super().__init__(f"layout has no cell ({sector_id!r}, {depth})")


class ParseError(CheesecakeError):
    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path or '<document>'}: {message}")


class SchemaViolation(CheesecakeError):
    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path or '<document>'}: {message}")


class UnsupportedVersion(CheesecakeError):
    def __init__(self, version):
        self.version = version
        super().__init__(f"unsupported document version {version!r}")


class BadHeader(CheesecakeError):
    def __init__(self, got: str):
        self.got = got
        super().__init__(f"CSV header must be exactly 'id,name,avatar', got {got!r}")


class BadRow(CheesecakeError):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"bad CSV row at line {line}: {message}")


class BadCommand(CheesecakeError):
    """A command object is structurally malformed (maps to HTTP 400)."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path or '<command>'}: {message}")
