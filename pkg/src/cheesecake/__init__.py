"""Embeddable contact-management engine on a radial context/tie-strength model.

Contacts live on a circle of labeled sectors (social contexts), each split
into concentric bands (tie strength, inner = stronger). The package provides
the immutable model and its operations, a deterministic layout + hit-test
engine, canonical JSON persistence, a CLI, and a small demo HTTP service.
"""

from .adapters import AdapterCapabilities, InMemoryAdapter, PlatformAdapter, PushAck
from .commands import BatchFailure, apply_batch, apply_command
from .document import (
    ContactGroup,
    canonical_json_bytes,
    deserialize,
    export_groups,
    import_roster_csv,
    model_to_doc,
    serialize,
)
from .errors import (
    BadCommand,
    BadHeader,
    BadRow,
    CheesecakeError,
    DepthOutOfRange,
    DuplicateContactId,
    EmptyLabel,
    EmptySubsectorList,
    InvalidConfig,
    LastSubsector,
    ParseError,
    SchemaViolation,
    UnknownAssignment,
    UnknownCell,
    UnknownContact,
    UnknownDepth,
    UnknownFocusSector,
    UnknownSector,
    UnsupportedVersion,
)
from .layout import (
    HIT_GAP,
    HIT_HUB,
    HIT_OUTSIDE,
    AvatarPlacement,
    BandLayout,
    HitResult,
    Layout,
    LayoutConfig,
    SectorLayout,
    cell_centroid,
    cell_hit,
    compute_layout,
    hit_test,
    layout_to_doc,
    place_avatars,
    polar_to_xy,
    viewport_config,
    xy_to_polar,
)
from .model import (
    Assignment,
    Cells,
    Cheesecake,
    Contact,
    DepthThreshold,
    Sector,
    Selection,
    SelectionUnion,
    Subsector,
    WholeSectors,
    resolve_cells,
)

__version__ = "0.1.0"

__all__ = [
    "AdapterCapabilities",
    "Assignment",
    "AvatarPlacement",
    "BadCommand",
    "BadHeader",
    "BadRow",
    "BandLayout",
    "BatchFailure",
    "Cells",
    "Cheesecake",
    "CheesecakeError",
    "Contact",
    "ContactGroup",
    "DepthOutOfRange",
    "DepthThreshold",
    "DuplicateContactId",
    "EmptyLabel",
    "EmptySubsectorList",
    "HIT_GAP",
    "HIT_HUB",
    "HIT_OUTSIDE",
    "HitResult",
    "InMemoryAdapter",
    "InvalidConfig",
    "LastSubsector",
    "Layout",
    "LayoutConfig",
    "ParseError",
    "PlatformAdapter",
    "PushAck",
    "SchemaViolation",
    "Sector",
    "SectorLayout",
    "Selection",
    "SelectionUnion",
    "Subsector",
    "UnknownAssignment",
    "UnknownCell",
    "UnknownContact",
    "UnknownDepth",
    "UnknownFocusSector",
    "UnknownSector",
    "UnsupportedVersion",
    "WholeSectors",
    "apply_batch",
    "apply_command",
    "canonical_json_bytes",
    "cell_centroid",
    "cell_hit",
    "compute_layout",
    "deserialize",
    "export_groups",
    "hit_test",
    "import_roster_csv",
    "layout_to_doc",
    "model_to_doc",
    "place_avatars",
    "polar_to_xy",
    "resolve_cells",
    "serialize",
    "viewport_config",
    "xy_to_polar",
]
