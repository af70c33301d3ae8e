"""Contract for plugging the engine into a host social platform.

Adapters only exchange plain contact and group data; they never touch the
model itself. The in-memory adapter below stands in for a real platform in
tests and demos.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Sequence

from .document import ContactGroup
from .model import Contact


@dataclass(frozen=True)
class AdapterCapabilities:
    can_fetch_contacts: bool = False
    can_push_groups: bool = False


@dataclass(frozen=True)
class PushAck:
    accepted_groups: int


class PlatformAdapter(ABC):
    @abstractmethod
    def capabilities(self) -> AdapterCapabilities:
        ...

    @abstractmethod
    def fetch_contacts(self) -> list[Contact]:
        ...

    @abstractmethod
    def push_groups(self, groups: Sequence[ContactGroup]) -> PushAck:
        ...


class InMemoryAdapter(PlatformAdapter):
    """Fake platform holding a fixed roster and recording pushed groups."""

    def __init__(self, contacts: Sequence[Contact] = ()):
        self._contacts = list(contacts)
        self.pushed: list[list[ContactGroup]] = []

    def capabilities(self) -> AdapterCapabilities:
        return AdapterCapabilities(can_fetch_contacts=True, can_push_groups=True)

    def fetch_contacts(self) -> list[Contact]:
        return list(self._contacts)

    def push_groups(self, groups: Sequence[ContactGroup]) -> PushAck:
        self.pushed.append(list(groups))
        return PushAck(accepted_groups=len(groups))
