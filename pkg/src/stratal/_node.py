"""Shared machinery for immutable, hash-consed-by-key syntax nodes."""

from dataclasses import dataclass
from functools import cached_property

from .nominal import Atom, Bound


def name_key(n) -> str:
    if isinstance(n, Bound):
        return f"#{n.index}"
    return f"{n.level}.{n.id}"


class Node:
    # Subclasses define `_key()` (canonical nameless serialization) and
    # `_free()`; both are cached per instance.

    @cached_property
    def key(self) -> str:
        return self._key()

    @cached_property
    def free(self) -> frozenset:
        return self._free()

    def __eq__(self, other):
        return isinstance(other, Node) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key


def node(cls):
    cls = dataclass(frozen=True, eq=False, repr=False)(cls)
    cls.__eq__ = Node.__eq__
    cls.__hash__ = Node.__hash__
    return cls


def free_of(n) -> frozenset:
    return frozenset((n,)) if isinstance(n, Atom) else frozenset()
