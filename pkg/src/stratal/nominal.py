"""Atoms, permutations, support and fresh names.

Atoms are sorted by an integer level.  Unleveled syntax (NF mode) uses
``level=None`` as its single sort.  Bound names never appear as atoms in a
value: binders are stored nameless (``Bound``), so alpha-equivalence is
plain structural equality and permutations only ever touch free atoms.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import LevelMismatch

_RAW_NAME = re.compile(r"_(\d+)$")


class NameTable:
    """Interns display names to atom ids, shared by every level."""

    def __init__(self):
        self._lock = threading.Lock()
        self._by_name: dict[str, int] = {}
        self._by_id: dict[int, str] = {}

    def intern(self, name: str) -> int:
        m = _RAW_NAME.match(name)
        if m:
            return int(m.group(1))
        with self._lock:
            ident = self._by_name.get(name)
            if ident is None:
                ident = len(self._by_name)
                while ident in self._by_id:
                    ident += 1
                self._by_name[name] = ident
                self._by_id[ident] = name
            return ident

    def name_of(self, ident: int) -> Optional[str]:
        return self._by_id.get(ident)


names = NameTable()


@dataclass(frozen=True)
class Atom:
    level: Optional[int]
    id: int
    display_name: Optional[str] = field(default=None, compare=False)

    @classmethod
    def named(cls, name: str, level: Optional[int] = None) -> "Atom":
        return cls(level, names.intern(name), name)

    @property
    def name(self) -> str:
        """Printable name; parses back to this atom's id."""
        return names.name_of(self.id) or f"_{self.id}"

    def with_level(self, level: Optional[int]) -> "Atom":
        return Atom(level, self.id, self.display_name)

    def __repr__(self):
        if self.level is None:
            return self.name
        return f"{self.name}:{self.level}"


@dataclass(frozen=True)
class Bound:
    """A bound occurrence: de Bruijn index plus the level of its binder."""

    index: int
    level: Optional[int]

    def __repr__(self):
        return f"#{self.index}"


Name = Atom | Bound


def fresh(level: Optional[int], avoid: Iterable[Atom] = ()) -> Atom:
    """Least-id atom of the given level that is not in ``avoid``.

    Deterministic in ``(level, avoid)``.  Callers pass every atom that must
    stay distinct, typically the union of the operands' supports.
    """
    taken = {a.id for a in avoid if a.level == level}
    ident = 0
    while ident in taken:
        ident += 1
    return Atom(level, ident)


class Permutation:
    """A finite sort-respecting bijection on atoms, fixpoints removed."""

    __slots__ = ("_map",)

    def __init__(self, mapping: Optional[dict[Atom, Atom]] = None):
        mapping = {a: b for a, b in (mapping or {}).items() if a != b}
        for a, b in mapping.items():
            if a.level != b.level:
                raise LevelMismatch(f"permutation must respect levels: {a!r} -> {b!r}")
        if set(mapping) != set(mapping.values()):
            raise ValueError("mapping is not a bijection on its domain")
        self._map = mapping

    @classmethod
    def swap(cls, a: Atom, b: Atom) -> "Permutation":
        if a == b:
            return cls()
        return cls({a: b, b: a})

    @classmethod
    def identity(cls) -> "Permutation":
        return cls()

    def __call__(self, a: Atom) -> Atom:
        return self._map.get(a, a)

    def compose(self, other: "Permutation") -> "Permutation":
        """``self ∘ other``: apply ``other`` first."""
        dom = set(self._map) | set(other._map)
        return Permutation({a: self(other(a)) for a in dom})

    __matmul__ = compose

    def inverse(self) -> "Permutation":
        return Permutation({b: a for a, b in self._map.items()})

    @property
    def mapping(self) -> dict[Atom, Atom]:
        return dict(self._map)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._map == other._map

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        return f"Permutation({self._map!r})"


def permute(pi: Permutation, x):
    """Apply ``pi`` to any syntax value (surface or internal)."""
    return x.permute(pi)


def support(x) -> frozenset[Atom]:
    """Free atoms of a syntax value."""
    return x.free
