"""Level checking (leveled syntax) and level inference (unleveled syntax)."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Optional, Union

from .nominal import Atom, Bound
from .surface import All, And, Bot, Comp, In, Neg, Var, level_of

Position = tuple


@dataclass(frozen=True, order=True)
class Site:
    """A level variable: a free name, or the binder at a position."""

    kind: str  # "free" | "binder"
    position: Position = ()
    atom: Optional[Atom] = None
    label: str = field(default="", compare=False)

    @classmethod
    def free(cls, a: Atom) -> "Site":
        return cls("free", (), a, a.name)

    @classmethod
    def binder(cls, position: Position, hint: Optional[str]) -> "Site":
        return cls("binder", tuple(position), None, hint or "_")

    def to_json(self):
        if self.kind == "free":
            return {"free": self.label}
        return {"binder": self.label, "position": list(self.position)}


@dataclass(frozen=True)
class BadMembership:
    position: Position
    set_level: int
    elem_level: int

    def to_json(self):
        return {
            "kind": "BadMembership",
            "position": list(self.position),
            "set_level": self.set_level,
            "elem_level": self.elem_level,
            "required_set_level": self.elem_level + 1,
        }


@dataclass(frozen=True)
class Edge:
    """Constraint ``level(src) - level(dst) = offset`` from membership at ``position``."""

    src: Site
    dst: Site
    offset: int
    position: Position

    def reversed(self) -> "Edge":
        return Edge(self.dst, self.src, -self.offset, self.position)

    def to_json(self):
        return {
            "src": self.src.to_json(),
            "dst": self.dst.to_json(),
            "offset": self.offset,
            "position": list(self.position),
        }


@dataclass(frozen=True)
class Cycle:
    edges: tuple

    @property
    def net_offset(self) -> int:
        return sum(e.offset for e in self.edges)

    def replays(self) -> bool:
        """The edges chain into a closed loop whose offsets do not cancel."""
        es = self.edges
        closed = all(es[i].dst == es[(i + 1) % len(es)].src for i in range(len(es)))
        return bool(es) and closed and self.net_offset != 0

    def to_json(self):
        return {
            "kind": "Cycle",
            "net_offset": self.net_offset,
            "edges": [e.to_json() for e in self.edges],
        }


StratificationViolation = Union[BadMembership, Cycle]


# -- checking --------------------------------------------------------------

def check_stratified(x) -> list[BadMembership]:
    """Every membership violating the offset-one law; empty means stratified."""
    out: list[BadMembership] = []
    _check(x, (), out)
    return out


def is_stratified(x) -> bool:
    return not check_stratified(x)


def _check(x, pos, out):
    match x:
        case Bot():
            pass
        case Neg(b) | All(_, b) | Comp(_, b):
            if not isinstance(x, Neg) and x.level is None:
                raise ValueError("check_stratified needs leveled syntax")
            _check(b, pos + (0,), out)
        case And(l, r):
            _check(l, pos + (0,), out)
            _check(r, pos + (1,), out)
        case In(t, s):
            lt, ls = level_of(t), level_of(s)
            if lt is None or ls is None:
                raise ValueError("check_stratified needs leveled syntax")
            if ls != lt + 1:
                out.append(BadMembership(pos, ls, lt))
            _check(t, pos + (0,), out)
            _check(s, pos + (1,), out)
        case Var(n):
            if n.level is None:
                raise ValueError("check_stratified needs leveled syntax")


# -- inference -------------------------------------------------------------

class _OffsetUnionFind:
    def __init__(self):
        self.parent: dict[Site, Site] = {}
        self.diff: dict[Site, int] = {}  # level(x) - level(parent(x))

    def add(self, s: Site):
        if s not in self.parent:
            self.parent[s] = s
            self.diff[s] = 0

    def find(self, s: Site) -> tuple[Site, int]:
        p = self.parent[s]
        if p == s:
            return s, 0
        root, d = self.find(p)
        self.parent[s] = root
        self.diff[s] += d
        return root, self.diff[s]

    def union(self, u: Site, v: Site, offset: int) -> bool:
        """Impose ``level(u) - level(v) = offset``; False on contradiction."""
        ru, du = self.find(u)
        rv, dv = self.find(v)
        if ru == rv:
            return du - dv == offset
        self.parent[ru] = rv
        self.diff[ru] = offset + dv - du
        return True


@dataclass
class LevelSolution:
    assignment: dict
    shift_classes: list

    def level(self, site: Site) -> int:
        return self.assignment[site]

    def shifted(self, cls_index: int, k: int) -> "LevelSolution":
        cls = self.shift_classes[cls_index]
        return LevelSolution(
            {s: v + k if s in cls else v for s, v in self.assignment.items()},
            self.shift_classes,
        )

    def annotate(self, x):
        """``x`` with every free name and binder given its assigned level."""
        return _annotate(x, (), (), self.assignment)

    def to_json(self):
        return {
            "assignment": [
                {**s.to_json(), "level": v}
                for s, v in sorted(self.assignment.items(), key=lambda kv: _site_order(kv[0]))
            ],
            "shift_classes": [
                [s.to_json() for s in sorted(c, key=_site_order)] for c in self.shift_classes
            ],
        }


def _site_order(s: Site):
    return (s.kind, s.position, s.label, s.atom.id if s.atom else -1)


def _annotate(x, pos, scope, assignment):
    match x:
        case Bot():
            return x
        case Neg(b):
            return Neg(_annotate(b, pos + (0,), scope, assignment))
        case And(l, r):
            return And(
                _annotate(l, pos + (0,), scope, assignment),
                _annotate(r, pos + (1,), scope, assignment),
            )
        case All(_, b, h) | Comp(_, b, h):
            lv = assignment[Site.binder(pos, h)]
            body = _annotate(b, pos + (0,), scope + (lv,), assignment)
            return type(x)(lv, body, h)
        case In(t, s):
            return In(
                _annotate(t, pos + (0,), scope, assignment),
                _annotate(s, pos + (1,), scope, assignment),
            )
        case Var(n):
            if isinstance(n, Bound):
                return Var(Bound(n.index, scope[-1 - n.index]))
            return Var(n.with_level(assignment[Site.free(n)]))
    raise TypeError(x)


def constraints(x) -> tuple[list[Site], list[Edge]]:
    """Level variables of ``x`` and the membership constraints between them."""
    sites: list[Site] = []
    seen: set[Site] = set()
    edges: list[Edge] = []

    def site(s):
        if s not in seen:
            seen.add(s)
            sites.append(s)
        return s

    def term_level(t, scope, pos):
        # (site, offset) with level(t) = level(site) + offset
        match t:
            case Var(n) if isinstance(n, Bound):
                return scope[-1 - n.index], 0
            case Var(n):
                return site(Site.free(n)), 0
            case Comp(_, _, h):
                return site(Site.binder(pos, h)), 1
        raise TypeError(t)

    def walk(x, pos, scope):
        match x:
            case Bot():
                pass
            case Neg(b):
                walk(b, pos + (0,), scope)
            case And(l, r):
                walk(l, pos + (0,), scope)
                walk(r, pos + (1,), scope)
            case All(_, b, h) | Comp(_, b, h):
                s = site(Site.binder(pos, h))
                walk(b, pos + (0,), scope + (s,))
            case In(t, s):
                st, ot = term_level(t, scope, pos + (0,))
                ss, os_ = term_level(s, scope, pos + (1,))
                # level(s) = level(t) + 1
                edges.append(Edge(ss, st, ot + 1 - os_, pos))
                walk(t, pos + (0,), scope)
                walk(s, pos + (1,), scope)
            case Var(n):
                if isinstance(n, Atom):
                    site(Site.free(n))
            case _:
                raise TypeError(x)

    walk(x, (), ())
    return sites, edges


def infer_levels(x) -> LevelSolution | Cycle:
    sites, edges = constraints(x)
    uf = _OffsetUnionFind()
    for s in sites:
        uf.add(s)
    accepted: dict[Site, list[Edge]] = defaultdict(list)
    for e in edges:
        if not uf.union(e.src, e.dst, e.offset):
            return Cycle(tuple(_witness(accepted, e)))
        accepted[e.src].append(e)
        accepted[e.dst].append(e.reversed())

    classes: dict[Site, list[Site]] = defaultdict(list)
    raw: dict[Site, int] = {}
    for s in sites:
        root, d = uf.find(s)
        raw[s] = d
        classes[root].append(s)
    assignment: dict[Site, int] = {}
    shift_classes = []
    for members in classes.values():
        low = min(raw[s] for s in members)
        for s in members:
            assignment[s] = raw[s] - low
        shift_classes.append(frozenset(members))
    return LevelSolution(assignment, shift_classes)


def _witness(accepted, bad: Edge) -> list[Edge]:
    """Close ``bad`` (src -> dst) into a cycle via a path dst -> src of accepted edges."""
    start, goal = bad.dst, bad.src
    prev: dict[Site, Optional[Edge]] = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if u == goal:
            break
        for e in accepted[u]:
            if e.dst not in prev:
                prev[e.dst] = e
                queue.append(e.dst)
    path = []
    node = goal
    while prev[node] is not None:
        e = prev[node]
        path.append(e)
        node = e.src
    path.reverse()
    return [bad] + path


def erase_levels(x):
    """Forget every level annotation (leveled -> NF syntax)."""
    match x:
        case Bot():
            return x
        case Neg(b):
            return Neg(erase_levels(b))
        case And(l, r):
            return And(erase_levels(l), erase_levels(r))
        case All(_, b, h) | Comp(_, b, h):
            return type(x)(None, erase_levels(b), h)
        case In(t, s):
            return In(erase_levels(t), erase_levels(s))
        case Var(n):
            if isinstance(n, Bound):
                return Var(Bound(n.index, None))
            return Var(n.with_level(None))
    raise TypeError(x)
