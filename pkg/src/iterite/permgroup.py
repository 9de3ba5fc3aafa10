"""Finite permutation groups by explicit enumeration.

Groups are closed by breadth-first search over their generators and the
closure is capped (``Caps.max_group_order``).  No stabilizer chains: every
query (stabilizers, normalizers, conjugacy) is an exhaustive pass over the
enumerated elements, which keeps the results trivially auditable at the
sizes this engine is meant for.
"""

from __future__ import annotations

import re
import threading
from collections import Counter
from typing import Iterable, Sequence

from .config import get_caps
from .errors import DegreeMismatch, GroupTooLarge, IndexOutOfRange, NotASubgroup

__all__ = [
    "Perm",
    "PermGroup",
    "SubgroupHandle",
    "perm_compose",
    "group_from_generators",
    "orbit",
    "stabilizer",
    "normalizer",
    "are_conjugate_subgroups",
    "coset_action",
    "group_product",
    "subgroup",
    "subgroup_generated",
]


class Perm:
    """A bijection of ``{0, ..., degree-1}`` stored as its image tuple.

    ``p * q`` is composition with ``q`` applied first: ``(p*q)(i) == p(q(i))``.
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _raw(cls, images: tuple) -> "Perm":
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Perm":
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for a in cycle:
                if not 0 <= a < degree:
                    raise IndexOutOfRange(f"point {a} outside degree {degree}")
                if a in seen:
                    raise ValueError(f"point {a} appears twice in cycle notation")
                seen.add(a)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a] = b
        return cls._raw(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Perm":
        """Parse cycle notation such as ``"(0 1)(2 3)"``; ``"()"`` is the identity."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+\s*)*\))+", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        cycles = [tuple(int(a) for a in body.split())
                  for body in re.findall(r"\(([^()]*)\)", text)]
        cycles = [c for c in cycles if c]
        if degree is None:
            degree = 1 + max((a for c in cycles for a in c), default=-1)
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        if len(self.images) != len(other.images):
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")
        mine = self.images
        return Perm._raw(tuple([mine[j] for j in other.images]))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm._raw(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.images < other.images

    def __str__(self):
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"

    def __repr__(self):
        return f"Perm({str(self)!r}, degree={self.degree})"


def perm_compose(p: Perm, q: Perm) -> Perm:
    return p * q


def _check_degree(degree, gens):
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator {g!r} does not have degree {degree}")


def _closure(degree, gens, cap):
    ident = Perm.identity(degree)
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                h = g * e
                if h not in seen:
                    seen.add(h)
                    elements.append(h)
                    nxt.append(h)
                    if len(elements) > cap:
                        raise GroupTooLarge(
                            f"group closure exceeds {cap} elements (degree {degree})")
        frontier = nxt
    return elements


class PermGroup:
    """A permutation group given by generators.

    The element list is computed on first use, at most once, and starts with
    the identity.  ``order`` may be supplied when it is known by construction
    (products, equivariant automorphism groups); it is then checked against
    the enumeration if one ever happens.
    """

    def __init__(self, degree: int, generators: Iterable[Perm] = (), *, order: int | None = None):
        gens = []
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(f"generator {g!r} does not have degree {degree}")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._order = order if order is not None else (1 if not gens else None)
        self._elements: tuple[Perm, ...] | None = None
        self._element_set: frozenset | None = None
        self._fingerprint: str | None = None
        self._lock = threading.Lock()

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    @property
    def elements(self) -> tuple[Perm, ...]:
        if self._elements is None:
            with self._lock:
                if self._elements is None:
                    cap = get_caps().max_group_order
                    if self._order is not None and self._order > cap:
                        raise GroupTooLarge(f"group of order {self._order} exceeds cap {cap}")
                    els = _closure(self.degree, self.generators, cap)
                    if self._order is not None and self._order != len(els):
                        raise AssertionError(
                            f"declared order {self._order} but enumerated {len(els)}")
                    self._order = len(els)
                    self._element_set = frozenset(els)
                    self._elements = tuple(els)
        return self._elements

    @property
    def element_set(self) -> frozenset:
        self.elements
        return self._element_set

    @property
    def order(self) -> int:
        if self._order is None:
            self.elements
        return self._order

    def __contains__(self, p: Perm) -> bool:
        return p in self.element_set

    def __len__(self):
        return self.order

    def is_trivial(self) -> bool:
        return not self.generators

    def cycle_fingerprint(self) -> str:
        """Sorted cycle types of the non-identity elements, e.g. ``"2|2|3"``."""
        if self._fingerprint is None:
            self._fingerprint = _fingerprint(self.elements)
        return self._fingerprint

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"PermGroup(degree={self.degree}, generators=[{gens}])"


def _fingerprint(perms) -> str:
    types = sorted(".".join(map(str, ct)) for ct in (p.cycle_type() for p in perms) if ct)
    return "|".join(types)


def group_from_generators(degree: int, gens: Iterable[Perm] = (), cap: int | None = None) -> PermGroup:
    """Build a group and enumerate it eagerly, raising GroupTooLarge past ``cap``."""
    gens = list(gens)
    _check_degree(degree, gens)
    group = PermGroup(degree, gens)
    if cap is None:
        group.elements
    else:
        els = _closure(degree, group.generators, cap)
        group._order = len(els)
        group._element_set = frozenset(els)
        group._elements = tuple(els)
    return group


class SubgroupHandle:
    """An explicit subgroup of ``parent``, stored as its member set.

    The whole group and the trivial subgroup are flagged so that they never
    force an enumeration of the parent.
    """

    def __init__(self, parent: PermGroup, members: Iterable[Perm] | None = None, *,
                 full: bool = False, trivial: bool = False):
        self.parent = parent
        self.full = full
        self.trivial = trivial or (full and parent.is_trivial())
        if full:
            self._members = None
        elif self.trivial:
            self._members = frozenset([parent.identity])
        else:
            self._members = frozenset(members)
        self._group: PermGroup | None = None
        self._fingerprint: str | None = None

    @property
    def members(self) -> frozenset:
        if self._members is None:
            self._members = self.parent.element_set
        return self._members

    @property
    def order(self) -> int:
        if self.full:
            return self.parent.order
        if self.trivial:
            return 1
        return len(self._members)

    def __contains__(self, p):
        if self.full:
            return p in self.parent
        return p in self.members

    def generators(self) -> tuple[Perm, ...]:
        """A small generating set, chosen greedily from the members."""
        return self.as_group().generators

    def as_group(self) -> PermGroup:
        """The subgroup as a standalone group on the parent's points (memoized)."""
        if self._group is None:
            if self.full:
                self._group = self.parent
            elif self.trivial:
                self._group = PermGroup(self.parent.degree)
            else:
                gens: list[Perm] = []
                span = {self.parent.identity}
                for p in sorted(self.members):
                    if p not in span:
                        gens.append(p)
                        span = set(_closure(self.parent.degree, gens, len(self.members)))
                group = PermGroup(self.parent.degree, gens, order=len(span))
                group._elements = tuple(sorted(span, key=lambda q: (not q.is_identity(), q.images)))
                group._element_set = frozenset(span)
                self._group = group
        return self._group

    def cycle_fingerprint(self) -> str:
        if self._fingerprint is None:
            if self.trivial:
                self._fingerprint = ""
            elif self.full:
                self._fingerprint = self.parent.cycle_fingerprint()
            else:
                self._fingerprint = _fingerprint(self.members)
        return self._fingerprint

    def conjugate(self, g: Perm) -> frozenset:
        ginv = g.inverse()
        return frozenset(g * h * ginv for h in self.members)

    def same_members(self, other: "SubgroupHandle") -> bool:
        if self.order != other.order:
            return False
        if self.full or other.full or self.trivial or other.trivial:
            return True
        return self.members == other.members

    def __eq__(self, other):
        return (isinstance(other, SubgroupHandle) and self.parent is other.parent
                and self.same_members(other))

    def __hash__(self):
        return hash((id(self.parent), self.order))

    def __repr__(self):
        return f"SubgroupHandle(order={self.order}, parent_order={self.parent.order})"


def subgroup(G: PermGroup, members: Iterable[Perm]) -> SubgroupHandle:
    """Wrap an explicit member set, checking that it is a subgroup of ``G``."""
    members = frozenset(members)
    if G.identity not in members:
        raise NotASubgroup("member set lacks the identity")
    for p in members:
        if p not in G:
            raise NotASubgroup(f"{p} is not an element of the group")
        if p.inverse() not in members:
            raise NotASubgroup(f"member set not closed under inverse at {p}")
        for q in members:
            if p * q not in members:
                raise NotASubgroup(f"member set not closed under composition at {p}, {q}")
    if len(members) == 1:
        return SubgroupHandle(G, trivial=True)
    if len(members) == G.order:
        return SubgroupHandle(G, full=True)
    return SubgroupHandle(G, members)


def subgroup_generated(G: PermGroup, gens: Iterable[Perm]) -> SubgroupHandle:
    gens = list(gens)
    _check_degree(G.degree, gens)
    for g in gens:
        if g not in G:
            raise NotASubgroup(f"{g} is not an element of the group")
    return subgroup(G, _closure(G.degree, [g for g in gens if not g.is_identity()],
                                get_caps().max_group_order))


def _check_point(G, point):
    if not 0 <= point < G.degree:
        raise IndexOutOfRange(f"point {point} outside degree {G.degree}")


def _check_sub(G, H):
    if H.parent is not G:
        raise NotASubgroup("subgroup handle belongs to a different group")


def orbit(G: PermGroup, point: int) -> set[int]:
    _check_point(G, point)
    seen = {point}
    stack = [point]
    while stack:
        p = stack.pop()
        for g in G.generators:
            q = g.images[p]
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def stabilizer(G: PermGroup, point: int) -> SubgroupHandle:
    _check_point(G, point)
    size = len(orbit(G, point))
    if size == 1:
        return SubgroupHandle(G, full=True)
    if size == G.order:
        return SubgroupHandle(G, trivial=True)
    return SubgroupHandle(G, [g for g in G.elements if g.images[point] == point])


def normalizer(G: PermGroup, H: SubgroupHandle) -> SubgroupHandle:
    _check_sub(G, H)
    if H.full or H.trivial:
        return SubgroupHandle(G, full=True)
    members = H.members
    return subgroup_from_filter(G, [g for g in G.elements if H.conjugate(g) == members])


def subgroup_from_filter(G, members):
    if len(members) == G.order:
        return SubgroupHandle(G, full=True)
    if len(members) == 1:
        return SubgroupHandle(G, trivial=True)
    return SubgroupHandle(G, members)


def are_conjugate_subgroups(G: PermGroup, H1: SubgroupHandle, H2: SubgroupHandle) -> bool:
    _check_sub(G, H1)
    _check_sub(G, H2)
    if H1.order != H2.order:
        return False
    if H1.full or H1.trivial or H2.full or H2.trivial:
        return True
    target = H2.members
    if H1.members == target:
        return True
    if Counter(p.cycle_type() for p in H1.members) != Counter(p.cycle_type() for p in target):
        return False
    return any(H1.conjugate(g) == target for g in G.elements)


def left_cosets(G: PermGroup, H: SubgroupHandle) -> tuple[list[Perm], dict[Perm, int]]:
    """Coset representatives (the H-coset first) and an element -> coset index map."""
    _check_sub(G, H)
    reps: list[Perm] = []
    index: dict[Perm, int] = {}
    hs = list(H.members)
    for g in G.elements:
        if g in index:
            continue
        k = len(reps)
        reps.append(g)
        for h in hs:
            index[g * h] = k
    return reps, index


def coset_action(G: PermGroup, H: SubgroupHandle):
    """``G`` acting on its left cosets of ``H`` by left translation; point 0 is ``H``."""
    from .gset import GSet

    _check_sub(G, H)
    if H.full:
        return GSet(G, 1, [Perm.identity(1)] * len(G.generators))
    reps, index = left_cosets(G, H)
    action = [Perm._raw(tuple(index[g * r] for r in reps)) for g in G.generators]
    return GSet(G, len(reps), action)


def group_product(parts: Sequence[PermGroup]) -> PermGroup:
    """Direct product acting on the concatenation of the parts' point sets."""
    degree = sum(p.degree for p in parts)
    order = 1
    for p in parts:
        order *= p.order
    cap = get_caps().max_group_order
    if order > cap:
        raise GroupTooLarge(f"product group of order {order} exceeds cap {cap}")
    gens = []
    offset = 0
    for part in parts:
        for g in part.generators:
            images = list(range(degree))
            for i, j in enumerate(g.images):
                images[offset + i] = offset + j
            gens.append(Perm._raw(tuple(images)))
        offset += part.degree
    return PermGroup(degree, gens, order=order)
