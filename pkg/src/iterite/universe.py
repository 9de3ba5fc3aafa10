"""Hereditarily finite iterative multisets.

An element is a finite list of entries ``(child, membership)``: ``child`` is
an (interned) element and ``membership`` is the finite set ``child ∈ x``
carrying the action of ``Aut(child)``.  Level-0 sets are the elements whose
memberships are single fixed points.

Every element is interned: construction canonicalises the entry list,
buckets it by its canonical code and resolves collisions with the full
extensional test, so equal elements are the same Python object.  Children
are always interned, which lets a parent's memberships act through the
single group value ``child.aut``.
"""

from __future__ import annotations

import itertools
import threading
from functools import cached_property
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .config import get_caps
from .errors import (CapExceeded, GroupMismatch, IndexOutOfRange, MissingAssignment,
                     NonDiscreteEl)
from .gset import (GSet, OrbitType, gset_aut_group, gset_aut_order, gset_disjoint_union,
                   gset_induce, gset_iso, gset_restrict, gset_scale, regular_gset,
                   trivial_gset)
from .permgroup import (Perm, PermGroup, SubgroupHandle, coset_action, group_product,
                        subgroup_generated)

__all__ = [
    "MSet", "Entry", "ElOrbit", "OrbitPredicate",
    "empty", "tup", "union", "binary_union", "separate0", "separate1",
    "classifying_space", "pair", "unpair", "replace", "graph", "expo", "is_operation",
    "vn", "fuzzy_nat", "eq", "id_count", "aut", "mult", "membership", "rank",
    "is_accessible", "canon_code", "el_orbits", "is_discrete_el", "to_json",
    "intern_count",
]


@dataclass(frozen=True, eq=False)
class Entry:
    child: "MSet"
    membership: GSet

    @cached_property
    def code(self) -> str:
        orbits = sorted(ot.fingerprint_code
                        for ot, members in self.membership.orbit_classes() for _ in members)
        return f"{self.child.code}:{','.join(orbits)}"


@dataclass(frozen=True, eq=False)
class ElOrbit:
    """One component of ``El x``: an orbit of one entry's membership."""

    index: int
    entry_index: int
    orbit_index: int
    child: "MSet"
    points: tuple[int, ...]
    stabilizer: SubgroupHandle

    @property
    def is_free(self) -> bool:
        return self.stabilizer.trivial


class MSet:
    """An interned element.  Build values with the module constructors, not directly."""

    def __init__(self, entries: tuple[Entry, ...]):
        self.entries = entries
        self.rank = 1 + max((e.child.rank for e in entries), default=-1)
        offsets = []
        total = 0
        for e in entries:
            offsets.append(total)
            total += e.membership.size
        self.offsets = tuple(offsets)
        self.points = total
        caps = get_caps()
        if total > caps.max_points:
            raise CapExceeded(f"element with {total} witness points exceeds cap {caps.max_points}")
        if self.rank > caps.max_depth:
            raise CapExceeded(f"element of rank {self.rank} exceeds depth cap {caps.max_depth}")
        self.code = "(" + ";".join(e.code for e in entries) + ")"
        self.serial = -1
        self._aut: PermGroup | None = None
        self._aut_order: int | None = None
        self._el_orbits = None
        self._regular: GSet | None = None
        self._lock = threading.Lock()

    @property
    def aut_order(self) -> int:
        if self._aut_order is None:
            n = 1
            for e in self.entries:
                n *= gset_aut_order(e.membership)
            self._aut_order = n
        return self._aut_order

    @property
    def aut(self) -> PermGroup:
        """Self-identifications as a permutation group on the witness points."""
        if self._aut is None:
            with self._lock:
                if self._aut is None:
                    self._aut = group_product([gset_aut_group(e.membership) for e in self.entries])
        return self._aut

    def regular(self) -> GSet:
        """``Aut(x)`` acting on itself; the fiber of one level-1 occurrence of ``x``."""
        if self._regular is None:
            self._regular = regular_gset(self.aut)
        return self._regular

    def __repr__(self):
        return f"MSet({self.code})"

    def __str__(self):
        return self.code


def _same_structure(x: MSet, y: MSet) -> bool:
    if len(x.entries) != len(y.entries):
        return False
    for ex, ey in zip(x.entries, y.entries):
        if ex.child is not ey.child or not gset_iso(ex.membership, ey.membership):
            return False
    return True


class _InternStore:
    def __init__(self):
        self._buckets: dict[str, list[MSet]] = {}
        self._lock = threading.RLock()
        self._serial = itertools.count()

    def intern(self, candidate: MSet) -> MSet:
        with self._lock:
            bucket = self._buckets.setdefault(candidate.code, [])
            for known in bucket:
                if _same_structure(known, candidate):
                    return known
            candidate.serial = next(self._serial)
            bucket.append(candidate)
            return candidate

    def __len__(self):
        return sum(len(b) for b in self._buckets.values())


_STORE = _InternStore()


def intern_count() -> int:
    return len(_STORE)


def _assemble(pairs: Iterable[tuple[MSet, GSet]]) -> MSet:
    merged: dict[int, list] = {}
    for child, S in pairs:
        if S.group is not child.aut:
            raise GroupMismatch("membership must act through the child's automorphism group")
        if S.size == 0:
            continue
        slot = merged.get(id(child))
        if slot is None:
            merged[id(child)] = [child, S]
        else:
            slot[1] = gset_disjoint_union(slot[1], S)
    entries = [Entry(c, S) for c, S in merged.values()]
    entries.sort(key=lambda e: (e.code, e.child.serial))
    return _STORE.intern(MSet(tuple(entries)))


def _check_level(level):
    if level not in (0, 1):
        raise ValueError(f"truncation level must be 0 or 1, not {level!r}")


# -- constructors ------------------------------------------------------------

def empty() -> MSet:
    return _assemble(())


def tup(level: int, items: Sequence[MSet]) -> MSet:
    """Unordered tupling ``{items}_level``.

    Level 1 keeps repetitions: each occurrence of a class contributes one
    regular orbit of its automorphism group.  Level 0 keeps one fixed point
    per distinct class.
    """
    _check_level(level)
    counts: dict[int, list] = {}
    for item in items:
        slot = counts.setdefault(id(item), [item, 0])
        slot[1] += 1
    pairs = []
    cap = get_caps().max_points
    for child, m in counts.values():
        if level == 1:
            if child.aut_order * m > cap:
                raise CapExceeded(
                    f"{m} regular orbits of a group of order {child.aut_order} exceed "
                    f"the {cap}-point cap")
            pairs.append((child, gset_scale(child.regular(), m)))
        else:
            pairs.append((child, trivial_gset(child.aut, 1)))
    return _assemble(pairs)


def _union_fiber(c: MSet, S: GSet, k: int) -> GSet:
    """``(S × T) / Aut(c)`` as an ``Aut(d)``-set, where ``T`` is ``c``'s ``k``-th membership.

    This is the d-part of the level-1 union contributed by one entry
    ``(c, S)`` of the outer element.
    """
    T = c.entries[k].membership
    off = c.offsets[k]
    nT = T.size
    n = S.size * nT
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for s_perm, k_perm in zip(S.action, c.aut.generators):
        block = [k_perm.images[off + t] - off for t in range(nT)]
        simg = s_perm.images
        for s in range(S.size):
            s2 = simg[s] * nT
            for t in range(nT):
                a, b = find(s * nT + t), find(s2 + block[t])
                if a != b:
                    parent[a] = b
    label: dict[int, int] = {}
    orbit_of = [0] * n
    reps = []
    for i in range(n):
        r = find(i)
        if r not in label:
            label[r] = len(reps)
            reps.append(i)
        orbit_of[i] = label[r]
    action = []
    for t_perm in T.action:
        timg = t_perm.images
        action.append(Perm._raw(tuple(
            orbit_of[(i // nT) * nT + timg[i % nT]] for i in reps)))
    return GSet(T.group, len(reps), action)


def union(level: int, x: MSet) -> MSet:
    """``⋃_level x``.

    Level 0 has one fixed point per grandchild class.  Level 1 sums, over
    the entries ``(c, S)`` of ``x``, the orbit sets ``(S × T)/Aut(c)`` of each
    membership ``T`` of ``c``; when ``S`` is free this is ``|S/Aut(c)|`` copies
    of ``T``.
    """
    _check_level(level)
    pairs = []
    if level == 0:
        seen = set()
        for e in x.entries:
            for f in e.child.entries:
                if id(f.child) not in seen:
                    seen.add(id(f.child))
                    pairs.append((f.child, trivial_gset(f.child.aut, 1)))
        return _assemble(pairs)
    for e in x.entries:
        for k, f in enumerate(e.child.entries):
            pairs.append((f.child, _union_fiber(e.child, e.membership, k)))
    return _assemble(pairs)


def binary_union(level: int, x: MSet, y: MSet) -> MSet:
    return union(level, tup(level, [x, y]))


@dataclass(frozen=True)
class OrbitPredicate:
    """Selected orbits per entry index (an El-invariant predicate on ``x``)."""

    keep: Mapping[int, frozenset] = field(default_factory=dict)

    @classmethod
    def from_el_indices(cls, x: MSet, indices: Iterable[int]) -> "OrbitPredicate":
        orbits = el_orbits(x)
        keep: dict[int, set] = {}
        for i in indices:
            if not 0 <= i < len(orbits):
                raise IndexOutOfRange(f"El component {i} does not exist ({len(orbits)} components)")
            o = orbits[i]
            keep.setdefault(o.entry_index, set()).add(o.orbit_index)
        return cls({k: frozenset(v) for k, v in keep.items()})


def separate0(x: MSet, P: OrbitPredicate | Iterable[int]) -> MSet:
    """Keep only the selected membership orbits (flat El indices or an OrbitPredicate)."""
    if not isinstance(P, OrbitPredicate):
        P = OrbitPredicate.from_el_indices(x, P)
    for k in P.keep:
        if not 0 <= k < len(x.entries):
            raise IndexOutOfRange(f"entry {k} does not exist")
    pairs = [(e.child, gset_restrict(e.membership, P.keep.get(k, ())))
             for k, e in enumerate(x.entries)]
    return _assemble(pairs)


def separate1(x: MSet, family: Mapping[int, GSet]) -> MSet:
    """Replace each selected El component ``G/H`` by ``G ×_H Y`` for its fiber set ``Y``.

    ``family`` maps flat El indices to G-sets acting through the component's
    stabilizer (``el_orbits(x)[i].stabilizer.as_group()``); components not in
    ``family`` are dropped.
    """
    orbits = el_orbits(x)
    pairs = []
    for i, Y in family.items():
        if not 0 <= i < len(orbits):
            raise IndexOutOfRange(f"El component {i} does not exist ({len(orbits)} components)")
        o = orbits[i]
        pairs.append((o.child, gset_induce(o.child.aut, o.stabilizer, Y)))
    return _assemble(pairs)


def classifying_space(gens: Iterable[Perm | str], degree: int | None = None) -> MSet:
    """``s_G = {c}`` with ``c = {∅,…,∅}_1`` (``degree`` copies) and membership ``Aut(c)/G``.

    ``gens`` generate ``G`` as permutations of ``degree`` points; supply the
    regular action for an abstract group.
    """
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("degree is required when no generators are given")
        degree = max(Perm.parse(g).degree if isinstance(g, str) else g.degree for g in gens)
    gens = [Perm.parse(g, degree) if isinstance(g, str) else g for g in gens]
    c = tup(1, [empty()] * degree)
    K = c.aut
    H = subgroup_generated(K, gens)
    return _assemble([(c, coset_action(K, H))])


def pair(x: MSet, y: MSet) -> MSet:
    """Wiener pair ``{{{x}_1, ∅}_1, {{y}_1}_1}_1``."""
    e = empty()
    return tup(1, [tup(1, [tup(1, [x]), e]), tup(1, [tup(1, [y])])])


def _sole_child(x: MSet):
    return x.entries[0].child if len(x.entries) == 1 else None


def unpair(p: MSet) -> tuple[MSet, MSet] | None:
    if len(p.entries) != 2:
        return None
    left = right = None
    for e in p.entries:
        c = e.child
        if len(c.entries) == 2 and any(not f.child.entries for f in c.entries):
            single = next(f.child for f in c.entries if f.child.entries)
            left = _sole_child(single)
        elif len(c.entries) == 1:
            inner = _sole_child(c)
            right = _sole_child(inner) if inner is not None else None
    if left is None or right is None:
        return None
    try:
        rebuilt = pair(left, right)
    except CapExceeded:
        return None
    return (left, right) if rebuilt is p else None


def el_orbits(x: MSet) -> list[ElOrbit]:
    """Components of ``El x``, entry by entry, orbits in least-point order."""
    if x._el_orbits is None:
        out = []
        for k, e in enumerate(x.entries):
            S = e.membership
            for j, orb in enumerate(S.orbits()):
                out.append(ElOrbit(len(out), k, j, e.child, orb, S.point_stabilizer(orb[0])))
        x._el_orbits = out
    return x._el_orbits


def is_discrete_el(x: MSet) -> bool:
    return all(o.is_free for o in el_orbits(x))


def _require_discrete(*xs):
    for x in xs:
        if not is_discrete_el(x):
            raise NonDiscreteEl(f"El of {x.code} has components with non-trivial automorphisms")


def replace(level: int, a: MSet,
            f: Callable[[ElOrbit], MSet] | Mapping[int, MSet] | Sequence[MSet]) -> MSet:
    """``{f(o) | o ∈ El a}_level`` for discrete ``El a``.

    ``f`` is a function of the component, or a mapping/sequence indexed by
    flat El index.
    """
    _check_level(level)
    _require_discrete(a)
    items = []
    for o in el_orbits(a):
        if callable(f):
            items.append(f(o))
            continue
        try:
            items.append(f[o.index])
        except (KeyError, IndexError):
            raise MissingAssignment(f"no value assigned to El component {o.index}") from None
    return tup(level, items)


def graph(a: MSet, b: MSet, phi: Sequence[int]) -> MSet:
    """The graph ``{⟨o, φ(o)⟩ | o ∈ El a}_1`` of a map between El components."""
    A, B = el_orbits(a), el_orbits(b)
    if len(phi) != len(A):
        raise MissingAssignment(f"map assigns {len(phi)} of {len(A)} components")
    return tup(1, [pair(A[i].child, B[j].child) for i, j in enumerate(phi)])


def expo(a: MSet, b: MSet) -> MSet:
    """The element of all graphs of maps ``El a → El b``."""
    _require_discrete(a, b)
    A, B = el_orbits(a), el_orbits(b)
    count = len(B) ** len(A)
    cap = get_caps().max_points
    if count > cap:
        raise CapExceeded(f"{count} functions exceed the {cap}-point cap")
    return tup(1, [graph(a, b, phi) for phi in itertools.product(range(len(B)), repeat=len(A))])


def is_operation(a: MSet, b: MSet, f: MSet) -> tuple[int, ...] | None:
    """Recover ``φ`` with ``graph(a, b, φ) == f``, or None when ``f`` is not a graph.

    Components of ``a`` with equal children are interchangeable in a graph;
    they receive their targets in sorted order.
    """
    _require_discrete(a, b)
    A, B = el_orbits(a), el_orbits(b)
    by_child_a: dict[int, list[int]] = {}
    for o in A:
        by_child_a.setdefault(id(o.child), []).append(o.index)
    first_b: dict[int, int] = {}
    for o in B:
        first_b.setdefault(id(o.child), o.index)
    targets: dict[int, list[int]] = {}
    for o in el_orbits(f):
        if not o.is_free:
            return None
        parts = unpair(o.child)
        if parts is None:
            return None
        x, y = parts
        if id(x) not in by_child_a or id(y) not in first_b:
            return None
        targets.setdefault(id(x), []).append(first_b[id(y)])
    phi = [0] * len(A)
    for key, sources in by_child_a.items():
        got = sorted(targets.get(key, []))
        if len(got) != len(sources):
            return None
        for i, j in zip(sources, got):
            phi[i] = j
    phi = tuple(phi)
    return phi if graph(a, b, phi) is f else None


def vn(k: int) -> MSet:
    """von Neumann numeral: ``f 0 = ∅``, ``f (k+1) = f k ∪_0 {f k}_0``."""
    if k > get_caps().max_depth:
        raise CapExceeded(f"vn {k} exceeds depth cap {get_caps().max_depth}")
    x = empty()
    for _ in range(k):
        x = binary_union(0, x, tup(0, [x]))
    return x


def fuzzy_nat(k: int) -> MSet:
    """``f 0 = ∅``, ``f (k+1) = f k ∪_1 {∅}_0``, i.e. ``{∅,…,∅}_1`` with ``k`` copies."""
    if k > get_caps().max_points:
        raise CapExceeded(f"fuzzy {k} exceeds the {get_caps().max_points}-point cap")
    x = empty()
    point = tup(0, [x])
    for _ in range(k):
        x = binary_union(1, x, point)
    return x


# -- queries -----------------------------------------------------------------

def eq(x: MSet, y: MSet) -> bool:
    return x is y or _same_structure(x, y)


def id_count(x: MSet, y: MSet) -> int:
    """Number of identifications ``x = y``: 0, or ``|Aut(x)|``."""
    return x.aut_order if eq(x, y) else 0


def aut(x: MSet) -> PermGroup:
    return x.aut


def _find_entry(z, x):
    for e in x.entries:
        if e.child is z or eq(e.child, z):
            return e
    return None


def mult(z: MSet, x: MSet) -> int:
    e = _find_entry(z, x)
    return 0 if e is None else e.membership.size


def membership(z: MSet, x: MSet) -> list[OrbitType]:
    e = _find_entry(z, x)
    return [] if e is None else [ot for ot, _ in e.membership.orbit_classes()]


def rank(x: MSet) -> int:
    return x.rank


def is_accessible(x: MSet) -> bool:
    """Structural recursion: every member is accessible and of smaller rank."""
    return all(e.child.rank < x.rank and is_accessible(e.child) for e in x.entries)


def canon_code(x: MSet) -> str:
    return x.code


def to_json(x: MSet) -> list[dict]:
    return [
        {
            "child_code": e.child.code,
            "orbits": [{"size": ot.orbit_size, "stab_order": ot.stabilizer.order,
                        "mult": ot.multiplicity}
                       for ot, _ in e.membership.orbit_classes()],
        }
        for e in x.entries
    ]
