"""Finite G-sets.

A membership ``z ∈ x`` is modelled as a finite set carrying an action of the
automorphism group of ``z``.  A GSet stores the image of each generator of
its group; the action of an arbitrary element is obtained by closing the
generator images alongside the group, which is also how well-formedness is
decided.

Isomorphism and automorphism counting go through orbit types: an orbit is
classified by its size and the conjugacy class of a point stabilizer, and
two G-sets are isomorphic exactly when their orbit-type multisets agree.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Sequence

from .config import get_caps
from .errors import (CapExceeded, GroupMismatch, GroupTooLarge, IndexOutOfRange,
                     MalformedAction, NotASubgroup)
from .permgroup import (Perm, PermGroup, SubgroupHandle, are_conjugate_subgroups,
                        left_cosets, normalizer, subgroup_from_filter)

__all__ = [
    "GSet",
    "OrbitType",
    "well_formed",
    "gset_orbits",
    "gset_iso",
    "gset_aut_order",
    "gset_aut_group",
    "gset_disjoint_union",
    "gset_scale",
    "gset_restrict",
    "gset_induce",
    "regular_gset",
    "trivial_gset",
    "orbit_types_text",
]


class GSet:
    """``size`` points acted on by ``group``; ``action[i]`` is the image of generator ``i``."""

    def __init__(self, group: PermGroup, size: int, action: Sequence[Perm | Sequence[int]]):
        perms = []
        for a in action:
            if not isinstance(a, Perm):
                try:
                    a = Perm(a)
                except ValueError as exc:
                    raise MalformedAction(str(exc)) from None
            perms.append(a)
        if len(perms) != len(group.generators):
            raise MalformedAction(
                f"{len(perms)} generator images given for {len(group.generators)} generators")
        for a in perms:
            if a.degree != size:
                raise MalformedAction(f"generator image {a} is not a permutation of {size} points")
        self.group = group
        self.size = size
        self.action: tuple[Perm, ...] = tuple(perms)
        self._orbits = None
        self._orbit_index = None
        self._elem_action = None
        self._stabilizers: dict[int, SubgroupHandle] = {}
        self._classes = None
        self._lock = threading.Lock()

    def __repr__(self):
        return f"GSet(size={self.size}, group_order={self.group.order})"

    def orbits(self) -> list[tuple[int, ...]]:
        """Orbits as sorted point tuples, ordered by least point."""
        if self._orbits is None:
            index = [-1] * self.size
            orbits = []
            for start in range(self.size):
                if index[start] >= 0:
                    continue
                k = len(orbits)
                index[start] = k
                members = [start]
                stack = [start]
                while stack:
                    p = stack.pop()
                    for a in self.action:
                        q = a.images[p]
                        if index[q] < 0:
                            index[q] = k
                            members.append(q)
                            stack.append(q)
                orbits.append(tuple(sorted(members)))
            self._orbit_index = index
            self._orbits = orbits
        return self._orbits

    def orbit_index(self, point: int) -> int:
        self.orbits()
        return self._orbit_index[point]

    def element_action(self) -> dict[Perm, Perm]:
        """Map every group element to its permutation of the points.

        Raises MalformedAction when two words for the same group element
        induce different permutations.
        """
        if self._elem_action is None:
            with self._lock:
                if self._elem_action is None:
                    self._elem_action = self._close_action()
        return self._elem_action

    def _close_action(self):
        cap = get_caps().max_group_order
        ident = self.group.identity
        table = {ident: Perm.identity(self.size)}
        frontier = [ident]
        pairs = list(zip(self.group.generators, self.action))
        while frontier:
            nxt = []
            for e in frontier:
                ae = table[e]
                for g, a in pairs:
                    h = g * e
                    ah = a * ae
                    known = table.get(h)
                    if known is None:
                        table[h] = ah
                        nxt.append(h)
                        if len(table) > cap:
                            raise GroupTooLarge(f"group closure exceeds {cap} elements")
                    elif known != ah:
                        raise MalformedAction(
                            f"generator images do not define an action: element {h} "
                            f"induces both {known} and {ah}")
            frontier = nxt
        return table

    def act(self, g: Perm, point: int) -> int:
        return self.element_action()[g].images[point]

    def point_stabilizer(self, point: int) -> SubgroupHandle:
        if not 0 <= point < self.size:
            raise IndexOutOfRange(f"point {point} outside a {self.size}-point G-set")
        stab = self._stabilizers.get(point)
        if stab is None:
            size = len(self.orbits()[self.orbit_index(point)])
            G = self.group
            if size == 1:
                stab = SubgroupHandle(G, full=True)
            elif size == G.order:
                stab = SubgroupHandle(G, trivial=True)
            else:
                table = self.element_action()
                stab = subgroup_from_filter(
                    G, [g for g in G.elements if table[g].images[point] == point])
            self._stabilizers[point] = stab
        return stab

    def orbit_classes(self) -> list[tuple["OrbitType", list[int]]]:
        """Orbit types with the indices of the orbits realising each, in canonical order."""
        if self._classes is None:
            classes: list[tuple[int, SubgroupHandle, list[int]]] = []
            for k, orb in enumerate(self.orbits()):
                stab = self.point_stabilizer(orb[0])
                for size, rep, members in classes:
                    if size == len(orb) and are_conjugate_subgroups(self.group, rep, stab):
                        members.append(k)
                        break
                else:
                    classes.append((len(orb), stab, [k]))
            classes.sort(key=lambda c: (c[0], c[1].order, c[1].cycle_fingerprint(), c[2][0]))
            self._classes = [(OrbitType(size, rep, len(members)), members)
                             for size, rep, members in classes]
        return self._classes


@dataclass(frozen=True, eq=False)
class OrbitType:
    orbit_size: int
    stabilizer: SubgroupHandle
    multiplicity: int = 1

    @property
    def code(self) -> str:
        return f"o{self.orbit_size}/h{self.stabilizer.order}"

    @property
    def fingerprint_code(self) -> str:
        return f"{self.code}/c[{self.stabilizer.cycle_fingerprint()}]"


def orbit_types_text(S: GSet) -> str:
    """The orbit-type text form: one ``o<size>/h<order>`` per orbit, sorted, comma-joined."""
    return ",".join(sorted(ot.code for ot, members in S.orbit_classes() for _ in members))


def well_formed(S: GSet) -> bool:
    try:
        S.element_action()
    except MalformedAction:
        return False
    return True


def _require_well_formed(S):
    S.element_action()


def gset_orbits(S: GSet) -> list[OrbitType]:
    return [ot for ot, _ in S.orbit_classes()]


def _same_group(S, T):
    if S.group is not T.group:
        raise GroupMismatch("G-sets act through different group values")


def gset_iso(S: GSet, T: GSet) -> bool:
    _same_group(S, T)
    if S.size != T.size:
        return False
    if S is T:
        return True
    left = S.orbit_classes()
    right = list(T.orbit_classes())
    if len(left) != len(right):
        return False
    for ot, _ in left:
        for i, (other, _) in enumerate(right):
            if (ot.orbit_size == other.orbit_size and ot.multiplicity == other.multiplicity
                    and are_conjugate_subgroups(S.group, ot.stabilizer, other.stabilizer)):
                del right[i]
                break
        else:
            return False
    return True


def _weyl_order(G, H):
    return normalizer(G, H).order // H.order


def gset_aut_order(S: GSet) -> int:
    """Order of the group of equivariant permutations of ``S``.

    Each stabilizer class [H] occurring ``m`` times contributes
    ``|N(H)/H|**m * m!``.
    """
    total = 1
    for ot, _ in S.orbit_classes():
        total *= _weyl_order(S.group, ot.stabilizer) ** ot.multiplicity * factorial(ot.multiplicity)
    return total


def _equivariant_extension(S: GSet, base: int, target: int) -> dict[int, int]:
    """The equivariant map on the orbit of ``base`` sending ``base`` to ``target``."""
    mapping = {base: target}
    stack = [base]
    while stack:
        p = stack.pop()
        q = mapping[p]
        for a in S.action:
            p2 = a.images[p]
            if p2 not in mapping:
                mapping[p2] = a.images[q]
                stack.append(p2)
    return mapping


def _point_with_stabilizer(S: GSet, orb, H: SubgroupHandle) -> int:
    if H.full or H.trivial:
        return orb[0]
    for q in orb:
        if S.point_stabilizer(q).same_members(H):
            return q
    raise AssertionError("no point with the requested stabilizer in a conjugate orbit")


def gset_aut_group(S: GSet) -> PermGroup:
    """The equivariant automorphisms of ``S`` as a permutation group on its points.

    For each class of ``m`` isomorphic orbits: the Weyl group of the first
    orbit, realised as right translations, plus transpositions exchanging the
    first orbit with each of the others.  The order is known by construction.
    """
    G = S.group
    orbits = S.orbits()
    gens: list[Perm] = []
    for ot, members in S.orbit_classes():
        H = ot.stabilizer
        first = orbits[members[0]]
        base = _point_with_stabilizer(S, first, H)
        if H.trivial:
            targets = [a.images[base] for a in S.action]
        elif H.full:
            targets = []
        else:
            table = S.element_action()
            targets = [table[n].images[base] for n in normalizer(G, H).generators()]
        for t in targets:
            mapping = _equivariant_extension(S, base, t)
            images = list(range(S.size))
            for p, q in mapping.items():
                images[p] = q
            gens.append(Perm._raw(tuple(images)))
        for k in members[1:]:
            other = _point_with_stabilizer(S, orbits[k], H)
            mapping = _equivariant_extension(S, base, other)
            images = list(range(S.size))
            for p, q in mapping.items():
                images[p] = q
                images[q] = p
            gens.append(Perm._raw(tuple(images)))
    return PermGroup(S.size, gens, order=gset_aut_order(S))


def _check_points(size):
    cap = get_caps().max_points
    if size > cap:
        raise CapExceeded(f"G-set of {size} points exceeds the {cap}-point cap")


def gset_disjoint_union(S: GSet, T: GSet) -> GSet:
    _same_group(S, T)
    if T.size == 0:
        return S
    if S.size == 0:
        return T
    _check_points(S.size + T.size)
    shift = S.size
    action = [Perm._raw(a.images + tuple(shift + j for j in b.images))
              for a, b in zip(S.action, T.action)]
    return GSet(S.group, S.size + T.size, action)


def gset_scale(S: GSet, k: int) -> GSet:
    if k < 0:
        raise ValueError("scale factor must be non-negative")
    if k == 1:
        return S
    _check_points(S.size * k)
    n = S.size
    action = [Perm._raw(tuple(c * n + j for c in range(k) for j in a.images)) for a in S.action]
    return GSet(S.group, n * k, action)


def gset_restrict(S: GSet, keep: Iterable[int]) -> GSet:
    keep = set(keep)
    orbits = S.orbits()
    for k in keep:
        if not 0 <= k < len(orbits):
            raise IndexOutOfRange(f"orbit {k} does not exist ({len(orbits)} orbits)")
    if len(keep) == len(orbits):
        return S
    points = sorted(p for k in keep for p in orbits[k])
    relabel = {p: i for i, p in enumerate(points)}
    action = [Perm._raw(tuple(relabel[a.images[p]] for p in points)) for a in S.action]
    return GSet(S.group, len(points), action)


def gset_induce(G: PermGroup, H: SubgroupHandle, Y: GSet) -> GSet:
    """The balanced product ``G ×_H Y``: points are (coset, y) pairs.

    ``Y`` must act through ``H`` viewed as a group (``H.as_group()`` or any
    group with the same elements).
    """
    if H.parent is not G:
        raise NotASubgroup("subgroup handle belongs to a different group")
    if Y.group is not H.as_group() and Y.group.element_set != H.members:
        raise GroupMismatch("fiber G-set does not act through the given subgroup")
    table = Y.element_action()
    n = Y.size
    if H.full:
        return GSet(G, n, [table[g] for g in G.generators])
    reps, index = left_cosets(G, H)
    _check_points(len(reps) * n)
    action = []
    for s in G.generators:
        images = [0] * (len(reps) * n)
        for i, r in enumerate(reps):
            sr = s * r
            j = index[sr]
            h = reps[j].inverse() * sr
            hy = table[h].images
            for y in range(n):
                images[i * n + y] = j * n + hy[y]
        action.append(Perm._raw(tuple(images)))
    return GSet(G, len(reps) * n, action)


def regular_gset(G: PermGroup) -> GSet:
    """``G`` acting on itself by left multiplication, points in element order."""
    _check_points(G.order)
    els = G.elements
    index = {e: i for i, e in enumerate(els)}
    action = [Perm._raw(tuple(index[g * e] for e in els)) for g in G.generators]
    return GSet(G, len(els), action)


def trivial_gset(G: PermGroup, k: int) -> GSet:
    _check_points(k)
    ident = Perm.identity(k)
    return GSet(G, k, [ident] * len(G.generators))
