"""Brute-force semantics of raw terms, independent of the engine.

A term normalises to a tuple of occurrences ``(child, kind)``: a ``FREE``
occurrence is a regular orbit of the child's automorphisms (one level-1
repetition), a ``FIXED`` one is a single fixed point.  Identifications are
counted as permanents over occurrences, memberships by direct summation.
Nothing here touches G-sets or group enumeration.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .config import get_caps
from .errors import CapExceeded
from .terms import Empty, FuzzyNat, Pair, Tuple, Union, Vn

__all__ = ["FREE", "FIXED", "normalize", "oracle_id_count", "oracle_eq", "oracle_mult",
           "permanent", "count_equivariant_bijections"]

FREE = "free"
FIXED = "fixed"

MAX_OCCURRENCES = 16


def permanent(matrix) -> int:
    """Permanent by dynamic programming over column subsets."""
    n = len(matrix)
    if n == 0:
        return 1
    if n > MAX_OCCURRENCES:
        raise CapExceeded(f"{n}x{n} permanent is beyond the oracle's size limit")
    ways = {0: 1}
    for row in matrix:
        nxt: dict[int, int] = {}
        for mask, w in ways.items():
            for j, v in enumerate(row):
                if v and not mask >> j & 1:
                    key = mask | 1 << j
                    nxt[key] = nxt.get(key, 0) + w * v
        ways = nxt
        if not ways:
            return 0
    return sum(ways.values())


def _dedupe(occurrences):
    out = []
    for node, kind in occurrences:
        if not any(_node_eq(node, other) for other, _ in out):
            out.append((node, kind))
    return tuple(out)


def _fixed(nodes):
    return _dedupe((n, FIXED) for n in nodes)


@lru_cache(maxsize=None)
def normalize(term) -> tuple:
    """Occurrence-list normal form of a raw term."""
    if isinstance(term, Empty):
        return ()
    if isinstance(term, Tuple):
        nodes = [normalize(i) for i in term.items]
        if term.level == 1:
            return tuple((n, FREE) for n in nodes)
        if term.level == 0:
            return _fixed(nodes)
        raise ValueError(f"bad level {term.level}")
    if isinstance(term, Pair):
        e = Empty()
        return normalize(Tuple(1, (Tuple(1, (Tuple(1, (term.left,)), e)),
                                   Tuple(1, (Tuple(1, (term.right,)),)))))
    if isinstance(term, Union):
        return _union(term.level, normalize(term.arg))
    if isinstance(term, Vn):
        x = Empty()
        for _ in range(term.k):
            x = Union(0, Tuple(0, (x, Tuple(0, (x,)))))
        return normalize(x)
    if isinstance(term, FuzzyNat):
        x = Empty()
        for _ in range(term.k):
            x = Union(1, Tuple(1, (x, Tuple(0, (Empty(),)))))
        return normalize(x)
    raise TypeError(f"not a raw term: {term!r}")


def _union(level, node):
    if level == 0:
        return _fixed(d for c, _ in node for d, _ in c)
    out = []
    for c, kind in node:
        if kind == FREE:
            # (Aut c × T) / Aut c is T itself
            out.extend(c)
            continue
        # a fixed point: T / Aut(c), one point per isomorphism class of orbits
        classes: list[tuple[tuple, set]] = []
        for d, k in c:
            for rep, kinds in classes:
                if _node_eq(rep, d):
                    kinds.add(k)
                    break
            else:
                classes.append((d, {k}))
        for d, kinds in classes:
            distinct = len(kinds) if _id_count(d, d) > 1 else 1
            out.extend([(d, FIXED)] * distinct)
    if len(out) > get_caps().max_points:
        raise CapExceeded("oracle term too wide")
    return tuple(out)


def _orbit_isos(a, ka, b, kb) -> int:
    """Equivariant bijections between one orbit of ``a`` and one of ``b`` over a common class."""
    if ka == FREE and kb == FREE:
        return _id_count(a, b)
    if not _node_eq(a, b):
        return 0
    if ka == kb:
        return 1
    return 1 if _id_count(a, a) == 1 else 0


@lru_cache(maxsize=None)
def _id_count(s: tuple, t: tuple) -> int:
    if not s and not t:
        return 1
    if len(s) != len(t):
        return 0
    matrix = [[_orbit_isos(a, ka, b, kb) for b, kb in t] for a, ka in s]
    return permanent(matrix)


def _node_eq(s, t) -> bool:
    return _id_count(s, t) > 0


def oracle_id_count(s, t) -> int:
    return _id_count(normalize(s), normalize(t))


def oracle_eq(s, t) -> bool:
    return oracle_id_count(s, t) > 0


def oracle_mult(z, x) -> int:
    zn = normalize(z)
    total = 0
    for c, kind in normalize(x):
        if kind == FREE:
            total += _id_count(c, zn)
        elif _node_eq(c, zn):
            total += 1
    return total


def count_equivariant_bijections(size, generator_images, blocks=None) -> int:
    """Count permutations of ``range(size)`` commuting with every generator image.

    ``blocks`` optionally restricts to permutations preserving each block.
    Exhaustive; meant for at most 8 points.
    """
    if size > 8:
        raise CapExceeded("brute-force automorphism count is limited to 8 points")
    block_of = [0] * size
    for b, block in enumerate(blocks or [range(size)]):
        for p in block:
            block_of[p] = b
    count = 0
    for perm in itertools.permutations(range(size)):
        if any(block_of[perm[i]] != block_of[i] for i in range(size)):
            continue
        if all(perm[g[i]] == g[perm[i]] for g in generator_images for i in range(size)):
            count += 1
    return count
