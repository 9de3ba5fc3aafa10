"""Construction terms shared by the parser, the evaluator and the oracle.

The oracle understands the raw fragment (Empty, Tuple, Pair, Union, Vn,
FuzzyNat); the language adds identifiers, classifying spaces, separation,
replacement and exponentiation.  ``span`` is the (line, column) of the
source text and takes no part in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union as _U

Cycles = tuple[tuple[int, ...], ...]


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Empty:
    span: tuple | None = _span()


@dataclass(frozen=True)
class Tuple:
    level: int
    items: tuple
    span: tuple | None = _span()


@dataclass(frozen=True)
class Pair:
    left: object
    right: object
    span: tuple | None = _span()


@dataclass(frozen=True)
class Union:
    level: int
    arg: object
    span: tuple | None = _span()


@dataclass(frozen=True)
class Vn:
    k: int
    span: tuple | None = _span()


@dataclass(frozen=True)
class FuzzyNat:
    k: int
    span: tuple | None = _span()


@dataclass(frozen=True)
class Ident:
    name: str
    span: tuple | None = _span()


@dataclass(frozen=True)
class Bg:
    """Classifying space of the group generated by ``gens`` (cycle form) on ``degree`` points."""

    degree: int
    gens: tuple[Cycles, ...]
    span: tuple | None = _span()


@dataclass(frozen=True)
class Expo:
    base: object
    target: object
    span: tuple | None = _span()


@dataclass(frozen=True)
class Sep0:
    arg: object
    keep: tuple[int, ...]
    span: tuple | None = _span()


@dataclass(frozen=True)
class Triv:
    count: int


@dataclass(frozen=True)
class Reg:
    pass


@dataclass(frozen=True)
class Coset:
    gens: tuple[Cycles, ...]


FiberSpec = _U[Triv, Reg, Coset]


@dataclass(frozen=True)
class Sep1:
    arg: object
    specs: tuple[tuple[int, FiberSpec], ...]
    span: tuple | None = _span()


@dataclass(frozen=True)
class Replace:
    level: int
    arg: object
    assignments: tuple[tuple[int, object], ...]
    span: tuple | None = _span()


RAW_TYPES = (Empty, Tuple, Pair, Union, Vn, FuzzyNat)


def depth(t) -> int:
    if isinstance(t, Empty):
        return 0
    if isinstance(t, Tuple):
        return 1 + max((depth(i) for i in t.items), default=-1)
    if isinstance(t, Pair):
        return 3 + max(depth(t.left), depth(t.right))
    if isinstance(t, Union):
        return depth(t.arg)
    if isinstance(t, (Vn, FuzzyNat)):
        return t.k
    raise TypeError(f"not a raw term: {t!r}")
