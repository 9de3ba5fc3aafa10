"""Seeded random raw terms shared by the property and acceptance tests."""

from __future__ import annotations

import random

from iterite.errors import CapExceeded
from iterite.lang import build
from iterite.terms import Empty, FuzzyNat, Pair, Tuple, Union, Vn


def random_term(rng: random.Random, depth: int, width: int, unions: bool = True):
    """A raw term of nesting depth at most ``depth`` whose tuples have at most ``width`` items."""
    if depth <= 0:
        return Empty()
    roll = rng.random()
    if roll < 0.12:
        return Empty()
    if roll < 0.2:
        return Vn(rng.randint(0, min(depth, 3)))
    if roll < 0.28:
        return FuzzyNat(rng.randint(0, 3))
    if roll < 0.4 and depth >= 2:
        return Pair(random_term(rng, depth - 2, width, unions),
                    random_term(rng, depth - 2, width, unions))
    if unions and roll < 0.5 and depth >= 2:
        return Union(rng.randint(0, 1), random_term(rng, depth, width, unions=False))
    items = tuple(random_term(rng, depth - 1, width, unions)
                  for _ in range(rng.randint(1, width)))
    return Tuple(rng.randint(0, 1), items)


def mutate(rng: random.Random, term):
    """Small structural edits, so that random pairs are often close or equal."""
    if isinstance(term, Tuple) and term.items:
        items = list(term.items)
        roll = rng.random()
        if roll < 0.3:
            rng.shuffle(items)
            return Tuple(term.level, tuple(items))
        if roll < 0.5:
            return Tuple(1 - term.level, tuple(items))
        if roll < 0.7:
            return Tuple(term.level, tuple(items + [rng.choice(items)]))
        i = rng.randrange(len(items))
        items[i] = mutate(rng, items[i])
        return Tuple(term.level, tuple(items))
    return term


def term_pairs(seed: int, count: int, depth: int, width: int):
    rng = random.Random(seed)
    for _ in range(count):
        s = random_term(rng, depth, width)
        roll = rng.random()
        if roll < 0.4:
            t = mutate(rng, s)
        elif roll < 0.55:
            t = s
        else:
            t = random_term(rng, depth, width)
        yield s, t


def built(term):
    """Evaluate ``term``; None when it hits a resource cap."""
    try:
        return build(term)
    except CapExceeded:
        return None


def corpus(seed: int = 7, count: int = 300, depth: int = 3, width: int = 3):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        x = built(random_term(rng, depth, width))
        if x is not None:
            out.append(x)
    return out
