import math

import pytest

from iterite.oracle import (FIXED, FREE, count_equivariant_bijections, normalize,
                            oracle_eq, oracle_id_count, oracle_mult, permanent)
from iterite.terms import Empty, FuzzyNat, Pair, Tuple, Union, Vn

E = Empty()
P1 = Tuple(1, (E, E))


def t(level, *items):
    return Tuple(level, items)


def test_permanent():
    assert permanent([]) == 1
    assert permanent([[1, 1], [1, 1]]) == 2
    assert permanent([[2]]) == 2
    assert permanent([[1] * 4] * 4) == 24
    assert permanent([[1, 2], [3, 4]]) == 1 * 4 + 2 * 3


def test_id_counts():
    assert oracle_id_count(P1, P1) == 2
    assert oracle_id_count(t(1, P1), t(1, P1)) == 2
    assert oracle_id_count(P1, t(1, E)) == 0
    assert oracle_id_count(FuzzyNat(4), FuzzyNat(4)) == 24


def test_mult():
    assert oracle_mult(E, P1) == 2
    assert oracle_mult(E, E) == 0
    n = t(1, *(FuzzyNat(i) for i in range(6)))
    assert oracle_mult(FuzzyNat(3), n) == 6
    assert oracle_mult(P1, t(0, P1)) == 1


def test_eq():
    assert oracle_eq(P1, P1)
    assert not oracle_eq(t(1, E), P1)
    assert oracle_eq(t(0, E), t(1, E))
    assert not oracle_eq(t(0, P1), t(1, P1))


def test_unions():
    assert oracle_eq(Union(0, t(0, t(1, E), t(1, E))), t(0, E))
    assert oracle_eq(Union(1, t(1, t(1, E), t(1, E))), P1)
    assert oracle_eq(Union(1, t(0, P1)), t(0, E))
    assert oracle_eq(Union(1, t(1, P1)), P1)


def test_desugaring():
    assert oracle_eq(Vn(2), t(0, E, t(0, E)))
    assert oracle_eq(FuzzyNat(2), P1)
    assert not oracle_eq(Pair(E, P1), Pair(P1, E))
    assert oracle_id_count(Pair(P1, P1), Pair(P1, P1)) == 4


def test_normal_form_shape():
    nf = normalize(t(0, P1, P1, E))
    kinds = sorted(k for _, k in nf)
    assert kinds == [FIXED, FIXED]
    assert sorted(k for _, k in normalize(P1)) == [FREE, FREE]


def test_brute_force_counts():
    assert count_equivariant_bijections(3, []) == 6
    assert count_equivariant_bijections(2, [(1, 0)]) == 2
    assert count_equivariant_bijections(4, [(1, 0, 3, 2)]) == 8
    assert count_equivariant_bijections(3, [], blocks=[[0], [1, 2]]) == 2
    assert count_equivariant_bijections(5, [], blocks=[range(5)]) == math.factorial(5)


def test_brute_force_limit():
    from iterite.errors import CapExceeded
    with pytest.raises(CapExceeded):
        count_equivariant_bijections(9, [])
