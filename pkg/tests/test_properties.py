"""Property checks over randomly generated terms."""

from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from iterite.elgroupoid import el, groupoid_cardinality
from iterite.errors import CapExceeded
from iterite.lang import command_text, parse, parse_expr
from iterite.lang.syntax import expr_text
from iterite.oracle import oracle_eq, oracle_id_count, oracle_mult
from iterite.terms import Empty, FuzzyNat, Pair, Tuple, Union, Vn
from iterite.universe import el_orbits, eq, id_count, mult, replace, separate0, tup, union

from corpus import built

leaves = st.one_of(st.just(Empty()), st.builds(Vn, st.integers(0, 3)),
                   st.builds(FuzzyNat, st.integers(0, 3)))


def _extend(children):
    return st.one_of(
        st.builds(Tuple, st.integers(0, 1), st.lists(children, min_size=1, max_size=3).map(tuple)),
        st.builds(Pair, children, children),
        st.builds(Union, st.integers(0, 1), children),
    )


raw_terms = st.recursive(leaves, _extend, max_leaves=8)
slow = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def _both(s, t):
    x, y = built(s), built(t)
    return (x, y) if x is not None and y is not None else None


@slow
@given(raw_terms, raw_terms)
def test_engine_matches_oracle(s, t):
    got = _both(s, t)
    if got is None:
        return
    x, y = got
    assert id_count(x, y) == oracle_id_count(s, t)
    assert eq(x, y) == oracle_eq(s, t)
    assert mult(x, y) == oracle_mult(s, t)


@slow
@given(raw_terms)
def test_self_identifications_are_automorphisms(s):
    x = built(s)
    if x is None:
        return
    assert id_count(x, x) == x.aut_order >= 1
    assert eq(x, x)


@slow
@given(raw_terms, raw_terms)
def test_interning_matches_equality(s, t):
    got = _both(s, t)
    if got is None:
        return
    x, y = got
    assert (x is y) == eq(x, y) == (x.code == y.code)
    assert (id_count(x, y) > 0) == eq(x, y)


@slow
@given(st.lists(raw_terms, min_size=1, max_size=4), st.integers(0, 1), st.randoms())
def test_tuples_ignore_order(items, level, rnd):
    xs = [built(i) for i in items]
    if any(x is None for x in xs):
        return
    shuffled = list(xs)
    rnd.shuffle(shuffled)
    assert tup(level, xs) is tup(level, shuffled)
    assert tup(0, xs + xs) is tup(0, xs)


@slow
@given(raw_terms)
def test_membership_counts(s):
    x = built(s)
    if x is None:
        return
    for e in x.entries:
        assert mult(e.child, x) == e.membership.size
        assert e.child.rank < x.rank


@slow
@given(raw_terms)
def test_separate_all_and_none(s):
    x = built(s)
    if x is None:
        return
    n = len(el_orbits(x))
    assert separate0(x, range(n)) is x
    assert separate0(x, []).entries == ()


@slow
@given(raw_terms)
def test_cardinality_is_sum_over_components(s):
    x = built(s)
    if x is None:
        return
    d = el(x)
    assert d.pi0 == len(el_orbits(x))
    expected = sum((Fraction(1, c.stabilizer_order) for c in d.components), Fraction(0))
    assert groupoid_cardinality(x) == expected


@slow
@given(raw_terms)
def test_identity_replacement_of_discrete(s):
    x = built(s)
    if x is None or not all(o.is_free for o in el_orbits(x)):
        return
    assert replace(1, x, lambda o: o.child) is x


@slow
@given(raw_terms)
def test_level_zero_union_of_singleton(s):
    x = built(s)
    if x is None:
        return
    assert union(0, tup(0, [x])) is tup(0, [e.child for e in x.entries])
    try:
        wrapped = tup(1, [x])
    except CapExceeded:
        return
    assert union(1, wrapped) is x


@slow
@given(raw_terms)
def test_print_parse_round_trip(s):
    text = expr_text(s)
    assert parse_expr(text) == s
    cmd = parse("canon " + text)
    assert parse(command_text(cmd)) == cmd
