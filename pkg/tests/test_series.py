import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallx.errors import CapMismatch, NonUnitConstantTerm, ZeroExponent, ZeroQExponent
from wallx.series import (
    Series,
    binomial_factor,
    flip_set,
    from_sheaf_grading,
    macmahon,
    series_invert,
    series_mul,
    series_pow,
    sign_substitute,
    to_sheaf_grading,
)

from strategies import geometries


def S(N, D, terms):
    return Series(N, D, terms)


def count_plane_partitions(n):
    """Brute force: fill rows that are non-increasing and dominated by the row above."""

    def rows(total, above):
        if total == 0:
            yield 1
            return
        for row in partitions_bounded(total, above):
            yield from rows(total - sum(row), row)

    def partitions_bounded(total, above):
        # non-empty non-increasing rows with row[j] <= above[j], sum <= total
        def rec(j, left, prev):
            if j >= len(above):
                return
            for v in range(min(prev, above[j], left), 0, -1):
                yield (v,)
                for rest in rec(j + 1, left - v, v):
                    yield (v,) + rest

        yield from rec(0, total, total)

    return sum(rows(n, (n,) * n)) if n else 1


PLANE_PARTITIONS = [1, 1, 3, 6, 13, 24, 48, 86, 160]


def test_plane_partition_oracle_frozen():
    assert [count_plane_partitions(n) for n in range(9)] == PLANE_PARTITIONS


def test_geometric_series():
    D = 5
    geo = S(1, D, {(j,): 1 for j in range(D + 1)})
    assert S(1, D, {(0,): 1, (1,): -1}) * geo == Series.one(1, D)
    assert series_pow(S(1, 3, {(0,): 1, (1,): 1}), -1) == S(1, 3, {(0,): 1, (1,): -1, (2,): 1, (3,): -1})
    a = S(2, 4, {(0, 0): 1, (1, 0): 1})
    b = S(2, 4, {(0, 0): 1, (0, 1): 1})
    assert series_mul(a, b) == S(2, 4, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})


def test_errors():
    with pytest.raises(CapMismatch):
        Series.one(1, 2) * Series.one(1, 3)
    with pytest.raises(CapMismatch):
        Series.one(1, 2) * Series.one(2, 2)
    with pytest.raises(NonUnitConstantTerm):
        series_invert(S(1, 2, {(0,): 2}))
    with pytest.raises(NonUnitConstantTerm):
        series_pow(S(1, 2, {(1,): 1}), -1)
    with pytest.raises(ZeroExponent):
        binomial_factor(1, (0, 0), 1, 3)
    with pytest.raises(ZeroQExponent):
        macmahon((1,), (0,), 1, 1, 1, 3)


def test_no_zero_terms_and_cap():
    s = S(1, 2, {(0,): 0, (1,): 3, (5,): 7})
    assert s.terms == {(1,): 3}


def test_binomial_examples():
    assert binomial_factor(1, (1, 0), 1, 4) == S(2, 4, {(0, 0): 1, (1, 0): 1})
    assert binomial_factor(1, (1, 0), 2, 2) == S(2, 2, {(0, 0): 1, (1, 0): 2, (2, 0): 1})
    assert binomial_factor(-1, (1, 1), -1, 4) == S(2, 4, {(0, 0): 1, (1, 1): 1, (2, 2): 1})


def test_macmahon_examples():
    m = macmahon((0,), (1,), 1, 1, 1, 8)
    assert [m.coeff((n,)) for n in range(9)] == PLANE_PARTITIONS
    assert macmahon((0, 1), (1, 1), 1, -1, -1, 3) == S(2, 3, {(0, 0): 1, (1, 2): 1})
    assert macmahon((1,), (1,), 1, 1, 0, 5) == Series.one(1, 5)


def test_sign_substitute_examples():
    assert flip_set((-1, -1)) == {1}
    s = S(2, 2, {(1, 1): 1})
    assert sign_substitute(s, (-1, -1)) == S(2, 2, {(1, 1): -1})
    assert flip_set((1, -1, -1, 1, -1, -1)) == {0, 1, 2, 4, 5}


def test_sheaf_grading_examples():
    for o in ("beta_minus", "beta_plus"):
        assert to_sheaf_grading(S(3, 3, {(1, 1, 1): 5}), o) == {(1, (0, 0)): 5}
        assert to_sheaf_grading(Series.one(3, 3), o) == {(0, (0, 0)): 1}
    for n in range(1, 5):
        assert to_sheaf_grading(S(2, 9, {(n, n - 1): 1}), "beta_minus") == {(n, (1,)): 1}
        assert from_sheaf_grading(n, (1,), "beta_minus") == (n, n - 1)
    with pytest.raises(ValueError):
        to_sheaf_grading(Series.one(1, 1), "sideways")


def test_json_round_trip():
    s = macmahon((0, 1), (1, 1), 1, 1, 2, 6)
    blob = s.to_json()
    assert blob["terms"] == sorted(blob["terms"], key=lambda t: t["exp"])
    assert all(isinstance(t["coeff"], str) for t in blob["terms"])
    assert Series.from_json(blob) == s


N_VARS = 2
CAP = 5


@st.composite
def series(draw, unit=False):
    exps = st.tuples(*[st.integers(0, CAP)] * N_VARS).filter(lambda e: sum(e) <= CAP)
    terms = draw(st.dictionaries(exps, st.integers(-9, 9), max_size=8))
    if unit:
        terms[(0,) * N_VARS] = draw(st.sampled_from([1, -1]))
    return Series(N_VARS, CAP, terms)


@settings(max_examples=100, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + Series(N_VARS, CAP) == a


@settings(max_examples=100, deadline=None)
@given(series(unit=True), st.integers(-4, 4))
def test_inverse_and_powers(a, e):
    one = Series.one(N_VARS, CAP)
    assert a * series_invert(a) == one
    assert series_pow(a, e) * series_pow(a, -e) == one


@settings(max_examples=60, deadline=None)
@given(
    st.tuples(st.integers(0, 2), st.integers(0, 2)),
    st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(any),
    st.sampled_from([1, -1]),
    st.sampled_from([1, -1]),
    st.integers(-3, 3),
)
def test_macmahon_inverse_pair(x, q, xs, qs, e):
    one = Series.one(2, 6)
    assert macmahon(x, q, xs, qs, e, 6) * macmahon(x, q, xs, qs, -e, 6) == one


@settings(max_examples=60, deadline=None)
@given(series(), series(), geometries(2).filter(lambda g: g.N == 2))
def test_sign_substitute_is_ring_map(a, b, g):
    t = g.tau
    assert sign_substitute(a * b, t) == sign_substitute(a, t) * sign_substitute(b, t)
    assert sign_substitute(sign_substitute(a, t), t) == a
