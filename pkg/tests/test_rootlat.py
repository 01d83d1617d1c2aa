from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallx.errors import DegeneratePath, NotRealRoot, OnImaginaryWall, OnWall
from wallx.rootlat import (
    cartan_norm,
    chamber_path,
    epsilon,
    is_positive_real_root,
    mutate_dimvec,
    mutate_param,
    mutate_tau,
    pairing,
    positive_real_roots,
)
from wallx.toric import named_geometry

from strategies import geometries

F = Fraction


def vecs(N, h):
    return {r.vec for r in positive_real_roots(N, h)}


def test_root_lists():
    assert vecs(2, 4) == {(0, 1), (1, 0), (1, 2), (2, 1)}
    assert vecs(2, 1) == {(0, 1), (1, 0)}
    # alpha_0 = delta - alpha_[1,2] has height 1 as well, so there are six
    assert vecs(3, 2) == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1), (1, 1, 0), (1, 0, 1)}
    assert positive_real_roots(1, 5) == []


def test_root_tags():
    for r in positive_real_roots(4, 9):
        base = tuple(1 if r.a <= k <= r.b else 0 for k in range(4))
        sign = 1 if r.family == "plus" else -1
        assert r.vec == tuple(r.n + sign * x for x in base)


def test_epsilon_examples():
    c = named_geometry("conifold")
    assert all(epsilon(c, (n, n - 1)) == -1 for n in range(1, 8))
    g = named_geometry("4,2")
    assert epsilon(g, (0, 0, 0, 1, 0, 0)) == 1
    with pytest.raises(NotRealRoot):
        epsilon(c, (1, 1))
    with pytest.raises(NotRealRoot):
        epsilon(c, (1, 0, 0))


def test_mutation_examples():
    for N in range(2, 6):
        assert mutate_dimvec(1, (1,) * N) == (1,) * N
    assert mutate_param(1, (-3, 1)) == (-1, -1)
    # each neighbour slot is applied separately; for N = 2 this keeps the
    # number of -1 entries even
    assert mutate_tau(1, (-1, -1)) == (-1, -1)
    assert mutate_tau(0, (1, -1, -1)) == (1, -1, -1)
    assert mutate_tau(1, (1, -1, -1)) == (-1, -1, 1)


def test_chamber_path_examples():
    c = named_geometry("conifold")
    assert chamber_path(c, (-1, -1)).crossings == ()
    p = chamber_path(c, (-3, 1))
    assert [(x.root, x.c, x.k) for x in p.crossings] == [((0, 1), F(1), 1)]
    p = chamber_path(c, (-5, 4))
    assert [x.root for x in p.crossings] == [(0, 1), (1, 2), (2, 3), (3, 4)]
    assert [x.c for x in p.crossings] == [F(4), F(1), F(2, 5), F(1, 7)]
    assert p.ks == [1, 0, 1, 0]
    assert p.to_json()["k_sequence"] == [1, 0, 1, 0]


def test_chamber_path_errors():
    with pytest.raises(OnImaginaryWall):
        chamber_path(2, (1, -1))
    with pytest.raises(OnWall):
        chamber_path(2, (-1, 0), strict=True)
    with pytest.raises(DegeneratePath):
        # (0,1,0) and (0,0,1) both give c = 1
        chamber_path(3, (-5, 1, 1))


def test_positive_side_path():
    p = chamber_path(2, (3, -1))
    assert p.side == "positive"
    assert all(pairing(x.root, (3, -1)) < 0 for x in p.crossings)


small_int = st.integers(-6, 6)


@st.composite
def vec_and_param(draw):
    N = draw(st.integers(2, 7))
    v = draw(st.lists(small_int, min_size=N, max_size=N))
    z = draw(st.lists(st.fractions(-5, 5, max_denominator=7), min_size=N, max_size=N))
    k = draw(st.integers(0, N - 1))
    return k, tuple(v), tuple(z)


@settings(max_examples=300, deadline=None)
@given(vec_and_param())
def test_reflections(data):
    k, v, z = data
    assert mutate_dimvec(k, mutate_dimvec(k, v)) == v
    assert mutate_param(k, mutate_param(k, z)) == z
    assert pairing(v, z) == pairing(mutate_dimvec(k, v), mutate_param(k, z))


@settings(max_examples=200, deadline=None)
@given(geometries(), st.data())
def test_tau_mutation(g, data):
    k = data.draw(st.integers(0, g.N - 1))
    t = g.tau
    t2 = mutate_tau(k, t)
    assert mutate_tau(k, t2) == t
    assert t2.count(-1) % 2 == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.integers(1, 12))
def test_real_root_norm(N, h):
    for r in positive_real_roots(N, h):
        assert cartan_norm(r.vec) == 2 and is_positive_real_root(r.vec)
        assert r.height <= h


@settings(max_examples=40, deadline=None)
@given(geometries())
def test_epsilon_delta_periodic(g):
    if g.N < 2:
        return
    delta = (1,) * g.N
    for r in positive_real_roots(g.N, 2 * g.N):
        shifted = tuple(x + y for x, y in zip(r.vec, delta))
        assert epsilon(g, r.vec) == epsilon(g, shifted)


@st.composite
def generic_params(draw):
    N = draw(st.integers(2, 5))
    z = draw(st.lists(st.fractions(-6, 6, max_denominator=11), min_size=N, max_size=N))
    return N, tuple(z)


@settings(max_examples=200, deadline=None)
@given(generic_params())
def test_chamber_path_invariants(data):
    N, z = data
    try:
        p = chamber_path(N, z, strict=True)
    except (OnImaginaryWall, OnWall, DegeneratePath):
        return
    cs = [x.c for x in p.crossings]
    assert all(a > b for a, b in zip(cs, cs[1:]))
    seen = []
    for x in p.crossings:
        beta = x.root
        for k in seen:
            beta = mutate_dimvec(k, beta)
        simple = tuple(1 if j == x.k else 0 for j in range(N))
        assert beta == simple
        seen.append(x.k)
    want = 1 if sum(z) < 0 else -1
    assert all(pairing(x.root, z) * want > 0 for x in p.crossings)
