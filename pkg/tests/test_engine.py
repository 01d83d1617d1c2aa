import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallx.crystal import enumerate_molten
from wallx.engine import (
    BETA_ORIENTATION,
    DTPT_ASSEMBLY,
    chamber_signature,
    compare_pt,
    cyclic_from_dtpt,
    derived_signed_factor,
    display_discrepancies,
    gv_invariant,
    gv_invariants,
    ncdt_closed_form,
    pin_beta_orientation,
    pin_dtpt_assembly,
    display_factor,
    provenance,
    pt_chamber,
    signed_wall_factor,
    wall_factor_eu,
    z_eu,
    z_pt_macmahon,
    z_signed,
)
from wallx.errors import ModeMismatch, NotRealRoot, OnImaginaryWall, OnWall
from wallx.rootlat import epsilon, positive_real_roots
from wallx.series import Series, binomial_factor, series_pow, sign_substitute
from wallx.toric import named_geometry

CONIFOLD = named_geometry("conifold")


def S(N, D, terms):
    return Series(N, D, terms)


def test_wall_factor_examples():
    assert wall_factor_eu(CONIFOLD, (1, 0), 4) == S(2, 4, {(0, 0): 1, (1, 0): 1})
    assert wall_factor_eu(CONIFOLD, (0, 1), 4) == Series.one(2, 4)
    expected = series_pow(S(2, 6, {(0, 0): 1, (2, 1): 1}), 2)
    assert wall_factor_eu(CONIFOLD, (2, 1), 6) == expected
    with pytest.raises(NotRealRoot):
        wall_factor_eu(CONIFOLD, (1, 1), 4)


def test_epsilon_minus_one_gives_plain_binomial():
    for name in ("conifold", "2,1a", "4,2"):
        g = named_geometry(name)
        for r in positive_real_roots(g.N, 6):
            if epsilon(g, r.vec) == -1 and r.vec[0]:
                assert wall_factor_eu(g, r.vec, 6) == binomial_factor(1, r.vec, r.vec[0], 6)


def test_z_eu_examples():
    z = z_eu(CONIFOLD, (Fr(-6, 7), 1), 2, "relative_to_trivial")
    assert z == S(2, 2, {(0, 0): 1, (1, 0): 1})
    for D in (1, 4, 7):
        assert z_eu(CONIFOLD, (-1, -1), D, "relative_to_cyclic") == Series.one(2, D)
    assert z_eu(CONIFOLD, (-3, 1), 2, "relative_to_cyclic") == Series.one(2, 2)


def test_z_eu_errors():
    with pytest.raises(OnImaginaryWall):
        z_eu(CONIFOLD, (1, -1), 3, "relative_to_cyclic")
    with pytest.raises(OnWall):
        z_eu(CONIFOLD, (-1, 0), 3, "relative_to_cyclic")
    with pytest.raises(ModeMismatch):
        z_eu(CONIFOLD, (-3, 1), 3, "relative_to_trivial")
    with pytest.raises(ModeMismatch):
        z_eu(CONIFOLD, (3, -1), 3, "absolute_with_oracle")
    with pytest.raises(ValueError):
        z_eu(CONIFOLD, (-3, 1), 3, "nonsense")


def test_signed_pt_conifold():
    z = z_signed(CONIFOLD, pt_chamber(2, 4), 4, "relative_to_trivial")
    assert z == S(2, 4, {(0, 0): 1, (1, 0): 1, (2, 1): -2, (3, 1): -2})
    eu = z_eu(CONIFOLD, pt_chamber(2, 4), 4, "relative_to_trivial")
    assert sign_substitute(z, CONIFOLD.tau) == eu
    assert z_signed(CONIFOLD, (-1, -1), 4, "relative_to_cyclic") == Series.one(2, 4)


def test_pt_closed_form_examples():
    assert z_pt_macmahon(CONIFOLD, 3) == {(0, (0,)): 1, (1, (1,)): 1}
    assert z_pt_macmahon(named_geometry("c3"), 5) == {(0, ()): 1}
    g = named_geometry("2,0")
    assert epsilon(g, (0, 1)) == 1
    assert z_pt_macmahon(g, 4)[(1, (1,))] == -1


def test_gv():
    assert gv_invariants(CONIFOLD) == {(0, (1, 1)): 1}
    assert gv_invariant(named_geometry("2,0"), 0, 1, 1) == -1
    g = named_geometry("4,2")
    assert all(gv_invariant(g, genus, 1, 3) == 0 for genus in (1, 2, 5))
    with pytest.raises(ValueError):
        gv_invariant(g, 0, 0, 1)


def test_pinned_conventions():
    assert BETA_ORIENTATION == "beta_minus"
    assert pin_beta_orientation([CONIFOLD], 6) == ["beta_minus"]
    for name in ("2,1a", "2,1b", "2,1c", "3,1"):
        assert compare_pt(named_geometry(name), 6, BETA_ORIENTATION) == []
    assert DTPT_ASSEMBLY == (1, 1)
    assert pin_dtpt_assembly(CONIFOLD, 4) == [(1, 1)]


@pytest.mark.parametrize("name", ["conifold", "2,0", "c3"])
def test_closed_forms_match_crystals(name):
    g = named_geometry(name)
    oracle = enumerate_molten(g, 6)
    assert ncdt_closed_form(g, 6) == oracle
    assert cyclic_from_dtpt(g, 6) == oracle


def test_display_discrepancy_reported():
    # the displayed factor differs from the derived one at alpha = (1, 0)
    assert display_discrepancies(CONIFOLD, 4) == [(1, 0)]
    assert display_factor(CONIFOLD, (1, 0), 4) != derived_signed_factor(CONIFOLD, (1, 0), 4)
    for r in positive_real_roots(2, 6):
        assert signed_wall_factor(CONIFOLD, r.vec, 6) == derived_signed_factor(CONIFOLD, r.vec, 6)


def test_provenance_block():
    p = provenance(CONIFOLD, "absolute_with_dtpt", "signed")
    assert p["dtpt_identity_used"] is True and p["dtpt_assembly"] == [1, 1]
    assert p["beta_orientation"] == "beta_minus"
    assert p["geometry_hash"] == CONIFOLD.digest()
    assert provenance(CONIFOLD, "relative_to_cyclic")["dtpt_identity_used"] is False


def _nudge(rng, z, D, N):
    """A second parameter in the same chamber, found by shrinking a random step."""
    sig = chamber_signature(N, z, D)
    step = [Fr(rng.randint(-5, 5), 97) for _ in range(N)]
    for _ in range(30):
        w = tuple(a + b for a, b in zip(z, step))
        if sum(w) * sum(z) > 0 and chamber_signature(N, w, D) == sig:
            return w
        step = [s / 2 for s in step]
    return z


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["conifold", "2,1a", "4,2"]), st.integers(0, 10**6), st.sampled_from([-1, 1]))
def test_path_independence(name, seed, side):
    g = named_geometry(name)
    D = 4
    rng = random.Random(seed)
    N = g.N
    z = tuple(Fr(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(N))
    if sum(z) == 0 or (sum(z) > 0) != (side > 0):
        z = tuple(-x for x in z)
    if sum(z) == 0 or 0 in chamber_signature(N, z, D):
        return
    w = _nudge(rng, z, D, N)
    mode = "relative_to_trivial" if sum(z) > 0 else "relative_to_cyclic"
    assert z_eu(g, z, D, mode) == z_eu(g, w, D, mode)
