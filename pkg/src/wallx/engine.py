"""Partition functions across real-root walls, plus the PT closed forms.

All series live in the module variables q_0..q_{N-1}.  A crossing of the
wall of alpha from the side where zeta.alpha > 0 to the side where
zeta.alpha < 0 multiplies the Euler-characteristic series by

    (1 - eps(alpha) q^alpha)^(-eps(alpha) alpha_0).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .crystal import enumerate_molten
from .errors import ModeMismatch, NotRealRoot, OnImaginaryWall, OnWall
from .rootlat import (
    epsilon,
    interval_root,
    is_positive_real_root,
    pairing,
    positive_real_roots,
    roots_by_sign,
    walls_through,
)
from .series import (
    ORIENTATIONS,
    Series,
    binomial_factor,
    macmahon,
    series_invert,
    series_pow,
    sign_substitute,
    to_sheaf_grading,
)
from .toric import Geometry

MODES = ("relative_to_cyclic", "relative_to_trivial", "absolute_with_oracle", "absolute_with_dtpt")
FLAVORS = ("euler", "signed")

# Fixed by pin_beta_orientation on the conifold (see tests/test_acceptance.py).
BETA_ORIENTATION = "beta_minus"

# (sign of the M(q)^N exponent, direction of the DT -> cyclic crossing
# factors), fixed by pin_dtpt_assembly on the conifold at D = 4.
DTPT_ASSEMBLY = (1, 1)
DTPT_CANDIDATES = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def _zeta(zeta: Sequence) -> tuple:
    return tuple(Fraction(z) for z in zeta)


def wall_factor_eu(geom: Geometry, alpha: Sequence[int], D: int) -> Series:
    alpha = tuple(alpha)
    if len(alpha) != geom.N or not is_positive_real_root(alpha):
        raise NotRealRoot(f"{alpha} is not a positive real root")
    eps = epsilon(geom, alpha)
    if alpha[0] == 0:
        return Series.one(geom.N, D)
    return binomial_factor(-eps, alpha, -eps * alpha[0], D)


def signed_wall_factor(geom: Geometry, alpha: Sequence[int], D: int) -> Series:
    return sign_substitute(wall_factor_eu(geom, alpha, D), geom.tau)


def display_factor(geom: Geometry, alpha: Sequence[int], D: int) -> Series:
    """(1 + (-1)^alpha_0 q^alpha)^(eps alpha_0), the signed factor as usually displayed."""
    alpha = tuple(alpha)
    eps = epsilon(geom, alpha)
    if alpha[0] == 0:
        return Series.one(geom.N, D)
    return binomial_factor((-1) ** alpha[0], alpha, eps * alpha[0], D)


def derived_signed_factor(geom: Geometry, alpha: Sequence[int], D: int) -> Series:
    """(1 - (-1)^alpha_0 q^alpha)^(-eps alpha_0), what the sign rule actually gives."""
    alpha = tuple(alpha)
    eps = epsilon(geom, alpha)
    if alpha[0] == 0:
        return Series.one(geom.N, D)
    return binomial_factor(-((-1) ** alpha[0]), alpha, -eps * alpha[0], D)


def display_discrepancies(geom: Geometry, D: int) -> list:
    """Roots of height <= D where the displayed signed factor differs from the derived one."""
    out = []
    for r in positive_real_roots(geom.N, D):
        if signed_wall_factor(geom, r.vec, D) != display_factor(geom, r.vec, D):
            out.append(r.vec)
    return out


def _check_generic(N: int, zeta: tuple, D: int) -> None:
    if sum(zeta) == 0:
        raise OnImaginaryWall("sum of zeta is zero")
    on = walls_through(N, zeta, max_height=D)
    if on:
        raise OnWall(f"zeta lies on the wall of {on[0].vec}")


def _ratio(geom: Geometry, zeta: tuple, D: int) -> Series:
    """Z_zeta / Z_cyclic for sum(zeta) < 0."""
    N = geom.N
    acc = Series.one(N, D)
    for r, _ in sorted(roots_by_sign(N, zeta, +1), key=lambda t: (t[0].height, t[0].vec)):
        if r.height <= D and r.vec[0]:
            acc = acc * wall_factor_eu(geom, r.vec, D)
    return series_invert(acc)


def _from_trivial(geom: Geometry, zeta: tuple, D: int) -> Series:
    N = geom.N
    acc = Series.one(N, D)
    for r, _ in sorted(roots_by_sign(N, zeta, -1), key=lambda t: (t[0].height, t[0].vec)):
        if r.height <= D and r.vec[0]:
            acc = acc * wall_factor_eu(geom, r.vec, D)
    return acc


def pt_chamber(N: int, D: int) -> tuple:
    """A parameter just above the imaginary wall near (-N+1, 1, ..., 1)."""
    return (Fraction(-N + 1) + Fraction(1, D + 1),) + (Fraction(1),) * (N - 1)


def dt_chamber(N: int, D: int) -> tuple:
    """A parameter just below the imaginary wall near (-N+1, 1, ..., 1)."""
    return (Fraction(-N + 1) - Fraction(1, D + 1),) + (Fraction(1),) * (N - 1)


def point_macmahon(N: int, D: int, power: int = 1) -> Series:
    """M(q)^power with q = q_0 q_1 ... q_{N-1}."""
    return macmahon((0,) * N, (1,) * N, 1, 1, power, D)


def cyclic_from_dtpt(geom: Geometry, D: int, assembly: tuple = DTPT_ASSEMBLY) -> Series:
    """Z_cyclic built from the PT product, M(q)^N and the DT-side crossings.

    Uses the Euler-characteristic DT/PT identity Z_DT = M(q)^N Z_PT, taken as
    an external input.
    """
    s, t = assembly
    N = geom.N
    z_pt = _from_trivial(geom, pt_chamber(N, D), D)
    dt_over_cyc = _ratio(geom, dt_chamber(N, D), D)
    z_dt = point_macmahon(N, D, s * N) * z_pt
    return z_dt * series_pow(dt_over_cyc, -t)


def pin_dtpt_assembly(geom: Geometry, D: int, oracle: Series | None = None) -> list:
    """Assembly candidates whose cyclic series matches the crystal count."""
    oracle = oracle if oracle is not None else enumerate_molten(geom, D)
    return [c for c in DTPT_CANDIDATES if cyclic_from_dtpt(geom, D, c) == oracle]


def z_eu(
    geom: Geometry,
    zeta: Sequence,
    D: int,
    mode: str,
    cache_dir=None,
) -> Series:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    zeta = _zeta(zeta)
    if len(zeta) != geom.N:
        raise ValueError(f"zeta needs {geom.N} entries")
    _check_generic(geom.N, zeta, D)
    S = sum(zeta)
    if mode == "relative_to_trivial":
        if S < 0:
            raise ModeMismatch("relative_to_trivial needs sum(zeta) > 0")
        return _from_trivial(geom, zeta, D)
    if S > 0:
        raise ModeMismatch(f"{mode} needs sum(zeta) < 0")
    ratio = _ratio(geom, zeta, D)
    if mode == "relative_to_cyclic":
        return ratio
    if mode == "absolute_with_oracle":
        return ratio * enumerate_molten(geom, D, cache_dir=cache_dir)
    return ratio * cyclic_from_dtpt(geom, D)


def z_signed(geom: Geometry, zeta: Sequence, D: int, mode: str, cache_dir=None) -> Series:
    return sign_substitute(z_eu(geom, zeta, D, mode, cache_dir=cache_dir), geom.tau)


def z_pt_macmahon(geom: Geometry, D: int) -> dict:
    """prod_{0<a<=b<N} M(q_[a,b], -q)^eps([a,b]) as a table {(n, beta): coeff}.

    q is the point class and q_[a,b] = t_a...t_b; truncation uses the module
    degree N*n + sum(beta), i.e. t_k is weighted like q_k.
    """
    N = geom.N
    acc = Series.one(N, D)
    for a in range(1, N):
        for b in range(a, N):
            x = interval_root(N, a, b)
            acc = acc * macmahon(x, (1,) * N, 1, -1, epsilon(geom, x), D)
    out = {}
    for v, c in acc.terms.items():
        n = v[0]
        beta = tuple(x - n for x in v[1:])
        out[(n, beta)] = c
    return out


def pt_degree(N: int, key: tuple) -> int:
    n, beta = key
    return N * n + sum(beta)


def engine_pt_table(geom: Geometry, D: int, orientation: str) -> dict:
    """Signed PT-chamber series regraded into (n, beta)."""
    z = z_signed(geom, pt_chamber(geom.N, D), D, "relative_to_trivial")
    return to_sheaf_grading(z, orientation)


def compare_pt(geom: Geometry, D: int, orientation: str) -> list:
    """Keys (n, beta) where engine and closed form disagree, restricted to
    keys whose coefficient is complete on both sides."""
    N = geom.N
    engine = engine_pt_table(geom, D, orientation)
    closed = z_pt_macmahon(geom, D)
    sgn = 1 if orientation == "beta_minus" else -1

    def engine_complete(key):
        n, beta = key
        v = [n] + [n - sgn * b for b in beta]
        return min(v) >= 0 and sum(v) <= D

    def closed_complete(key):
        return min(key[1], default=0) >= 0 and pt_degree(N, key) <= D

    bad = []
    for key in sorted(set(engine) | set(closed)):
        if engine_complete(key) and closed_complete(key):
            if engine.get(key, 0) != closed.get(key, 0):
                bad.append(key)
    # keys the closed form cannot produce at all must vanish on the engine side
    for key in sorted(engine):
        if engine_complete(key) and min(key[1], default=0) < 0 and engine[key]:
            bad.append(key)
    return bad


def pin_beta_orientation(geoms: Iterable[Geometry], D: int) -> list:
    """Orientations under which every listed geometry reconciles."""
    geoms = list(geoms)
    return [o for o in ORIENTATIONS if all(not compare_pt(g, D, o) for g in geoms)]


def ncdt_closed_form(geom: Geometry, D: int) -> Series:
    """M(q)^N times every real-root factor; the cyclic chamber in closed form."""
    N = geom.N
    acc = point_macmahon(N, D, N)
    for r in positive_real_roots(N, D):
        if r.vec[0]:
            acc = acc * wall_factor_eu(geom, r.vec, D)
    return acc


def gv_invariants(geom: Geometry) -> dict:
    """Genus-zero table {(0, (a, b)): n_{0,[a,b]}}."""
    N = geom.N
    return {
        (0, (a, b)): -epsilon(geom, interval_root(N, a, b))
        for a in range(1, N)
        for b in range(a, N)
    }


def gv_invariant(geom: Geometry, g: int, a: int, b: int) -> int:
    if not 0 < a <= b < geom.N:
        raise ValueError("need 0 < a <= b < N")
    if g != 0:
        return 0
    return gv_invariants(geom)[(0, (a, b))]


def chamber_signature(N: int, zeta: Sequence, D: int) -> tuple:
    """Signs of zeta.alpha over all positive real roots of height <= D."""
    zeta = _zeta(zeta)
    return tuple((pairing(r.vec, zeta) > 0) - (pairing(r.vec, zeta) < 0) for r in positive_real_roots(N, D))


def provenance(geom: Geometry, mode: str | None = None, flavor: str | None = None) -> dict:
    uses_dtpt = mode == "absolute_with_dtpt"
    return {
        "geometry_hash": geom.digest(),
        "mode": mode,
        "flavor": flavor,
        "beta_orientation": BETA_ORIENTATION,
        "dtpt_identity_used": uses_dtpt,
        "dtpt_assembly": list(DTPT_ASSEMBLY) if uses_dtpt else None,
    }
