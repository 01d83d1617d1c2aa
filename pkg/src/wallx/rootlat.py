"""Affine type A root lattice Z^N: real roots, signs, reflections, chamber paths."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Sequence

from .errors import DegeneratePath, NotRealRoot, OnImaginaryWall, OnWall
from .toric import Geometry


@dataclass(frozen=True)
class Root:
    vec: tuple
    a: int
    b: int
    n: int
    family: str  # "plus": alpha_[a,b] + n delta, "minus": n delta - alpha_[a,b]

    @property
    def height(self) -> int:
        return sum(self.vec)


def interval_root(N: int, a: int, b: int) -> tuple:
    return tuple(1 if a <= k <= b else 0 for k in range(N))


def make_root(N: int, a: int, b: int, n: int, family: str) -> Root:
    base = interval_root(N, a, b)
    if family == "plus":
        vec = tuple(n + x for x in base)
    else:
        vec = tuple(n - x for x in base)
    return Root(vec, a, b, n, family)


def positive_real_roots(N: int, max_height: int) -> List[Root]:
    out = []
    for a in range(1, N):
        for b in range(a, N):
            width = b - a + 1
            n = 0
            while width + n * N <= max_height:
                out.append(make_root(N, a, b, n, "plus"))
                n += 1
            n = 1
            while n * N - width <= max_height:
                out.append(make_root(N, a, b, n, "minus"))
                n += 1
    out.sort(key=lambda r: (r.height, r.vec))
    return out


def cartan_norm(v: Sequence[int]) -> int:
    N = len(v)
    return 2 * sum(x * x for x in v) - 2 * sum(v[k] * v[(k + 1) % N] for k in range(N))


def is_positive_real_root(v: Sequence[int]) -> bool:
    return len(v) >= 2 and all(x >= 0 for x in v) and cartan_norm(v) == 2


def _tau_of(geom_or_tau) -> tuple:
    if isinstance(geom_or_tau, Geometry):
        return geom_or_tau.tau
    return tuple(geom_or_tau)


def epsilon(geom_or_tau, root) -> int:
    tau = _tau_of(geom_or_tau)
    vec = tuple(root.vec if isinstance(root, Root) else root)
    if len(vec) != len(tau) or not is_positive_real_root(vec):
        raise NotRealRoot(f"{vec} is not a positive real root")
    odd = sum(vec[k] for k in range(len(tau)) if tau[k] != 1) % 2
    return -1 if odd else 1


def mutate_dimvec(k: int, v: Sequence[int]) -> tuple:
    N = len(v)
    out = list(v)
    out[k] = v[(k - 1) % N] - v[k] + v[(k + 1) % N]
    return tuple(out)


def mutate_param(k: int, zeta: Sequence) -> tuple:
    N = len(zeta)
    zk = zeta[k]
    out = list(zeta)
    out[k] = -zk
    out[(k - 1) % N] += zk
    out[(k + 1) % N] += zk
    return tuple(out)


def mutate_tau(k: int, tau: Sequence[int]) -> tuple:
    N = len(tau)
    out = list(tau)
    # each neighbour slot is treated separately, so for N = 2 the single
    # neighbour is multiplied twice, matching mutate_param
    for l in ((k - 1) % N, (k + 1) % N):
        out[l] *= tau[k]
    return tuple(out)


def pairing(v: Sequence, zeta: Sequence):
    return sum(Fraction(x) * Fraction(z) for x, z in zip(v, zeta))


def roots_by_sign(N: int, zeta: Sequence, want: int, include_zero: bool = False) -> Iterator[tuple]:
    """Yield (root, zeta . root) for positive real roots on the ``want`` side.

    The set is finite because sign(sum zeta) == -want.  Roots whose wall
    contains zeta are yielded too when include_zero is set.
    """
    zeta = tuple(Fraction(z) for z in zeta)
    S = sum(zeta)
    if S == 0:
        raise OnImaginaryWall("sum of zeta is zero")
    if (S > 0) == (want > 0):
        raise ValueError("this set is infinite for the given zeta")
    for a in range(1, N):
        for b in range(a, N):
            A = sum(zeta[a:b + 1])
            for family, n0 in (("plus", 0), ("minus", 1)):
                n = n0
                while True:
                    val = A + n * S if family == "plus" else n * S - A
                    if val * want < 0:
                        break
                    if val or include_zero:
                        yield make_root(N, a, b, n, family), val
                    n += 1


def walls_through(N: int, zeta: Sequence, max_height: int | None = None) -> list:
    """Positive real roots alpha with zeta . alpha == 0 (finite when sum zeta != 0)."""
    want = 1 if sum(Fraction(z) for z in zeta) < 0 else -1
    return [
        r
        for r, val in roots_by_sign(N, zeta, want, include_zero=True)
        if val == 0 and (max_height is None or r.height <= max_height)
    ]


@dataclass(frozen=True)
class Crossing:
    root: tuple
    c: Fraction
    k: int


@dataclass(frozen=True)
class ChamberPath:
    side: str  # "negative" when sum(zeta) < 0, "positive" otherwise
    crossings: tuple
    endpoint_walls: tuple = ()

    @property
    def ks(self) -> list:
        return [x.k for x in self.crossings]

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "crossings": [
                {"root": list(x.root), "c": _frac_str(x.c), "k": x.k} for x in self.crossings
            ],
            "k_sequence": self.ks,
            "endpoint_walls": [list(v) for v in self.endpoint_walls],
        }


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def chamber_path(geom_or_N, zeta: Sequence, strict: bool = False) -> ChamberPath:
    """Walls met by the ray from the cyclic (or trivial) chamber towards zeta.

    Walls that merely pass through zeta itself are never crossed; they are
    listed in ``endpoint_walls``, or rejected with OnWall when strict is set.
    """
    N = geom_or_N.N if isinstance(geom_or_N, Geometry) else int(geom_or_N)
    zeta = tuple(Fraction(z) for z in zeta)
    if len(zeta) != N:
        raise ValueError(f"zeta needs {N} entries")
    S = sum(zeta)
    if S == 0:
        raise OnImaginaryWall("sum of zeta is zero; the imaginary wall is never crossed")
    want = 1 if S < 0 else -1
    on_walls = []
    roots = []
    for r, val in roots_by_sign(N, zeta, want, include_zero=True):
        (roots if val else on_walls).append(r)
    if strict and on_walls:
        raise OnWall(f"zeta lies on the wall of {on_walls[0].vec}")
    scored = sorted(
        ((abs(pairing(r.vec, zeta)) / r.height, r) for r in roots),
        key=lambda t: (-t[0], t[1].vec),
    )
    for (c1, r1), (c2, r2) in zip(scored, scored[1:]):
        if c1 == c2:
            raise DegeneratePath(f"roots {r1.vec} and {r2.vec} are crossed at the same c={c1}")
    crossings = []
    ks: list = []
    for c, r in scored:
        beta = r.vec
        for k in ks:
            beta = mutate_dimvec(k, beta)
        if sorted(beta) != [0] * (N - 1) + [1]:
            raise DegeneratePath(f"reflected root {beta} is not simple")
        k = beta.index(1)
        ks.append(k)
        crossings.append(Crossing(r.vec, c, k))
    return ChamberPath(
        "negative" if S < 0 else "positive",
        tuple(crossings),
        tuple(r.vec for r in on_walls),
    )
