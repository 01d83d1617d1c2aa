"""Trapezoid partitions, toric divisors and their support functions.

Half-integers are carried around doubled: the index i = 5/2 is stored as 5,
and sigma_x(i) = 7/2 is stored as x2 = 7.  Triangles are numbered by their
position idx = i - 1/2 in 0..N-1.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BadShape, IndexOutOfRange, MonotonicityViolated, NotABijection


@dataclass(frozen=True)
class Geometry:
    N0: int
    N1: int
    sigma: tuple  # tuple of (x2, y)

    @property
    def N(self) -> int:
        return self.N0 + self.N1

    def sy(self, idx: int) -> int:
        """Row of triangle number idx, taken cyclically."""
        return self.sigma[idx % self.N][1]

    def sx2(self, idx: int) -> int:
        return self.sigma[idx % self.N][0]

    @property
    def Ir(self) -> frozenset:
        N = self.N
        return frozenset(k for k in range(N) if self.sy(k - 1) == self.sy(k))

    @property
    def tau(self) -> tuple:
        Ir = self.Ir
        return tuple(1 if k in Ir else -1 for k in range(self.N))

    @property
    def word(self) -> str:
        return "".join(str(y) for _, y in self.sigma)

    def to_json(self) -> dict:
        return {
            "N0": self.N0,
            "N1": self.N1,
            "sigma": [{"x2": x2, "y": y} for x2, y in self.sigma],
        }

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def __str__(self) -> str:
        return f"Geometry(N0={self.N0}, N1={self.N1}, word={self.word})"


def parse_geometry(N0: int, N1: int, sigma_list: Sequence) -> Geometry:
    """Validate a partition and return the Geometry.

    sigma_list entries are (x2, y) pairs or {"x2":..,"y":..} dicts, where x2 is
    twice sigma_x (an odd integer).
    """
    if not isinstance(N0, int) or not isinstance(N1, int):
        raise BadShape("N0 and N1 must be integers")
    if N0 < 1:
        raise BadShape(f"N0 must be >= 1, got {N0}")
    if N1 < 0 or N1 > N0:
        raise BadShape(f"need 0 <= N1 <= N0, got N1={N1}, N0={N0}")
    N = N0 + N1
    sigma_list = list(sigma_list)
    if len(sigma_list) != N:
        raise BadShape(f"sigma must have N={N} entries, got {len(sigma_list)}")
    sigma = []
    for entry in sigma_list:
        if isinstance(entry, dict):
            x2, y = entry.get("x2"), entry.get("y")
        else:
            try:
                x2, y = entry
            except (TypeError, ValueError):
                raise BadShape(f"bad sigma entry {entry!r}") from None
        if not isinstance(x2, int) or isinstance(x2, bool) or x2 % 2 != 1:
            raise BadShape(f"x2 must be an odd integer, got {x2!r}")
        if y not in (0, 1) or isinstance(y, bool):
            raise BadShape(f"y must be 0 or 1, got {y!r}")
        sigma.append((x2, y))

    target = {(2 * j + 1, 0) for j in range(N0)} | {(2 * j + 1, 1) for j in range(N1)}
    if len(set(sigma)) != N or set(sigma) != target:
        raise NotABijection(
            "sigma is not a bijection onto the half-integer points of the two rows"
        )
    for a in range(N):
        for b in range(a + 1, N):
            if sigma[a][1] == sigma[b][1] and not sigma[a][0] > sigma[b][0]:
                raise MonotonicityViolated(
                    f"sigma_x must decrease along each row (triangles {a} and {b})"
                )
    return Geometry(N0, N1, tuple(sigma))


def geometry_from_word(word: str | Sequence[int]) -> Geometry:
    """Build the geometry whose triangle rows read ``word`` (e.g. "010")."""
    ys = [int(c) for c in word]
    N0 = ys.count(0)
    N1 = ys.count(1)
    left = {0: N0, 1: N1}
    sigma = []
    for y in ys:
        sigma.append((2 * left[y] - 1, y))
        left[y] -= 1
    return parse_geometry(N0, N1, sigma)


def geometry_from_json(obj: dict) -> Geometry:
    try:
        return parse_geometry(obj["N0"], obj["N1"], obj["sigma"])
    except KeyError as exc:
        raise BadShape(f"geometry JSON missing key {exc}") from None


NAMED = {
    "c3": "0",
    "conifold": "01",
    "a1": "00",
    "2,0": "00",
    "2,1a": "001",
    "2,1b": "010",
    "2,1c": "100",
    "3,1": "0001",
    "4,2": "010010",
}


def named_geometry(name: str) -> Geometry:
    if name not in NAMED:
        raise KeyError(name)
    return geometry_from_word(NAMED[name])


# ---------------------------------------------------------------- divisors


@dataclass(frozen=True)
class Divisor:
    row1: tuple
    row0: tuple

    @staticmethod
    def zero(geom: Geometry) -> "Divisor":
        return Divisor((0,) * (geom.N1 + 1), (0,) * (geom.N0 + 1))

    def coeff(self, eps: int, x: int) -> int:
        return (self.row0, self.row1)[eps][x]

    def _combine(self, other: "Divisor", sign: int) -> "Divisor":
        if len(self.row1) != len(other.row1) or len(self.row0) != len(other.row0):
            raise BadShape("divisor shapes differ")
        return Divisor(
            tuple(a + sign * b for a, b in zip(self.row1, other.row1)),
            tuple(a + sign * b for a, b in zip(self.row0, other.row0)),
        )

    def __add__(self, other: "Divisor") -> "Divisor":
        return self._combine(other, 1)

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self._combine(other, -1)

    def __neg__(self) -> "Divisor":
        return Divisor(tuple(-a for a in self.row1), tuple(-a for a in self.row0))

    def to_json(self) -> dict:
        return {"row1": list(self.row1), "row0": list(self.row0)}


def _row_divisor(geom: Geometry, eps: int, xs: Iterable[int]) -> Divisor:
    rows = [[0] * (geom.N0 + 1), [0] * (geom.N1 + 1)]
    for x in xs:
        rows[eps][x] += 1
    return Divisor(tuple(rows[1]), tuple(rows[0]))


def _total(geom: Geometry, divisors: Iterable[Divisor]) -> Divisor:
    acc = Divisor.zero(geom)
    for d in divisors:
        acc = acc + d
    return acc


def _e_plus(geom: Geometry, idx: int) -> Divisor:
    x2, y = geom.sigma[idx]
    top = geom.N1 if y else geom.N0
    return _row_divisor(geom, y, range((x2 + 1) // 2, top + 1))


def _e_minus(geom: Geometry, idx: int) -> Divisor:
    x2, y = geom.sigma[idx]
    return _row_divisor(geom, y, range(0, (x2 - 1) // 2 + 1))


def _f_plus(geom: Geometry, k: int) -> Divisor:
    return _total(geom, (_e_plus(geom, j) for j in range(k)))


def _f_minus(geom: Geometry, k: int) -> Divisor:
    return _total(geom, (_e_minus(geom, j) for j in range(k, geom.N)))


def _h(geom: Geometry, idx: int) -> Divisor:
    # H_i with i = idx + 1/2 sums F^Delta_k for k = 1 .. idx
    return _total(geom, (_f_plus(geom, k) - _f_minus(geom, k) for k in range(1, idx + 1)))


def half_index(value) -> int:
    """Return 2*value for a half-integer given as Fraction, str or (doubled) tuple."""
    if isinstance(value, bool):
        raise IndexOutOfRange(f"not a half-integer: {value!r}")
    if isinstance(value, int):
        raise IndexOutOfRange(f"expected a half-integer index, got integer {value}")
    if isinstance(value, float):
        raise IndexOutOfRange("half-integer indices must be exact, not float")
    try:
        frac = Fraction(value)
    except (TypeError, ValueError):
        raise IndexOutOfRange(f"not a half-integer: {value!r}") from None
    twice = 2 * frac
    if twice.denominator != 1 or twice.numerator % 2 == 0:
        raise IndexOutOfRange(f"not a half-integer: {value!r}")
    return twice.numerator


DIVISOR_KINDS = ("E+", "E-", "F+", "F-", "Fplus_total", "G+", "G-", "H", "I")


def divisor(geom: Geometry, kind: str, index=None) -> Divisor:
    """Coefficient arrays of the named torus-invariant divisors.

    Half-integer indices (E+, E-, G+, G-, H) are given as Fraction or "p/2"
    strings; integer indices (F+, F-, I) as ints.  F+ also accepts k = N,
    meaning the sum of all E+.
    """
    N = geom.N
    if kind == "Fplus_total":
        return _total(geom, (_f_plus(geom, k) for k in range(1, N)))
    if kind in ("E+", "E-", "G+", "G-", "H"):
        i2 = half_index(index)
        if not 1 <= i2 <= 2 * N - 1:
            raise IndexOutOfRange(f"{kind} index {index} outside 1/2..{N}-1/2")
        idx = (i2 - 1) // 2
        if kind == "E+":
            return _e_plus(geom, idx)
        if kind == "E-":
            return _e_minus(geom, idx)
        if kind == "G+":
            return _total(geom, (_f_plus(geom, k) for k in range(1, idx + 1)))
        if kind == "G-":
            return _total(geom, (_f_minus(geom, k) for k in range(idx + 1, N)))
        return _h(geom, idx)
    if kind in ("F+", "F-", "I"):
        if isinstance(index, bool) or not isinstance(index, int):
            raise IndexOutOfRange(f"{kind} needs an integer index, got {index!r}")
        hi = N if kind == "F+" else N - 1
        if not 1 <= index <= hi:
            raise IndexOutOfRange(f"{kind} index {index} outside 1..{hi}")
        if kind == "F+":
            return _f_plus(geom, index)
        if kind == "F-":
            return _f_minus(geom, index)
        return _h(geom, index - 1) + _f_plus(geom, index)
    raise IndexOutOfRange(f"unknown divisor kind {kind!r}")


# ------------------------------------------------------- support functions


def triangle_vertices(geom: Geometry, idx: int) -> tuple:
    """Lattice vertices (x, y) of T_i, base first then apex."""
    x2, y = geom.sigma[idx]
    other = 1 - y
    before = sum(1 for j in range(idx) if geom.sigma[j][1] == other)
    apex_x = (geom.N1 if other else geom.N0) - before
    return ((x2 - 1) // 2, y), ((x2 + 1) // 2, y), (apex_x, other)


@dataclass(frozen=True)
class SupportFn:
    forms: tuple  # one (a, b, c) per triangle: value a*x + b*y + c at (x, y, 1)
    values: tuple  # ((eps, x), value) pairs


def support_function(geom: Geometry, div: Divisor) -> SupportFn:
    if len(div.row1) != geom.N1 + 1 or len(div.row0) != geom.N0 + 1:
        raise BadShape("divisor shape does not match geometry")
    forms = []
    for idx in range(geom.N):
        (x, y), (x1, _), (ax, ay) = triangle_vertices(geom, idx)
        v0 = -div.coeff(y, x)
        v1 = -div.coeff(y, x1)
        va = -div.coeff(ay, ax)
        a = v1 - v0
        # a*x + b*y + c = v0 on the base row, and the same at the apex
        b = (va - a * ax) - (v0 - a * x)
        if ay < y:
            b = -b
        c = v0 - a * x - b * y
        forms.append((a, b, c))
    values = tuple(
        ((eps, x), -div.coeff(eps, x))
        for eps, top in ((0, geom.N0), (1, geom.N1))
        for x in range(top + 1)
    )
    return SupportFn(tuple(forms), values)


def evaluate_form(form: tuple, x: int, y: int) -> int:
    a, b, c = form
    return a * x + b * y + c


def is_globally_linear(geom: Geometry, fn: SupportFn) -> bool:
    return len(set(fn.forms)) == 1


def is_upper_convex(geom: Geometry, fn: SupportFn) -> bool:
    """Check each interior edge: each neighbour's form dominates psi on the other triangle."""
    values = dict(fn.values)
    for k in range(1, geom.N):
        left, right = k - 1, k
        for mine, theirs in ((left, right), (right, left)):
            for (x, y) in triangle_vertices(geom, theirs):
                if evaluate_form(fn.forms[mine], x, y) < values[(y, x)]:
                    return False
    return True


def curve_type(geom: Geometry, k: int) -> str:
    if isinstance(k, bool) or not isinstance(k, int) or not 1 <= k <= geom.N - 1:
        raise IndexOutOfRange(f"curve index must be in 1..{geom.N - 1}, got {k!r}")
    return "(0,-2)" if k in geom.Ir else "(-1,-1)"


def row_step_differences(geom: Geometry) -> list:
    """F+(row, sigma_x + 1/2) - F+(row, sigma_x - 1/2) for every triangle."""
    fp = divisor(geom, "Fplus_total")
    out = []
    for x2, y in geom.sigma:
        out.append(fp.coeff(y, (x2 + 1) // 2) - fp.coeff(y, (x2 - 1) // 2))
    return out


def random_geometry(rng, max_N: int = 8) -> Geometry:
    """A uniformly shuffled row word with N <= max_N and 0 <= N1 <= N0."""
    N = rng.randint(1, max_N)
    N1 = rng.randint(0, N // 2)
    ys = [0] * (N - N1) + [1] * N1
    rng.shuffle(ys)
    return geometry_from_word(ys)
