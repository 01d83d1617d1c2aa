"""Truncated multivariate power series with exact integer coefficients.

Truncation is by total degree.  Exponents are tuples of non-negative ints.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Sequence

from .errors import CapMismatch, NonUnitConstantTerm, ZeroExponent, ZeroQExponent


class Series:
    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars: int, degree: int, terms: Mapping | None = None):
        if nvars < 1 or degree < 0:
            raise ValueError("need nvars >= 1 and degree >= 0")
        self.nvars = nvars
        self.degree = degree
        clean: Dict[tuple, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp}")
            if c and sum(exp) <= degree:
                clean[exp] = clean.get(exp, 0) + int(c)
        self.terms = {e: c for e, c in clean.items() if c}

    # construction helpers
    @classmethod
    def one(cls, nvars: int, degree: int) -> "Series":
        return cls(nvars, degree, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, nvars: int, degree: int, exp: Sequence[int], coeff: int = 1) -> "Series":
        return cls(nvars, degree, {tuple(exp): coeff})

    def coeff(self, exp: Sequence[int]) -> int:
        return self.terms.get(tuple(exp), 0)

    @property
    def constant(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def _check(self, other: "Series") -> None:
        if self.nvars != other.nvars or self.degree != other.degree:
            raise CapMismatch(
                f"series shapes differ: ({self.nvars},{self.degree}) vs ({other.nvars},{other.degree})"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (self.nvars, self.degree, self.terms) == (other.nvars, other.degree, other.terms)

    def __hash__(self):
        return hash((self.nvars, self.degree, tuple(sorted(self.terms.items()))))

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Series(self.nvars, self.degree, out)

    def __neg__(self) -> "Series":
        return Series(self.nvars, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other: "Series") -> "Series":
        return series_mul(self, other)

    def truncate(self, degree: int) -> "Series":
        return Series(self.nvars, degree, {e: c for e, c in self.terms.items() if sum(e) <= degree})

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def to_json(self) -> dict:
        return {
            "vars": self.nvars,
            "degree": self.degree,
            "terms": [{"exp": list(e), "coeff": str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Series":
        return cls(
            obj["vars"],
            obj["degree"],
            {tuple(t["exp"]): int(t["coeff"]) for t in obj["terms"]},
        )

    def __repr__(self) -> str:
        return f"Series(nvars={self.nvars}, degree={self.degree}, terms={len(self.terms)})"

    def pretty(self, names: Sequence[str] | None = None, limit: int = 12) -> str:
        names = names or [f"q{k}" for k in range(self.nvars)]
        items = sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))
        parts = []
        for exp, c in items[:limit]:
            mono = "*".join(
                names[k] if e == 1 else f"{names[k]}^{e}" for k, e in enumerate(exp) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        text = " + ".join(parts).replace("+ -", "- ")
        if len(items) > limit:
            text += " + ..."
        return text or "0"


def series_mul(a: Series, b: Series) -> Series:
    a._check(b)
    D = a.degree
    n = a.nvars
    bt = [(e, sum(e), c) for e, c in b.terms.items()]
    out: Dict[tuple, int] = {}
    for ea, ca in a.terms.items():
        da = sum(ea)
        room = D - da
        for eb, db, cb in bt:
            if db > room:
                continue
            e = tuple(ea[k] + eb[k] for k in range(n))
            out[e] = out.get(e, 0) + ca * cb
    return Series(n, D, out)


def series_invert(a: Series) -> Series:
    c0 = a.constant
    if c0 not in (1, -1):
        raise NonUnitConstantTerm(f"constant term must be +-1, got {c0}")
    one = Series.one(a.nvars, a.degree)
    # a = c0 (1 + u) with u having no constant term; 1/a = c0 * sum (-u)^k
    u = Series(a.nvars, a.degree, {e: c0 * c for e, c in a.terms.items() if any(e)})
    neg_u = -u
    acc = one
    power = one
    for _ in range(a.degree):
        power = power * neg_u
        if not power.terms:
            break
        acc = acc + power
    return Series(a.nvars, a.degree, {e: c0 * c for e, c in acc.terms.items()})


def series_pow(a: Series, e: int) -> Series:
    if e < 0:
        return series_pow(series_invert(a), -e)
    result = Series.one(a.nvars, a.degree)
    base = a
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def _gen_binomial(e: int, j: int) -> int:
    num = 1
    den = 1
    for t in range(j):
        num *= e - t
        den *= t + 1
    return num // den


def binomial_factor(s: int, alpha: Sequence[int], e: int, D: int) -> Series:
    """(1 + s*q^alpha)^e truncated at total degree D."""
    alpha = tuple(alpha)
    if any(a < 0 for a in alpha):
        raise ValueError("alpha must be non-negative")
    if not any(alpha):
        raise ZeroExponent("alpha must be nonzero")
    if s not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = len(alpha)
    h = sum(alpha)
    terms = {}
    j = 0
    while j * h <= D:
        c = _gen_binomial(e, j) * s**j
        if c:
            terms[tuple(j * a for a in alpha)] = c
        if e >= 0 and j >= e:
            break
        j += 1
    return Series(n, D, terms)


def product(factors: Iterable[Series], nvars: int, D: int) -> Series:
    acc = Series.one(nvars, D)
    for f in factors:
        acc = acc * f
    return acc


def macmahon(x_exp: Sequence[int], q_exp: Sequence[int], x_sign: int, q_sign: int, e: int, D: int) -> Series:
    """prod_{n>=1} (1 - x q^n)^(-n e) with x = x_sign*m^x_exp, q = q_sign*m^q_exp."""
    x_exp = tuple(x_exp)
    q_exp = tuple(q_exp)
    if not any(q_exp):
        raise ZeroQExponent("q exponent must be nonzero")
    nv = len(q_exp)
    if len(x_exp) != nv:
        raise ValueError("x and q exponents have different lengths")
    acc = Series.one(nv, D)
    if e == 0:
        return acc
    n = 1
    while sum(x_exp) + n * sum(q_exp) <= D:
        mono = tuple(x_exp[k] + n * q_exp[k] for k in range(nv))
        sign = -(x_sign * q_sign**n)
        acc = acc * binomial_factor(sign, mono, -n * e, D)
        n += 1
    return acc


def flip_set(tau: Sequence[int]) -> frozenset:
    """Coordinates whose variables change sign in the Euler-to-signed substitution."""
    Ir = {k for k, t in enumerate(tau) if t == 1}
    flips = {k for k in range(1, len(tau)) if k not in Ir}
    if 0 in Ir:
        flips.add(0)
    return frozenset(flips)


def sign_substitute(series: Series, tau: Sequence[int]) -> Series:
    if len(tau) != series.nvars:
        raise ValueError("tau length must equal the number of variables")
    F = flip_set(tau)
    out = {}
    for exp, c in series.terms.items():
        if sum(exp[k] for k in F) % 2:
            c = -c
        out[exp] = c
    return Series(series.nvars, series.degree, out)


ORIENTATIONS = ("beta_minus", "beta_plus")


def to_sheaf_grading(series: Series, orientation: str) -> dict:
    """Map exponent v to (n, beta) with n = v_0 and beta_k = +-(v_0 - v_k)."""
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    sgn = 1 if orientation == "beta_minus" else -1
    out = {}
    for v, c in series.terms.items():
        n = v[0]
        beta = tuple(sgn * (v[0] - v[k]) for k in range(1, series.nvars))
        out[(n, beta)] = out.get((n, beta), 0) + c
    return {k: c for k, c in out.items() if c}


def from_sheaf_grading(n: int, beta: Sequence[int], orientation: str) -> tuple:
    sgn = 1 if orientation == "beta_minus" else -1
    return (n,) + tuple(n - sgn * b for b in beta)
