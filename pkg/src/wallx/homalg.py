"""Finite-dimensional (framed) representations and their Hom/Ext groups.

Ext groups come from applying Hom(-, F) to the Koszul resolution of E:

    C0 = (+)_k Hom(E_k, F_k)
    C1 = (+)_b Hom(E_src(b), F_tgt(b))      every arrow, framing included
    C2 = (+)_a Hom(E_tgt(a), F_src(a))      unframed arrows (one per relation)
    C3 = (+)_{k in Q0} Hom(E_k, F_k)

Matrices act on column vectors; a matrix for arrow a has dim target rows
and dim source columns.  Hom blocks are flattened row-major, so X -> L X R
is the Kronecker product L (x) R^T.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, List, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import (
    NoneFound,
    NotCoordinateRep,
    NotOnWall,
    NotRealRoot,
    NotUnique,
    OddParity,
    QuiverMismatch,
    RelationViolated,
)
from .quiver import FramedQuiver, QuiverWithPotential, arrow_id, cyclic_derivatives, frame, parse_arrow_id
from .rootlat import is_positive_real_root

Matrix = List[List[Fraction]]

# ------------------------------------------------------------ small matrices


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def eye(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix, rows: int, inner: int, cols: int) -> Matrix:
    """(rows x inner) times (inner x cols); shapes are explicit so empty blocks work."""
    return [[sum((A[i][t] * B[t][j] for t in range(inner)), Fraction(0)) for j in range(cols)] for i in range(rows)]


def _to_dm(M: Matrix, rows: int, cols: int) -> DomainMatrix:
    data = [[QQ(x.numerator, x.denominator) for x in row] for row in M]
    return DomainMatrix(data, (rows, cols), QQ)


def rank(M: Matrix, rows: int, cols: int) -> int:
    if rows == 0 or cols == 0:
        return 0
    return _to_dm(M, rows, cols).rank()


def _rows_as_fractions(M: DomainMatrix) -> list:
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in M.to_Matrix().tolist()]


# ------------------------------------------------------------ representations


def _base(quiver) -> QuiverWithPotential:
    return quiver.base if isinstance(quiver, FramedQuiver) else quiver


@dataclass
class Rep:
    quiver: object  # QuiverWithPotential or FramedQuiver
    dims: tuple  # one entry per vertex, the framing vertex last when framed
    mats: Dict[tuple, Matrix]
    meta: dict = field(default_factory=dict)

    @property
    def framed(self) -> bool:
        return isinstance(self.quiver, FramedQuiver)

    @property
    def dimvec(self) -> tuple:
        return tuple(self.dims[: _base(self.quiver).N])

    @property
    def arrows(self) -> tuple:
        return self.quiver.arrows

    def dim(self, v: int) -> int:
        return self.dims[v]

    def mat(self, a) -> Matrix:
        m = self.mats.get(a)
        if m is None:
            return zeros(self.dims[self.quiver.target(a)], self.dims[self.quiver.source(a)])
        return m

    def path(self, word: Sequence) -> Matrix:
        """Matrix of a word in traversal order (identity for the empty word)."""
        if not word:
            raise ValueError("empty word has no fixed endpoints")
        q = self.quiver
        M = self.mat(word[0])
        start = self.dims[q.source(word[0])]
        for a in word[1:]:
            M = matmul(self.mat(a), M, self.dims[q.target(a)], self.dims[q.source(a)], start)
        return M

    def to_json(self) -> dict:
        def enc(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "framed": self.framed,
            "dims": list(self.dims),
            "arrows": {
                arrow_id(a): [[enc(x) for x in row] for row in self.mat(a)] for a in self.arrows
            },
        }


def rep_from_json(quiver, obj: dict) -> Rep:
    if bool(obj.get("framed")) != isinstance(quiver, FramedQuiver):
        raise QuiverMismatch("framing flag does not match the quiver")
    mats = {}
    for key, rows in obj["arrows"].items():
        mats[parse_arrow_id(key)] = [[Fraction(x) for x in row] for row in rows]
    return Rep(quiver, tuple(obj["dims"]), mats)


def relation_residues(rep: Rep) -> dict:
    """For each unframed arrow a, the matrix of d_a(potential) evaluated on rep."""
    q = rep.quiver
    out = {}
    for a, summands in cyclic_derivatives(_base(q)).items():
        rows = rep.dims[q.source(a)]
        cols = rep.dims[q.target(a)]
        acc = zeros(rows, cols)
        for sign, word in summands:
            M = rep.path(word)
            for i in range(rows):
                for j in range(cols):
                    acc[i][j] += sign * M[i][j]
        out[a] = acc
    return out


def relations_hold(rep: Rep) -> bool:
    return all(not any(any(row) for row in M) for M in relation_residues(rep).values())


def check_relations(rep: Rep) -> None:
    for a, M in relation_residues(rep).items():
        if any(any(row) for row in M):
            raise RelationViolated(f"relation d/d{arrow_id(a)} fails")


def framed_rep(rep: Rep, w: int = 1, i_map: Matrix | None = None) -> Rep:
    """Attach a framing space of dimension w with map i: W -> V_0."""
    if rep.framed:
        raise QuiverMismatch("already framed")
    fq = frame(rep.quiver)
    mats = dict(rep.mats)
    if i_map is None:
        i_map = zeros(rep.dims[0], w)
        if w and rep.dims[0]:
            i_map[0][0] = Fraction(1)
    mats[("i", 0)] = i_map
    return Rep(fq, tuple(rep.dims) + (w,), mats, dict(rep.meta))


def direct_sum(E: Rep, F: Rep) -> Rep:
    if E.quiver != F.quiver:
        raise QuiverMismatch("direct sum needs a common quiver")
    dims = tuple(x + y for x, y in zip(E.dims, F.dims))
    mats = {}
    for a in E.arrows:
        s, t = E.quiver.source(a), E.quiver.target(a)
        M = zeros(dims[t], dims[s])
        A, B = E.mat(a), F.mat(a)
        for i in range(E.dims[t]):
            for j in range(E.dims[s]):
                M[i][j] = A[i][j]
        for i in range(F.dims[t]):
            for j in range(F.dims[s]):
                M[E.dims[t] + i][E.dims[s] + j] = B[i][j]
        mats[a] = M
    return Rep(E.quiver, dims, mats)


def _invert(M: Matrix, n: int) -> Matrix:
    return _rows_as_fractions(_to_dm(M, n, n).inv())


def change_basis(rep: Rep, P: Dict[int, Matrix]) -> Rep:
    """The isomorphic rep with maps P_t M P_s^-1."""
    inv = {v: _invert(P[v], rep.dims[v]) for v in P if rep.dims[v]}
    mats = {}
    for a in rep.arrows:
        s, t = rep.quiver.source(a), rep.quiver.target(a)
        M = rep.mat(a)
        if rep.dims[s] and rep.dims[t]:
            dt, ds = rep.dims[t], rep.dims[s]
            M = matmul(matmul(P[t], M, dt, dt, ds), inv[s], dt, ds, ds)
        mats[a] = M
    return Rep(rep.quiver, rep.dims, mats, dict(rep.meta))


# ------------------------------------------------------------ Hom complex


class _Blocks:
    def __init__(self, entries):
        self.keys = []
        self.shape = {}
        self.offset = {}
        pos = 0
        for key, r, c in entries:
            self.keys.append(key)
            self.shape[key] = (r, c)
            self.offset[key] = pos
            pos += r * c
        self.size = pos


def _sparse(M: Matrix) -> dict:
    return {(i, j): QQ(x.numerator, x.denominator) for i, row in enumerate(M) for j, x in enumerate(row) if x}


def _sparse_eye(n: int) -> dict:
    return {(i, i): QQ(1) for i in range(n)}


def _sparse_mul(A: dict, B: dict) -> dict:
    by_row = {}
    for (t, j), x in B.items():
        by_row.setdefault(t, []).append((j, x))
    out = {}
    for (i, t), a in A.items():
        for j, b in by_row.get(t, ()):
            out[(i, j)] = out.get((i, j), 0) + a * b
    return {k: v for k, v in out.items() if v}


class _SparseRep:
    """Sparse copies of the arrow matrices with cached path products."""

    def __init__(self, rep: Rep):
        self.rep = rep
        self.mats = {a: _sparse(rep.mat(a)) for a in rep.arrows}
        self.cache = {}

    def path(self, word: tuple) -> dict:
        if word not in self.cache:
            M = self.mats[word[0]]
            for a in word[1:]:
                M = _sparse_mul(self.mats[a], M)
            self.cache[word] = M
        return self.cache[word]


def _add_kron(out: dict, r0: int, c0: int, L: dict, R: dict, rdim: int, cdim: int, sign: int) -> None:
    """Add sign * (L (x) R^T) at offset (r0, c0); R is rdim x cdim before transposing."""
    for (i, j), a in L.items():
        for (k, l), b in R.items():
            # R^T has entry b at (l, k); its shape is cdim x rdim
            row = r0 + i * cdim + l
            col = c0 + j * rdim + k
            cell = out.setdefault(row, {})
            v = cell.get(col, 0) + sign * a * b
            if v:
                cell[col] = v
            else:
                cell.pop(col, None)


def _dm(dod: dict, rows: int, cols: int) -> DomainMatrix:
    return DomainMatrix.from_dod({r: c for r, c in dod.items() if c}, (rows, cols), QQ)


@dataclass
class HomComplex:
    dims: tuple  # dimensions of C0..C3
    d: tuple  # d0, d1, d2 as sparse DomainMatrix
    ranks: tuple


@dataclass(frozen=True)
class HomExt:
    hom: int
    ext1: int
    ext2: int | None = None
    ext3: int | None = None


def hom_complex(E: Rep, F: Rep) -> HomComplex:
    if E.quiver != F.quiver:
        raise QuiverMismatch("E and F live on different quivers")
    check_relations(E)
    check_relations(F)
    q = E.quiver
    base = _base(q)
    src, tgt = q.source, q.target
    dE, dF = E.dims, F.dims
    sE, sF = _SparseRep(E), _SparseRep(F)

    C0 = _Blocks([(k, dF[k], dE[k]) for k in q.vertices])
    C1 = _Blocks([(b, dF[tgt(b)], dE[src(b)]) for b in q.arrows])
    C2 = _Blocks([(a, dF[src(a)], dE[tgt(a)]) for a in base.arrows])
    C3 = _Blocks([(k, dF[k], dE[k]) for k in base.vertices])

    # d0(phi)_b = F_b phi_src - phi_tgt E_b
    d0 = {}
    for b in q.arrows:
        s, t = src(b), tgt(b)
        r0 = C1.offset[b]
        _add_kron(d0, r0, C0.offset[s], sF.mats[b], _sparse_eye(dE[s]), dE[s], dE[s], 1)
        _add_kron(d0, r0, C0.offset[t], _sparse_eye(dF[t]), sE.mats[b], dE[t], dE[s], -1)

    # d1(psi)_a = sum over summands s*c of d_a(W), c = w b u: s F_u psi_b E_w
    d1 = {}
    for a, summands in cyclic_derivatives(base).items():
        r0 = C2.offset[a]
        for sign, word in summands:
            for p, b in enumerate(word):
                w, u = word[:p], word[p + 1:]
                L = sF.path(u) if u else _sparse_eye(dF[tgt(b)])
                R = sE.path(w) if w else _sparse_eye(dE[src(b)])
                # R maps E_tgt(a) -> E_src(b)
                _add_kron(d1, r0, C1.offset[b], L, R, dE[src(b)], dE[tgt(a)], sign)

    # d2(chi)_k = sum_{tgt(a)=k} F_a chi_a - sum_{src(a)=k} chi_a E_a
    d2 = {}
    for a in base.arrows:
        s, t = src(a), tgt(a)
        c0 = C2.offset[a]
        _add_kron(d2, C3.offset[t], c0, sF.mats[a], _sparse_eye(dE[t]), dE[t], dE[t], 1)
        _add_kron(d2, C3.offset[s], c0, _sparse_eye(dF[s]), sE.mats[a], dE[t], dE[s], -1)

    sizes = (C0.size, C1.size, C2.size, C3.size)
    D0 = _dm(d0, sizes[1], sizes[0])
    D1 = _dm(d1, sizes[2], sizes[1])
    D2 = _dm(d2, sizes[3], sizes[2])
    if not (D1 * D0).is_zero_matrix or not (D2 * D1).is_zero_matrix:
        raise AssertionError("Hom complex does not square to zero")
    ranks = tuple(0 if 0 in M.shape else M.rank() for M in (D0, D1, D2))
    return HomComplex(sizes, (D0, D1, D2), ranks)


def hom_ext(E: Rep, F: Rep) -> HomExt:
    cx = hom_complex(E, F)
    c0, c1, c2, c3 = cx.dims
    r0, r1, r2 = cx.ranks
    hom = c0 - r0
    ext1 = c1 - r1 - r0
    if E.framed:
        return HomExt(hom, ext1)
    return HomExt(hom, ext1, c2 - r2 - r1, c3 - r2)


def ext1_cocycles(E: Rep, F: Rep) -> list:
    """Cocycles in C1 spanning Ext^1(E, F) modulo coboundaries."""
    cx = hom_complex(E, F)
    c0, c1, c2, _ = cx.dims
    D0, D1, _ = cx.d
    if c1 == 0:
        return []
    if c2:
        kernel = _rows_as_fractions(D1.to_dense().nullspace())
    else:
        kernel = [[Fraction(int(i == j)) for i in range(c1)] for j in range(c1)]
    chosen = []
    span = D0.to_dense() if c0 else DomainMatrix.zeros((c1, 0), QQ)
    current = cx.ranks[0]
    for v in kernel:
        col = DomainMatrix([[QQ(x.numerator, x.denominator)] for x in v], (c1, 1), QQ)
        trial = span.hstack(col)
        if trial.rank() > current:
            span = trial
            current += 1
            chosen.append(v)
    return chosen


# ------------------------------------------------------------ string modules


def _string_layout(N: int, n0: int, n1: int) -> list:
    counts = [0] * N
    out = []
    for n in range(n0, n1 + 1):
        k = n % N
        out.append((k, counts[k], n))
        counts[k] += 1
    return out


def string_module(quiver, n0: int, n1: int, orientation: Sequence[str]) -> Rep:
    """String with basis v_n0..v_n1, v_n at vertex n mod N.

    orientation[j] says how v_{n0+j} and v_{n0+j+1} are linked: "+" means
    h+ sends the first to the second, "-" means h- sends the second back.
    """
    base = _base(quiver)
    N = base.N
    orientation = tuple(orientation)
    if n1 < n0 or len(orientation) != n1 - n0:
        raise ValueError("orientation word must have length n1 - n0")
    if any(c not in "+-" for c in orientation):
        raise ValueError("orientation entries must be '+' or '-'")
    layout = _string_layout(N, n0, n1)
    dims = [0] * N
    for k, _, _ in layout:
        dims[k] += 1
    mats = {a: zeros(dims[base.target(a)], dims[base.source(a)]) for a in base.arrows}
    for j, c in enumerate(orientation):
        (k1, l1, n), (k2, l2, _) = layout[j], layout[j + 1]
        idx = n % N
        if c == "+":
            mats[("+", idx)][l2][l1] = Fraction(1)
        else:
            mats[("-", idx)][l1][l2] = Fraction(1)
    rep = Rep(base, tuple(dims), mats, {"string": (n0, n1, orientation), "layout": layout})
    if isinstance(quiver, FramedQuiver):
        return framed_rep(rep, 0, zeros(dims[0], 0))
    return rep


# ------------------------------------------------------------ stability


def _coordinates(rep: Rep) -> tuple:
    """Global basis of V (framing excluded) and successor masks per basis vector."""
    q = rep.quiver
    base = _base(q)
    index = {}
    verts = []
    for k in range(base.N):
        for l in range(rep.dims[k]):
            index[(k, l)] = len(verts)
            verts.append(k)
    succ = [0] * len(verts)
    for a in base.arrows:
        s, t = q.source(a), q.target(a)
        M = rep.mat(a)
        for j in range(rep.dims[s]):
            hits = [i for i in range(rep.dims[t]) if M[i][j]]
            if len(hits) > 1:
                raise NotCoordinateRep(f"{arrow_id(a)} does not map basis vectors to multiples of basis vectors")
            for i in hits:
                succ[index[(s, j)]] |= 1 << index[(t, i)]
    framing = 0
    if rep.framed:
        M = rep.mat(("i", 0))
        for i in range(rep.dims[0]):
            if any(M[i]):
                framing |= 1 << index[(0, i)]
    return verts, succ, framing


def closed_subsets(rep: Rep) -> list:
    """Arrow-closed coordinate subsets as bitmasks (empty set included)."""
    verts, succ, _ = _coordinates(rep)
    n = len(verts)
    out = []
    for S in range(1 << n):
        ok = True
        x = S
        while x:
            low = x & -x
            j = low.bit_length() - 1
            if succ[j] & ~S:
                ok = False
                break
            x ^= low
        if ok:
            out.append(S)
    return out


def is_stable_Tinv(rep: Rep, zeta: Sequence, framed: bool | None = None) -> bool:
    framed = rep.framed if framed is None else framed
    zeta = [Fraction(z) for z in zeta]
    verts, succ, framing = _coordinates(rep)
    n = len(verts)
    full = (1 << n) - 1

    def value(S: int) -> Fraction:
        return sum((zeta[verts[j]] for j in range(n) if S >> j & 1), Fraction(0))

    total = value(full)
    for S in closed_subsets(rep):
        if S == 0:
            continue
        if not framed:
            if S != full and value(S) >= 0:
                return False
            continue
        if value(S) >= 0:
            return False
        if S != full and (S & framing) == framing and value(S) >= total:
            return False
    return True


def generic_wall_point(N: int, alpha: Sequence[int], seed: int = 0) -> tuple:
    """A rational point on the wall of alpha avoiding every 0 < beta < alpha and delta."""
    alpha = tuple(alpha)
    rng = random.Random(seed)
    aa = sum(x * x for x in alpha)
    for _ in range(1000):
        v = [Fraction(rng.randint(-50, 50)) for _ in range(N)]
        t = sum(x * y for x, y in zip(v, alpha)) / aa
        z = tuple(x - t * y for x, y in zip(v, alpha))
        if _generic_on_wall(z, alpha):
            return z
    raise NoneFound("could not find a generic point on the wall")


def _generic_on_wall(zeta: tuple, alpha: tuple) -> bool:
    if sum(zeta) == 0:
        return False
    for beta in iproduct(*(range(x + 1) for x in alpha)):
        if any(beta) and beta != alpha:
            if sum(z * b for z, b in zip(zeta, beta)) == 0:
                return False
    return True


def find_stable_string(quiver, zeta_wall: Sequence, alpha: Sequence[int]) -> Rep:
    base = _base(quiver)
    N = base.N
    alpha = tuple(alpha)
    zeta = tuple(Fraction(z) for z in zeta_wall)
    if len(alpha) != N or not is_positive_real_root(alpha):
        raise NotRealRoot(f"{alpha} is not a positive real root")
    if sum(z * a for z, a in zip(zeta, alpha)) != 0:
        raise NotOnWall("zeta . alpha is not zero")
    if not _generic_on_wall(zeta, alpha):
        raise NotOnWall("zeta also lies on a wall of a smaller dimension vector")
    h = sum(alpha)
    found = []
    for n0 in range(N):
        for word in iproduct("+-", repeat=h - 1):
            rep = string_module(base, n0, n0 + h - 1, word)
            if rep.dimvec != alpha:
                continue
            if is_stable_Tinv(rep, zeta, framed=False):
                found.append(rep)
    if not found:
        raise NoneFound(f"no stable string of dimension {alpha}")
    if len(found) > 1:
        raise NotUnique(f"{len(found)} stable strings of dimension {alpha}")
    return found[0]


# ------------------------------------------------------------ C_m


def _stack(C: Rep, m: int) -> Rep:
    base = _base(C.quiver)
    dims = tuple(m * d for d in C.dims)
    mats = {}
    for a in base.arrows:
        s, t = base.source(a), base.target(a)
        M = zeros(dims[t], dims[s])
        A = C.mat(a)
        for M_ in range(m):
            for i in range(C.dims[t]):
                for j in range(C.dims[s]):
                    M[M_ * C.dims[t] + i][M_ * C.dims[s] + j] = A[i][j]
        mats[a] = M
    return Rep(base, dims, mats, {"copies": m})


def _glue_at_start(C: Rep, m: int) -> Rep | None:
    """Copies of C linked at position n0 + 1/2 (or by the loop for length one)."""
    info = C.meta.get("string")
    if info is None:
        return None
    n0, n1, orientation = info
    base = _base(C.quiver)
    N = base.N
    out = _stack(C, m)
    layout = C.meta["layout"]
    if n1 == n0:
        k = n0 % N
        if k not in base.Ir:
            return None
        a = ("r", k)
        for M_ in range(m - 1):
            out.mats[a][(M_ + 1) * C.dims[k]][M_ * C.dims[k]] += 1
        return out
    (k1, l1, _), (k2, l2, _) = layout[0], layout[1]
    idx = n0 % N
    for M_ in range(m - 1):
        if orientation[0] == "+":
            out.mats[("+", idx)][(M_ + 1) * C.dims[k2] + l2][M_ * C.dims[k1] + l1] += 1
        else:
            out.mats[("-", idx)][(M_ + 1) * C.dims[k1] + l1][M_ * C.dims[k2] + l2] += 1
    return out


def _glue_cocycle(C: Rep, m: int) -> Rep | None:
    """Copies of C linked on the superdiagonal by a nonzero Ext^1 class."""
    cocycles = ext1_cocycles(C, C)
    if len(cocycles) != 1:
        return None
    psi = cocycles[0]
    base = _base(C.quiver)
    out = _stack(C, m)
    pos = 0
    for b in base.arrows:
        s, t = base.source(b), base.target(b)
        block = [[psi[pos + i * C.dims[s] + j] for j in range(C.dims[s])] for i in range(C.dims[t])]
        pos += C.dims[t] * C.dims[s]
        for M_ in range(m - 1):
            for i in range(C.dims[t]):
                for j in range(C.dims[s]):
                    if block[i][j]:
                        out.mats[b][(M_ + 1) * C.dims[t] + i][M_ * C.dims[s] + j] += block[i][j]
    return out


def extend_Cm(C: Rep, m: int) -> Rep:
    """The module built from m copies of C by successive self-extensions."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if C.framed:
        raise QuiverMismatch("C must be unframed")
    if hom_ext(C, C).ext1 != 1:
        raise OddParity("ext1(C, C) is not 1, so there is no self-extension")
    if m == 1:
        return C
    for builder in (_glue_at_start, _glue_cocycle):
        cand = builder(C, m)
        if cand is None or not relations_hold(cand):
            continue
        if hom_ext(C, cand).hom == 1:
            cand.meta["construction"] = builder.__name__.lstrip("_")
            return cand
    raise NoneFound(f"could not build C_{m}")


# ------------------------------------------------------------ random samples


def random_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        M = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if n == 0 or rank(M, n, n) == n:
            return M


def random_basis_change(rep: Rep, rng: random.Random) -> Rep:
    P = {v: random_invertible(rng, rep.dims[v]) for v in range(len(rep.dims)) if rep.dims[v]}
    for v in range(len(rep.dims)):
        P.setdefault(v, [])
    return change_basis(rep, P)


def crystal_module(space, subset, framed: bool = True) -> Rep:
    """The quotient of A e_0 spanned by a down-closed set of atoms."""
    from .quiver import quiver_for

    qwp = quiver_for(space.geom)
    members = sorted(subset)
    local = {}
    dims = [0] * qwp.N
    for a in members:
        k = space.vertex[a]
        local[a] = dims[k]
        dims[k] += 1
    mats = {h: zeros(dims[qwp.target(h)], dims[qwp.source(h)]) for h in qwp.arrows}
    for a in members:
        for h, b in space.succ[a]:
            if b in local:
                mats[h][local[b]][local[a]] = Fraction(1)
    rep = Rep(qwp, tuple(dims), mats, {"atoms": tuple(members)})
    if not framed:
        return rep
    i_map = zeros(dims[0], 1)
    if 0 in local:
        i_map[local[0]][0] = Fraction(1)
    return framed_rep(rep, 1, i_map)


def random_down_set(space, size: int, rng: random.Random) -> list:
    chosen = {0}
    while len(chosen) < size:
        addable = [
            x
            for x in range(len(space))
            if x not in chosen and all(p in chosen for p in space.preds[x])
        ]
        if not addable:
            break
        chosen.add(rng.choice(addable))
    return sorted(chosen)


def random_framed_rep(geom, rng: random.Random, max_dim: int = 6, space=None) -> Rep:
    """A relation-satisfying framed rep with dim V + dim W <= max_dim."""
    from .crystal import atom_space
    from .quiver import quiver_for

    qwp = quiver_for(geom)
    N = qwp.N

    def piece(budget: int) -> Rep:
        kind = rng.choice(("crystal", "string", "string"))
        if kind == "crystal" and budget >= 2:
            sp = space or atom_space(geom, max_dim)
            sub = random_down_set(sp, rng.randint(1, budget - 1), rng)
            return crystal_module(sp, sub, framed=False)
        length = rng.randint(1, max(1, min(4, budget)))
        n0 = rng.randrange(N)
        word = tuple(rng.choice("+-") for _ in range(length - 1))
        return string_module(qwp, n0, n0 + length - 1, word)

    budget = max_dim - 1
    V = piece(budget)
    if sum(V.dimvec) < budget - 1 and rng.random() < 0.4:
        W = piece(budget - sum(V.dimvec))
        V = direct_sum(
            Rep(qwp, V.dimvec, {a: V.mat(a) for a in qwp.arrows}),
            Rep(qwp, W.dimvec, {a: W.mat(a) for a in qwp.arrows}),
        )
    w = rng.choice((0, 1, 1))
    i_map = [[Fraction(rng.randint(-2, 2)) for _ in range(w)] for _ in range(V.dims[0])]
    return random_basis_change(framed_rep(V, w, i_map), rng)
