"""The quiver with potential attached to a partition, and its path normal forms.

Arrows are small tuples:
    ("+", idx)  h+_i with i = idx + 1/2, from vertex idx to idx + 1
    ("-", idx)  h-_i, from idx + 1 to idx
    ("r", k)    the loop r_k at a vertex k of Ir
    ("i", 0)    the framing arrow from the extra vertex to 0
Words are tuples of arrows in the order they are traversed, so the word
(("+", 0), ("-", 0)) is the composite h-_{1/2} o h+_{1/2}.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

from .errors import NotComposable, OddRhombusCount, SignSystemInfeasible
from .toric import Geometry

Arrow = Tuple[str, int]


def arrow_id(a: Arrow) -> str:
    kind, idx = a
    if kind in "+-":
        return f"h{kind}{2 * idx + 1}/2"
    if kind == "r":
        return f"r{idx}"
    return "i"


def parse_arrow_id(text: str) -> Arrow:
    if text == "i":
        return ("i", 0)
    if text.startswith("r"):
        return ("r", int(text[1:]))
    if text[:2] in ("h+", "h-"):
        frac = Fraction(text[2:])
        return (text[1], int(frac - Fraction(1, 2)))
    raise ValueError(f"unknown arrow id {text!r}")


@dataclass(frozen=True)
class QuiverWithPotential:
    N: int
    tau: tuple
    rows: tuple  # sigma_y of each triangle, fixes which loops are Z and which W
    arrows: tuple
    potential: tuple  # (sign, cycle word)
    relations: tuple  # (family, lhs word, rhs word)

    @property
    def Ir(self) -> frozenset:
        return frozenset(k for k, t in enumerate(self.tau) if t == 1)

    @property
    def vertices(self) -> tuple:
        return tuple(range(self.N))

    def source(self, a: Arrow) -> int:
        kind, idx = a
        if kind == "+":
            return idx % self.N
        if kind == "-":
            return (idx + 1) % self.N
        if kind == "r":
            return idx
        return self.N  # framing vertex

    def target(self, a: Arrow) -> int:
        kind, idx = a
        if kind == "+":
            return (idx + 1) % self.N
        if kind == "-":
            return idx % self.N
        if kind == "r":
            return idx
        return 0

    def degree(self, a: Arrow) -> int:
        return 2 if a[0] == "r" else 1

    def out_arrows(self, v: int) -> list:
        return [a for a in self.arrows if self.source(a) == v]

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "Ir": sorted(self.Ir),
            "arrows": [
                {"id": arrow_id(a), "from": self.source(a), "to": self.target(a)}
                for a in self.arrows
            ],
            "potential": [
                {"sign": s, "cycle": [arrow_id(a) for a in c]} for s, c in self.potential
            ],
        }


@dataclass(frozen=True)
class FramedQuiver:
    base: QuiverWithPotential

    @property
    def N(self) -> int:
        return self.base.N

    @property
    def infinity(self) -> int:
        return self.base.N

    @property
    def vertices(self) -> tuple:
        return tuple(range(self.base.N + 1))

    @property
    def arrows(self) -> tuple:
        return self.base.arrows + (("i", 0),)

    @property
    def potential(self) -> tuple:
        return self.base.potential

    def source(self, a: Arrow) -> int:
        return self.base.source(a)

    def target(self, a: Arrow) -> int:
        return self.base.target(a)

    def to_json(self) -> dict:
        out = self.base.to_json()
        out["arrows"].append({"id": "i", "from": "inf", "to": 0})
        out["framed"] = True
        return out


def frame(qwp: QuiverWithPotential) -> FramedQuiver:
    return FramedQuiver(qwp)


def _rows_from_tau(tau: Sequence[int]) -> tuple:
    # tau(k) = +1 iff triangles k-1/2 and k+1/2 sit in the same row
    rows = [0]
    for k in range(1, len(tau)):
        rows.append(rows[-1] if tau[k] == 1 else 1 - rows[-1])
    return tuple(rows)


def _ell_plus(k: int, N: int) -> tuple:
    return (("+", k % N), ("-", k % N))


def _ell_minus(k: int, N: int) -> tuple:
    return (("-", (k - 1) % N), ("+", (k - 1) % N))


def _solve_signs(terms: list, arrows: Iterable[Arrow]) -> list:
    occurrences = defaultdict(list)
    for t, cycle in enumerate(terms):
        for a in cycle:
            occurrences[a].append(t)
    adj = defaultdict(list)
    for a in arrows:
        occ = occurrences[a]
        if len(occ) != 2 or occ[0] == occ[1]:
            raise SignSystemInfeasible(
                f"arrow {arrow_id(a)} occurs in {len(occ)} potential terms, expected two distinct"
            )
        adj[occ[0]].append(occ[1])
        adj[occ[1]].append(occ[0])
    signs: Dict[int, int] = {}
    for start in range(len(terms)):
        if start in signs:
            continue
        signs[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for u in adj[t]:
                if u not in signs:
                    signs[u] = -signs[t]
                    stack.append(u)
                elif signs[u] == signs[t]:
                    raise SignSystemInfeasible("no sign assignment makes every arrow cancel")
    return [signs[t] for t in range(len(terms))]


def relation_families(tau: Sequence[int]) -> list:
    N = len(tau)
    Ir = {k for k in range(N) if tau[k] == 1}
    rels = []
    for idx in range(N):
        a, b = idx, (idx + 1) % N
        hp, hm = ("+", idx), ("-", idx)
        hp_prev, hm_prev = ("+", (idx - 1) % N), ("-", (idx - 1) % N)
        hp_next, hm_next = ("+", (idx + 1) % N), ("-", (idx + 1) % N)
        left_p = (("r", a), hp) if a in Ir else (hm_prev, hp_prev, hp)
        right_p = (hp, ("r", b)) if b in Ir else (hp, hp_next, hm_next)
        left_m = (hm, ("r", a)) if a in Ir else (hm, hm_prev, hp_prev)
        right_m = (("r", b), hm) if b in Ir else (hp_next, hm_next, hm)
        fam = {(True, True): 1, (True, False): 2, (False, True): 3, (False, False): 4}[
            (a in Ir, b in Ir)
        ]
        rels.append((fam, left_p, right_p))
        rels.append((fam, left_m, right_m))
    for k in sorted(Ir):
        rels.append((5, _ell_minus(k, N), _ell_plus(k, N)))
    return rels


def build_quiver(tau: Sequence[int], rows: Sequence[int] | None = None) -> QuiverWithPotential:
    tau = tuple(int(t) for t in tau)
    N = len(tau)
    if N < 1 or any(t not in (1, -1) for t in tau):
        raise ValueError("tau must be a non-empty sequence of +1/-1")
    if sum(1 for t in tau if t == -1) % 2:
        raise OddRhombusCount("the number of k with tau(k) = -1 must be even")
    if rows is None:
        rows = _rows_from_tau(tau)
    rows = tuple(rows)
    Ir = [k for k in range(N) if tau[k] == 1]
    arrows = tuple([("+", i) for i in range(N)] + [("-", i) for i in range(N)] + [("r", k) for k in Ir])
    terms = []
    for k in range(N):
        if tau[k] == 1:
            terms.append(_ell_plus(k, N) + (("r", k),))
            terms.append(_ell_minus(k, N) + (("r", k),))
        else:
            terms.append(_ell_minus(k, N) + _ell_plus(k, N))
    signs = _solve_signs(terms, arrows)
    potential = tuple(zip(signs, terms))
    return QuiverWithPotential(N, tau, rows, arrows, potential, tuple(relation_families(tau)))


def quiver_for(geom: Geometry) -> QuiverWithPotential:
    return build_quiver(geom.tau, tuple(y for _, y in geom.sigma))


# ----------------------------------------------------------- derivatives


def cyclic_derivatives(qwp) -> dict:
    """For each arrow a, the list of (sign, word) summands of d_a(potential)."""
    out = defaultdict(list)
    for sign, cycle in qwp.potential:
        for p, a in enumerate(cycle):
            out[a].append((sign, cycle[p + 1:] + cycle[:p]))
    return dict(out)


def derivative_relations(qwp) -> list:
    """Each derivative as a binomial (lhs, rhs, ok) with ok telling if it is lhs - rhs."""
    rels = []
    for a, summands in cyclic_derivatives(qwp).items():
        if len(summands) != 2 or summands[0][0] != -summands[1][0]:
            rels.append((a, None, None))
            continue
        (s1, w1), (s2, w2) = summands
        rels.append((a, w1, w2) if s1 == 1 else (a, w2, w1))
    return rels


def is_composable(qwp, word: Sequence[Arrow]) -> bool:
    return all(qwp.target(word[j]) == qwp.source(word[j + 1]) for j in range(len(word) - 1))


def paths_by_endpoints(qwp, max_len: int) -> dict:
    """All words of length <= max_len grouped by (source, target, length)."""
    table: Dict[tuple, list] = defaultdict(list)
    frontier = []
    for v in qwp.vertices:
        table[(v, v, 0)].append(())
        frontier.append((v, ()))
    for length in range(1, max_len + 1):
        nxt = []
        for start, word in frontier:
            end = qwp.target(word[-1]) if word else start
            for a in qwp.out_arrows(end):
                w = word + (a,)
                table[(start, qwp.target(a), length)].append(w)
                nxt.append((start, w))
        frontier = nxt
    return table


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def congruence_classes(qwp, generators: Sequence[tuple], max_len: int) -> dict:
    """Partition of all words of length <= max_len under the binomial relations."""
    table = paths_by_endpoints(qwp, max_len)
    uf = _UnionFind()
    all_words = [w for ws in table.values() for w in ws]
    for w in all_words:
        uf.find(w)
    by_end = defaultdict(list)  # words ending at v
    by_start = defaultdict(list)  # words starting at v
    for (s, t, _), ws in table.items():
        by_end[t].extend(ws)
        by_start[s].extend(ws)
    for lhs, rhs in generators:
        s = qwp.source(lhs[0])
        t = qwp.target(lhs[-1])
        room = max_len - max(len(lhs), len(rhs))
        if room < 0:
            continue
        for pre in by_end[s]:
            if len(pre) > room:
                continue
            for post in by_start[t]:
                if len(pre) + len(post) > room:
                    continue
                uf.union(pre + lhs + post, pre + rhs + post)
    return {w: uf.find(w) for w in all_words}


def same_partition(a: dict, b: dict) -> bool:
    if a.keys() != b.keys():
        return False
    fwd, back = {}, {}
    for w in a:
        x, y = a[w], b[w]
        if fwd.setdefault(x, y) != y or back.setdefault(y, x) != x:
            return False
    return True


def check_derivatives_match_relations(qwp, max_len: int = 6) -> bool:
    """Cyclic derivatives and listed relation families generate the same congruence."""
    listed = [(l, r) for _, l, r in qwp.relations]
    derived = []
    for _, l, r in derivative_relations(qwp):
        if l is None:
            return False
        derived.append((l, r))
    if Counter(map(frozenset, listed)) != Counter(map(frozenset, derived)):
        return False
    return same_partition(
        congruence_classes(qwp, listed, max_len), congruence_classes(qwp, derived, max_len)
    )


# ----------------------------------------------------------- normal forms


@dataclass(frozen=True)
class PathNF:
    source: int
    s: int  # signed length of the reduced path: >0 along h+, <0 along h-
    m: int  # power of Z
    l: int  # power of W
    N: int = field(compare=False)

    @property
    def target(self) -> int:
        return (self.source + self.s) % self.N

    @property
    def branch(self) -> str:
        return "X" if self.s >= 0 else "Y"

    @property
    def n(self) -> int:
        return abs(self.s) // self.N

    @property
    def degree(self) -> int:
        return abs(self.s) + 2 * (self.m + self.l)

    @property
    def connector(self) -> tuple:
        d = abs(self.s) % self.N
        if self.s >= 0:
            return tuple(("+", (self.source + j) % self.N) for j in range(d))
        return tuple(("-", (self.source - 1 - j) % self.N) for j in range(d))

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "branch": self.branch,
            "n": self.n,
            "m": self.m,
            "l": self.l,
        }


def _loop_word(qwp, k: int, row: int) -> tuple:
    N = qwp.N
    if qwp.rows[k % N] == row:
        return _ell_plus(k, N)
    if qwp.rows[(k - 1) % N] == row:
        return _ell_minus(k, N)
    return (("r", k),)


def z_word(qwp, k: int) -> tuple:
    return _loop_word(qwp, k, 1)


def w_word(qwp, k: int) -> tuple:
    return _loop_word(qwp, k, 0)


def x_word(qwp, k: int) -> tuple:
    return tuple(("+", (k + j) % qwp.N) for j in range(qwp.N))


def y_word(qwp, k: int) -> tuple:
    return tuple(("-", (k - 1 - j) % qwp.N) for j in range(qwp.N))


def representative(qwp, nf: PathNF) -> tuple:
    """A word whose normal form is nf: Z and W loops first, then the reduced walk."""
    N = qwp.N
    k = nf.source
    walk_arrow = "+" if nf.s >= 0 else "-"
    walk = []
    pos = k
    for _ in range(abs(nf.s)):
        if walk_arrow == "+":
            walk.append(("+", pos))
            pos = (pos + 1) % N
        else:
            walk.append(("-", (pos - 1) % N))
            pos = (pos - 1) % N
    return z_word(qwp, k) * nf.m + w_word(qwp, k) * nf.l + tuple(walk)


def identity_nf(qwp, k: int) -> PathNF:
    return PathNF(k, 0, 0, 0, qwp.N)


def act(qwp, a: Arrow, nf: PathNF) -> PathNF:
    """Normal form of the path nf followed by the arrow a."""
    if qwp.source(a) != nf.target:
        raise NotComposable(f"arrow {arrow_id(a)} does not start at vertex {nf.target}")
    kind, idx = a
    m, l = nf.m, nf.l
    if kind == "r":
        row = qwp.rows[idx]  # both neighbouring triangles share this row
        if row == 0:
            m += 1
        else:
            l += 1
        return PathNF(nf.source, nf.s, m, l, qwp.N)
    step = 1 if kind == "+" else -1
    if nf.s * step < 0:  # the arrow undoes the last step of the walk
        if qwp.rows[idx] == 1:
            m += 1
        else:
            l += 1
    return PathNF(nf.source, nf.s + step, m, l, qwp.N)


def normalize_path(qwp, word: Sequence, start: int | None = None) -> PathNF:
    word = tuple(parse_arrow_id(a) if isinstance(a, str) else tuple(a) for a in word)
    if not word:
        if start is None:
            raise NotComposable("an empty word needs an explicit start vertex")
        return identity_nf(qwp, start % qwp.N)
    if start is not None and qwp.source(word[0]) != start % qwp.N:
        raise NotComposable("word does not start at the given vertex")
    for a in word:
        if a not in qwp.arrows:
            raise NotComposable(f"arrow {arrow_id(a)} is not in the quiver")
    nf = identity_nf(qwp, qwp.source(word[0]))
    for a in word:
        nf = act(qwp, a, nf)
    return nf


def path_basis(qwp, k: int, k2: int, max_length: int) -> list:
    N = qwp.N
    out = []
    for s in range(-max_length, max_length + 1):
        if (k + s - k2) % N:
            continue
        rest = (max_length - abs(s)) // 2
        for total in range(rest + 1):
            for m in range(total + 1):
                out.append(PathNF(k, s, m, total - m, N))
    out.sort(key=lambda nf: (nf.degree, nf.s < 0, abs(nf.s), nf.m, nf.l))
    return out
