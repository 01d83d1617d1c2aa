"""Brute-force count of torus-fixed cyclic quotients of A e_0 (molten crystals).

Atoms are the normal forms of paths starting at vertex 0.  A crystal is a
finite set of atoms closed under taking predecessors, where a is a
predecessor of b when some arrow sends a to b.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from pathlib import Path

from .errors import WindowTooLarge
from .quiver import act, identity_nf, quiver_for
from .series import Series
from .toric import Geometry

NAIVE_LIMIT = 3_000_000


@dataclass
class AtomSpace:
    geom: Geometry
    bound: int
    atoms: list  # PathNF, sorted so that arrows always increase the index
    vertex: list
    depth: list
    succ: list  # succ[a] = list of (arrow, b)
    preds: list  # preds[b] = sorted list of a

    def __len__(self) -> int:
        return len(self.atoms)

    def index(self) -> dict:
        return {nf: j for j, nf in enumerate(self.atoms)}


def _down_size_at_most(preds: dict, start, limit: int) -> bool:
    seen = {start}
    stack = [start]
    while stack:
        for p in preds[stack.pop()]:
            if p not in seen:
                seen.add(p)
                if len(seen) > limit:
                    return False
                stack.append(p)
    return True


def atom_space(geom: Geometry, bound: int) -> AtomSpace:
    """Atoms that can occur in a crystal with at most ``bound`` atoms."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    qwp = quiver_for(geom)
    max_deg = 2 * (bound - 1)
    root = identity_nf(qwp, 0)
    found = {root}
    queue = deque([root])
    edges = []
    while queue:
        a = queue.popleft()
        for h in qwp.out_arrows(a.target):
            b = act(qwp, h, a)
            if b.degree > max_deg:
                continue
            edges.append((a, h, b))
            if b not in found:
                found.add(b)
                queue.append(b)
    preds = {a: [] for a in found}
    for a, _, b in edges:
        preds[b].append(a)
    keep = {a for a in found if _down_size_at_most(preds, a, bound)}
    atoms = sorted(keep, key=lambda nf: (nf.degree, nf.s, nf.m, nf.l))
    pos = {nf: j for j, nf in enumerate(atoms)}
    succ = [[] for _ in atoms]
    pred_idx = [[] for _ in atoms]
    for a, h, b in edges:
        if a in pos and b in pos:
            succ[pos[a]].append((h, pos[b]))
            pred_idx[pos[b]].append(pos[a])
    depth = [0] * len(atoms)
    for j in range(1, len(atoms)):
        depth[j] = 1 + min(depth[p] for p in pred_idx[j])
    return AtomSpace(
        geom,
        bound,
        atoms,
        [nf.target for nf in atoms],
        depth,
        succ,
        [sorted(set(p)) for p in pred_idx],
    )


def is_down_closed(space: AtomSpace, subset) -> bool:
    members = set(subset)
    return all(p in members for b in members for p in space.preds[b])


def _cache_path(cache_dir, geom: Geometry, D: int) -> Path:
    return Path(cache_dir) / f"crystal-{geom.digest()}-D{D}.json"


def enumerate_molten(geom: Geometry, D: int, cache_dir: str | os.PathLike | None = None) -> Series:
    """Generating function of crystals by dimension vector, up to total size D."""
    if D < 0:
        raise ValueError("D must be >= 0")
    if cache_dir is not None:
        path = _cache_path(cache_dir, geom, D)
        if path.exists():
            return Series.from_json(json.loads(path.read_text()))
    N = geom.N
    counts: dict = {}
    if D == 0:
        result = Series.one(N, 0)
    else:
        space = atom_space(geom, D)
        n_atoms = len(space)
        missing = [len(p) for p in space.preds]
        vertex = space.vertex
        succ = space.succ
        dims = [0] * N

        def grow(last: int, size: int) -> None:
            key = tuple(dims)
            counts[key] = counts.get(key, 0) + 1
            if size == D:
                return
            for x in range(last + 1, n_atoms):
                if missing[x]:
                    continue
                for _, y in succ[x]:
                    missing[y] -= 1
                dims[vertex[x]] += 1
                grow(x, size + 1)
                dims[vertex[x]] -= 1
                for _, y in succ[x]:
                    missing[y] += 1

        # the empty crystal; its only child is {e_0} (index 0)
        counts[(0,) * N] = 1
        for _, y in succ[0]:
            missing[y] -= 1
        dims[vertex[0]] += 1
        grow(0, 1)
        result = Series(N, D, counts)
    if cache_dir is not None:
        path = _cache_path(cache_dir, geom, D)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(result.to_json(), sort_keys=True))
    return result


def enumerate_molten_naive(geom: Geometry, D: int) -> Series:
    """Same count by filtering every subset of the atom window; for cross-checks only."""
    N = geom.N
    if D == 0:
        return Series.one(N, 0)
    space = atom_space(geom, D)
    W = len(space)
    work = sum(comb(W, k) for k in range(D + 1))
    if work > NAIVE_LIMIT:
        raise WindowTooLarge(f"{work} subsets of a {W}-atom window exceed the naive limit")
    counts: dict = {}
    for size in range(D + 1):
        for subset in combinations(range(W), size):
            if size and 0 not in subset:
                continue
            if not is_down_closed(space, subset):
                continue
            dims = [0] * N
            for a in subset:
                dims[space.vertex[a]] += 1
            key = tuple(dims)
            counts[key] = counts.get(key, 0) + 1
    return Series(N, D, counts)


def crystal_module_data(space: AtomSpace, subset) -> tuple:
    """Basis per vertex and arrow images for the quotient module spanned by subset."""
    members = sorted(subset)
    where = {a: j for j, a in enumerate(members)}
    images = {}
    for a in members:
        for h, b in space.succ[a]:
            if b in where:
                images.setdefault(h, []).append((a, b))
    return members, images
