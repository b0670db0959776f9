"""Associated labeled graphs from large maximal cliques.

Vertices falling into a common "almost-clique" pattern get one shared fat
neighbor: maximal cliques of size at least n are grouped by the relation
"every vertex of one misses at most m-1 vertices of the other", each group
contributes a fat vertex adjacent to its quasi-clique, and the result is a
labeled graph whose slim part is the input graph.

The grouping relation is only an equivalence under the paper-thin
hypothesis n >= (m+1)^2; this module re-verifies equivalence-ness on every
run instead of assuming it, so smaller n are usable when the verification
passes (and abort loudly when it does not).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exactmat import psd_check
from .hoffman import FAT, SLIM, Graph, HoffmanGraph, validate


class PreconditionViolated(Exception):
    """The computed relation failed to be an equivalence (or quasi-cliques
    came out representative-dependent); points at the n >= (m+1)^2
    hypothesis."""


@dataclass(frozen=True)
class AssocParams:
    m: int
    n: int
    strict: bool = True

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("m must be at least 2")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.strict and self.n < (self.m + 1) ** 2:
            raise ValueError(
                "n = %d is below (m+1)^2 = %d; pass strict=False to run "
                "outside the guaranteed regime (equivalence-ness is still "
                "verified at runtime)" % (self.n, (self.m + 1) ** 2))


@dataclass(frozen=True)
class CliqueClass:
    members: tuple       # sorted vertex tuples, each a maximal clique
    quasi_clique: tuple  # sorted vertex tuple
    params: tuple        # (m, n)


def large_maximal_cliques(g: Graph, n: int):
    """All maximal cliques with at least n vertices.

    Pivoting Bron-Kerbosch on neighbor bitmasks; output sorted by size
    (largest first), ties lexicographic.
    """
    out = []
    nv = g.n
    if nv == 0:
        return []
    masks = [g.neighbors_mask(v) for v in range(nv)]
    full = (1 << nv) - 1

    def expand(r, p, x):
        if not p and not x:
            if r.bit_count() >= n:
                out.append(r)
            return
        # pivot: vertex of p|x with the most neighbors inside p
        both = p | x
        best, best_cnt = -1, -1
        b = both
        while b:
            v = (b & -b).bit_length() - 1
            b &= b - 1
            cnt = (p & masks[v]).bit_count()
            if cnt > best_cnt:
                best, best_cnt = v, cnt
        cand = p & ~masks[best]
        while cand:
            bit = cand & -cand
            v = bit.bit_length() - 1
            cand &= cand - 1
            expand(r | bit, p & masks[v], x & masks[v])
            p &= ~bit
            x |= bit

    expand(0, full, 0)
    cliques = []
    for r in out:
        verts = []
        b = r
        while b:
            verts.append((b & -b).bit_length() - 1)
            b &= b - 1
        cliques.append(tuple(verts))
    cliques.sort(key=lambda c: (-len(c), c))
    return cliques


def k2m_witness(g: Graph, m: int):
    """An induced copy of the (2m+1)-vertex obstruction: a 2m-clique plus a
    vertex adjacent to exactly m of it.  Returns the sorted vertex tuple or
    None.

    At m = 12 a PSD check of A + 3I certifies absence outright (the
    obstruction's smallest eigenvalue lies below -3), skipping the search.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m == 12 and psd_check(g.adjacency_matrix().shifted(3)).is_psd:
        return None
    nv = g.n
    masks = [g.neighbors_mask(v) for v in range(nv)]
    size = 2 * m

    for w in range(nv):
        # grow a clique avoiding w, tracking how many members w sees
        clique = []

        def grow(start, adj_w, nonadj_w):
            if adj_w > m or nonadj_w > m:
                return False
            if len(clique) == size:
                return adj_w == m
            for v in range(start, nv):
                if v == w:
                    continue
                if any(not masks[v] >> u & 1 for u in clique):
                    continue
                a = masks[w] >> v & 1
                clique.append(v)
                if grow(v + 1, adj_w + a, nonadj_w + (1 - a)):
                    return True
                clique.pop()
            return False

        if grow(0, 0, 0):
            return tuple(sorted(clique + [w]))
    return None


def _nonneighbor_counts(g: Graph, cliques):
    """D[x, c] = number of vertices of clique c that x fails to see
    (excluding x itself)."""
    nv = g.n
    a = g.adjacency_matrix().to_numpy(dtype=np.int32)
    mm = np.zeros((len(cliques), nv), dtype=np.int32)
    for ci, c in enumerate(cliques):
        mm[ci, list(c)] = 1
    sizes = mm.sum(axis=1)
    seen = a @ mm.T                       # |N(x) ∩ C|
    return sizes[None, :] - mm.T - seen, mm


def clique_classes(g: Graph, params: AssocParams):
    """Group the large maximal cliques and attach quasi-cliques.

    Merging uses the defining one-way test; afterwards every ordered pair
    inside a class is re-tested (this is the runtime substitute for the
    equivalence claim) and the quasi-clique is recomputed from every member
    and compared against the representative's.
    """
    m, n = params.m, params.n
    if k2m_witness(g, m) is not None:
        raise PreconditionViolated(
            "graph contains the K_%d-plus-halfway-vertex obstruction" % (2 * m))
    cliques = large_maximal_cliques(g, n)
    if not cliques:
        return []
    d, mm = _nonneighbor_counts(g, cliques)
    k = len(cliques)
    bad = (d >= m).astype(np.int32)       # x disqualifies clique c
    conflicts = mm @ bad                  # [c1, c2] = #vertices of c1 bad for c2
    ok = conflicts == 0

    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components
    _, labels = connected_components(csr_matrix(ok), directed=True,
                                     connection="weak")
    groups = {}
    for i in range(k):
        groups.setdefault(labels[i], []).append(i)
    order = sorted(groups.values(), key=lambda idxs: idxs[0])

    classes = []
    for idxs in order:
        sub = ok[np.ix_(idxs, idxs)]
        if not sub.all():
            i, j = np.argwhere(~sub)[0]
            raise PreconditionViolated(
                "cliques %d and %d share a class but fail the pairwise "
                "test; n >= (m+1)^2 = %d does not hold or does not suffice"
                % (idxs[i], idxs[j], (m + 1) ** 2))
        hits = d[:, idxs] <= m - 1        # quasi-clique from every member
        if not (hits == hits[:, :1]).all():
            raise PreconditionViolated(
                "quasi-clique depends on the representative within a class")
        quasi = tuple(int(x) for x in np.flatnonzero(hits[:, 0]))
        members = tuple(sorted(cliques[i] for i in idxs))
        for c in members:
            assert set(c) <= set(quasi)
        classes.append(CliqueClass(members, quasi, (m, n)))
    return classes


def associated_hoffman(g: Graph, params: AssocParams) -> HoffmanGraph:
    """One fat vertex per clique class, adjacent to its quasi-clique."""
    classes = clique_classes(g, params)
    nv = g.n
    edges = list(g.edges())
    for i, cls in enumerate(classes):
        f = nv + i
        edges.extend((x, f) for x in cls.quasi_clique)
    h = HoffmanGraph(Graph(nv + len(classes), edges),
                     [SLIM] * nv + [FAT] * len(classes))
    check = validate(h)
    if not check.ok:
        raise PreconditionViolated(
            "associated graph failed validation: %s" % check.violation)
    return h
