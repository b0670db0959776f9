"""Minimal forbidden structures for the smallest-eigenvalue-at-least-minus-3
class.

Everything here works through the shifted special matrix M = Sp + I.  A
candidate matrix must pass five exact tests (mhat_check); candidates are
enumerated up to simultaneous row/column permutation (enumerate_mhat);
each candidate is lifted back to a slim/fat graph whose special matrix
reproduces it (realize_special); and minimality — every proper fat induced
subgraph stays above the -3 line — is certified by exhaustive subgraph
checking (minimal_forbidden_check).

Matrix-level and graph-level filters are deliberately distinct: the 1x1
matrix (-a) passes mhat_check for every a in the enumerated diagonal range,
but only a = 3 survives the graph-level minimality test, because the slim
vertex with a+1 fat neighbors always contains the four-fat configuration
as a proper subgraph.  The enumeration therefore keeps diagonal -4
(rejecting it would smuggle a graph-level argument into the matrix filter)
and cuts the range there, since every deeper diagonal dies the same death.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product

from .exactmat import IntSymMatrix, psd_check
from .hoffman import FAT, SLIM, Graph, HoffmanGraph, special_matrix, validate


class NotForbidden(Exception):
    """Raised when the graph under test is not below the -3 line at all."""


@dataclass(frozen=True)
class CandidateMatrix:
    matrix: IntSymMatrix
    order: int


@dataclass(frozen=True)
class ForbiddenVerdict:
    is_minimal_forbidden: bool
    witness_subgraph: HoffmanGraph | None


def _support_connected(m: IntSymMatrix) -> bool:
    k = m.order
    if k == 0:
        return False
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(k):
            if j != i and j not in seen and m[i, j] != 0:
                seen.add(j)
                frontier.append(j)
    return len(seen) == k


def mhat_check(m: IntSymMatrix):
    """The five candidate-matrix properties; None means accepted, otherwise
    the name of the first violated one.

    Checked in order: "reducible" (the nonzero-entry support graph is
    disconnected), "entry-range" (some off-diagonal exceeds 1 or some
    diagonal is positive), "pair-bound" (some M_ij below
    max(M_ii, M_jj) - 1), "eigenvalue" (smallest eigenvalue is not below
    -2), "submatrix" (some proper principal submatrix dips below -2).
    The last two are exact shift-2 PSD checks; by interlacing only the
    order-(k-1) principal submatrices need testing for the final one.
    """
    k = m.order
    if not _support_connected(m):
        return "reducible"
    for i in range(k):
        if m[i, i] > 0:
            return "entry-range"
        for j in range(i + 1, k):
            if m[i, j] > 1:
                return "entry-range"
            if m[i, j] < max(m[i, i], m[j, j]) - 1:
                return "pair-bound"
    if psd_check(m, 2).is_psd:
        return "eigenvalue"
    if k > 1:
        for drop in range(k):
            keep = [i for i in range(k) if i != drop]
            if not psd_check(m.submatrix(keep), 2).is_psd:
                return "submatrix"
    return None


_DIAG_FLOOR = -4


def _search_order(k: int):
    """All accepted matrices of exact order k with weakly decreasing
    diagonal, one representative row ordering per assignment.

    Rows are grown one at a time.  Any matrix passing the full filter has
    every proper principal submatrix above the -2 line, so partial leading
    blocks are required to pass the shift-2 PSD check as they are built;
    that single prune keeps the search tiny.
    """
    rows = []

    def leading_psd() -> bool:
        return psd_check(IntSymMatrix(rows), 2).is_psd

    def extend(j):
        if j == k:
            m = IntSymMatrix(rows)
            if mhat_check(m) is None:
                yield m
            return
        d_top = rows[j - 1][j - 1] if j else 0
        for d in range(d_top, _DIAG_FLOOR - 1, -1):
            ranges = [range(max(rows[i][i], d) - 1, 2) for i in range(j)]
            for off in product(*ranges):
                new = [list(r) + [off[i]] for i, r in enumerate(rows)]
                new.append(list(off) + [d])
                rows[:] = new
                if j + 1 == k or leading_psd():
                    yield from extend(j + 1)
                rows[:] = [r[:-1] for r in rows[:-1]]

    yield from extend(0)


def _canonical(m: IntSymMatrix):
    """Lexicographically least vectorization over simultaneous
    permutations.  Full orbit for small orders; beyond that, vertices are
    pre-partitioned by permutation-invariant keys (diagonal entry plus the
    sorted row multiset) and only block-respecting orders are tried, which
    is still a class invariant."""
    k = m.order
    rows = m.rows()
    if k <= 6:
        perms = permutations(range(k))
    else:
        key = {i: (rows[i][i], tuple(sorted(rows[i]))) for i in range(k)}
        blocks = {}
        for i in range(k):
            blocks.setdefault(key[i], []).append(i)
        parts = [blocks[g] for g in sorted(blocks)]
        perms = (sum(ch, ()) for ch in
                 product(*(permutations(p) for p in parts)))
    return min(tuple(rows[p[i]][p[j]] for i in range(k) for j in range(k))
               for p in perms)


def enumerate_mhat(max_order: int):
    """Candidate matrices up to simultaneous-permutation equivalence, for
    every order up to max_order.

    Deterministic: within each order the canonical vectorizations are
    emitted in sorted order.  Orders beyond 10 are refused — with both
    allowed diagonal values 0 and -1 the candidates provably stop at
    order 10, and deeper diagonals force orders 1 or 2.
    """
    if not 1 <= max_order <= 10:
        raise ValueError("order must be between 1 and 10")
    out = []
    for k in range(1, max_order + 1):
        seen = {}
        for m in _search_order(k):
            c = _canonical(m)
            if c not in seen:
                seen[c] = c
        for c in sorted(seen):
            rows = [c[i * k:(i + 1) * k] for i in range(k)]
            out.append(CandidateMatrix(IntSymMatrix(rows), k))
    return out


def realize_special(cand: CandidateMatrix):
    """A fat slim/fat graph whose special matrix plus I equals the
    candidate, or None when the exhaustive search proves there is none.

    Each slim vertex i needs exactly 1 - M_ii fat neighbors, and each pair
    must satisfy A_ij - |common fats| = M_ij with A_ij in {0, 1}.  Fat
    vertices are multisets of slim-subsets ("blocks"); the search walks
    the subsets largest-first and assigns multiplicities, so row deficits
    can always be topped up by the trailing singletons.
    """
    m = cand.matrix
    k = cand.order
    if mhat_check(m) is not None:
        raise ValueError("candidate fails the matrix-level filter")
    caps = [1 - m[i, i] for i in range(k)]
    lo = {}
    hi = {}
    for i in range(k):
        for j in range(i + 1, k):
            vals = [a - m[i, j] for a in (0, 1)
                    if 0 <= a - m[i, j] <= min(caps[i], caps[j])]
            if not vals:
                return None
            lo[i, j] = min(vals)
            hi[i, j] = max(vals)

    blocks = sorted((tuple(b) for s in range(k, 0, -1)
                     for b in combinations(range(k), s)),
                    key=lambda b: (-len(b), b))
    last_with_pair = {}
    for idx, b in enumerate(blocks):
        for i, j in combinations(b, 2):
            last_with_pair[i, j] = idx

    row_used = [0] * k
    pair_used = {p: 0 for p in lo}
    chosen = []

    def feasible_after(idx):
        for (i, j), need in lo.items():
            deficit = need - pair_used[i, j]
            if deficit <= 0:
                continue
            if last_with_pair[i, j] < idx:
                return False
            if deficit > min(caps[i] - row_used[i], caps[j] - row_used[j]):
                return False
        return True

    def assign(idx):
        if idx == len(blocks):
            if all(row_used[i] == caps[i] for i in range(k)):
                if all(lo[p] <= pair_used[p] <= hi[p] for p in lo):
                    return True
            return False
        b = blocks[idx]
        if len(b) == 1:
            top = caps[b[0]] - row_used[b[0]]
            choices = [top]
        else:
            top = min(caps[i] - row_used[i] for i in b)
            for i, j in combinations(b, 2):
                top = min(top, hi[i, j] - pair_used[i, j])
            choices = range(max(top, 0), -1, -1)
        for t in choices:
            for i in b:
                row_used[i] += t
            for p in combinations(b, 2):
                pair_used[p] += t
            chosen.append((b, t))
            if feasible_after(idx + 1) and assign(idx + 1):
                return True
            chosen.pop()
            for i in b:
                row_used[i] -= t
            for p in combinations(b, 2):
                pair_used[p] -= t
        return False

    if not assign(0):
        return None

    fat_blocks = [b for b, t in chosen for _ in range(t)]
    edges = []
    for i in range(k):
        for j in range(i + 1, k):
            a = m[i, j] + pair_used[i, j]
            assert a in (0, 1)
            if a:
                edges.append((i, j))
    for f, b in enumerate(fat_blocks):
        edges.extend((i, k + f) for i in b)
    h = HoffmanGraph(Graph(k + len(fat_blocks), edges),
                     [SLIM] * k + [FAT] * len(fat_blocks))
    res = validate(h)
    assert res.ok and res.is_fat
    assert special_matrix(h).matrix == m.shifted(-1)
    return h


def minimal_forbidden_check(f: HoffmanGraph) -> ForbiddenVerdict:
    """Certify that every proper fat induced subgraph stays above the -3
    line, or exhibit one that does not.

    Subsets are scanned largest-first (lexicographic within a size), so a
    negative verdict carries a maximal violating subgraph.  Raises
    NotForbidden when f itself is above the line, ValueError when f is
    not a valid fat graph.
    """
    res = validate(f)
    if not res.ok or not res.is_fat:
        raise ValueError("input must be a valid fat slim/fat graph")
    if psd_check(special_matrix(f).matrix, 3).is_psd:
        raise NotForbidden("graph is above the -3 line")
    n = f.graph.n
    labels = f.labels
    for size in range(n - 1, 0, -1):
        for subset in combinations(range(n), size):
            sub_labels = [labels[v] for v in subset]
            if SLIM not in sub_labels:
                continue
            h = HoffmanGraph(f.graph.subgraph(subset), sub_labels)
            sub_res = validate(h)
            if not sub_res.ok or not sub_res.is_fat:
                continue
            if not psd_check(special_matrix(h).matrix, 3).is_psd:
                return ForbiddenVerdict(False, h)
    return ForbiddenVerdict(True, None)
