"""Integral lattices from shifted graph matrices.

Takes a positive semidefinite integer Gram matrix apart: splits off
norm-1 generators, removes duplicate roots, classifies the connected
norm-2 components against the A/D/E list, realizes each component by
concrete integer root vectors (scale 1 or 2), and reassembles an exact
integral factorization of the original matrix.  A generic backtracking
decomposer covers inputs outside the structured route.

Scale convention: an IntegralDecomposition holds Z with Z^T Z = s * gram;
the underlying real factor is Z / sqrt(s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .exactmat import IntSymMatrix, integer_rowspace_basis, psd_check


class NotNormBounded(Exception):
    """Diagonal outside {0, 1, 2}: not a unit/root situation."""


class NotRootLattice(Exception):
    """(rank, discriminant) pair matches no irreducible root lattice."""


class Unrepresentable(Exception):
    """Requested scale cannot represent the family (E at scale 1)."""


class IsometryNotFound(Exception):
    """Root-vector assignment search exhausted; indicates a bug upstream."""


class ExtractionFailed(Exception):
    """Clique-certificate extraction could not locate the shared index."""


class OutOfScope(Exception):
    """Smallest eigenvalue below -3."""


class GramLattice:
    """A PSD integer Gram matrix plus a note about where it came from."""

    __slots__ = ("_gram", "_provenance")

    def __init__(self, gram: IntSymMatrix, provenance: str = ""):
        verdict = psd_check(gram)
        if not verdict.is_psd:
            raise ValueError(
                "gram matrix is not positive semidefinite "
                "(failure at index %r)" % verdict.failure_index)
        self._gram = gram
        self._provenance = provenance

    @property
    def gram(self) -> IntSymMatrix:
        return self._gram

    @property
    def provenance(self) -> str:
        return self._provenance

    def __repr__(self):
        return "GramLattice(order=%d, provenance=%r)" % (
            self._gram.order, self._provenance)


class IntegralDecomposition:
    """Integer matrix Z with Z^T Z = scale * gram, verified on construction."""

    __slots__ = ("_scale", "_z", "_gram")

    def __init__(self, scale: int, z_rows, gram: IntSymMatrix):
        scale = int(scale)
        if scale < 1:
            raise ValueError("scale must be a positive integer")
        z = tuple(tuple(int(v) for v in row) for row in z_rows)
        m = gram.order
        if any(len(row) != m for row in z):
            raise ValueError("column count must match gram order")
        if z:
            arr = np.array(z, dtype=np.int64)
            gr = arr.T @ arr
        else:
            gr = np.zeros((m, m), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                if gr[i, j] != scale * gram[i, j]:
                    raise ValueError(
                        "Z^T Z mismatch at (%d, %d): %d != %d * %d"
                        % (i, j, int(gr[i, j]), scale, gram[i, j]))
        self._scale = scale
        self._z = z
        self._gram = gram

    @property
    def scale(self) -> int:
        return self._scale

    @property
    def z(self):
        return self._z

    @property
    def gram(self) -> IntSymMatrix:
        return self._gram

    @property
    def ambient_dim(self) -> int:
        return len(self._z)

    def column(self, j: int):
        return tuple(row[j] for row in self._z)

    def __repr__(self):
        return "IntegralDecomposition(scale=%d, ambient=%d, cols=%d)" % (
            self._scale, self.ambient_dim, self._gram.order)


def _trim_zero_rows(rows):
    out = [tuple(r) for r in rows]
    while out and all(v == 0 for v in out[-1]):
        out.pop()
    return tuple(out)


# ---------------------------------------------------------------------------
# Gram reduction: units, duplicate roots, connected components


@dataclass(frozen=True)
class ComponentBlock:
    members: tuple      # original generator indices, ascending
    gram: IntSymMatrix


@dataclass(frozen=True)
class ReducedGram:
    unit_count: int
    components: tuple   # of ComponentBlock
    log: tuple          # replayable operations, in order applied


def reduce_gram(b: GramLattice) -> ReducedGram:
    """Split off units, drop duplicate roots, and find root components.

    The log records, in order: ("zero", i) for a column that is | became
    zero, ("unit", i, ((j, c), ...)) for splitting off the norm-1
    generator i (every remaining generator j changed to v_j - c v_i),
    and ("dup", removed, kept, sign) for a duplicate root pair.
    """
    g = b.gram
    m = g.order
    for i in range(m):
        if g[i, i] > 2 or g[i, i] < 0:
            raise NotNormBounded(
                "diagonal entry %d at index %d outside {0, 1, 2}"
                % (g[i, i], i))
    work = {i: {j: g[i, j] for j in range(m) if g[i, j] != 0}
            for i in range(m)}
    alive = set(range(m))
    log = []
    unit_count = 0

    def entry(i, j):
        return work[i].get(j, 0)

    def set_entry(i, j, v):
        if v:
            work[i][j] = v
        else:
            work[i].pop(j, None)

    while True:
        zero = next((i for i in sorted(alive) if entry(i, i) == 0), None)
        if zero is not None:
            # PSD forces the whole row to be zero
            assert not any(entry(zero, j) for j in alive)
            log.append(("zero", zero))
            alive.discard(zero)
            continue
        unit = next((i for i in sorted(alive) if entry(i, i) == 1), None)
        if unit is not None:
            coeffs = []
            others = sorted(alive - {unit})
            cs = {j: entry(j, unit) for j in others}
            for j in others:
                if cs[j]:
                    coeffs.append((j, cs[j]))
            # v_j <- v_j - c_j * e: Gram update G_jk -= c_j c_k
            for j in others:
                for k in others:
                    if k < j:
                        continue
                    v = entry(j, k) - cs[j] * cs[k]
                    set_entry(j, k, v)
                    set_entry(k, j, v)
            log.append(("unit", unit, tuple(coeffs)))
            alive.discard(unit)
            unit_count += 1
            continue
        dup = None
        for i in sorted(alive):
            for j, v in sorted(work[i].items()):
                if j > i and j in alive and abs(v) == 2:
                    dup = (i, j, 1 if v == 2 else -1)
                    break
            if dup:
                break
        if dup is not None:
            kept, removed, sign = dup
            log.append(("dup", removed, kept, sign))
            alive.discard(removed)
            continue
        break

    # connected components of the nonzero-inner-product relation
    remaining = sorted(alive)
    seen = set()
    blocks = []
    for start in remaining:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in work[i]:
                if j in alive and j not in comp:
                    comp.add(j)
                    stack.append(j)
        seen |= comp
        members = tuple(sorted(comp))
        rows = [[entry(i, j) for j in members] for i in members]
        blocks.append(ComponentBlock(members, IntSymMatrix(rows)))
    blocks.sort(key=lambda c: c.members[0])
    return ReducedGram(unit_count, tuple(blocks), tuple(log))


# ---------------------------------------------------------------------------
# Component classification


@dataclass(frozen=True)
class RootComponent:
    family: str          # "A", "D", "E6", "E7", "E8"
    rank: int
    discriminant: int
    basis_coords: tuple  # rows of Fractions over the component's generators

    def __post_init__(self):
        fam, r, d = self.family, self.rank, self.discriminant
        ok = ((fam == "A" and d == r + 1 and r >= 1)
              or (fam == "D" and d == 4 and r >= 4)
              or (fam == "E6" and (r, d) == (6, 3))
              or (fam == "E7" and (r, d) == (7, 2))
              or (fam == "E8" and (r, d) == (8, 1)))
        if not ok:
            raise ValueError("inconsistent root component %r rank %d disc %d"
                             % (fam, r, d))


def _solve_fractions(a_rows, b):
    """Solve a x = b exactly; a nonsingular square, all Fractions."""
    n = len(a_rows)
    aug = [[Fraction(a_rows[i][j]) for j in range(n)] + [Fraction(b[i])]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col]
        aug[col] = [v / inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _exact_det(m: IntSymMatrix) -> int:
    v = psd_check(m)
    if not v.is_psd:
        raise ValueError("determinant helper expects PSD input")
    prod = Fraction(1)
    for p in v.pivot_trace:
        prod *= p
    assert prod.denominator == 1
    return int(prod)


def classify_component(gc: GramLattice) -> RootComponent:
    """Name the irreducible root lattice generated by norm-2 generators.

    Works by extracting an exact lattice basis (greedy independent subset,
    rational coordinates, Hermite form of the scaled coordinate rows) and
    reading (rank, discriminant) off the basis Gram.
    """
    g = gc.gram
    m = g.order
    if any(g[i, i] != 2 for i in range(m)):
        raise ValueError("component diagonal must be all 2")
    # connectivity of the support graph
    comp = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(m):
            if j != i and g[i, j] != 0 and j not in comp:
                comp.add(j)
                stack.append(j)
    if len(comp) != m:
        raise ValueError("component is not connected")

    # greedy maximal independent subset
    subset = []
    for i in range(m):
        trial = subset + [i]
        verdict = psd_check(g.submatrix(trial))
        if verdict.is_psd and not verdict.is_singular:
            subset.append(i)
    r = len(subset)
    a_rows = [[Fraction(g[i, j]) for j in subset] for i in subset]

    coords = []
    for j in range(m):
        rhs = [g[i, j] for i in subset]
        coords.append(_solve_fractions(a_rows, rhs))
    denom = 1
    for row in coords:
        for v in row:
            denom = denom * v.denominator // math.gcd(denom, v.denominator)
    scaled = [tuple(int(v * denom) for v in row) for row in coords]
    hnf = integer_rowspace_basis(scaled)
    assert len(hnf) == r

    # Gram of the actual lattice basis b_k = hnf_k / denom (in subset coords)
    basis_gram = [[0] * r for _ in range(r)]
    for a in range(r):
        for c in range(a, r):
            acc = Fraction(0)
            for p in range(r):
                for q in range(r):
                    acc += Fraction(hnf[a][p] * hnf[c][q]) * a_rows[p][q]
            acc /= denom * denom
            assert acc.denominator == 1
            basis_gram[a][c] = basis_gram[c][a] = int(acc)
    disc = _exact_det(IntSymMatrix(basis_gram))

    position = {idx: p for p, idx in enumerate(subset)}
    basis_coords = tuple(
        tuple(Fraction(hnf[a][position[idx]], denom) if idx in position
              else Fraction(0)
              for idx in range(m))
        for a in range(r))

    if disc == r + 1:
        family = "A"
    elif disc == 4 and r >= 4:
        family = "D"
    elif (r, disc) == (6, 3):
        family = "E6"
    elif (r, disc) == (7, 2):
        family = "E7"
    elif (r, disc) == (8, 1):
        family = "E8"
    else:
        raise NotRootLattice("rank %d discriminant %d matches no root lattice"
                             % (r, disc))
    return RootComponent(family, r, disc, basis_coords)


# ---------------------------------------------------------------------------
# Standard models and explicit embeddings

# Integer images sqrt(2) * u^i of the eight norm-2 generators whose last
# 6, 7, 8 span E6, E7, E8 in one coordinate system.
_E_GENERATORS = (
    (0, 1, 1, 0, 1, 0, 0, 1),
    (0, -1, 0, 1, -1, 1, 0, 0),
    (0, 0, -1, 0, 1, -1, 1, 0),
    (1, 0, 0, -1, 0, 1, -1, 0),
    (-1, 1, 0, 0, -1, 0, 1, 0),
    (1, -1, 1, 0, 0, -1, 0, 0),
    (0, 1, -1, 1, 0, 0, -1, 0),
    (-1, -1, 0, 0, 1, 0, -1, 0),
)


def _family_basis_columns(family: str, rank: int):
    """Integer basis columns for the standard model, at the family's
    native scale (1 for A/D, 2 for E)."""
    if family == "A":
        dim = rank + 1
        cols = [[0] * dim for _ in range(rank)]
        for i in range(rank):
            cols[i][i] = 1
            cols[i][i + 1] = -1
        return cols, 1
    if family == "D":
        dim = rank
        cols = [[0] * dim for _ in range(rank)]
        cols[0][0] = 1
        cols[0][1] = 1
        for i in range(1, rank):
            cols[i][i - 1] = 1
            cols[i][i] = -1
        return cols, 1
    gens = _E_GENERATORS[8 - rank:]
    return [list(v) for v in gens], 2


def _gram_of_columns(cols, scale):
    m = len(cols)
    rows = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            dot = sum(a * b for a, b in zip(cols[i], cols[j]))
            assert dot % scale == 0
            rows[i][j] = dot // scale
    return IntSymMatrix(rows)


def standard_embedding(component: RootComponent, s: int) -> IntegralDecomposition:
    """Integer vectors for a standard basis of the component's family."""
    if s not in (1, 2):
        raise ValueError("scale must be 1 or 2")
    family, rank = component.family, component.rank
    cols, native = _family_basis_columns(family, rank)
    if native == 2 and s == 1:
        raise Unrepresentable("%s is not 1-integrable" % family)
    gram = _gram_of_columns(cols, native)
    if s == native:
        out = cols
    else:  # s == 2, native == 1: stack two copies of the rows
        out = [col + col for col in cols]
    z_rows = [tuple(col[r] for col in out) for r in range(len(out[0]))]
    return IntegralDecomposition(s, z_rows, gram)


def _root_set(family: str, rank: int):
    """All roots of the standard model as integer vectors at native scale.

    The standard basis vectors come first (so searches on standard Grams
    resolve to the identity assignment); the rest follow in lexicographic
    order."""
    roots = []
    if family == "A":
        dim = rank + 1
        for i in range(dim):
            for j in range(dim):
                if i != j:
                    v = [0] * dim
                    v[i] = 1
                    v[j] = -1
                    roots.append(tuple(v))
    elif family == "D":
        for i in range(rank):
            for j in range(i + 1, rank):
                for si in (1, -1):
                    for sj in (1, -1):
                        v = [0] * rank
                        v[i] = si
                        v[j] = sj
                        roots.append(tuple(v))
    else:
        gens = _E_GENERATORS[8 - rank:]
        hnf = integer_rowspace_basis(gens)

        def in_lattice(vec):
            v = list(vec)
            for row in hnf:
                pc = next(i for i, x in enumerate(row) if x)
                if v[pc] % row[pc]:
                    return False
                f = v[pc] // row[pc]
                v = [a - f * b for a, b in zip(v, row)]
            return all(x == 0 for x in v)

        # norm-4 integer vectors: one +-2 entry, or four +-1 entries
        for i in range(8):
            for sgn in (2, -2):
                v = [0] * 8
                v[i] = sgn
                if in_lattice(v):
                    roots.append(tuple(v))
        for support in combinations(range(8), 4):
            for bits in range(16):
                v = [0] * 8
                for b, i in enumerate(support):
                    v[i] = 1 if bits >> b & 1 else -1
                if in_lattice(v):
                    roots.append(tuple(v))
    basis, _ = _family_basis_columns(family, rank)
    basis = [tuple(c) for c in basis]
    rest = sorted(set(roots) - set(basis))
    assert all(b in roots for b in basis)
    return basis + rest


def component_isometry(gc: GramLattice, component: RootComponent,
                       s: int) -> IntegralDecomposition:
    """Assign a concrete root vector to every generator of gc.

    Backtracking over the standard model's root set; the first generator is
    pinned to the lexicographically first root (the isometry group of a
    root lattice is transitive on roots, so nothing is lost), and the
    search is ordered, so the result is deterministic.
    """
    if s not in (1, 2):
        raise ValueError("scale must be 1 or 2")
    family, rank = component.family, component.rank
    native = 2 if family in ("E6", "E7", "E8") else 1
    if native == 2 and s == 1:
        raise Unrepresentable("%s is not 1-integrable" % family)
    g = gc.gram
    m = g.order
    roots = _root_set(family, rank)
    target = {(i, j): native * g[i, j] for i in range(m) for j in range(m)}

    dots = {}

    def dot(a, b):
        key = (a, b) if a <= b else (b, a)
        if key not in dots:
            dots[key] = sum(x * y for x, y in zip(roots[key[0]], roots[key[1]]))
        return dots[key]

    chosen = []

    def extend(i):
        if i == m:
            return True
        for ridx in range(len(roots)) if i else (0,):
            ok = True
            for j in range(i):
                if dot(chosen[j], ridx) != target[(j, i)]:
                    ok = False
                    break
            if ok:
                chosen.append(ridx)
                if extend(i + 1):
                    return True
                chosen.pop()
        return False

    if not extend(0):
        raise IsometryNotFound(
            "no root assignment for %s_%d component of %d generators"
            % (family, rank, m))
    cols = [list(roots[r]) for r in chosen]
    if s != native:  # s == 2 with an A/D model: duplicate coordinates
        cols = [c + c for c in cols]
    z_rows = [tuple(col[r] for col in cols) for r in range(len(cols[0]))]
    return IntegralDecomposition(s, z_rows, g)


# ---------------------------------------------------------------------------
# Generic backtracking decomposer


@dataclass(frozen=True)
class DecomposeOutcome:
    status: str                      # "feasible" | "infeasible" | "inconclusive"
    decomposition: IntegralDecomposition | None
    nodes: int


class _Budget(Exception):
    pass


def decompose_generic(b: GramLattice, s: int, max_extra_dim: int = 8,
                      node_budget: int = 10 ** 8) -> DecomposeOutcome:
    """Search for integer Z with Z^T Z = s * gram, column by column.

    Columns are processed in decreasing-norm order (ties broken toward
    columns adjacent to already-placed ones, then by index).  Coordinates
    never touched before behave canonically: entries there are nonnegative
    and weakly decreasing, which quotients out permutations and sign flips
    of fresh axes.  Exhausting the tree within the ambient bound yields
    "infeasible"; running out of node budget yields "inconclusive".
    """
    g = b.gram
    m = g.order
    rank = sum(1 for p in psd_check(g).pivot_trace if p != 0)
    dim = rank + int(max_extra_dim)
    if m == 0 or dim == 0:
        return DecomposeOutcome("feasible",
                                IntegralDecomposition(s, (), g), 0)

    placed = []            # column indices in placement order
    vecs = {}              # index -> list of ints, length dim
    nodes = 0

    def next_column(remaining):
        def key(i):
            adjacent = any(g[i, p] != 0 for p in placed)
            return (-g[i, i], 0 if adjacent else 1, i)
        return min(remaining, key=key)

    def column_options(i, used):
        """All admissible integer vectors for column i, in search order."""
        target_norm = s * g[i, i]
        partners = [(p, vecs[p]) for p in placed]
        suffix = {}
        for p, v in partners:
            acc = [0] * (dim + 1)
            for c in range(dim - 1, -1, -1):
                acc[c] = acc[c + 1] + v[c] * v[c]
            suffix[p] = acc
        want = {p: s * g[i, p] for p, _ in partners}
        out = []
        vec = [0] * dim

        def rec(c, norm_left, run):
            nonlocal nodes
            nodes += 1
            if nodes > node_budget:
                raise _Budget
            if norm_left == 0:
                for p, v in partners:
                    if run[p] != want[p]:
                        return
                out.append(tuple(vec))
                return
            if c == dim:
                return
            if c >= used:
                # fresh area: nonnegative, weakly decreasing
                cap = math.isqrt(norm_left)
                if c > used:
                    cap = min(cap, vec[c - 1])
                lo = 0
            else:
                cap = math.isqrt(norm_left)
                lo = -cap
            for e in range(cap, lo - 1, -1):
                if e * e > norm_left:
                    continue
                vec[c] = e
                ok = True
                run2 = {}
                for p, v in partners:
                    r = run[p] + e * v[c]
                    rem = want[p] - r
                    if rem * rem > (norm_left - e * e) * suffix[p][c + 1]:
                        ok = False
                        break
                    run2[p] = r
                if ok:
                    rec(c + 1, norm_left - e * e, run2)
                vec[c] = 0

        rec(0, target_norm, {p: 0 for p, _ in partners})
        return out

    def used_coords():
        u = 0
        for v in vecs.values():
            for c in range(dim - 1, -1, -1):
                if v[c]:
                    u = max(u, c + 1)
                    break
        return u

    remaining = set(range(m))

    def search():
        if not remaining:
            return True
        i = next_column(remaining)
        remaining.discard(i)
        options = column_options(i, used_coords())
        placed.append(i)
        for cand in options:
            vecs[i] = list(cand)
            if search():
                return True
            del vecs[i]
        placed.pop()
        remaining.add(i)
        return False

    try:
        found = search()
    except _Budget:
        return DecomposeOutcome("inconclusive", None, nodes)
    if not found:
        return DecomposeOutcome("infeasible", None, nodes)
    rows = _trim_zero_rows(
        [tuple(vecs[j][c] for j in range(m)) for c in range(dim)])
    if not rows:
        rows = ((0,) * m,)
    dec = IntegralDecomposition(s, rows, g)
    return DecomposeOutcome("feasible", dec, nodes)


# ---------------------------------------------------------------------------
# Reassembly of the original generators from a reduction log


def assemble_from_reduction(reduced: ReducedGram, component_realizations,
                            s: int, gram: IntSymMatrix) -> IntegralDecomposition:
    """Rebuild integer columns for every original generator.

    component_realizations must list one IntegralDecomposition per entry of
    reduced.components (same order, scale s).  The reduction log is undone
    back to front; every unit split allocates s fresh coordinates carrying
    a vector of s ones.
    """
    cols = {}
    offset = 0
    for block, dec in zip(reduced.components, component_realizations):
        if dec.scale != s:
            raise ValueError("component realization at wrong scale")
        for pos, idx in enumerate(block.members):
            cols[idx] = {offset + r: v for r, v in enumerate(dec.column(pos))
                         if v}
        offset += dec.ambient_dim

    def add_scaled(dst, src, c):
        for r, v in src.items():
            nv = dst.get(r, 0) + c * v
            if nv:
                dst[r] = nv
            else:
                dst.pop(r, None)

    for op in reversed(reduced.log):
        if op[0] == "zero":
            cols[op[1]] = {}
        elif op[0] == "dup":
            _, removed, kept, sign = op
            cols[removed] = {r: sign * v for r, v in cols[kept].items()}
        else:
            _, unit, coeffs = op
            unit_col = {offset + r: 1 for r in range(s)}
            offset += s
            cols[unit] = dict(unit_col)
            for j, c in coeffs:
                add_scaled(cols[j], unit_col, c)

    m = gram.order
    rows = [tuple(cols[j].get(r, 0) for j in range(m)) for r in range(offset)]
    rows = _trim_zero_rows(rows)
    if not rows:
        rows = ((0,) * m,)
    return IntegralDecomposition(s, rows, gram)


def realize_reduced(b: GramLattice, s: int) -> IntegralDecomposition:
    """Structured route: reduce, classify, realize components, reassemble."""
    info = reduce_gram(b)
    realizations = []
    for block in info.components:
        comp = classify_component(GramLattice(block.gram, "component"))
        realizations.append(
            component_isometry(GramLattice(block.gram, "component"),
                               comp, s))
    return assemble_from_reduction(info, realizations, s, b.gram)


# ---------------------------------------------------------------------------
# Conversions between reduced and full representations


def _full_gram(h, t: int) -> IntSymMatrix:
    """A(H) + L(t): adjacency of the labeled graph plus t on slim diagonal
    positions and 1 on fat positions."""
    from .hoffman import SLIM
    g = h.graph
    n = g.n
    rows = [[0] * n for _ in range(n)]
    for u in range(n):
        rows[u][u] = t if h.labels[u] == SLIM else 1
        for v in g.neighbors(u):
            rows[u][v] = 1
    return IntSymMatrix(rows)


def convert_reduced_full(h, t: int, dec: IntegralDecomposition,
                         direction: str) -> IntegralDecomposition:
    """Move a decomposition between Sp(h)+tI and A(H)+L(t).

    reduced_to_full appends, per fat vertex, a block of s fresh coordinates
    carrying ones; the fat column lives entirely in its own block and every
    adjacent slim column picks the same block up.  full_to_reduced subtracts
    from each slim column the columns of its fat neighbors.
    """
    from .hoffman import SLIM, validate, special_matrix
    check = validate(h)
    if not check.ok:
        raise ValueError("invalid labeled graph: %s" % check.violation)
    if direction not in ("reduced_to_full", "full_to_reduced"):
        raise ValueError("unknown direction %r" % direction)
    sp = special_matrix(h)
    reduced_gram = sp.matrix.shifted(t)
    if not psd_check(reduced_gram).is_psd:
        raise ValueError("smallest eigenvalue below -%d" % t)
    full_gram = _full_gram(h, t)
    s = dec.scale
    slim = h.slim_vertices()
    fat = h.fat_vertices()
    nverts = h.graph.n

    if direction == "reduced_to_full":
        if dec.gram != reduced_gram:
            raise ValueError("input does not decompose Sp + %d I" % t)
        k = dec.ambient_dim
        block = {f: k + s * i for i, f in enumerate(fat)}
        total = k + s * len(fat)
        cols = []
        for v in range(nverts):
            col = [0] * total
            if h.labels[v] == SLIM:
                base = dec.column(slim.index(v))
                col[:k] = list(base)
                for f in h.fat_neighbors(v):
                    for r in range(s):
                        col[block[f] + r] = 1
            else:
                for r in range(s):
                    col[block[v] + r] = 1
            cols.append(col)
        rows = [tuple(c[r] for c in cols) for r in range(total)]
        return IntegralDecomposition(s, rows, full_gram)

    if dec.gram != full_gram:
        raise ValueError("input does not decompose A + L(%d)" % t)
    cols = []
    for x in slim:
        col = list(dec.column(x))
        for f in h.fat_neighbors(x):
            fc = dec.column(f)
            col = [a - b for a, b in zip(col, fc)]
        cols.append(col)
    rows = _trim_zero_rows(
        [tuple(c[r] for c in cols) for r in range(dec.ambient_dim)])
    if not rows:
        rows = ((0,) * len(slim),)
    return IntegralDecomposition(s, rows, reduced_gram)


def clique_lift(h, reduced: IntegralDecomposition, n: int,
                require_regime: bool = True) -> IntegralDecomposition:
    """Turn a reduced scale-1 decomposition into one for the clique
    expansion: each fat vertex contributes one shared fresh coordinate, and
    every clique vertex adds two private fresh coordinates.

    The formula itself only needs Sp + 3I to be PSD; require_regime=False
    skips the check that the smallest eigenvalue is strictly below -2 (used
    for degenerate one-slim demonstrations, where the expansion is a
    complete graph)."""
    from .hoffman import validate, special_matrix, clique_replace_uniform
    if n < 1:
        raise ValueError("clique size must be positive")
    check = validate(h)
    if not check.ok:
        raise ValueError("invalid labeled graph: %s" % check.violation)
    if not check.is_fat:
        raise ValueError("every slim vertex needs a fat neighbor")
    sp = special_matrix(h)
    reduced_gram = sp.matrix.shifted(3)
    if not psd_check(reduced_gram).is_psd:
        raise ValueError("smallest eigenvalue below -3")
    if require_regime and psd_check(sp.matrix.shifted(2)).is_psd:
        raise ValueError("smallest eigenvalue is at least -2; "
                         "the lift needs the interval [-3, -2)")
    if reduced.scale != 1:
        raise ValueError("lift is defined at scale 1")
    if reduced.gram != reduced_gram:
        raise ValueError("input does not decompose Sp + 3I")

    g = clique_replace_uniform(h, n)
    slim = h.slim_vertices()
    fat = h.fat_vertices()
    m = len(slim)
    k = reduced.ambient_dim
    fat_coord = {f: k + i for i, f in enumerate(fat)}
    total = k + len(fat) + 2 * n * len(fat)

    cols = []
    for i, x in enumerate(slim):
        col = [0] * total
        col[:k] = list(reduced.column(i))
        for f in h.fat_neighbors(x):
            col[fat_coord[f]] = 1
        cols.append(col)
    base = k + len(fat)
    for fi, f in enumerate(fat):
        for j in range(n):
            col = [0] * total
            col[fat_coord[f]] = 1
            col[base + 2 * (fi * n + j)] = 1
            col[base + 2 * (fi * n + j) + 1] = 1
            cols.append(col)
    assert len(cols) == g.n == m + n * len(fat)
    rows = [tuple(c[r] for c in cols) for r in range(total)]
    gram = g.adjacency_matrix().shifted(3)
    return IntegralDecomposition(1, rows, gram)


def _support(col):
    return frozenset(i for i, v in enumerate(col) if v)


def clique_extract(h, full: IntegralDecomposition, n: int) -> IntegralDecomposition:
    """Recover a reduced decomposition from one of the clique expansion.

    For each fat vertex the search locates four of its clique columns whose
    supports pairwise meet in one index and jointly meet the adjacent slim
    column's support in a single index r(f) with matching entry; zeroing
    position (r(f), x) for every adjacent slim x yields N'."""
    from .hoffman import validate, special_matrix, clique_replace_uniform
    if n < 20:
        raise ValueError("extraction needs clique size at least 20")
    check = validate(h)
    if not check.ok:
        raise ValueError("invalid labeled graph: %s" % check.violation)
    if not check.is_fat:
        raise ValueError("every slim vertex needs a fat neighbor")
    if full.scale != 1:
        raise ValueError("extraction is defined at scale 1")
    g = clique_replace_uniform(h, n)
    gram = g.adjacency_matrix().shifted(3)
    if full.gram != gram:
        raise ValueError("input does not decompose the clique expansion")

    slim = h.slim_vertices()
    fat = h.fat_vertices()
    m = len(slim)
    columns = [list(full.column(j)) for j in range(g.n)]
    supports = [_support(c) for c in columns]
    for j, sup in enumerate(supports):
        if len(sup) != 3:
            raise ValueError("column %d has support %d, expected 3"
                             % (j, len(sup)))

    zero_at = {}        # slim position -> set of coordinates to clear
    for fi, f in enumerate(fat):
        adj = [i for i, x in enumerate(slim) if f in h.fat_neighbors(x)]
        block = range(m + fi * n, m + (fi + 1) * n)
        x0 = adj[0]
        found = None
        for r in sorted(supports[x0]):
            val = columns[x0][r]
            if abs(val) != 1:
                continue
            cands = [j for j in block
                     if r in supports[j] and columns[j][r] == val]
            for quad in combinations(cands, 4):
                if any(len(supports[a] & supports[b]) != 1
                       for a, b in combinations(quad, 2)):
                    continue
                common = supports[quad[0]]
                for q in quad[1:]:
                    common = common & supports[q]
                if common & supports[x0] == {r}:
                    found = (r, val)
                    break
            if found:
                break
        if found is None:
            raise ExtractionFailed(
                "no qualifying clique columns for fat vertex %d" % f)
        r, val = found
        for i, x in enumerate(slim):
            if f in h.fat_neighbors(x):
                if columns[i][r] != val:
                    raise ExtractionFailed(
                        "slim %d disagrees at shared index %d" % (x, r))
                zero_at.setdefault(i, set()).add(r)
            elif r in supports[i]:
                raise ExtractionFailed(
                    "slim %d unexpectedly touches shared index %d" % (x, r))

    out_cols = []
    for i in range(m):
        col = list(columns[i])
        for r in zero_at.get(i, ()):
            col[r] = 0
        out_cols.append(col)
    rows = _trim_zero_rows(
        [tuple(c[r] for c in out_cols) for r in range(full.ambient_dim)])
    if not rows:
        rows = ((0,) * m,)
    sp = special_matrix(h)
    return IntegralDecomposition(1, rows, sp.matrix.shifted(3))


# ---------------------------------------------------------------------------
# End-to-end certification


@dataclass(frozen=True)
class CertifyOutcome:
    status: str                  # "feasible" | "infeasible" | "inconclusive"
    t: int
    route: str                   # "structural" | "generic"
    decomposition: IntegralDecomposition | None
    nodes: int = 0


def _structural_attempt(g, b: GramLattice, s: int):
    """Try the associated labeled graph route; None when it does not apply."""
    from . import assoc
    from .hoffman import validate, special_matrix
    sizes = sorted({len(c) for c in assoc.large_maximal_cliques(g, 2)},
                   reverse=True)
    for n in sizes:
        try:
            h = assoc.associated_hoffman(
                g, assoc.AssocParams(12, n, strict=False))
        except assoc.PreconditionViolated:
            continue
        if not validate(h).is_fat:
            continue
        sp = special_matrix(h)
        reduced_gram = sp.matrix.shifted(3)
        if not psd_check(reduced_gram).is_psd:
            continue
        try:
            reduced = realize_reduced(
                GramLattice(reduced_gram, "special matrix + 3I"), s)
        except Unrepresentable:
            return None
        full = convert_reduced_full(h, 3, reduced, "reduced_to_full")
        slim = h.slim_vertices()
        rows = _trim_zero_rows(
            [tuple(full.z[r][x] for x in slim)
             for r in range(full.ambient_dim)])
        if not rows:
            rows = ((0,) * len(slim),)
        return IntegralDecomposition(s, rows, b.gram)
    return None


def certify_graph(g, s: int) -> CertifyOutcome:
    """Certify s-integrability of a connected graph with λmin ≥ -3.

    Finds the integer shift t with A + tI positive semidefinite, then tries
    the structural route (associated labeled graph, root-component
    classification, explicit root vectors) when t = 3, falling back to the
    generic column search.  Every certificate is re-verified exactly."""
    if not g.is_connected():
        raise ValueError("graph must be connected")
    a = g.adjacency_matrix()
    t = next((t for t in range(4) if psd_check(a.shifted(t)).is_psd), None)
    if t is None:
        raise OutOfScope("smallest eigenvalue below -3")
    b = GramLattice(a.shifted(t), "adjacency + %dI" % t)
    if t == 3:
        dec = _structural_attempt(g, b, s)
        if dec is not None:
            return CertifyOutcome("feasible", t, "structural", dec)
    out = decompose_generic(b, s)
    return CertifyOutcome(out.status, t, "generic", out.decomposition,
                          out.nodes)
