"""Vertex-labeled graphs with slim/fat parts and their special matrices.

A labeled graph here is a simple graph whose vertices are tagged slim or
fat, with fat vertices pairwise non-adjacent and every fat vertex adjacent
to some slim vertex.  Its spectral data lives in the special matrix
Sp = A_s - C C^T, where A_s is the slim-slim adjacency block and C the
slim-fat incidence.  Replacing fat vertices by cliques produces ordinary
graphs whose smallest eigenvalue decreases toward lambda_min(Sp).
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactmat import IntSymMatrix

SLIM = "s"
FAT = "f"


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("_n", "_adj")

    def __init__(self, n: int, edges=()):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj = [0] * n
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("edge endpoint out of range: (%d, %d)" % (u, v))
            if u == v:
                raise ValueError("loops are not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = n
        self._adj = tuple(adj)

    @property
    def n(self) -> int:
        return self._n

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighbors_mask(self, u: int) -> int:
        return self._adj[u]

    def neighbors(self, u: int):
        m = self._adj[u]
        out = []
        v = 0
        while m:
            if m & 1:
                out.append(v)
            m >>= 1
            v += 1
        return tuple(out)

    def degree(self, u: int) -> int:
        return self._adj[u].bit_count()

    def edges(self):
        return tuple((u, v) for u in range(self._n)
                     for v in self.neighbors(u) if u < v)

    def adjacency_matrix(self) -> IntSymMatrix:
        rows = [[1 if self.has_edge(i, j) else 0 for j in range(self._n)]
                for i in range(self._n)]
        return IntSymMatrix(rows)

    def complement(self) -> "Graph":
        edges = [(u, v) for u in range(self._n) for v in range(u + 1, self._n)
                 if not self.has_edge(u, v)]
        return Graph(self._n, edges)

    def subgraph(self, vertices) -> "Graph":
        """Induced subgraph; vertex i of the result is vertices[i]."""
        vs = [int(v) for v in vertices]
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertices")
        pos = {v: i for i, v in enumerate(vs)}
        edges = [(pos[u], pos[v]) for u in vs for v in self.neighbors(u)
                 if v in pos and pos[u] < pos[v]]
        return Graph(len(vs), edges)

    def is_connected(self) -> bool:
        if self._n == 0:
            return True
        seen = 1
        stack = [0]
        while stack:
            u = stack.pop()
            m = self._adj[u] & ~seen
            v = 0
            while m:
                if m & 1:
                    seen |= 1 << v
                    stack.append(v)
                m >>= 1
                v += 1
        return seen == (1 << self._n) - 1

    def __eq__(self, other):
        return (isinstance(other, Graph) and self._n == other._n
                and self._adj == other._adj)

    def __hash__(self):
        return hash((self._n, self._adj))

    def __repr__(self):
        return "Graph(%d, %r)" % (self._n, list(self.edges()))


class HoffmanGraph:
    """A graph with slim/fat vertex labels.

    Label conditions (fat vertices pairwise non-adjacent, each fat vertex
    with a slim neighbor) are checked by validate(), not the constructor,
    so that violating instances can be built and reported on.
    """

    __slots__ = ("_graph", "_labels")

    def __init__(self, graph: Graph, labels):
        labels = tuple(labels)
        if len(labels) != graph.n:
            raise ValueError("one label per vertex required")
        if any(l not in (SLIM, FAT) for l in labels):
            raise ValueError("labels must be %r or %r" % (SLIM, FAT))
        self._graph = graph
        self._labels = labels

    @property
    def graph(self) -> Graph:
        return self._graph

    @property
    def labels(self):
        return self._labels

    def slim_vertices(self):
        return tuple(v for v, l in enumerate(self._labels) if l == SLIM)

    def fat_vertices(self):
        return tuple(v for v, l in enumerate(self._labels) if l == FAT)

    def fat_neighbors(self, x: int):
        return tuple(v for v in self._graph.neighbors(x)
                     if self._labels[v] == FAT)

    def __eq__(self, other):
        return (isinstance(other, HoffmanGraph) and self._graph == other._graph
                and self._labels == other._labels)

    def __hash__(self):
        return hash((self._graph, self._labels))

    def __repr__(self):
        return "HoffmanGraph(%r, %r)" % (self._graph, "".join(self._labels))


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violation: str | None
    is_fat: bool


def validate(h: HoffmanGraph) -> ValidationResult:
    """Check the two label conditions and report fatness."""
    g = h.graph
    for u in h.fat_vertices():
        for v in g.neighbors(u):
            if h.labels[v] == FAT:
                return ValidationResult(
                    False, "fat vertices %d and %d are adjacent" % (u, v),
                    False)
        if not any(h.labels[v] == SLIM for v in g.neighbors(u)):
            return ValidationResult(
                False, "fat vertex %d has no slim neighbor" % u, False)
    is_fat = bool(h.slim_vertices()) and all(
        h.fat_neighbors(x) for x in h.slim_vertices())
    return ValidationResult(True, None, is_fat)


@dataclass(frozen=True)
class SpecialMatrix:
    matrix: IntSymMatrix
    slim: tuple


def special_matrix(h: HoffmanGraph) -> SpecialMatrix:
    """Sp(h) = A_s - C C^T, indexed by slim vertices in ascending order."""
    check = validate(h)
    if not check.ok:
        raise ValueError("invalid labeled graph: %s" % check.violation)
    slim = h.slim_vertices()
    fat = h.fat_vertices()
    if not slim:
        raise ValueError("no slim vertices")
    g = h.graph
    k = len(slim)
    asym = [[1 if g.has_edge(slim[i], slim[j]) else 0 for j in range(k)]
            for i in range(k)]
    c = [[1 if g.has_edge(slim[i], f) else 0 for f in fat] for i in range(k)]
    rows = [[asym[i][j] - sum(c[i][t] * c[j][t] for t in range(len(fat)))
             for j in range(k)] for i in range(k)]
    # entry-by-entry cross-check against the neighborhood formulas
    for i in range(k):
        fn_i = set(h.fat_neighbors(slim[i]))
        assert rows[i][i] == -len(fn_i)
        for j in range(i + 1, k):
            fn_j = set(h.fat_neighbors(slim[j]))
            expect = (1 if g.has_edge(slim[i], slim[j]) else 0) - len(fn_i & fn_j)
            assert rows[i][j] == expect
    return SpecialMatrix(IntSymMatrix(rows), slim)


def generated_subgraph(h: HoffmanGraph, w) -> HoffmanGraph:
    """Subgraph generated by slim subset w: w plus adjacent fat vertices.

    Vertices are relabeled: sorted(w) first, then the attached fat vertices
    in ascending order.
    """
    w = sorted(set(int(x) for x in w))
    slim = set(h.slim_vertices())
    for x in w:
        if x not in slim:
            raise ValueError("vertex %d is not slim" % x)
    g = h.graph
    fats = sorted(f for f in h.fat_vertices()
                  if any(g.has_edge(f, x) for x in w))
    order = w + fats
    sub = g.subgraph(order)
    labels = [SLIM] * len(w) + [FAT] * len(fats)
    return HoffmanGraph(sub, labels)


def canonical_fat(h: Graph, mode: str) -> HoffmanGraph:
    """Attach fat vertices to a slim graph: one private fat per vertex
    (mode "p") or a single fat vertex adjacent to everything (mode "q").
    """
    if h.n < 1:
        raise ValueError("graph must be nonempty")
    edges = list(h.edges())
    if mode == "p":
        edges += [(i, h.n + i) for i in range(h.n)]
        g = Graph(2 * h.n, edges)
        labels = [SLIM] * h.n + [FAT] * h.n
    elif mode == "q":
        edges += [(i, h.n) for i in range(h.n)]
        g = Graph(h.n + 1, edges)
        labels = [SLIM] * h.n + [FAT]
    else:
        raise ValueError("mode must be 'p' or 'q'")
    return HoffmanGraph(g, labels)


def clique_replace(h: HoffmanGraph, sizes):
    """Replace fat vertices by slim cliques joined to their neighborhoods.

    sizes maps fat vertices to positive clique sizes.  Result vertex order:
    original slim vertices first (original ascending order), then each
    replaced fat vertex's clique block (fat vertices ascending), then any
    fat vertices that were kept.  Returns a plain Graph when every fat
    vertex is replaced, otherwise a HoffmanGraph.
    """
    fat = h.fat_vertices()
    sizes = {int(f): int(n) for f, n in sizes.items()}
    for f, n in sizes.items():
        if f not in fat:
            raise ValueError("vertex %d is not fat" % f)
        if n < 1:
            raise ValueError("clique size must be positive")
    slim = h.slim_vertices()
    pos = {v: i for i, v in enumerate(slim)}
    g = h.graph
    edges = [(pos[u], pos[v]) for u in slim for v in g.neighbors(u)
             if h.labels[v] == SLIM and u < v]
    nxt = len(slim)
    for f in fat:
        if f not in sizes:
            continue
        block = range(nxt, nxt + sizes[f])
        nxt += sizes[f]
        for a in block:
            for b in block:
                if a < b:
                    edges.append((a, b))
            for u in g.neighbors(f):
                edges.append((pos[u], a))
    kept = [f for f in fat if f not in sizes]
    for f in kept:
        me = nxt
        nxt += 1
        for u in g.neighbors(f):
            edges.append((pos[u], me))
    out = Graph(nxt, edges)
    if not kept:
        return out
    labels = [SLIM] * (nxt - len(kept)) + [FAT] * len(kept)
    return HoffmanGraph(out, labels)


def clique_replace_uniform(h: HoffmanGraph, n: int) -> Graph:
    """Replace every fat vertex by an n-clique."""
    return clique_replace(h, {f: n for f in h.fat_vertices()})


def contains_induced(g: HoffmanGraph, f: HoffmanGraph):
    """Label-preserving induced-subgraph embedding of f into g, or None.

    Deterministic: pattern vertices are placed in decreasing-degree order
    and candidates tried ascending, so the first embedding found is fixed.
    """
    gn, fn = g.graph.n, f.graph.n
    if fn > gn:
        return None
    order = sorted(range(fn), key=lambda v: (-f.graph.degree(v), v))
    # prefer extending along edges of already-placed vertices
    placed_order = []
    remaining = list(order)
    while remaining:
        pick = None
        for v in remaining:
            if any(f.graph.has_edge(v, u) for u in placed_order):
                pick = v
                break
        if pick is None:
            pick = remaining[0]
        placed_order.append(pick)
        remaining.remove(pick)

    fat_deg_f = [len(f.fat_neighbors(v)) if f.labels[v] == SLIM else 0
                 for v in range(fn)]
    fat_deg_g = [len(g.fat_neighbors(v)) if g.labels[v] == SLIM else 0
                 for v in range(gn)]

    assignment = {}
    used = set()

    def feasible(v, c):
        if g.labels[c] != f.labels[v]:
            return False
        if g.graph.degree(c) < f.graph.degree(v):
            return False
        if f.labels[v] == SLIM and fat_deg_g[c] < fat_deg_f[v]:
            return False
        for u, cu in assignment.items():
            if f.graph.has_edge(v, u) != g.graph.has_edge(c, cu):
                return False
        return True

    def extend(i):
        if i == fn:
            return True
        v = placed_order[i]
        for c in range(gn):
            if c in used or not feasible(v, c):
                continue
            assignment[v] = c
            used.add(c)
            if extend(i + 1):
                return True
            del assignment[v]
            used.discard(c)
        return False

    if extend(0):
        return dict(sorted(assignment.items()))
    return None
