"""Named graph families and edge-list ingestion.

Generators are pure and deterministic; the one randomized family takes an
explicit seed.  The 275-vertex strongly regular base graph is never
constructed here — it is external data validated on ingestion by exact
neighborhood counting, since its uniqueness is a cited classification
result rather than something this package re-proves.
"""

from __future__ import annotations

from dataclasses import dataclass
import random

from .hoffman import Graph, HoffmanGraph, clique_replace_uniform


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple = ()
    base: object = None  # Graph or HoffmanGraph for families that need one
    seed: int = 0


@dataclass(frozen=True)
class IngestReport:
    graph: Graph
    edge_count: int
    srg_params: tuple | None


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs at least one vertex")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def claw(t: int) -> Graph:
    """The star with t leaves."""
    if t < 1:
        raise ValueError("claw needs at least one leaf")
    return Graph(t + 1, [(0, i) for i in range(1, t + 1)])


def half_apex_clique(m: int) -> Graph:
    """A 2m-clique plus an apex adjacent to exactly m of its vertices.

    At m = 1 this is the 3-vertex path; at m = 12 its smallest eigenvalue
    drops below -3, which is what makes it the obstruction the clique
    machinery excludes.
    """
    if m < 1:
        raise ValueError("m must be positive")
    edges = [(i, j) for i in range(2 * m) for j in range(i + 1, 2 * m)]
    edges += [(i, 2 * m) for i in range(m)]
    return Graph(2 * m + 1, edges)


def affine_e6_tree() -> Graph:
    """The 7-vertex tree: a 5-path, a vertex joined to its middle, and a
    pendant on that vertex.  Its adjacency matrix plus 2I is singular
    positive semidefinite."""
    return Graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)])


def line_graph(g: Graph) -> Graph:
    es = list(g.edges())
    edges = [(i, j) for i in range(len(es)) for j in range(i + 1, len(es))
             if set(es[i]) & set(es[j])]
    return Graph(len(es), edges)


def random_generalized_line_graph(k: int, dim: int | None = None,
                                  seed: int = 0) -> Graph:
    """A k-vertex graph whose adjacency matrix is Z^T Z - 2I for an integer
    matrix Z with norm-2 columns and pairwise inner products in {0, 1}.

    Columns are sampled as two-coordinate +/-1 vectors; each new column
    must hit inner product 1 with at least one earlier column, so the
    result is connected.  Deterministic under the seed.
    """
    if k < 1:
        raise ValueError("need at least one column")
    if dim is None:
        dim = k + 2
    if dim < 2:
        raise ValueError("ambient dimension must be at least 2")
    rng = random.Random(seed)
    cols = []
    attempts = 0
    while len(cols) < k:
        attempts += 1
        if attempts > 500 * k:
            raise ValueError("sampling stalled; enlarge the dimension")
        a = rng.randrange(dim)
        b = rng.randrange(dim - 1)
        if b >= a:
            b += 1
        col = {a: rng.choice((1, -1)), b: rng.choice((1, -1))}
        ips = [sum(col.get(i, 0) * c.get(i, 0) for i in col) for c in cols]
        if any(ip not in (0, 1) for ip in ips):
            continue
        if cols and 1 not in ips:
            continue
        cols.append(col)
    edges = []
    for i in range(k):
        for j in range(i + 1, k):
            ip = sum(cols[i].get(t, 0) * cols[j].get(t, 0) for t in cols[i])
            if ip:
                edges.append((i, j))
    return Graph(k, edges)


def k_point_cone(g: Graph, k: int) -> Graph:
    """Add k mutually adjacent vertices, each joined to every vertex of g."""
    if k < 1:
        raise ValueError("k must be positive")
    n = g.n
    edges = list(g.edges())
    edges += [(v, n + i) for i in range(k) for v in range(n)]
    edges += [(n + i, n + j) for i in range(k) for j in range(i + 1, k)]
    return Graph(n + k, edges)


def cone_with_pendant_clique(base: Graph, m: int) -> Graph:
    """Cone over the base, with an m-clique joined to the cone vertex only.

    Over the ingested 275-vertex base this family keeps smallest eigenvalue
    exactly -3 for every m; only that eigenvalue claim is checked here, the
    deeper non-2-integrability being a cited result.
    """
    if m < 1:
        raise ValueError("m must be positive")
    n = base.n
    cone = n
    edges = list(base.edges())
    edges += [(v, cone) for v in range(n)]
    edges += [(cone, n + 1 + i) for i in range(m)]
    edges += [(n + 1 + i, n + 1 + j) for i in range(m)
              for j in range(i + 1, m)]
    return Graph(n + 1 + m, edges)


_FIXED = {
    "path": (path_graph, 1),
    "cycle": (cycle_graph, 1),
    "complete": (complete_graph, 1),
    "claw": (claw, 1),
    "half_apex": (half_apex_clique, 1),
}


def generate(spec: FamilySpec):
    """Dispatch a family by name.

    Families taking a base graph ("line", "cone", "cone_clique", "expand")
    read it from spec.base; "random_line" consumes spec.seed.
    """
    name = spec.name
    if name in _FIXED:
        fn, argc = _FIXED[name]
        if len(spec.params) != argc:
            raise ValueError("%s takes %d parameter(s)" % (name, argc))
        return fn(*spec.params)
    if name == "affine_e6":
        if spec.params:
            raise ValueError("affine_e6 takes no parameters")
        return affine_e6_tree()
    if name == "random_line":
        if len(spec.params) == 1:
            return random_generalized_line_graph(spec.params[0],
                                                 seed=spec.seed)
        if len(spec.params) == 2:
            return random_generalized_line_graph(*spec.params,
                                                 seed=spec.seed)
        raise ValueError("random_line takes 1 or 2 parameters")
    if name == "line":
        if not isinstance(spec.base, Graph):
            raise ValueError("line needs a base graph")
        return line_graph(spec.base)
    if name == "cone":
        if not isinstance(spec.base, Graph) or len(spec.params) != 1:
            raise ValueError("cone needs a base graph and one parameter")
        return k_point_cone(spec.base, spec.params[0])
    if name == "cone_clique":
        if not isinstance(spec.base, Graph) or len(spec.params) != 1:
            raise ValueError("cone_clique needs a base graph and one "
                             "parameter")
        return cone_with_pendant_clique(spec.base, spec.params[0])
    if name == "expand":
        if not isinstance(spec.base, HoffmanGraph) or len(spec.params) != 1:
            raise ValueError("expand needs a base slim/fat graph and one "
                             "parameter")
        return clique_replace_uniform(spec.base, spec.params[0])
    raise ValueError("unknown family: %s" % name)


def ingest_graph(path: str, expect_srg: tuple | None = None) -> IngestReport:
    """Load a graph from an edge-list file, optionally verifying strong
    regularity by exact neighborhood counting.

    Format: header line "graph <n> <m>", then m lines "u v" with
    0 <= u < v < n, no duplicates.  Errors carry 1-based line numbers.
    """
    with open(path) as fh:
        lines = fh.read().splitlines()
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not rows:
        raise ValueError("line 1: empty file")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "graph":
        raise ValueError('line %d: expected header "graph <n> <m>"' % lineno)
    try:
        n, m = int(parts[1]), int(parts[2])
    except ValueError:
        raise ValueError("line %d: header counts must be integers" % lineno)
    if n < 1 or m < 0:
        raise ValueError("line %d: bad sizes in header" % lineno)
    if len(rows) - 1 != m:
        raise ValueError("header announces %d edges, file has %d"
                         % (m, len(rows) - 1))
    edges = []
    seen = set()
    for lineno, ln in rows[1:]:
        toks = ln.split()
        if len(toks) != 2:
            raise ValueError('line %d: expected "u v"' % lineno)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ValueError("line %d: endpoints must be integers" % lineno)
        if not 0 <= u < v < n:
            raise ValueError("line %d: endpoints out of range or unordered"
                             % lineno)
        if (u, v) in seen:
            raise ValueError("line %d: duplicate edge" % lineno)
        seen.add((u, v))
        edges.append((u, v))
    g = Graph(n, edges)
    if expect_srg is None:
        return IngestReport(g, m, None)
    v_, k_, lam, mu = expect_srg
    if n != v_:
        raise ValueError("not strongly regular %s: order is %d"
                         % (expect_srg, n))
    masks = [g.neighbors_mask(x) for x in range(n)]
    for x in range(n):
        if masks[x].bit_count() != k_:
            raise ValueError("not strongly regular %s: vertex %d has "
                             "degree %d" % (expect_srg, x,
                                            masks[x].bit_count()))
    for x in range(n):
        for y in range(x + 1, n):
            common = (masks[x] & masks[y]).bit_count()
            want = lam if g.has_edge(x, y) else mu
            if common != want:
                raise ValueError("not strongly regular %s: pair (%d, %d) "
                                 "has %d common neighbors, wanted %d"
                                 % (expect_srg, x, y, common, want))
    return IngestReport(g, m, tuple(expect_srg))
