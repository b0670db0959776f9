#!/usr/bin/env python3
"""Build the 275-vertex strongly regular data file from first principles.

The package treats the (275, 162, 105, 81) graph as external data validated
on ingestion.  This script produces that data.  Assembly runs through the
binary Golay code:

  * a bordered quadratic-residue circulant gives the 12x24 generator;
  * the 759 weight-8 codewords are the octads;
  * octads through one fixed coordinate, with it deleted, form the Steiner
    system S(4, 7, 23);
  * fixing a second point splits the system into 22 points, 77 hexads
    (blocks through the point, with it removed) and 176 heptads (blocks
    missing the point), and the classical mixed intersection rules give a
    (275, 112, 30, 56) graph;
  * the complement is the graph the package wants.

Both parameter sets are verified by exact neighborhood counting before the
file is written, and the written file is re-read through the package's own
ingestion path as a final check.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hofflat.families import ingest_graph

QR11 = {1, 3, 4, 5, 9}
OUT = os.path.join(os.path.dirname(__file__), "..", "data",
                   "srg_275_162_105_81.edges")


def golay_generator():
    core = [[0 if (j - i) % 11 in QR11 else 1 for j in range(11)]
            for i in range(11)]
    b = [[0] * 12 for _ in range(12)]
    for j in range(1, 12):
        b[0][j] = 1
    for i in range(1, 12):
        b[i][0] = 1
        for j in range(1, 12):
            b[i][j] = core[i - 1][j - 1]
    gens = []
    for i in range(12):
        word = 1 << i
        for j in range(12):
            if b[i][j]:
                word |= 1 << (12 + j)
        gens.append(word)
    return gens


def octads():
    gens = golay_generator()
    words = [0]
    for g in gens:
        words += [w ^ g for w in words]
    out = [w for w in words if w.bit_count() == 8]
    assert len(out) == 759, len(out)
    return out


def steiner_blocks():
    """S(4, 7, 23): octads through coordinate 23, with it deleted."""
    blocks = []
    for w in octads():
        if w >> 23 & 1:
            blocks.append(frozenset(i for i in range(23) if w >> i & 1))
    assert len(blocks) == 253, len(blocks)
    return blocks


def mclaughlin():
    blocks = steiner_blocks()
    hexads = sorted(tuple(sorted(b - {22})) for b in blocks if 22 in b)
    heptads = sorted(tuple(sorted(b)) for b in blocks if 22 not in b)
    assert len(hexads) == 77 and len(heptads) == 176

    def mask(vs):
        m = 0
        for v in vs:
            m |= 1 << v
        return m

    hex_m = [mask(h) for h in hexads]
    hep_m = [mask(h) for h in heptads]
    n = 22 + 77 + 176
    adj = [0] * n

    def join(a, b):
        adj[a] |= 1 << b
        adj[b] |= 1 << a

    for x in range(22):
        for i, h in enumerate(hex_m):
            if not h >> x & 1:
                join(x, 22 + i)
        for i, h in enumerate(hep_m):
            if h >> x & 1:
                join(x, 99 + i)
    for i in range(77):
        for j in range(i + 1, 77):
            if not hex_m[i] & hex_m[j]:
                join(22 + i, 22 + j)
        for j in range(176):
            if (hex_m[i] & hep_m[j]).bit_count() == 3:
                join(22 + i, 99 + j)
    for i in range(176):
        for j in range(i + 1, 176):
            if (hep_m[i] & hep_m[j]).bit_count() == 1:
                join(99 + i, 99 + j)
    return adj


def check_srg(adj, params):
    v, k, lam, mu = params
    assert len(adj) == v
    for x in range(v):
        assert adj[x].bit_count() == k, (x, adj[x].bit_count())
    for x in range(v):
        for y in range(x + 1, v):
            common = (adj[x] & adj[y]).bit_count()
            want = lam if adj[x] >> y & 1 else mu
            assert common == want, (x, y, common, want)


def main():
    adj = mclaughlin()
    check_srg(adj, (275, 112, 30, 56))
    full = (1 << 275) - 1
    comp = [full ^ adj[x] ^ (1 << x) for x in range(275)]
    check_srg(comp, (275, 162, 105, 81))

    edges = [(x, y) for x in range(275) for y in range(x + 1, 275)
             if comp[x] >> y & 1]
    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    with open(OUT, "w") as fh:
        fh.write("graph 275 %d\n" % len(edges))
        for u, v in edges:
            fh.write("%d %d\n" % (u, v))
    report = ingest_graph(OUT, expect_srg=(275, 162, 105, 81))
    print("wrote %s: %d vertices, %d edges, strongly regular %s"
          % (os.path.relpath(OUT), report.graph.n, report.edge_count,
             report.srg_params))


if __name__ == "__main__":
    main()
