"""Command-line surface: text file formats, JSON run reports, exit codes.

Subcommands wrap the library modules one capability each.  Reports go to
stdout as a single JSON object (``enum-forbidden`` streams JSON lines
instead, one candidate per line, so long runs can be resumed or cut);
diagnostics and timing go to stderr.  Identical inputs and seeds produce
byte-identical stdout, which is why wall-clock data never appears there.

Exit codes: 0 success/feasible, 1 infeasible or violation, 2 inconclusive,
3 input error (bad flags, malformed files, violated preconditions).

File formats
------------
Graph      header ``graph <n> <m_edges>`` then one ``u v`` line per edge,
           0-indexed, u < v.
Hoffman    header ``hoffman <n_slim> <n_fat> <m_edges>``; vertices
           0..n_slim-1 are slim, the next n_fat are fat; then edges.
Matrix     header ``matrix <n>`` then n whitespace-separated integer rows.

Certificates embedded in reports are JSON objects {scale, ambient_dim,
columns, gram_digest}; ``verify_certificate`` rebuilds the Gram matrix
from the columns alone and re-checks it bit for bit.
"""

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import families
from .assoc import AssocParams, PreconditionViolated, associated_hoffman
from .exactmat import IntSymMatrix, lambda_min_bracket, psd_check
from .forbidden import (CandidateMatrix, enumerate_mhat, mhat_check,
                        minimal_forbidden_check, realize_special)
from .hoffman import FAT, SLIM, Graph, HoffmanGraph, special_matrix, validate
from .lattice import (GramLattice, IntegralDecomposition, OutOfScope,
                      certify_graph, decompose_generic)
from .spectra import float_spectrum, limit_bound_witness, limit_report

try:
    from importlib.metadata import version as _dist_version
    TOOL_VERSION = _dist_version("hofflat")
except Exception:  # pragma: no cover - source tree without install metadata
    TOOL_VERSION = "0.1.0"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3

# Enumeration ceiling used when --max-order is not given; anything above it
# gets an explicit banner saying the census is incomplete.
DEFAULT_MAX_ORDER = 5


# ---------------------------------------------------------------------------
# file formats


def _file_digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _nonblank_lines(path: str):
    """(1-based line number, stripped text) for every non-blank line."""
    with open(path) as fh:
        raw = fh.read().splitlines()
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(raw) if ln.strip()]
    if not rows:
        raise ValueError("line 1: empty file")
    return rows


def sniff_kind(path: str) -> str:
    """First token of the first non-blank line: graph, hoffman or matrix."""
    return _nonblank_lines(path)[0][1].split()[0]


def load_graph(path: str) -> Graph:
    return families.ingest_graph(path).graph


def load_matrix(path: str) -> IntSymMatrix:
    rows = _nonblank_lines(path)
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "matrix":
        raise ValueError('line %d: expected header "matrix <n>"' % lineno)
    try:
        n = int(parts[1])
    except ValueError:
        raise ValueError("line %d: order must be an integer" % lineno)
    if n < 1:
        raise ValueError("line %d: order must be positive" % lineno)
    if len(rows) - 1 != n:
        raise ValueError("header announces %d rows, file has %d"
                         % (n, len(rows) - 1))
    out = []
    for lineno, ln in rows[1:]:
        toks = ln.split()
        if len(toks) != n:
            raise ValueError("line %d: expected %d entries" % (lineno, n))
        try:
            out.append([int(t) for t in toks])
        except ValueError:
            raise ValueError("line %d: entries must be integers" % lineno)
    try:
        return IntSymMatrix(out)
    except ValueError as exc:
        raise ValueError("matrix file invalid: %s" % exc)


def load_hoffman(path: str) -> HoffmanGraph:
    rows = _nonblank_lines(path)
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 4 or parts[0] != "hoffman":
        raise ValueError(
            'line %d: expected header "hoffman <n_slim> <n_fat> <m_edges>"'
            % lineno)
    try:
        n_slim, n_fat, m = (int(p) for p in parts[1:])
    except ValueError:
        raise ValueError("line %d: header counts must be integers" % lineno)
    if n_slim < 0 or n_fat < 0 or n_slim + n_fat < 1 or m < 0:
        raise ValueError("line %d: bad sizes in header" % lineno)
    if len(rows) - 1 != m:
        raise ValueError("header announces %d edges, file has %d"
                         % (m, len(rows) - 1))
    n = n_slim + n_fat
    edges, seen = [], set()
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
    labels = (SLIM,) * n_slim + (FAT,) * n_fat
    return HoffmanGraph(Graph(n, edges), labels)


def graph_text(g: Graph) -> str:
    edges = sorted(g.edges())
    lines = ["graph %d %d" % (g.n, len(edges))]
    lines.extend("%d %d" % e for e in edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# certificates


def _gram_digest(m: IntSymMatrix) -> str:
    body = "\n".join(" ".join(str(v) for v in row) for row in m.rows())
    return hashlib.sha256(("gram %d\n%s" % (m.order, body)).encode()).hexdigest()


def certificate_dict(dec: IntegralDecomposition) -> dict:
    return {
        "scale": dec.scale,
        "ambient_dim": dec.ambient_dim,
        "columns": [list(dec.column(j)) for j in range(dec.gram.order)],
        "gram_digest": _gram_digest(dec.gram),
    }


def verify_certificate(cert: dict) -> IntSymMatrix:
    """Re-check a certificate from its columns alone.

    Rebuilds the Gram matrix as (Z^T Z) / scale, checks integrality, checks
    the digest, then reconstructs the decomposition object so the library's
    own Z^T Z = scale * gram verification runs a second time on the same
    data.  Returns the implied Gram matrix.
    """
    scale = int(cert["scale"])
    ambient = int(cert["ambient_dim"])
    cols = [tuple(int(v) for v in c) for c in cert["columns"]]
    if any(len(c) != ambient for c in cols):
        raise ValueError("certificate columns disagree with ambient_dim")
    k = len(cols)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            ip = sum(a * b for a, b in zip(cols[i], cols[j]))
            if ip % scale:
                raise ValueError(
                    "inner product at (%d, %d) not divisible by scale" % (i, j))
            row.append(ip // scale)
        rows.append(row)
    gram = IntSymMatrix(rows)
    if _gram_digest(gram) != cert["gram_digest"]:
        raise ValueError("gram digest mismatch")
    z_rows = [[cols[j][i] for j in range(k)] for i in range(ambient)]
    IntegralDecomposition(scale, z_rows, gram)
    return gram


# ---------------------------------------------------------------------------
# report plumbing


def _render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _envelope(args, paths) -> dict:
    return {
        "command": list(args._argv),
        "version": TOOL_VERSION,
        "seed": args.seed,
        "jobs": args.jobs,
        "inputs": [{"path": p, "sha256": _file_digest(p)} for p in paths],
    }


def _status_code(status: str) -> int:
    if status == "feasible":
        return EXIT_OK
    if status == "infeasible":
        return EXIT_VIOLATION
    return EXIT_INCONCLUSIVE


# ---------------------------------------------------------------------------
# subcommands


def _cmd_eigen(args):
    g = load_graph(args.graph)
    a = g.adjacency_matrix()
    spectrum = [float(x) for x in float_spectrum(a)]
    lo, hi = lambda_min_bracket(a, Fraction(1, 2 ** 20))
    rep = _envelope(args, [args.graph])
    rep.update({
        "n": g.n,
        "edge_count": len(g.edges()),
        "spectrum": spectrum,
        "lambda_min_bracket": {"lo": str(lo), "hi": str(hi)},
    })
    return EXIT_OK, rep


def _cmd_psd(args):
    kind = sniff_kind(args.input)
    if kind == "graph":
        m = load_graph(args.input).adjacency_matrix()
    elif kind == "matrix":
        m = load_matrix(args.input)
    else:
        raise ValueError("psd takes a graph or matrix file, got %r header"
                         % kind)
    verdict = psd_check(m, args.shift)
    rep = _envelope(args, [args.input])
    rep.update({
        "kind": kind,
        "shift": str(args.shift),
        "is_psd": verdict.is_psd,
        "is_singular": verdict.is_singular,
        "failure_index": verdict.failure_index,
    })
    return (EXIT_OK if verdict.is_psd else EXIT_VIOLATION), rep


def _cmd_sp(args):
    h = load_hoffman(args.hoffman)
    vr = validate(h)
    rep = _envelope(args, [args.hoffman])
    if not vr.ok:
        rep.update({"verdict": "invalid", "violation": vr.violation})
        return EXIT_VIOLATION, rep
    sm = special_matrix(h)
    rep.update({
        "verdict": "ok",
        "is_fat": vr.is_fat,
        "slim": list(sm.slim),
        "matrix": [list(r) for r in sm.matrix.rows()],
    })
    return EXIT_OK, rep


def _cmd_assoc(args):
    g = load_graph(args.graph)
    rep = _envelope(args, [args.graph])
    # The CLI always runs with strict=False: the runtime consistency checks
    # inside clique_classes carry the burden below the guaranteed regime.
    params = AssocParams(args.m, args.n, strict=False)
    try:
        h = associated_hoffman(g, params)
    except PreconditionViolated as exc:
        rep.update({"verdict": "precondition-violated", "detail": str(exc)})
        return EXIT_VIOLATION, rep
    vr = validate(h)
    sm = special_matrix(h)
    pv = psd_check(sm.matrix, 3)
    fats = h.fat_vertices()
    rep.update({
        "verdict": "ok",
        "n_slim": len(h.slim_vertices()),
        "n_fat": len(fats),
        "quasi_cliques": [sorted(h.graph.neighbors(f)) for f in fats],
        "is_fat": vr.is_fat,
        "psd_shift3": {"is_psd": pv.is_psd, "is_singular": pv.is_singular},
    })
    return EXIT_OK, rep


def _cmd_certify(args):
    g = load_graph(args.graph)
    rep = _envelope(args, [args.graph])
    try:
        out = certify_graph(g, args.s)
    except OutOfScope as exc:
        rep.update({"status": "out-of-scope", "detail": str(exc)})
        return EXIT_VIOLATION, rep
    cert = None
    if out.decomposition is not None:
        cert = certificate_dict(out.decomposition)
        verify_certificate(cert)
    rep.update({
        "status": out.status,
        "s": args.s,
        "t": out.t,
        "route": out.route,
        "nodes": out.nodes,
        "certificate": cert,
    })
    return _status_code(out.status), rep


def _cmd_decompose(args):
    m = load_matrix(args.gram)
    b = GramLattice(m, provenance="cli decompose %s" % args.gram)
    out = decompose_generic(b, args.s, max_extra_dim=args.max_extra_dim,
                            node_budget=args.node_budget)
    cert = None
    if out.decomposition is not None:
        cert = certificate_dict(out.decomposition)
        verify_certificate(cert)
    rep = _envelope(args, [args.gram])
    rep.update({
        "status": out.status,
        "s": args.s,
        "nodes": out.nodes,
        "certificate": cert,
    })
    return _status_code(out.status), rep


def _cmd_enum_forbidden(args):
    k = args.max_order
    counts = {"classes": 0, "realized": 0, "minimal": 0}
    for cand in enumerate_mhat(k):
        h = realize_special(cand)
        minimal = None
        if h is not None:
            minimal = minimal_forbidden_check(h).is_minimal_forbidden
        entry = {
            "order": cand.order,
            "rows": [list(r) for r in cand.matrix.rows()],
            "realized": h is not None,
            "minimal": minimal,
        }
        counts["classes"] += 1
        counts["realized"] += h is not None
        counts["minimal"] += bool(minimal)
        sys.stdout.write(json.dumps(entry, sort_keys=True) + "\n")
    summary = {
        "command": list(args._argv),
        "version": TOOL_VERSION,
        "max_order": k,
    }
    summary.update(counts)
    sys.stdout.write(json.dumps(summary, sort_keys=True) + "\n")
    if k < 10:
        sys.stderr.write(
            "inconclusive above order %d: higher orders were not searched, "
            "the census is complete only up to the requested ceiling\n" % k)
    return EXIT_OK, None


def _cmd_realize(args):
    m = load_matrix(args.matrix)
    rep = _envelope(args, [args.matrix])
    slug = mhat_check(m)
    if slug is not None:
        rep.update({"verdict": "rejected", "violation": slug})
        return EXIT_VIOLATION, rep
    h = realize_special(CandidateMatrix(m, m.order))
    if h is None:
        rep.update({"verdict": "unrealizable"})
        return EXIT_VIOLATION, rep
    fats = h.fat_vertices()
    rep.update({
        "verdict": "realized",
        "n_slim": len(h.slim_vertices()),
        "n_fat": len(fats),
        "edges": [list(e) for e in sorted(h.graph.edges())],
        "minimal_forbidden": minimal_forbidden_check(h).is_minimal_forbidden,
    })
    return EXIT_OK, rep


def _cmd_limit(args):
    m = load_matrix(args.matrix)
    i2 = sorted(set(args.i2))
    i1 = [i for i in range(m.order) if i not in set(i2)]
    out = limit_report(m, (i1, i2), args.nmax)
    wit = limit_bound_witness(m, (i1, i2), args.nmax)
    rep = _envelope(args, [args.matrix])
    rep.update({
        "i2": list(i2),
        "n_values": list(out.n_values),
        "mu": [float(x) for x in out.mu],
        "lambda_min": float(out.lambda_min_m),
        "bound_gaps": [float(x) for x in out.bound_gaps],
        "witness_residual": float(wit.residual_max),
    })
    return EXIT_OK, rep


def _cmd_gen(args):
    base = None
    paths = []
    if args.base is not None:
        paths.append(args.base)
        if sniff_kind(args.base) == "hoffman":
            base = load_hoffman(args.base)
        else:
            base = load_graph(args.base)
    spec = families.FamilySpec(args.family, tuple(args.params),
                               base=base, seed=args.seed)
    g = families.generate(spec)
    text = graph_text(g)
    if args.out is not None:
        with open(args.out, "w") as fh:
            fh.write(text)
        rep = _envelope(args, paths)
        rep.update({"written": args.out, "n": g.n,
                    "edge_count": len(g.edges())})
        return EXIT_OK, rep
    sys.stdout.write(text)
    return EXIT_OK, None


def _cmd_ingest(args):
    report = families.ingest_graph(args.file)  # parse errors -> exit 3
    rep = _envelope(args, [args.file])
    if args.expect_srg is not None:
        try:
            report = families.ingest_graph(args.file, args.expect_srg)
        except ValueError as exc:
            rep.update({"verdict": "srg-mismatch", "detail": str(exc)})
            return EXIT_VIOLATION, rep
    rep.update({
        "verdict": "ok",
        "n": report.graph.n,
        "edge_count": report.edge_count,
        "srg": list(report.srg_params) if report.srg_params else None,
    })
    return EXIT_OK, rep


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped onto exit code 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, "%s: error: %s\n" % (self.prog, message))


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational number: %r" % text)


def _index_list(text: str):
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected comma-separated integers, got %r" % text)


def _srg_tuple(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected v,k,lambda,mu")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("expected four integers")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized commands (default 0)")
    common.add_argument("--jobs", type=int, default=1,
                        help="shard ceiling; shards currently run "
                             "sequentially (default 1)")

    parser = _Parser(prog="hofflat",
                     description="exact spectral certificates and root "
                                 "lattice decompositions")
    sub = parser.add_subparsers(dest="cmd", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("eigen", parents=[common],
                       help="float spectrum plus a certified rational "
                            "bracket for the smallest eigenvalue")
    p.add_argument("graph")
    p.set_defaults(handler=_cmd_eigen)

    p = sub.add_parser("psd", parents=[common],
                       help="exact PSD check of a matrix or adjacency "
                            "matrix after a diagonal shift")
    p.add_argument("input", metavar="matrix|graph")
    p.add_argument("--shift", type=_fraction, default=Fraction(0),
                   help="rational shift t in M + tI (default 0)")
    p.set_defaults(handler=_cmd_psd)

    p = sub.add_parser("sp", parents=[common],
                       help="special matrix of a slim/fat graph")
    p.add_argument("hoffman")
    p.set_defaults(handler=_cmd_sp)

    p = sub.add_parser("assoc", parents=[common],
                       help="associated slim/fat graph from clique classes")
    p.add_argument("graph")
    p.add_argument("-m", type=int, required=True,
                   help="edge-multiplicity parameter (quasi-clique width)")
    p.add_argument("-n", type=int, required=True,
                   help="minimum maximal-clique size")
    p.set_defaults(handler=_cmd_assoc)

    p = sub.add_parser("certify", parents=[common],
                       help="s-integrability certificate for a graph with "
                            "smallest eigenvalue at least -3")
    p.add_argument("graph")
    p.add_argument("--s", type=int, required=True, help="target scale s")
    p.set_defaults(handler=_cmd_certify)

    p = sub.add_parser("decompose", parents=[common],
                       help="integer column decomposition Z^T Z = s*G of a "
                            "PSD Gram matrix")
    p.add_argument("gram", metavar="matrix")
    p.add_argument("--s", type=int, required=True, help="target scale s")
    p.add_argument("--max-extra-dim", type=int, default=8)
    p.add_argument("--node-budget", type=int, default=10 ** 8)
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("enum-forbidden", parents=[common],
                       help="stream the candidate-matrix census as JSON "
                            "lines with realizability and minimality flags")
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                   help="order ceiling, 1..10 (default %d)"
                        % DEFAULT_MAX_ORDER)
    p.set_defaults(handler=_cmd_enum_forbidden)

    p = sub.add_parser("realize", parents=[common],
                       help="run the five-property filter on a matrix and "
                            "realize it as a slim/fat graph if possible")
    p.add_argument("matrix")
    p.set_defaults(handler=_cmd_realize)

    p = sub.add_parser("limit", parents=[common],
                       help="clique-expansion eigenvalue sequence and its "
                            "convergence bound")
    p.add_argument("matrix")
    p.add_argument("--i2", type=_index_list, required=True,
                   help="comma-separated indices of the expanded part")
    p.add_argument("--nmax", type=int, required=True,
                   help="largest expansion size n")
    p.set_defaults(handler=_cmd_limit)

    p = sub.add_parser("gen", parents=[common],
                       help="generate a named graph family; writes the "
                            "graph file format to stdout")
    p.add_argument("family",
                   help="path | cycle | complete | claw | half_apex | "
                        "affine_e6 | random_line | line | cone | "
                        "cone_clique | expand")
    p.add_argument("params", nargs="*", type=int,
                   help="integer family parameters")
    p.add_argument("--base", help="graph or hoffman file for families "
                                  "that modify a base graph")
    p.add_argument("--out", help="write the graph here and report to "
                                 "stdout instead")
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("ingest", parents=[common],
                       help="validate an edge-list file, optionally "
                            "checking strong regularity exactly")
    p.add_argument("file")
    p.add_argument("--expect-srg", type=_srg_tuple, default=None,
                   metavar="v,k,lambda,mu")
    p.set_defaults(handler=_cmd_ingest)

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    if args.jobs < 1:
        sys.stderr.write("error: --jobs must be at least 1\n")
        return EXIT_INPUT
    args._argv = list(argv)
    started = time.perf_counter()
    try:
        code, report = args.handler(args)
    except (OSError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_INPUT
    if report is not None:
        sys.stdout.write(_render(report))
    sys.stderr.write("[hofflat] %s finished in %.3fs\n"
                     % (args.cmd, time.perf_counter() - started))
    return code


if __name__ == "__main__":
    sys.exit(main())
