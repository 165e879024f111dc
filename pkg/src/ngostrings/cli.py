"""Command-line surface: tables, graphs, Gale duals, Tutte data, strata.

Every subcommand prints deterministic, byte-stable text; ``--json`` switches
to a structured mode in which every integer is a decimal string, so
arbitrary-precision values survive any JSON parser.  Domain errors exit 1,
usage errors exit 2.

A persistent Tutte memo cache can be supplied with ``--cache PATH`` or the
NGO_STRINGS_CACHE environment variable (the flag wins).  Corrupt or
version-mismatched cache files are ignored with a warning, and outputs are
identical with a warm or cold cache.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import ResourceLimitError
from .graphs import (
    betti1,
    boundary_matrix,
    dump_graph,
    load_graph,
    spectral_dual_quiver,
    to_dot,
)
from .homology import matroid_complex, reduced_homology_ranks
from .hypertoric import circuit_relations, enumerate_strata, local_model_dims
from .intlinalg import NotBoundaryMapError, gale_dual, verify_exact
from .matroid import (
    CographicMatroid,
    TutteCache,
    TuttePolynomial,
    f_h_vectors,
    top_betti,
    tutte_polynomial,
)
from .partitions import Partition, admissible_partitions, local_system_rank, partitions_of, stabilizer_order
from .strings import ModelInconsistencyError, gcd_rows, string_table, stratum_dims, table_report

CACHE_FORMAT = "ngostrings-cache/1"
CACHE_ENV_VAR = "NGO_STRINGS_CACHE"


def cache_load(path):
    """Load a Tutte cache file; any problem yields a warning and a cold cache."""
    cache = TutteCache()
    try:
        with open(path, "r", encoding="ascii") as handle:
            payload = json.load(handle)
    except FileNotFoundError:
        return cache
    except (OSError, ValueError, UnicodeDecodeError) as exc:
        print("warning: ignoring unreadable cache %s (%s)" % (path, exc), file=sys.stderr)
        return cache
    if not isinstance(payload, dict) or payload.get("format") != CACHE_FORMAT:
        print("warning: ignoring cache %s with unsupported format" % path, file=sys.stderr)
        return cache
    try:
        items = []
        for key_text, terms in payload["entries"].items():
            poly = TuttePolynomial({(int(i), int(j)): int(c) for i, j, c in terms})
            items.append((key_text.encode("ascii"), poly))
        cache.load(items)
    except (KeyError, TypeError, ValueError, AttributeError):
        print("warning: ignoring malformed cache %s" % path, file=sys.stderr)
        return TutteCache()
    return cache


def cache_store(path, cache):
    """Write the cache; failures warn rather than fail the command."""
    entries = {}
    for key, poly in sorted(cache.items()):
        entries[key.decode("ascii")] = [[i, j, str(c)] for (i, j), c in poly.terms()]
    payload = {"format": CACHE_FORMAT, "entries": entries}
    try:
        with open(path, "w", encoding="ascii") as handle:
            json.dump(payload, handle, indent=1, sort_keys=True)
            handle.write("\n")
    except OSError as exc:
        print("warning: could not write cache %s (%s)" % (path, exc), file=sys.stderr)


def _stringify(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    return obj


def _print_json(payload):
    print(json.dumps(_stringify(payload), indent=2))


def _parse_partition(text):
    return Partition.from_string(text)


def _resolve_quiver(args):
    if getattr(args, "quiver", None):
        with open(args.quiver, "r", encoding="utf-8") as handle:
            return load_graph(handle.read())
    if getattr(args, "partition", None) is None or getattr(args, "genus", None) is None:
        raise ValueError("provide either --quiver FILE or --partition P with --genus G")
    return spectral_dual_quiver(_parse_partition(args.partition), args.genus)


def _cache_path(args):
    if getattr(args, "cache", None):
        return args.cache
    return os.environ.get(CACHE_ENV_VAR) or None


def _with_cache(args, work):
    """Run work(cache) with an optional persistent cache around it."""
    path = _cache_path(args)
    cache = cache_load(path) if path else None
    result = work(cache)
    if path:
        cache_store(path, cache)
    return result


def cmd_strings(args):
    table = string_table(args.n, args.d)
    if args.json:
        payload = {
            "command": "strings",
            "n": table.n,
            "d": table.d,
            "gcd": table.q,
            "ranks": [{"partition": str(p), "rank": table.ranks[p]} for p in partitions_of(args.n)],
            "rank_weighted_contributions": [str(p) for p in table.multiplier_partitions],
        }
        _print_json(payload)
        return 0
    # no echo of the raw degree: tables for degrees with equal gcd(n, d)
    # are byte-identical
    print("n=%d gcd=%d" % (table.n, table.q))
    parts = partitions_of(args.n)
    width = max(len(str(p)) for p in parts)
    for p in parts:
        print("%s  %d" % (str(p).ljust(width), table.ranks[p]))
    if table.multiplier_partitions:
        print("# contributions weighted by local-system rank > 1: %s"
              % "; ".join(str(p) for p in table.multiplier_partitions))
    return 0


def cmd_report(args):
    if args.json:
        parts = partitions_of(args.n)
        rows = []
        for label in gcd_rows(args.n):
            table = string_table(args.n, args.n if label == 0 else label)
            rows.append(
                {
                    "gcd": label,
                    "ranks": [{"partition": str(p), "rank": table.ranks[p]} for p in parts],
                }
            )
        _print_json({"command": "report", "n": args.n, "rows": rows})
        return 0
    sys.stdout.write(table_report(args.n))
    return 0


def cmd_partition(args):
    parts = partitions_of(args.n) if args.d is None else admissible_partitions(args.n, args.d)
    if args.json:
        payload = {
            "command": "partition",
            "n": args.n,
            "partitions": [
                {
                    "partition": str(p),
                    "r": p.r,
                    "local_system_rank": local_system_rank(p),
                    "stabilizer_order": stabilizer_order(p),
                }
                for p in parts
            ],
        }
        if args.d is not None:
            payload["d"] = args.d
        _print_json(payload)
        return 0
    width = max(len(str(p)) for p in parts)
    for p in parts:
        print(
            "%s  r=%d  local_rank=%d  stabilizer=%d"
            % (str(p).ljust(width), p.r, local_system_rank(p), stabilizer_order(p))
        )
    return 0


def cmd_graph(args):
    quiver = _resolve_quiver(args)
    graph = quiver.underlying()
    if args.dot:
        sys.stdout.write(to_dot(quiver if args.directed else graph))
        return 0
    if args.emit:
        sys.stdout.write(dump_graph(quiver))
        return 0
    r, s, b1 = graph.vertex_count, graph.edge_count, betti1(graph)
    if args.json:
        _print_json(
            {
                "command": "graph",
                "vertices": r,
                "edges": [[u, v] for u, v in quiver.edges],
                "r": r,
                "s": s,
                "b1": b1,
            }
        )
        return 0
    print("r=%d s=%d b1=%d" % (r, s, b1))
    return 0


def cmd_gale(args):
    quiver = _resolve_quiver(args)
    A = boundary_matrix(quiver)
    B = gale_dual(A)
    report = verify_exact(A, B)
    circuits = circuit_relations(quiver)
    if args.json:
        _print_json(
            {
                "command": "gale",
                "A": [list(row) for row in A.data],
                "B": [list(row) for row in B.data],
                "exact": report.ok,
                "circuits": [
                    {"index": rel.index, "coefficients": list(rel.coefficients)}
                    for rel in circuits
                ],
            }
        )
        return 0
    print("A =")
    print(str(A))
    print("B =")
    print(str(B))
    print("exact: %s" % ("ok" if report.ok else "FAILED " + "; ".join(report.failures)))
    print("circuits:")
    for rel in circuits:
        print("i=%d: %s" % (rel.index, rel))
    return 0


def cmd_tutte(args):
    quiver = _resolve_quiver(args)
    graph = quiver.underlying()

    def work(cache):
        return tutte_polynomial(graph, cache=cache, threads=args.threads)

    poly = _with_cache(args, work)
    value = poly.evaluate(args.eval[0], args.eval[1]) if args.eval else None
    if args.json:
        payload = {
            "command": "tutte",
            "terms": [[i, j, c] for (i, j), c in poly.terms()],
        }
        if args.eval:
            payload["point"] = list(args.eval)
            payload["value"] = value
        _print_json(payload)
        return 0
    print("T = %s" % poly)
    if args.eval:
        print("T(%d,%d) = %d" % (args.eval[0], args.eval[1], value))
    return 0


def cmd_matroid(args):
    quiver = _resolve_quiver(args)
    matroid = CographicMatroid(quiver.underlying())
    f, h = f_h_vectors(matroid)

    def work(cache):
        return top_betti(matroid.graph, cache=cache, threads=args.threads)

    spheres = _with_cache(args, work)
    if args.json:
        _print_json(
            {
                "command": "matroid",
                "edges": matroid.size,
                "rank": matroid.rank,
                "f": list(f),
                "h": list(h),
                "top_betti": spheres,
            }
        )
        return 0
    print("edges: %d" % matroid.size)
    print("rank: %d" % matroid.rank)
    print("f: %s" % ", ".join(str(v) for v in f))
    print("h: %s" % ", ".join(str(v) for v in h))
    print("top_betti: %d" % spheres)
    return 0


def cmd_matroid_homology(args):
    quiver = _resolve_quiver(args)
    matroid = CographicMatroid(quiver.underlying())
    complex_ = matroid_complex(matroid)
    ranks = reduced_homology_ranks(complex_)
    top_degree = len(ranks) - 2
    wedge_ok = all(v == 0 for v in ranks[:-1])
    if args.json:
        _print_json(
            {
                "command": "matroid-homology",
                "ranks": [{"degree": k - 1, "rank": v} for k, v in enumerate(ranks)],
                "top_degree": top_degree,
                "spheres": ranks[-1] if ranks else 0,
                "wedge": wedge_ok,
            }
        )
    else:
        for k, v in enumerate(ranks):
            print("degree %d: %d" % (k - 1, v))
        print("top degree: %d" % top_degree)
        print("spheres: %d" % (ranks[-1] if ranks else 0))
        print("wedge: %s" % ("ok" if wedge_ok else "FAILED"))
    if not wedge_ok:
        raise ValueError("homology does not vanish below the top degree")
    return 0


def cmd_strata(args):
    quiver = _resolve_quiver(args)

    def work(cache):
        return enumerate_strata(quiver, cache=cache)

    records = _with_cache(args, work)
    if args.json:
        _print_json(
            {
                "command": "strata",
                "strata": [
                    {
                        "blocks": str(rec.vp),
                        "s": rec.contracted.edge_count,
                        "b1": rec.b1_contracted,
                        "codim_X": rec.codim_in_X,
                        "codim_Y": rec.codim_in_Y,
                        "fiber_dim": rec.fiber_dim,
                        "multiplicity": rec.multiplicity,
                        "deleted_loops": rec.deleted_loops,
                    }
                    for rec in records
                ],
            }
        )
        return 0
    headers = ["stratum", "s", "b1", "codimX", "codimY", "fiber", "mult", "loops"]
    rows = [
        [
            str(rec.vp),
            str(rec.contracted.edge_count),
            str(rec.b1_contracted),
            str(rec.codim_in_X),
            str(rec.codim_in_Y),
            str(rec.fiber_dim),
            str(rec.multiplicity),
            str(rec.deleted_loops),
        ]
        for rec in records
    ]
    widths = [max(len(headers[j]), max((len(r[j]) for r in rows), default=0)) for j in range(len(headers))]
    print("  ".join(h.ljust(widths[j]) for j, h in enumerate(headers)).rstrip())
    for row in rows:
        print("  ".join(c.ljust(widths[j]) for j, c in enumerate(row)).rstrip())
    return 0


def cmd_local_model(args):
    dims = local_model_dims(_parse_partition(args.partition), args.genus)
    fields = [
        ("partition", str(dims.partition)),
        ("genus", dims.g),
        ("n", dims.n),
        ("s", dims.s),
        ("b1", dims.b1),
        ("d", dims.d_dim),
        ("c", dims.c_dim),
        ("dim_M", dims.dim_M),
        ("dim_Y", dims.dim_Y),
        ("dim_X", dims.dim_X),
        ("dim_Jbar", dims.dim_Jbar),
    ]
    if args.json:
        _print_json({"command": "local-model", **{k: v for k, v in fields}})
        return 0
    for k, v in fields:
        print("%s: %s" % (k, v))
    return 0


def cmd_dims(args):
    dims = stratum_dims(_parse_partition(args.partition), args.genus)
    fields = [
        ("partition", str(dims.partition)),
        ("genus", dims.g),
        ("dim_A", dims.dim_A),
        ("dim_S", dims.dim_S),
        ("codim_S", dims.codim_S),
        ("delta", dims.delta),
        ("component_genera", ", ".join(str(v) for v in dims.component_genera)),
        ("spectral_genus", dims.spectral_genus),
        ("psi", dims.psi),
    ]
    if args.json:
        payload = {k: v for k, v in fields}
        payload["component_genera"] = list(dims.component_genera)
        _print_json({"command": "dims", **payload})
        return 0
    for k, v in fields:
        print("%s: %s" % (k, v))
    return 0


def _add_graph_source(parser):
    parser.add_argument("--partition", help="partition as comma-separated parts, e.g. 2,1,1")
    parser.add_argument("--genus", type=int, help="genus of the base curve (>= 2)")
    parser.add_argument("--quiver", help="path to a graph file (format graph/1)")


def _add_cache_options(parser):
    parser.add_argument("--cache", help="Tutte cache file (or set %s)" % CACHE_ENV_VAR)
    parser.add_argument("--threads", type=int, default=1, help="worker threads for Tutte branches")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ngostrings",
        description="Exact combinatorics of string ranks, spectral dual graphs and hypertoric strata.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("strings", help="rank table for one (n, d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_strings)

    p = sub.add_parser("report", help="full gcd-indexed rank table for one n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("partition", help="list partitions and their constants")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=None, help="restrict to the degree-admissible subset")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("graph", help="spectral dual graph statistics, DOT or file emission")
    _add_graph_source(p)
    p.add_argument("--dot", action="store_true", help="emit DOT instead of statistics")
    p.add_argument("--directed", action="store_true", help="DOT as a digraph with orientations")
    p.add_argument("--emit", action="store_true", help="emit the graph file format (graph/1)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("gale", help="boundary matrix, Gale dual and circuit relations")
    _add_graph_source(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gale)

    p = sub.add_parser("tutte", help="Tutte polynomial, optionally evaluated")
    _add_graph_source(p)
    _add_cache_options(p)
    p.add_argument("--eval", type=int, nargs=2, metavar=("X", "Y"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tutte)

    p = sub.add_parser("matroid", help="cographic f/h-vectors and sphere count")
    _add_graph_source(p)
    _add_cache_options(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_matroid)

    p = sub.add_parser("matroid-homology", help="reduced homology of the matroid complex")
    _add_graph_source(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_matroid_homology)

    p = sub.add_parser("strata", help="vertex-partition stratum table")
    _add_graph_source(p)
    _add_cache_options(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("local-model", help="dimension ledger of the local model")
    p.add_argument("--partition", required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_local_model)

    p = sub.add_parser("dims", help="stratum dimensions and delta invariant")
    p.add_argument("--partition", required=True)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dims)

    return parser


def run(argv):
    """Dispatch a command line; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (
        ValueError,
        NotBoundaryMapError,
        ModelInconsistencyError,
        ResourceLimitError,
        OSError,
    ) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))
