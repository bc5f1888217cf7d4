"""Batch command-line front end.

Subcommands: `factor` (prime factorization of a graph file), `product`
(multiply graph files), `generate` (seeded random product instances),
`verify` (check a claimed factorization against a graph), and `bench`
(empirical scaling of the two scan algorithms, with the shadow factorization
synthesized from known factors so only the scans are timed).

Exit codes: 0 ok, 2 unreadable or malformed input, 3 disconnected graph,
4 no unlooped vertex, 5 verification failure.
"""

from __future__ import annotations

import argparse
import gc
import math
import random
import statistics
import sys
import time
from pathlib import Path

from .core import (
    DiGraph,
    bfs,
    is_connected,
    parse_coords,
    parse_graph,
    shadow,
    strip_loops,
    to_text,
)
from .directed_factor import factor_directed
from .errors import (
    DisconnectedGraphError,
    GraphFormatError,
    NoUnloopedVertexError,
)
from .loop_factor import factor_with_loops, pick_root
from .oracle import gen_product_instance, reconstruct_check, reconstruct_check_parts
from .product import cartesian_product
from .shadow_factor import factor_shadow, shadow_factorization_of_product

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DISCONNECTED = 3
EXIT_ALL_LOOPED = 4
EXIT_VERIFY = 5


def _load_graph(path: str) -> DiGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def _final_edge_colors(G: DiGraph, coords) -> dict[tuple[int, int], int]:
    # the color of a shadow edge is the one coordinate position it changes
    out = {}
    for u, v in sorted(shadow(G).tags):
        cu, cv = coords[u], coords[v]
        diffs = [i for i in range(len(cu)) if cu[i] != cv[i]]
        if len(diffs) != 1:
            raise RuntimeError(f"edge ({u}, {v}) changes {len(diffs)} coordinates")
        out[(u, v)] = diffs[0]
    return out


def cmd_factor(args) -> int:
    t_start = time.perf_counter()
    G = _load_graph(args.input)
    t_parse = time.perf_counter() - t_start

    S = shadow(G)
    if not is_connected(S):
        raise DisconnectedGraphError("graph is not connected")
    if args.root is None:
        root = pick_root(G)
    else:
        root = args.root
        if not 0 <= root < G.n:
            raise GraphFormatError(f"root {root} out of range for n={G.n}")
        if root in G.loops:
            raise NoUnloopedVertexError(f"root {root} carries a loop")

    t_shadow = t_directed = t_loops = 0.0
    merges = 0
    if G.n == 1:
        from .directed_factor import ColorPartition, DirectedFactorization
        from .product import Coordinatization

        F = DirectedFactorization(
            ColorPartition(0), (), Coordinatization((), ((),), 0), 0
        )
    else:
        B = bfs(S, root)
        t0 = time.perf_counter()
        SF = factor_shadow(S, root)
        t_shadow = time.perf_counter() - t0
        t0 = time.perf_counter()
        NF = factor_directed(strip_loops(G), SF, B)
        t_directed = time.perf_counter() - t0
        merges = NF.merges
        F = NF
        if G.loops:
            t0 = time.perf_counter()
            F = factor_with_loops(G, NF, B)
            t_loops = time.perf_counter() - t0
            merges += F.merges

    print(f"input: {args.input}")
    print(f"vertices: {G.n}")
    print(f"arcs: {len(G.arcs)}")
    print(f"loops: {len(G.loops)}")
    print(f"root: {root}")
    print(f"factors: {len(F.factors)}")
    print("sizes: " + " ".join(str(Fi.n) for Fi in F.factors))
    print(f"merges: {merges}")

    for i, Fi in enumerate(F.factors):
        path = f"{args.input}.factor{i}"
        Path(path).write_text(to_text(Fi), encoding="utf-8")
        print(f"factor_file: {path}")
    if args.emit_coords:
        path = f"{args.input}.coords"
        lines = [
            "c " + " ".join(str(x) for x in (v, *cv))
            for v, cv in enumerate(F.coordin.coords)
        ]
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"coords_file: {path}")
    if args.emit_colors:
        path = f"{args.input}.colors"
        lines = [
            f"e {u} {v} {c}" for (u, v), c in _final_edge_colors(G, F.coordin.coords).items()
        ]
        Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
        print(f"colors_file: {path}")

    ok = True
    if args.verify:
        ok = reconstruct_check(G, F)
        print(f"verified: {'true' if ok else 'false'}")

    t_total = time.perf_counter() - t_start
    print(f"time_parse: {t_parse:.6f}")
    print(f"time_shadow: {t_shadow:.6f}")
    print(f"time_directed: {t_directed:.6f}")
    print(f"time_loops: {t_loops:.6f}")
    print(f"time_total: {t_total:.6f}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_product(args) -> int:
    factors = [_load_graph(p) for p in args.inputs]
    P, C = cartesian_product(factors)
    out = P
    if args.coords:
        table = parse_coords(Path(args.coords).read_text(encoding="utf-8"))
        if sorted(table) != list(range(P.n)):
            raise GraphFormatError(
                f"coordinate table must cover vertices 0..{P.n - 1}"
            )
        vo = C.vertex_of
        relabel = {}
        for h, cv in table.items():
            g = vo.get(tuple(cv))
            if g is None:
                raise GraphFormatError(f"coordinates {cv} are not on the grid")
            if g in relabel:
                raise GraphFormatError(f"coordinates {cv} assigned twice")
            relabel[g] = h
        out = DiGraph(
            P.n,
            {(relabel[u], relabel[v]) for (u, v) in P.arcs},
            {relabel[v] for v in P.loops},
        )
    text = to_text(out)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_generate(args) -> int:
    G, factors = gen_product_instance(
        args.factors, (args.min, args.max), args.loops, args.seed
    )
    Path(args.output).write_text(to_text(G), encoding="utf-8")
    print(f"graph_file: {args.output}")
    for i, F in enumerate(factors):
        path = f"{args.output}.truth{i}"
        Path(path).write_text(to_text(F), encoding="utf-8")
        print(f"truth_file: {path}")
    print(f"vertices: {G.n}")
    print(f"arcs: {len(G.arcs)}")
    print(f"loops: {len(G.loops)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    G = _load_graph(args.graph)
    factors = [_load_graph(p) for p in args.factors]
    table = parse_coords(Path(args.coords).read_text(encoding="utf-8"))
    if sorted(table) != list(range(G.n)):
        raise GraphFormatError(f"coordinate table must cover vertices 0..{G.n - 1}")
    ok = reconstruct_check_parts(G, factors, [table[v] for v in range(G.n)])
    print(f"verified: {'true' if ok else 'false'}")
    return EXIT_OK if ok else EXIT_VERIFY


def _directed_path(n: int, loop_at_end: bool = True) -> DiGraph:
    loops = {n - 1} if loop_at_end and n > 1 else set()
    return DiGraph(n, {(i, i + 1) for i in range(n - 1)}, loops)


def _bench_random_digraph(rng: random.Random, n: int) -> DiGraph:
    arcs = set()
    for v in range(1, n):
        p = rng.randrange(v)
        roll = rng.random()
        if roll < 0.4:
            arcs.add((p, v))
        elif roll < 0.8:
            arcs.add((v, p))
        else:
            arcs.add((p, v))
            arcs.add((v, p))
    for _ in range(n // 2):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            arcs.add((u, v))
    loops = {v for v in range(1, n) if rng.random() < 0.1}
    return DiGraph(n, arcs, loops)


def _bench_instance(family: str, target_arcs: int, rng: random.Random):
    if family == "grid":
        # two directed paths, loops at the far ends: m = 2a^2 - 2a
        a = max(2, round((1 + math.sqrt(1 + 2 * target_arcs)) / 2))
        return cartesian_product([_directed_path(a), _directed_path(a)])
    if family == "cube":
        q = 2
        while q * 2**q < target_arcs:
            q += 1
        k2 = DiGraph(2, {(0, 1), (1, 0)}, set())
        k2_loop = DiGraph(2, {(0, 1), (1, 0)}, {1})
        return cartesian_product([k2_loop] + [k2] * (q - 1))
    if family == "randprod":
        n = max(2, int(math.sqrt(target_arcs / 3.3)))
        A = _bench_random_digraph(rng, n)
        B = _bench_random_digraph(rng, n)
        return cartesian_product([A, B])
    raise ValueError(f"unknown family {family!r}")


def cmd_bench(args) -> int:
    if args.min_arcs < 4 or args.max_arcs < args.min_arcs:
        raise GraphFormatError("need 4 <= min-arcs <= max-arcs")
    rng = random.Random(args.seed)
    targets = [args.min_arcs]
    while targets[-1] < args.max_arcs:
        targets.append(targets[-1] * 2)

    rows = []
    print("arcs,seconds,seconds_per_arc")
    for target in targets:
        G, C = _bench_instance(args.family, target, rng)
        S = shadow(G)
        B = bfs(S, C.root)
        SF = shadow_factorization_of_product(G, C)
        N = strip_loops(G)

        def run():
            NF = factor_directed(N, SF, B)
            if G.loops:
                return factor_with_loops(G, NF, B)
            return NF

        run()  # warmup: caches, lazy tables
        times = []
        gc_was_enabled = gc.isenabled()
        gc.disable()
        try:
            for _ in range(args.reps):
                t0 = time.perf_counter()
                run()
                times.append(time.perf_counter() - t0)
        finally:
            if gc_was_enabled:
                gc.enable()
        sec = statistics.median(times)
        arcs = len(G.arcs)
        rows.append((arcs, sec, sec / arcs))
        print(f"{arcs},{sec:.6f},{sec / arcs:.6e}", flush=True)
        del G, C, S, B, SF, N
        gc.collect()

    if args.emit_csv:
        lines = ["arcs,seconds,seconds_per_arc"]
        lines += [f"{a},{s:.6f},{spa:.6e}" for a, s, spa in rows]
        Path(args.emit_csv).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxfactor",
        description="Prime factorization of directed graphs with loops "
        "under the Cartesian product.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="factor a graph file into primes")
    p.add_argument("--input", required=True, help="graph file to factor")
    p.add_argument("--root", type=int, default=None, help="unlooped root vertex id")
    p.add_argument("--emit-coords", action="store_true", help="write <input>.coords")
    p.add_argument("--emit-colors", action="store_true", help="write <input>.colors")
    p.add_argument(
        "--verify", action="store_true", help="rebuild the product and compare"
    )
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("product", help="multiply graph files")
    p.add_argument("inputs", nargs="+", help="factor graph files, in order")
    p.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    p.add_argument(
        "--coords",
        default=None,
        help="coordinate table fixing the output vertex labels",
    )
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("generate", help="seeded random product instance")
    p.add_argument("--factors", type=int, default=2, help="number of prime factors")
    p.add_argument("--min", type=int, default=2, help="smallest factor size")
    p.add_argument("--max", type=int, default=4, help="largest factor size")
    p.add_argument("--loops", type=float, default=0.0, help="loop probability")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")
    p.add_argument("-o", "--output", required=True, help="output graph file")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a claimed factorization")
    p.add_argument("graph", help="the graph file")
    p.add_argument("factors", nargs="+", help="claimed factor files, in order")
    p.add_argument("--coords", required=True, help="coordinate table file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="scaling benchmark of the two scans")
    p.add_argument(
        "--family",
        choices=("grid", "cube", "randprod"),
        default="grid",
        help="instance family",
    )
    p.add_argument("--min-arcs", type=int, default=1000)
    p.add_argument("--max-arcs", type=int, default=1000000)
    p.add_argument("--reps", type=int, default=5, help="timed repetitions per size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--emit-csv", default=None, help="also write the CSV here")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DisconnectedGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except NoUnloopedVertexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ALL_LOOPED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
