"""Refine a loopless factorization so that it respects loops.

Loops multiply by the rule "a product vertex is looped iff some coordinate
is looped", which forces the root to be unlooped (its coordinates are the
factor roots). Starting from the prime factorization of the graph without
its loops, one BFS-ordered pass checks each vertex against its projections
into the current classes: if the vertex's loop state disagrees with all of
its projections, the classes of its down-edges are merged. The result is the
prime factorization of the graph with loops.

`factor_full` is the package's front door: it validates the input, factors
the shadow, runs the directed scan, and runs the loop scan when needed.
"""

from __future__ import annotations

from .core import BfsOrder, DiGraph, bfs, is_connected, shadow, strip_loops
from .directed_factor import ColorPartition, DirectedFactorization, factor_directed
from .errors import DisconnectedGraphError, FactorizationError, NoUnloopedVertexError
from .product import Coordinatization, group_coordinates
from .shadow_factor import factor_shadow


def pick_root(G: DiGraph) -> int:
    """Smallest unlooped vertex; raises when every vertex is looped."""
    if G.n == 0:
        raise ValueError("graph has no vertices")
    if len(G.loops) == G.n:
        raise NoUnloopedVertexError("every vertex carries a loop")
    return min(v for v in range(G.n) if v not in G.loops)


def factor_with_loops(
    G: DiGraph, NF: DirectedFactorization, B: BfsOrder | None = None
) -> DirectedFactorization:
    """Prime factorization of G from the factorization NF of G minus loops."""
    n = G.n
    coordin = NF.coordin
    if len(coordin.coords) != n:
        raise ValueError("factorization does not match the graph size")
    root = coordin.root
    if root in G.loops:
        raise NoUnloopedVertexError(f"root {root} carries a loop")
    k = len(NF.factors)
    if k == 0:
        return NF  # single unlooped vertex
    if B is None:
        B = bfs(shadow(G), root)
    elif B.root != root:
        raise ValueError("BFS root differs from the factorization root")

    P = ColorPartition(k)
    table = P.table
    coords = coordin.coords
    vo = coordin.vertex_of
    rc = coords[root]
    looped = G.loops
    kk = range(k)

    merges = 0
    for v in B.order:
        cv = coords[v]
        anyloop = False
        for i in P.live_ids():
            key = tuple(cv[j] if table[j] == i else rc[j] for j in kk)
            if vo[key] in looped:
                anyloop = True
                break
        if (v in looped) == anyloop:
            continue
        # disagreement: an unlooped vertex with a looped projection, or a
        # looped vertex none of whose projections is looped
        ids = set()
        for u in B.down[v]:
            cu = coords[u]
            dj = next(j for j in kk if cv[j] != cu[j])
            ids.add(table[dj])
        if len(ids) < 2:
            raise FactorizationError(
                "loop mismatch with nothing to merge: the loopless "
                "factorization was not prime"
            )
        P.merge(ids)
        merges += 1

    coordin2 = group_coordinates(G, coordin, P.classes())
    factors = coordin2.factors
    for v in range(n):
        cv2 = coordin2.coords[v]
        has = any(cv2[i] in factors[i].loops for i in range(len(factors)))
        if has != (v in looped):
            raise FactorizationError(
                f"loop placement of vertex {v} does not match the factorization"
            )
    return DirectedFactorization(P, factors, coordin2, merges)


def factor_full(G: DiGraph, root: int | None = None) -> DirectedFactorization:
    """Prime factorization of a finite connected digraph with loops.

    The graph must be connected (as an undirected graph) and keep at least
    one unlooped vertex. `root` optionally fixes the base vertex; it must be
    unlooped. Factors come out with the root at local id of the root's
    coordinate, ordered canonically by their smallest original shadow color.
    """
    if G.n == 0:
        raise ValueError("graph has no vertices")
    S = shadow(G)
    if not is_connected(S):
        raise DisconnectedGraphError("graph is not connected")
    if root is None:
        root = pick_root(G)
    else:
        if not 0 <= root < G.n:
            raise ValueError(f"root {root} out of range")
        if root in G.loops:
            raise NoUnloopedVertexError(f"root {root} carries a loop")
    if G.n == 1:
        return DirectedFactorization(
            ColorPartition(0), (), Coordinatization((), ((),), 0), 0
        )
    B = bfs(S, root)
    SF = factor_shadow(S, root)
    N = strip_loops(G)
    NF = factor_directed(N, SF, B)
    if not G.loops:
        return NF
    return factor_with_loops(G, NF, B)
