"""Prime factorization of a connected undirected shadow.

Two edges are forced into the same factor when either
  (a) their endpoint distances are asymmetric: for e = xy and f = uv,
      d(x,u) + d(y,v) != d(x,v) + d(y,u), or
  (b) they share an endpoint and lie on no common chordless square.
The transitive closure of this relation partitions the edges into the color
classes of the finest product coloring; the factors are the subgraphs induced
on the color layers through the root. Distances come from all-pairs BFS, so
the whole computation is O(n * m) plus the squared-edge relation scan, which
is vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DiGraph, DirTag, ShadowGraph, bfs
from .errors import FactorizationError
from .product import Coordinatization

# Below this vertex count plain BFS beats the scipy sparse machinery.
_SCIPY_MIN_N = 300


@dataclass(frozen=True, eq=False)
class ShadowFactorization:
    """Edge coloring of a shadow into prime factor classes.

    `colors` maps each edge (keyed (min, max)) to a color in 0..k-1. The
    factor of color j is `factors[j]`, an undirected layer with local ids in
    ascending host id order; `coordin` labels every vertex of the shadow with
    its tuple of local factor ids. Color numbering follows the BFS order from
    `root`: classes are sorted by the smallest (bfsnum, bfsnum) endpoint pair
    among their edges.
    """

    root: int
    colors: dict[tuple[int, int], int]
    factors: tuple[ShadowGraph, ...]
    coordin: Coordinatization


def _distance_matrix(S: ShadowGraph) -> np.ndarray:
    n = S.n
    if n >= _SCIPY_MIN_N:
        from scipy.sparse import csr_matrix
        from scipy.sparse.csgraph import shortest_path

        rows = []
        cols = []
        for u, v in S.tags:
            rows.append(u)
            cols.append(v)
            rows.append(v)
            cols.append(u)
        A = csr_matrix(
            (np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n)
        )
        D = shortest_path(A, method="D", unweighted=True, directed=True)
        return D.astype(np.int32)
    D = np.full((n, n), -1, dtype=np.int32)
    for s in range(n):
        row = D[s]
        row[s] = 0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for v in frontier:
                for w in S.adj[v]:
                    if row[w] < 0:
                        row[w] = d
                        nxt.append(w)
            frontier = nxt
    return D


def _find(parent: np.ndarray, a: int) -> int:
    root = a
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        parent[a], a = root, parent[a]
    return int(root)


def _union(parent: np.ndarray, size: np.ndarray, a: int, b: int) -> int:
    ra, rb = _find(parent, a), _find(parent, b)
    if ra == rb:
        return ra
    # larger class keeps its label; ties go to the smaller index
    if (size[rb], -rb) > (size[ra], -ra):
        ra, rb = rb, ra
    parent[rb] = ra
    size[ra] += size[rb]
    return ra


def _roots_of(parent: np.ndarray, idx: np.ndarray) -> np.ndarray:
    r = parent[idx]
    while True:
        rr = parent[r]
        if np.array_equal(rr, r):
            break
        r = rr
    parent[idx] = r  # path compression for everything just visited
    return r


def factor_shadow(S: ShadowGraph, root: int) -> ShadowFactorization:
    """Factor a connected shadow into its prime layers through `root`."""
    n = S.n
    if not 0 <= root < n:
        raise ValueError(f"root {root} out of range")
    B = bfs(S, root)  # also proves connectivity
    if n == 1:
        return ShadowFactorization(root, {}, (), Coordinatization((), ((),), 0))
    edges = sorted(S.tags)
    m = len(edges)
    D = _distance_matrix(S)
    parent = np.arange(m, dtype=np.int64)
    size = np.ones(m, dtype=np.int64)

    # relation (a): distance asymmetry, row per edge against all later edges
    U = np.fromiter((e[0] for e in edges), dtype=np.int64, count=m)
    V = np.fromiter((e[1] for e in edges), dtype=np.int64, count=m)
    for a in range(m - 1):
        x, y = edges[a]
        dx = D[x]
        dy = D[y]
        Ur = U[a + 1 :]
        Vr = V[a + 1 :]
        rel = (dx[Ur] + dy[Vr]) != (dx[Vr] + dy[Ur])
        idx = np.flatnonzero(rel)
        if idx.size == 0:
            continue
        idx += a + 1
        ra = _find(parent, a)
        for rb in np.unique(_roots_of(parent, idx)):
            ra = _union(parent, size, ra, int(rb))

    # relation (b): incident edges with no common chordless square
    eidx = {e: i for i, e in enumerate(edges)}
    amask = [0] * n
    for u, v in edges:
        amask[u] |= 1 << v
        amask[v] |= 1 << u
    for v in range(n):
        nb = S.adj[v]
        not_v = ~(1 << v)
        for i in range(len(nb)):
            u = nb[i]
            eu = eidx[(v, u) if v < u else (u, v)]
            for j in range(i + 1, len(nb)):
                w = nb[j]
                if amask[u] >> w & 1:
                    related = True  # u, w adjacent: every square has a chord
                else:
                    commons = amask[u] & amask[w] & not_v
                    related = (commons & ~amask[v]) == 0
                if related:
                    _union(parent, size, eu, eidx[(v, w) if v < w else (w, v)])

    groups: dict[int, list[int]] = {}
    for a in range(m):
        groups.setdefault(_find(parent, a), []).append(a)

    # deterministic color numbering: sort classes by their smallest
    # (bfsnum, bfsnum) endpoint pair
    bn = B.bfsnum

    def class_key(members: list[int]) -> tuple[int, int]:
        best = None
        for a in members:
            u, v = edges[a]
            p = (bn[u], bn[v]) if bn[u] < bn[v] else (bn[v], bn[u])
            if best is None or p < best:
                best = p
        return best

    ordered = sorted(groups.values(), key=class_key)
    colors = {}
    for c, members in enumerate(ordered):
        for a in members:
            colors[edges[a]] = c
    factors, coordin = coordinates_from_colors(S, root, colors)
    return ShadowFactorization(root, colors, factors, coordin)


def coordinates_from_colors(
    S: ShadowGraph, root: int, colors: dict[tuple[int, int], int]
) -> tuple[tuple[ShadowGraph, ...], Coordinatization]:
    """Turn an edge coloring into unit-layer factors and vertex coordinates.

    The unit layer of color i is the component of `root` in the color-i
    subgraph. coordinate_i(v) is the unique vertex shared by the unit layer
    and the component of v in the subgraph of all other colors. Raises
    FactorizationError whenever that vertex is not unique, or the resulting
    labeling is not a bijection onto the grid, or some edge disagrees with
    the grid; all of these mean `colors` is not a product coloring.
    """
    n = S.n
    if set(colors) != set(S.tags):
        raise ValueError("colors must cover exactly the edges of S")
    if n == 1:
        return (), Coordinatization((), ((),), 0)
    k = max(colors.values()) + 1
    if set(colors.values()) != set(range(k)):
        raise ValueError("colors must be 0..k-1 with every value used")

    by_color: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for e, c in colors.items():
        by_color[c].append(e)

    factors = []
    layer_local: list[dict[int, int]] = []
    coords = [[0] * k for _ in range(n)]
    for c in range(k):
        cadj: list[list[int]] = [[] for _ in range(n)]
        for u, v in by_color[c]:
            cadj[u].append(v)
            cadj[v].append(u)
        # unit layer: component of root using only color-c edges
        seen = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for w in cadj[x]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        hosts = sorted(seen)
        loc = {h: i for i, h in enumerate(hosts)}
        ztags = {}
        for u, v in by_color[c]:
            if u in loc and v in loc:
                a, b = loc[u], loc[v]
                ztags[(a, b) if a < b else (b, a)] = S.tag(u, v)
        # the layer must induce only its own color
        for u in hosts:
            for w in S.adj[u]:
                if w in loc and u < w and colors[(u, w)] != c:
                    raise FactorizationError(
                        f"unit layer of color {c} induces an edge of color "
                        f"{colors[(u, w)]}"
                    )
        Z = ShadowGraph(len(hosts), ztags)
        factors.append(Z)
        layer_local.append(loc)

        # components of the subgraph on every other color
        oadj: list[list[int]] = [[] for _ in range(n)]
        for cc in range(k):
            if cc == c:
                continue
            for u, v in by_color[cc]:
                oadj[u].append(v)
                oadj[v].append(u)
        comp = [-1] * n
        for s in range(n):
            if comp[s] >= 0:
                continue
            comp[s] = s
            stack = [s]
            members = [s]
            while stack:
                x = stack.pop()
                for w in oadj[x]:
                    if comp[w] < 0:
                        comp[w] = s
                        stack.append(w)
                        members.append(w)
            inter = [x for x in members if x in loc]
            if len(inter) != 1:
                raise FactorizationError(
                    f"a component off color {c} meets the unit layer in "
                    f"{len(inter)} vertices; coloring is not a product coloring"
                )
            ci = loc[inter[0]]
            for x in members:
                coords[x][c] = ci

    coordin = Coordinatization(
        tuple(_undirected(Z) for Z in factors),
        tuple(tuple(cv) for cv in coords),
        root,
    )
    coordin.vertex_of  # force the injectivity check

    # every edge must step exactly one grid coordinate inside its own factor
    for (u, v), c in colors.items():
        cu, cv = coordin.coords[u], coordin.coords[v]
        diffs = [i for i in range(k) if cu[i] != cv[i]]
        if diffs != [c]:
            raise FactorizationError(
                f"edge ({u}, {v}) of color {c} changes coordinates {diffs}"
            )
        a, b = cu[c], cv[c]
        if not factors[c].has_edge(a, b):
            raise FactorizationError(
                f"edge ({u}, {v}) does not project to an edge of factor {c}"
            )
    return tuple(factors), coordin


def _undirected(Z: ShadowGraph) -> DiGraph:
    """Both-ways DiGraph carrying the undirected structure of Z."""
    arcs = set()
    for u, v in Z.tags:
        arcs.add((u, v))
        arcs.add((v, u))
    return DiGraph(Z.n, arcs, frozenset())


def shadow_factorization_of_product(
    G: DiGraph, C: Coordinatization
) -> ShadowFactorization:
    """Assemble the prime shadow factorization of a product built with known
    coordinates, factoring each factor's shadow separately and composing.

    This is how a caller that constructed the product itself (benchmarks,
    tests) provides the precomputed shadow factorization without rerunning
    the relation scan on the full graph.
    """
    from .core import shadow as _shadow

    k = C.k
    subs = []
    offsets = []
    total = 0
    for i in range(k):
        Fi = C.factors[i]
        Si = _shadow(Fi)
        SFi = factor_shadow(Si, C.coords[C.root][i])
        subs.append(SFi)
        offsets.append(total)
        total += len(SFi.factors)

    colors: dict[tuple[int, int], int] = {}
    S = _shadow(G)
    for u, v in S.tags:
        cu, cv = C.coords[u], C.coords[v]
        diffs = [i for i in range(k) if cu[i] != cv[i]]
        if len(diffs) != 1:
            raise FactorizationError(
                f"edge ({u}, {v}) changes {len(diffs)} coordinates"
            )
        i = diffs[0]
        a, b = cu[i], cv[i]
        e = (a, b) if a < b else (b, a)
        colors[(u, v)] = offsets[i] + subs[i].colors[e]

    factors = tuple(Z for SFi in subs for Z in SFi.factors)
    coords = tuple(
        tuple(
            c
            for i in range(k)
            for c in subs[i].coordin.coords[C.coords[v][i]]
        )
        for v in range(G.n)
    )
    coordin = Coordinatization(
        tuple(F for SFi in subs for F in SFi.coordin.factors), coords, C.root
    )
    return ShadowFactorization(C.root, colors, factors, coordin)
