"""Independent ground truth for testing the factorizer.

Nothing here shares logic with the scan algorithms: primality is decided by
trying every two-coloring of the shadow edges, reconstruction multiplies the
claimed factors back out and compares, and isomorphism is a backtracking
search. All of it is exponential and guarded by explicit size bounds.
"""

from __future__ import annotations

import itertools
import random

from .core import DiGraph, is_connected, shadow
from .errors import DisconnectedGraphError, NoUnloopedVertexError, OracleBoundError
from .product import cartesian_product


def reconstruct_check_parts(G: DiGraph, factors, coords) -> bool:
    """Does the product of `factors`, laid out by `coords`, equal G exactly?

    `coords[v]` gives vertex v's coordinate tuple. Labels must match after
    translating through the coordinates; no isomorphism search happens here.
    """
    factors = tuple(factors)
    coords = tuple(tuple(c) for c in coords)
    if not factors:
        return G.n == 1 and not G.loops and coords == ((),)
    if len(coords) != G.n:
        return False
    P, C = cartesian_product(factors)
    if P.n != G.n:
        return False
    try:
        to_grid = C.vertex_of
    except Exception:
        return False
    seen = set()
    relabel = []
    for v in range(G.n):
        w = to_grid.get(coords[v])
        if w is None or w in seen:
            return False
        seen.add(w)
        relabel.append(w)
    arcs = {(relabel[u], relabel[v]) for (u, v) in G.arcs}
    loops = {relabel[v] for v in G.loops}
    return arcs == P.arcs and loops == P.loops


def reconstruct_check(G: DiGraph, F) -> bool:
    """reconstruct_check_parts on a DirectedFactorization."""
    return reconstruct_check_parts(G, F.factors, F.coordin.coords)


def _components(n: int, adj) -> list[int]:
    comp = [-1] * n
    c = 0
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = c
        stack = [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if comp[w] < 0:
                    comp[w] = c
                    stack.append(w)
        c += 1
    return comp


def _induced(G: DiGraph, hosts) -> DiGraph:
    hosts = sorted(hosts)
    loc = {h: i for i, h in enumerate(hosts)}
    arcs = {
        (loc[u], loc[v]) for (u, v) in G.arcs if u in loc and v in loc
    }
    loops = {loc[v] for v in G.loops if v in loc}
    return DiGraph(len(hosts), arcs, loops)


def _split_witness(G: DiGraph, edges, mask: int, r: int) -> bool:
    """Check one two-coloring of the shadow edges for being a product coloring."""
    n = G.n
    adj0 = [[] for _ in range(n)]
    adj1 = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        side = adj1 if i and (mask >> (i - 1)) & 1 else adj0
        side[u].append(v)
        side[v].append(u)
    comp0 = _components(n, adj0)  # components of the color-0 subgraph
    comp1 = _components(n, adj1)
    layer0 = [v for v in range(n) if comp0[v] == comp0[r]]  # r's color-0 layer
    layer1 = [v for v in range(n) if comp1[v] == comp1[r]]
    if len(layer0) < 2 or len(layer1) < 2:
        return False
    if len(layer0) * len(layer1) != n:
        return False
    cell = {}
    for v in range(n):
        key = (comp0[v], comp1[v])
        if key in cell:
            return False
        cell[key] = v
    loc0 = {h: i for i, h in enumerate(layer0)}
    loc1 = {h: i for i, h in enumerate(layer1)}
    coords = []
    for v in range(n):
        a = cell.get((comp0[r], comp1[v]))  # v's shadow on the color-0 layer
        b = cell.get((comp0[v], comp1[r]))
        if a is None or b is None:
            return False
        coords.append((loc0[a], loc1[b]))
    A = _induced(G, layer0)
    B = _induced(G, layer1)
    return reconstruct_check_parts(G, (A, B), coords)


def brute_force_prime(G: DiGraph, max_edges: int = 16) -> bool:
    """Primality by exhausting the 2-colorings of the shadow edges.

    A graph is composite exactly when some coloring splits it into two
    nontrivial factors, so checking all colorings (the first edge's color is
    fixed, halving the space) decides primality. Bounded by `max_edges`
    shadow edges.
    """
    S = shadow(G)
    if not is_connected(S):
        raise DisconnectedGraphError("primality is defined for connected graphs")
    if G.n and len(G.loops) == G.n:
        raise NoUnloopedVertexError("primality needs an unlooped vertex")
    m = S.edge_count
    if m > max_edges:
        raise OracleBoundError(
            f"{m} shadow edges exceeds the brute-force bound of {max_edges}"
        )
    if G.n == 1:
        return False  # the one-vertex graph is the unit, not a prime
    if G.n < 4:
        return True  # a product of nontrivial factors has at least 4 vertices
    edges = sorted(S.tags)
    r = min(v for v in range(G.n) if v not in G.loops)
    for mask in range(1 << (m - 1)):
        if _split_witness(G, edges, mask, r):
            return False
    return True


def iso_check(G: DiGraph, H: DiGraph, max_n: int = 10) -> bool:
    """Digraph-with-loops isomorphism by backtracking, bounded by `max_n`."""
    if G.n != H.n or len(G.arcs) != len(H.arcs) or len(G.loops) != len(H.loops):
        return False
    n = G.n
    if n > max_n:
        raise OracleBoundError(f"{n} vertices exceeds the isomorphism bound of {max_n}")
    if n == 0:
        return True

    def signatures(K: DiGraph):
        out = [[] for _ in range(n)]
        inn = [[] for _ in range(n)]
        for u, v in K.arcs:
            out[u].append(v)
            inn[v].append(u)
        base = [(len(out[v]), len(inn[v]), v in K.loops) for v in range(n)]
        return [
            (
                base[v],
                tuple(sorted(base[w] for w in out[v])),
                tuple(sorted(base[w] for w in inn[v])),
            )
            for v in range(n)
        ]

    sg = signatures(G)
    sh = signatures(H)
    if sorted(sg) != sorted(sh):
        return False
    cands = [[h for h in range(n) if sh[h] == sg[g]] for g in range(n)]
    order = sorted(range(n), key=lambda g: (len(cands[g]), g))
    garcs, harcs = G.arcs, H.arcs
    mapping = [-1] * n
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        g = order[pos]
        for h in cands[g]:
            if used[h]:
                continue
            ok = True
            for q in range(pos):
                gp = order[q]
                hp = mapping[gp]
                if ((g, gp) in garcs) != ((h, hp) in harcs) or (
                    (gp, g) in garcs
                ) != ((hp, h) in harcs):
                    ok = False
                    break
            if ok:
                mapping[g] = h
                used[h] = True
                if extend(pos + 1):
                    return True
                used[h] = False
                mapping[g] = -1
        return False

    return extend(0)


def _orient(rng: random.Random, u: int, v: int):
    roll = rng.random()
    if roll < 0.4:
        return [(u, v)]
    if roll < 0.8:
        return [(v, u)]
    return [(u, v), (v, u)]


def _random_prime_factor(
    rng: random.Random, lo: int, hi: int, loop_probability: float
) -> DiGraph:
    # rejection sampling: random connected digraph until the oracle says prime
    while True:
        n = rng.randint(lo, hi)
        arcs = set()
        for v in range(1, n):
            p = rng.randrange(v)
            arcs.update(_orient(rng, p, v))
        for u in range(n):
            for v in range(u + 1, n):
                if (u, v) in arcs or (v, u) in arcs:
                    continue
                if rng.random() < 1.5 / n:
                    arcs.update(_orient(rng, u, v))
        loops = {v for v in range(n) if rng.random() < loop_probability}
        if len(loops) == n:
            loops.discard(rng.choice(sorted(loops)))
        G = DiGraph(n, arcs, loops)
        if shadow(G).edge_count > 16:
            continue
        if brute_force_prime(G):
            return G


def gen_product_instance(
    num_factors: int,
    size_range: tuple[int, int] = (2, 6),
    loop_probability: float = 0.0,
    seed: int = 0,
):
    """Seeded random test instance: a scrambled product with known factors.

    Draws `num_factors` random prime digraphs (each with an unlooped vertex,
    primality certified by the brute-force oracle), multiplies them out, and
    relabels the product's vertices by a random permutation. Returns the
    scrambled product and the list of ground-truth factors.
    """
    if num_factors < 1:
        raise ValueError("need at least one factor")
    lo, hi = size_range
    if lo < 2:
        raise ValueError("prime factors need at least 2 vertices")
    if hi < lo:
        raise ValueError("empty size range")
    rng = random.Random(seed)
    factors = [
        _random_prime_factor(rng, lo, hi, loop_probability)
        for _ in range(num_factors)
    ]
    P, _ = cartesian_product(factors)
    perm = list(range(P.n))
    rng.shuffle(perm)
    G = DiGraph(
        P.n,
        {(perm[u], perm[v]) for (u, v) in P.arcs},
        {perm[v] for v in P.loops},
    )
    return G, factors


def canonical_small_graphs(n: int):
    """One representative per isomorphism class of the valid inputs on n vertices.

    Valid means: connected as an undirected graph, loops allowed, at least
    one unlooped vertex. The representative is the graph whose (arc set, loop
    set) bitmask encoding is lexicographically minimal over all vertex
    permutations. Exhaustive in the arc masks, so only sensible for n <= 4.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    npairs = len(pairs)
    pidx = {p: i for i, p in enumerate(pairs)}
    perms = []
    for pi in itertools.permutations(range(n)):
        arcmap = [pidx[(pi[u], pi[v])] for (u, v) in pairs]
        perms.append((arcmap, pi))
    perms = perms[1:]  # identity never lowers the encoding
    allv = (1 << n) - 1

    for arcmask in range(1 << npairs):
        if n > 1:
            adjm = [0] * n
            for i in range(npairs):
                if arcmask >> i & 1:
                    u, v = pairs[i]
                    adjm[u] |= 1 << v
                    adjm[v] |= 1 << u
            reach = 1
            frontier = 1
            while frontier:
                nxt = 0
                for v in range(n):
                    if frontier >> v & 1:
                        nxt |= adjm[v]
                frontier = nxt & ~reach
                reach |= frontier
            if reach != allv:
                continue
        # keep only permutations fixing the arc mask; skip the mask entirely
        # if some permutation lowers it (then no loop mask can be canonical)
        auts = []
        lowered = False
        for arcmap, pi in perms:
            am = 0
            for i in range(npairs):
                if arcmask >> i & 1:
                    am |= 1 << arcmap[i]
            if am < arcmask:
                lowered = True
                break
            if am == arcmask:
                auts.append(pi)
        if lowered:
            continue
        for loopmask in range(1 << n):
            if loopmask == allv:
                continue  # need an unlooped vertex
            ok = True
            for pi in auts:
                lm = 0
                for v in range(n):
                    if loopmask >> v & 1:
                        lm |= 1 << pi[v]
                if lm < loopmask:
                    ok = False
                    break
            if ok:
                yield DiGraph(
                    n,
                    {pairs[i] for i in range(npairs) if arcmask >> i & 1},
                    {v for v in range(n) if loopmask >> v & 1},
                )
