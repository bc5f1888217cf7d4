"""Shared builders for the test suite."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from boxfactor import DiGraph, cartesian_product, iso_check


def consistent_square() -> DiGraph:
    # (0->1) x (0->1): vertices 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1)
    return DiGraph(4, {(0, 2), (1, 3), (0, 1), (2, 3)}, set())


def inconsistent_square() -> DiGraph:
    # directed 4-cycle 0 -> 2 -> 3 -> 1 -> 0 drawn on the same square
    return DiGraph(4, {(0, 2), (2, 3), (3, 1), (1, 0)}, set())


def loop_product():
    """2-cycle with a loop at 1, times a plain 2-cycle."""
    A = DiGraph(2, {(0, 1), (1, 0)}, {1})
    B = DiGraph(2, {(0, 1), (1, 0)}, set())
    return cartesian_product([A, B]) + (A, B)


def looped_far_corner() -> DiGraph:
    """Undirected C4 with a loop only at the vertex opposite 0."""
    arcs = set()
    for u, v in ((0, 1), (0, 2), (1, 3), (2, 3)):
        arcs.add((u, v))
        arcs.add((v, u))
    return DiGraph(4, arcs, {3})


def undirected_cycle(n: int) -> DiGraph:
    arcs = set()
    for i in range(n):
        j = (i + 1) % n
        arcs.add((i, j))
        arcs.add((j, i))
    return DiGraph(n, arcs, set())


def undirected_path(n: int) -> DiGraph:
    arcs = set()
    for i in range(n - 1):
        arcs.add((i, i + 1))
        arcs.add((i + 1, i))
    return DiGraph(n, arcs, set())


def both_k2() -> DiGraph:
    return DiGraph(2, {(0, 1), (1, 0)}, set())


def random_digraph(
    rng: random.Random,
    n: int,
    extra_prob: float = 0.2,
    loop_prob: float = 0.0,
    keep_unlooped: bool = True,
) -> DiGraph:
    """Random connected digraph: random spanning tree plus extra arcs."""
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
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < extra_prob:
                arcs.add((u, v))
    loops = {v for v in range(n) if rng.random() < loop_prob}
    if keep_unlooped and len(loops) == n:
        loops.discard(rng.choice(sorted(loops)))
    return DiGraph(n, arcs, loops)


def multiset_iso(claimed, truth) -> bool:
    """Do the two factor collections match up to isomorphism and order?"""
    remaining = list(truth)
    for c in claimed:
        hit = None
        for i, t in enumerate(remaining):
            if (
                c.n == t.n
                and len(c.arcs) == len(t.arcs)
                and len(c.loops) == len(t.loops)
                and iso_check(c, t)
            ):
                hit = i
                break
        if hit is None:
            return False
        remaining.pop(hit)
    return not remaining


def relabel(G: DiGraph, perm) -> DiGraph:
    return DiGraph(
        G.n,
        {(perm[u], perm[v]) for (u, v) in G.arcs},
        {perm[v] for v in G.loops},
    )


@st.composite
def connected_digraphs(draw, min_n=1, max_n=6, allow_loops=True):
    n = draw(st.integers(min_n, max_n))
    arcs = set()
    for v in range(1, n):
        p = draw(st.integers(0, v - 1))
        d = draw(st.integers(0, 2))
        if d == 0:
            arcs.add((p, v))
        elif d == 1:
            arcs.add((v, p))
        else:
            arcs.add((p, v))
            arcs.add((v, p))
    if n > 1:
        extra = draw(
            st.lists(
                st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                max_size=2 * n,
            )
        )
        for u, v in extra:
            if u != v:
                arcs.add((u, v))
    loops: set[int] = set()
    if allow_loops:
        bits = draw(st.lists(st.booleans(), min_size=n, max_size=n))
        loops = {v for v, b in enumerate(bits) if b}
        if len(loops) == n:
            loops.discard(min(loops))
    return DiGraph(n, arcs, loops)
