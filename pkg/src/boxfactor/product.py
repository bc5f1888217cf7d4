"""Cartesian products of directed graphs and coordinate bookkeeping.

The Cartesian product of graphs G_1 .. G_k has the coordinate tuples of the
factor vertices as vertices; an arc joins two tuples when they agree in all
positions but one and the differing position carries an arc of that factor.
A product vertex is looped when at least one of its coordinates is looped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Sequence

from .core import DiGraph, ShadowGraph
from .errors import FactorizationError

CoordVector = tuple[int, ...]


@dataclass(frozen=True)
class Coordinatization:
    """A labeling of a graph's vertices by coordinate tuples over factor graphs.

    `coords[v]` is the coordinate vector of vertex v; the map must be a
    bijection onto the full grid of factor vertex sets. `root` is the vertex
    whose coordinates are used to fill dropped positions when projecting.
    """

    factors: tuple[DiGraph, ...]
    coords: tuple[CoordVector, ...]
    root: int

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "coords", tuple(tuple(cv) for cv in self.coords))
        k = len(self.factors)
        sizes = [F.n for F in self.factors]
        if prod(sizes) != len(self.coords):
            raise FactorizationError(
                f"grid size {prod(sizes)} does not match vertex count {len(self.coords)}"
            )
        for v, cv in enumerate(self.coords):
            if len(cv) != k:
                raise FactorizationError(f"vertex {v} has {len(cv)} coordinates, expected {k}")
            for i, c in enumerate(cv):
                if not 0 <= c < sizes[i]:
                    raise FactorizationError(f"vertex {v} coordinate {i} out of range")
        if not 0 <= self.root < len(self.coords):
            raise ValueError(f"root {self.root} out of range")

    @cached_property
    def vertex_of(self) -> dict[CoordVector, int]:
        """Inverse of `coords`; raises if the labeling is not injective."""
        table = {cv: v for v, cv in enumerate(self.coords)}
        if len(table) != len(self.coords):
            raise FactorizationError("coordinate labeling is not injective")
        return table

    @property
    def k(self) -> int:
        return len(self.factors)


def cartesian_product(factors: Sequence[DiGraph]) -> tuple[DiGraph, Coordinatization]:
    """Build the product of the given factors, in row-major vertex order.

    Row-major: the first factor varies slowest, so vertex ids follow
    itertools.product of the factor vertex ranges. The returned
    Coordinatization has root 0, the all-zeros tuple.
    """
    factors = tuple(factors)
    if not factors:
        raise ValueError("cartesian_product needs at least one factor")
    for F in factors:
        if F.n < 1:
            raise ValueError("factors must have at least one vertex")
    sizes = [F.n for F in factors]
    n = prod(sizes)
    coords = tuple(itertools.product(*(range(s) for s in sizes)))
    strides = [1] * len(factors)
    for i in range(len(factors) - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    outs = []
    for F in factors:
        out: list[list[int]] = [[] for _ in range(F.n)]
        for a, b in F.arcs:
            out[a].append(b)
        outs.append(out)
    arcs = set()
    for v, cv in enumerate(coords):
        for i, out in enumerate(outs):
            st = strides[i]
            ci = cv[i]
            for b in out[ci]:
                arcs.add((v, v + (b - ci) * st))
    loopsets = [F.loops for F in factors]
    loops = {
        v
        for v, cv in enumerate(coords)
        if any(cv[i] in loopsets[i] for i in range(len(factors)))
    }
    G = DiGraph(n, arcs, loops)
    return G, Coordinatization(factors, coords, 0)


def project_vertex(v: CoordVector, keep, root: CoordVector) -> CoordVector:
    """Coordinates of v's projection into the layer through `root` spanned by
    the positions in `keep`: kept positions stay, the rest snap to root."""
    if len(v) != len(root):
        raise ValueError("coordinate vectors must have equal length")
    ks = set(keep)
    for i in ks:
        if not 0 <= i < len(v):
            raise ValueError(f"position {i} out of range")
    return tuple(v[i] if i in ks else root[i] for i in range(len(v)))


def consistent_direction(G: DiGraph, v: int, u: int, v2: int, u2: int) -> bool:
    """True when the vertex pairs (v, u) and (v2, u2) carry the same arc
    directions. Both pairs must be shadow edges of G."""
    for a, b in ((v, u), (v2, u2)):
        if (a, b) not in G.arcs and (b, a) not in G.arcs:
            raise ValueError(f"({a}, {b}) is not a shadow edge")
    return ((v, u) in G.arcs) == ((v2, u2) in G.arcs) and (
        (u, v) in G.arcs
    ) == ((u2, v2) in G.arcs)


def unit_layer(
    G: DiGraph, C: Coordinatization, positions, root: int | None = None
) -> tuple[DiGraph, tuple[int, ...]]:
    """Induced subgraph on the layer through `root` spanned by `positions`.

    Returns (layer, embedding): the layer uses local ids 0..len-1 assigned in
    ascending host id order, and embedding[local] is the host vertex.
    """
    if root is None:
        root = C.root
    k = C.k
    pos = set(positions)
    for i in pos:
        if not 0 <= i < k:
            raise ValueError(f"position {i} out of range")
    rc = C.coords[root]
    drop = [i for i in range(k) if i not in pos]
    hosts = [
        v for v in range(G.n) if all(C.coords[v][i] == rc[i] for i in drop)
    ]
    loc = {h: i for i, h in enumerate(hosts)}
    arcs = [
        (loc[a], loc[b]) for a, b in G.arcs if a in loc and b in loc
    ]
    loops = [loc[v] for v in G.loops if v in loc]
    return DiGraph(len(hosts), arcs, loops), tuple(hosts)


def product_square(
    S: ShadowGraph, colors, v: int, u: int, w: int
) -> int:
    """The fourth corner of the square on the differently colored edges vu, vw.

    Under a product coloring there is exactly one chordless square through
    v, u, w; its corner x opposite v satisfies color(ux) = color(vw) and
    color(wx) = color(vu). Raises FactorizationError when no or several
    candidates exist, which signals that `colors` is not a product coloring.
    """

    def key(a, b):
        return (a, b) if a < b else (b, a)

    for a, b in ((v, u), (v, w)):
        if not S.has_edge(a, b):
            raise ValueError(f"({a}, {b}) is not an edge")
    cvu = colors[key(v, u)]
    cvw = colors[key(v, w)]
    if cvu == cvw:
        raise ValueError("the two edges at v must have different colors")
    if S.has_edge(u, w):
        raise FactorizationError(
            f"no chordless square on ({v},{u}) and ({v},{w}): u and w are adjacent"
        )
    cands = []
    for x in S.adj[u]:
        if x == v or not S.has_edge(x, w) or S.has_edge(v, x):
            continue
        if colors[key(u, x)] == cvw and colors[key(w, x)] == cvu:
            cands.append(x)
    if len(cands) != 1:
        raise FactorizationError(
            f"{len(cands)} square completions for ({v},{u}),({v},{w}); "
            "coloring is not a product coloring"
        )
    return cands[0]


def group_coordinates(
    G: DiGraph, C: Coordinatization, classes: Sequence[Sequence[int]]
) -> Coordinatization:
    """Regroup coordinate positions into blocks.

    `classes` must partition range(k). Each block becomes one factor: the
    subgraph of G induced on the layer through C.root spanned by the block.
    The new coordinate of a vertex in block i is the local id of its
    projection into that layer. Grouping every position into one block yields
    the factorization {G}; singleton blocks reproduce C up to relabeling.
    """
    k = C.k
    blocks = [tuple(b) for b in classes]
    seen: set[int] = set()
    for b in blocks:
        if not b:
            raise ValueError("empty block")
        seen.update(b)
    if seen != set(range(k)) or sum(len(b) for b in blocks) != k:
        raise ValueError("blocks must partition the coordinate positions")
    rc = C.coords[C.root]
    vo = C.vertex_of
    new_factors = []
    projs = []
    for b in blocks:
        bset = set(b)
        layer, hosts = unit_layer(G, C, bset)
        loc = {h: i for i, h in enumerate(hosts)}
        proj = []
        for v in range(G.n):
            cv = C.coords[v]
            key = tuple(cv[j] if j in bset else rc[j] for j in range(k))
            proj.append(loc[vo[key]])
        new_factors.append(layer)
        projs.append(proj)
    new_coords = tuple(
        tuple(projs[i][v] for i in range(len(blocks))) for v in range(G.n)
    )
    return Coordinatization(tuple(new_factors), new_coords, C.root)
