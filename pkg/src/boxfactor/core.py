"""Core graph types: directed graphs with loops, their undirected shadows,
and breadth-first structure.

Vertices are integers 0..n-1 throughout. Arcs are ordered pairs of distinct
vertices; loops are stored separately as a vertex set. The shadow of a graph
is the simple undirected graph with an edge {u, v} whenever at least one of
the arcs (u, v), (v, u) is present; loops do not contribute edges. Distance,
connectivity and degree always refer to the shadow.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .errors import DisconnectedGraphError, GraphFormatError


class DirTag(Enum):
    """Arc directions behind a shadow edge, relative to (min, max) order.

    FWD means only min->max exists, BWD only max->min, BOTH means both arcs.
    """

    FWD = "fwd"
    BWD = "bwd"
    BOTH = "both"


@dataclass(frozen=True)
class DiGraph:
    """An immutable finite directed graph with loops."""

    n: int
    arcs: frozenset[tuple[int, int]] = frozenset()
    loops: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        object.__setattr__(self, "loops", frozenset(self.loops))
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        for u, v in self.arcs:
            if u == v:
                raise ValueError(f"arc ({u}, {v}) is a loop; pass it via loops=")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={self.n}")
        for v in self.loops:
            if not (0 <= v < self.n):
                raise ValueError(f"loop at {v} out of range for n={self.n}")

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def is_looped(self, v: int) -> bool:
        return v in self.loops

    def __repr__(self):
        return f"DiGraph(n={self.n}, arcs={len(self.arcs)}, loops={len(self.loops)})"


class ShadowGraph:
    """Undirected simple view of a DiGraph.

    `tags` maps each edge, keyed (min, max), to the DirTag recording which arc
    directions produced it. Adjacency lists are sorted, so every traversal of
    this structure is deterministic.
    """

    __slots__ = ("n", "tags", "adj")

    def __init__(self, n: int, tags: dict[tuple[int, int], DirTag]):
        self.n = n
        self.tags = dict(tags)
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.tags:
            if not (0 <= u < v < n):
                raise ValueError(f"edge ({u}, {v}) must satisfy 0 <= u < v < n")
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(b)) for b in nbrs)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.tags if u < v else (v, u) in self.tags

    def tag(self, u: int, v: int) -> DirTag:
        return self.tags[(u, v) if u < v else (v, u)]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def edge_count(self) -> int:
        return len(self.tags)

    def __eq__(self, other):
        return (
            isinstance(other, ShadowGraph)
            and self.n == other.n
            and self.tags == other.tags
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.tags.items())))

    def __repr__(self):
        return f"ShadowGraph(n={self.n}, edges={len(self.tags)})"


@dataclass(frozen=True)
class BfsOrder:
    """Breadth-first structure of a connected shadow, rooted at `root`.

    `order` lists vertices by BFS number, `bfsnum` and `level` are indexed by
    vertex. `down[v]` holds the neighbors of v one level closer to the root,
    `cross[v]` the neighbors on the same level. Neighbors pointing away from
    the root are deliberately not stored; the scans never need them.
    """

    root: int
    order: tuple[int, ...]
    bfsnum: tuple[int, ...]
    level: tuple[int, ...]
    down: tuple[tuple[int, ...], ...]
    cross: tuple[tuple[int, ...], ...]


def shadow(G: DiGraph) -> ShadowGraph:
    """Forget directions and loops: the undirected support of G."""
    tags: dict[tuple[int, int], DirTag] = {}
    arcs = G.arcs
    for u, v in arcs:
        if u > v:
            continue
        tags[(u, v)] = DirTag.BOTH if (v, u) in arcs else DirTag.FWD
    for u, v in arcs:
        if u < v or (v, u) in arcs:
            continue
        tags[(v, u)] = DirTag.BWD
    return ShadowGraph(G.n, tags)


def strip_loops(G: DiGraph) -> DiGraph:
    """G with every loop removed; arcs are untouched."""
    return DiGraph(G.n, G.arcs, frozenset())


def digraph_from_shadow(S: ShadowGraph, loops=()) -> DiGraph:
    """Rebuild the DiGraph encoded by a shadow's direction tags plus a loop set."""
    arcs = set()
    for (u, v), tag in S.tags.items():
        if tag is not DirTag.BWD:
            arcs.add((u, v))
        if tag is not DirTag.FWD:
            arcs.add((v, u))
    return DiGraph(S.n, arcs, frozenset(loops))


def bfs(S: ShadowGraph, root: int) -> BfsOrder:
    """Breadth-first search from `root`; raises if S is disconnected.

    Neighbors are visited in ascending id order, so the numbering is
    deterministic. BFS numbers are assigned in dequeue order and are therefore
    monotone in level.
    """
    n = S.n
    if not 0 <= root < n:
        raise ValueError(f"root {root} out of range")
    level = [-1] * n
    level[root] = 0
    order = [root]
    q = deque([root])
    while q:
        v = q.popleft()
        lv = level[v]
        for w in S.adj[v]:
            if level[w] < 0:
                level[w] = lv + 1
                order.append(w)
                q.append(w)
    if len(order) != n:
        raise DisconnectedGraphError(
            f"graph is disconnected: reached {len(order)} of {n} vertices"
        )
    bfsnum = [0] * n
    for i, v in enumerate(order):
        bfsnum[v] = i
    down = []
    cross = []
    for v in range(n):
        lv = level[v]
        down.append(tuple(w for w in S.adj[v] if level[w] == lv - 1))
        cross.append(tuple(w for w in S.adj[v] if level[w] == lv))
    return BfsOrder(
        root, tuple(order), tuple(bfsnum), tuple(level), tuple(down), tuple(cross)
    )


def is_connected(S: ShadowGraph) -> bool:
    if S.n <= 1:
        return True
    seen = [False] * S.n
    seen[0] = True
    q = deque([0])
    count = 1
    while q:
        v = q.popleft()
        for w in S.adj[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                q.append(w)
    return count == S.n


def min_degree(S: ShadowGraph) -> int:
    if S.n == 0:
        return 0
    return min(len(S.adj[v]) for v in range(S.n))


def dist(S: ShadowGraph, u: int, v: int):
    """Shadow distance between u and v; None when v is unreachable."""
    for x in (u, v):
        if not 0 <= x < S.n:
            raise ValueError(f"vertex {x} out of range")
    if u == v:
        return 0
    level = {u: 0}
    q = deque([u])
    while q:
        x = q.popleft()
        for w in S.adj[x]:
            if w not in level:
                if w == v:
                    return level[x] + 1
                level[w] = level[x] + 1
                q.append(w)
    return None


# --- text format ------------------------------------------------------------
#
# Line-oriented: '# comment', 'n <N>' (exactly once, before any arc or loop),
# 'a <u> <v>' for an arc, 'l <v>' for a loop, 'c <v> <c_1> ... <c_k>' for an
# optional coordinate row. Ids are 0-based decimal. Canonical serialization
# is the n line, then sorted a lines, then sorted l lines.


def _parse_id(token: str, lineno: int, what: str) -> int:
    if not token.isdigit():
        raise GraphFormatError(f"{what} must be a nonnegative decimal, got {token!r}", lineno)
    return int(token)


def parse_graph(text: str) -> DiGraph:
    """Parse graph text; raises GraphFormatError with a line number on bad input.

    Coordinate rows ('c ...') are tolerated and skipped; use parse_coords to
    read them.
    """
    n = None
    arcs: set[tuple[int, int]] = set()
    loops: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "n":
            if n is not None:
                raise GraphFormatError("duplicate n line", lineno)
            if len(parts) != 2:
                raise GraphFormatError("n line takes exactly one value", lineno)
            n = _parse_id(parts[1], lineno, "vertex count")
            if n < 1:
                raise GraphFormatError("vertex count must be positive", lineno)
        elif kind == "a":
            if n is None:
                raise GraphFormatError("arc line before n line", lineno)
            if len(parts) != 3:
                raise GraphFormatError("arc line takes exactly two ids", lineno)
            u = _parse_id(parts[1], lineno, "arc endpoint")
            v = _parse_id(parts[2], lineno, "arc endpoint")
            if u == v:
                raise GraphFormatError(f"arc ({u}, {v}) is a loop; use an l line", lineno)
            if u >= n or v >= n:
                raise GraphFormatError(f"arc ({u}, {v}) out of range for n={n}", lineno)
            if (u, v) in arcs:
                raise GraphFormatError(f"duplicate arc ({u}, {v})", lineno)
            arcs.add((u, v))
        elif kind == "l":
            if n is None:
                raise GraphFormatError("loop line before n line", lineno)
            if len(parts) != 2:
                raise GraphFormatError("loop line takes exactly one id", lineno)
            v = _parse_id(parts[1], lineno, "loop vertex")
            if v >= n:
                raise GraphFormatError(f"loop at {v} out of range for n={n}", lineno)
            if v in loops:
                raise GraphFormatError(f"duplicate loop at {v}", lineno)
            loops.add(v)
        elif kind == "c":
            continue
        else:
            raise GraphFormatError(f"unknown directive {kind!r}", lineno)
    if n is None:
        raise GraphFormatError("missing n line")
    return DiGraph(n, arcs, loops)


def parse_coords(text: str) -> dict[int, tuple[int, ...]]:
    """Read the 'c <vertex> <c_1> ... <c_k>' rows of a coordinate table."""
    table: dict[int, tuple[int, ...]] = {}
    width = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] != "c":
            continue
        if len(parts) < 2:
            raise GraphFormatError("coordinate line needs a vertex id", lineno)
        v = _parse_id(parts[1], lineno, "vertex id")
        cv = tuple(_parse_id(t, lineno, "coordinate") for t in parts[2:])
        if v in table:
            raise GraphFormatError(f"duplicate coordinates for vertex {v}", lineno)
        if width is None:
            width = len(cv)
        elif len(cv) != width:
            raise GraphFormatError(
                f"coordinate width {len(cv)} differs from earlier width {width}", lineno
            )
        table[v] = cv
    return table


def to_text(G: DiGraph, coords=None) -> str:
    """Canonical serialization: n line, sorted arcs, sorted loops.

    When `coords` (a sequence indexed by vertex) is given, coordinate rows are
    appended in vertex order.
    """
    lines = [f"n {G.n}"]
    for u, v in sorted(G.arcs):
        lines.append(f"a {u} {v}")
    for v in sorted(G.loops):
        lines.append(f"l {v}")
    if coords is not None:
        for v, cv in enumerate(coords):
            lines.append("c " + " ".join(str(x) for x in (v, *cv)))
    return "\n".join(lines) + "\n"
