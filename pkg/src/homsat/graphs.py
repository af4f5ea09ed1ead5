"""Loop-free undirected graphs, bipartiteness witnesses, and homomorphisms.

Vertices are 0-based integers internally; the text file format is 1-based
(DIMACS ``p edge`` style, see :func:`parse_graph`).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    GraphFormatError,
    InvalidWitness,
    LoopEdge,
    MalformedLine,
    MissingHeader,
    VertexOutOfRange,
)

LEFT = 0
RIGHT = 1

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1, no loops, no multi-edges.

    ``edges`` holds unordered pairs normalized to (i, j) with i < j.
    """

    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.n < 1:
            raise VertexOutOfRange("a graph needs at least one vertex")
        for i, j in self.edges:
            if i == j:
                raise LoopEdge(i)
            if not (0 <= i < j < self.n):
                raise VertexOutOfRange(f"edge ({i}, {j}) outside 0..{self.n - 1}")

    @staticmethod
    def from_edges(n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from arbitrary (i, j) pairs, normalizing and deduplicating."""
        edges = set()
        for i, j in pairs:
            if i == j:
                raise LoopEdge(i)
            edges.add((i, j) if i < j else (j, i))
        return Graph(n, frozenset(edges))

    def has_edge(self, i: int, j: int) -> bool:
        return ((i, j) if i < j else (j, i)) in self.edges

    def neighbors(self) -> list[list[int]]:
        """Adjacency lists with neighbors in ascending order."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        for row in adj:
            row.sort()
        return adj

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


@dataclass(frozen=True)
class Bipartition:
    """Two-sided split of a graph's vertices; LEFT=0, RIGHT=1 per vertex."""

    side: tuple[int, ...]

    def is_valid_for(self, g: Graph) -> bool:
        if len(self.side) != g.n or any(s not in (LEFT, RIGHT) for s in self.side):
            return False
        return all(self.side[i] != self.side[j] for i, j in g.edges)


@dataclass(frozen=True)
class OddClosedWalk:
    """Closed walk c_0..c_{k-1} of odd length k >= 3; vertices may repeat."""

    verts: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.verts)

    def is_valid_for(self, g: Graph) -> bool:
        k = self.k
        if k < 3 or k % 2 == 0:
            return False
        if any(not (0 <= v < g.n) for v in self.verts):
            return False
        return all(
            g.has_edge(self.verts[i], self.verts[(i + 1) % k]) for i in range(k)
        )


@dataclass(frozen=True)
class Homomorphism:
    """Total vertex map, source vertex i goes to mapping[i]."""

    mapping: tuple[int, ...]


BipartiteWitness = Union[Bipartition, OddClosedWalk]


# -- graph text format -----------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the ``p edge n m`` / ``e i j`` format (1-based vertices).

    Lines starting with ``c`` are comments; blank lines are ignored.
    Duplicate edges collapse; a loop ``e i i`` is rejected.
    """
    n: Optional[int] = None
    edges: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if n is None:
            if parts[0] != "p":
                raise MissingHeader("expected 'p edge <n> <m>' before edge lines")
            if len(parts) != 4 or parts[1] != "edge":
                raise MalformedLine(lineno, "header must be 'p edge <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise MalformedLine(lineno, "non-numeric header fields") from None
            if n < 1 or m < 0:
                raise MalformedLine(lineno, "vertex count must be >= 1")
            continue
        if parts[0] != "e" or len(parts) != 3:
            raise MalformedLine(lineno, "expected 'e <i> <j>'")
        try:
            i, j = int(parts[1]), int(parts[2])
        except ValueError:
            raise MalformedLine(lineno, "non-numeric edge endpoints") from None
        if i == j:
            raise LoopEdge(i)
        if not (1 <= i <= n and 1 <= j <= n):
            raise VertexOutOfRange(f"line {lineno}: edge ({i}, {j}) outside 1..{n}")
        a, b = (i - 1, j - 1) if i < j else (j - 1, i - 1)
        edges.add((a, b))
    if n is None:
        raise MissingHeader("no 'p edge' header found")
    return Graph(n, frozenset(edges))


def write_graph(g: Graph) -> str:
    """Inverse of :func:`parse_graph`; edges emitted in lexicographic order."""
    lines = [f"p edge {g.n} {len(g.edges)}"]
    lines.extend(f"e {i + 1} {j + 1}" for i, j in g.sorted_edges())
    return "\n".join(lines) + "\n"


# -- bipartiteness ------------------------------------------------------------

def is_bipartite(g: Graph) -> BipartiteWitness:
    """Decide bipartiteness constructively.

    Returns a valid :class:`Bipartition`, or an :class:`OddClosedWalk`
    assembled from two BFS-tree paths plus the first same-layer cross edge
    found. Components are processed in ascending root order and neighbor
    scans ascend, so the result is deterministic.
    """
    adj = g.neighbors()
    depth = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if depth[u] < 0:
                    depth[u] = depth[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif depth[u] == depth[v]:
                    return OddClosedWalk(_cross_walk(v, u, parent))
    return Bipartition(tuple(d % 2 for d in depth))


def _cross_walk(v: int, u: int, parent: list[int]) -> tuple[int, ...]:
    """Closed walk root..v, cross edge to u, back u..root (root not repeated)."""
    up_v = [v]
    while parent[up_v[-1]] >= 0:
        up_v.append(parent[up_v[-1]])
    up_u = [u]
    while parent[up_u[-1]] >= 0:
        up_u.append(parent[up_u[-1]])
    # up_v ends at the root; drop the root from the return path
    return tuple(reversed(up_v)) + tuple(up_u[:-1])


# -- homomorphisms -------------------------------------------------------------

def check_homomorphism(g: Graph, h: Graph, hom: Homomorphism) -> bool:
    """True iff every edge of g maps to an edge of h under hom."""
    if len(hom.mapping) != g.n:
        raise DimensionMismatch(
            f"map has {len(hom.mapping)} entries for a {g.n}-vertex graph"
        )
    if any(not (0 <= t < h.n) for t in hom.mapping):
        raise DimensionMismatch("map value outside the target graph")
    return all(h.has_edge(hom.mapping[i], hom.mapping[j]) for i, j in g.edges)


DEFAULT_SEARCH_LIMIT = 10_000_000


def find_homomorphism(
    g: Graph, h: Graph, limit: int = DEFAULT_SEARCH_LIMIT
) -> Optional[Homomorphism]:
    """Exhaustive search for a homomorphism g -> h.

    Returns the lexicographically least map, or None when none exists.
    Raises BudgetExceeded when h.n ** g.n exceeds ``limit``.
    """
    if h.n**g.n > limit:
        raise BudgetExceeded(f"{h.n}^{g.n} maps exceed the search limit {limit}")
    adj = g.neighbors()
    assigned = [-1] * g.n

    def extend(v: int) -> bool:
        if v == g.n:
            return True
        earlier = [u for u in adj[v] if u < v]
        for color in range(h.n):
            if all(h.has_edge(color, assigned[u]) for u in earlier):
                assigned[v] = color
                if extend(v + 1):
                    return True
        assigned[v] = -1
        return False

    if extend(0):
        return Homomorphism(tuple(assigned))
    return None


def compose(h1: Homomorphism, h2: Homomorphism) -> Homomorphism:
    """Composite map i -> h2(h1(i))."""
    if any(not (0 <= t < len(h2.mapping)) for t in h1.mapping):
        raise DimensionMismatch("first map's range exceeds second map's domain")
    return Homomorphism(tuple(h2.mapping[t] for t in h1.mapping))


def hom_from_bipartition(h: Graph, b: Bipartition) -> Homomorphism:
    """Map a bipartite graph onto K_2: LEFT -> 0, RIGHT -> 1."""
    if not b.is_valid_for(h):
        raise InvalidWitness("bipartition does not split every edge")
    return Homomorphism(tuple(b.side))


# -- named constructions --------------------------------------------------

def complete(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle(k: int) -> Graph:
    if k < 3:
        raise VertexOutOfRange("a cycle needs at least 3 vertices")
    return Graph.from_edges(k, ((i, (i + 1) % k) for i in range(k)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star(leaves: int) -> Graph:
    """K_{1,leaves} with the hub at vertex 0."""
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def wheel(rim: int) -> Graph:
    """Cycle on vertices 0..rim-1 plus a hub (vertex rim) joined to all."""
    if rim < 3:
        raise VertexOutOfRange("a wheel rim needs at least 3 vertices")
    spokes = ((i, rim) for i in range(rim))
    rim_edges = ((i, (i + 1) % rim) for i in range(rim))
    return Graph.from_edges(rim + 1, list(rim_edges) + list(spokes))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def edgeless(n: int) -> Graph:
    return Graph(n, frozenset())


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def named_graph(name: str) -> Graph:
    """Resolve names like K5, C7, P3, W5, S5, E3, K3,3, PETERSEN."""
    text = name.strip().upper()
    if text == "PETERSEN":
        return petersen()
    if len(text) >= 2 and text[0] in "KCPWSE":
        kind, rest = text[0], text[1:]
        try:
            if kind == "K" and "," in rest:
                a, b = rest.split(",", 1)
                return complete_bipartite(int(a), int(b))
            size = int(rest)
            return {
                "K": complete,
                "C": cycle,
                "P": path,
                "W": wheel,
                "S": star,
                "E": edgeless,
            }[kind](size)
        except ValueError:
            pass
    raise GraphFormatError(f"unknown graph name {name!r}")
