"""Simple undirected graphs, edge-list parsing, and hop distances.

Vertices are dense 0-based integers. Graphs and distance matrices are
immutable once built and can be shared freely between readers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

#: Marker stored in a :class:`DistanceMatrix` for vertex pairs with no path.
UNREACHABLE = None


class GraphError(ValueError):
    """Base class for malformed graph input."""


class InvalidVertex(GraphError):
    pass


class NotSimple(GraphError):
    pass


class Unreachable(GraphError):
    pass


class ParseError(GraphError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    edge_count: int

    @property
    def n(self) -> int:
        return self.vertex_count

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def to_edge_list(self) -> str:
        lines = [str(self.vertex_count)]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    def subgraph_without(self, removed: Iterable[int]) -> Graph:
        """Delete vertices and relabel the survivors in increasing order."""
        gone = set(removed)
        keep = [v for v in range(self.vertex_count) if v not in gone]
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return build_graph(len(keep), edges)


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a simple graph on vertices ``0..n-1``.

    Raises :class:`InvalidVertex` for endpoints outside the range and
    :class:`NotSimple` for self-loops or repeated edges.
    """
    if n < 0:
        raise InvalidVertex(f"negative vertex count {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    m = 0
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        for x in (u, v):
            if not 0 <= x < n:
                raise InvalidVertex(f"vertex {x} out of range for n={n}")
        if u == v:
            raise NotSimple(f"self-loop at {u}")
        if v in nbrs[u]:
            raise NotSimple(f"duplicate edge {min(u, v)}-{max(u, v)}")
        nbrs[u].add(v)
        nbrs[v].add(u)
        m += 1
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs), m)


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    The first content line holds the vertex count; each further content
    line holds two whitespace-separated 0-based endpoints. Blank lines and
    lines starting with ``#`` are ignored; CRLF line endings are accepted.
    """
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError(1, "missing vertex count") from None
    try:
        n = int(header)
    except ValueError:
        raise ParseError(lineno, f"expected vertex count, got {header!r}") from None
    if n < 0:
        raise ParseError(lineno, "vertex count must be nonnegative")

    edges = []
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(lineno, f"non-integer endpoint in {line!r}") from None
    return build_graph(n, edges)


@dataclass(frozen=True)
class DistanceMatrix:
    n: int
    dist: tuple[tuple[int | None, ...], ...]

    def __getitem__(self, u: int) -> tuple[int | None, ...]:
        return self.dist[u]

    def connected(self, u: int, v: int) -> bool:
        return self.dist[u][v] is not UNREACHABLE

    def diameter(self) -> int | None:
        vals = [d for row in self.dist for d in row]
        if any(d is UNREACHABLE for d in vals):
            return None
        return max(vals, default=0)


def bfs_distances(g: Graph, source: int) -> list[int | None]:
    dist: list[int | None] = [UNREACHABLE] * g.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in g.adjacency[u]:
            if dist[v] is UNREACHABLE:
                dist[v] = du
                queue.append(v)
    return dist


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """Hop distances by one BFS per vertex."""
    rows = tuple(tuple(bfs_distances(g, s)) for s in range(g.vertex_count))
    return DistanceMatrix(g.vertex_count, rows)


def interval(d: DistanceMatrix, x: int, y: int) -> frozenset[int]:
    """Vertices on at least one shortest x,y-path."""
    dxy = d[x][y]
    if dxy is UNREACHABLE:
        raise Unreachable(f"no path between {x} and {y}")
    row_x, row_y = d[x], d[y]
    return frozenset(
        u
        for u in range(d.n)
        if row_x[u] is not UNREACHABLE and row_x[u] + row_y[u] == dxy
    )


def is_connected(g: Graph) -> bool:
    if g.vertex_count <= 1:
        return True
    return all(x is not UNREACHABLE for x in bfs_distances(g, 0))
