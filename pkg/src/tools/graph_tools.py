"""
Graph Tools - finite undirected connected graphs with hop distances
"""
import threading
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from src.utils.errors import ParseError, UnknownVertex, ValidationError
from src.utils.logging_config import get_logger

logger = get_logger(__name__)


class Graph:
    """
    Immutable finite, undirected, connected graph with the shortest-path metric.

    Every vertex is implicitly adjacent to itself, so self-loops are never
    stored. The all-pairs distance matrix is computed on first use and cached;
    population is guarded by a lock so a shared instance is safe to read from
    several threads.
    """

    def __init__(self, vertices: Sequence[str], edges: Iterable[Tuple[str, str]]):
        self._vertices: Tuple[str, ...] = tuple(vertices)
        self._index: Dict[str, int] = {v: i for i, v in enumerate(self._vertices)}
        if len(self._index) != len(self._vertices):
            raise ValidationError("duplicate vertex identifiers")
        if not self._vertices:
            raise ValidationError("graph has no vertices")

        self._nx = nx.Graph()
        self._nx.add_nodes_from(self._vertices)
        for u, v in edges:
            for endpoint in (u, v):
                if endpoint not in self._index:
                    raise UnknownVertex(endpoint)
            if u == v:
                raise ValidationError(f"self-loop {u} {v}: self-adjacency is implicit")
            if self._nx.has_edge(u, v):
                raise ValidationError(f"duplicate edge: {u} {v}")
            self._nx.add_edge(u, v)

        if not nx.is_connected(self._nx):
            parts = nx.number_connected_components(self._nx)
            raise ValidationError(f"graph is disconnected ({parts} components)")

        self._matrix: Optional[np.ndarray] = None
        self._lock = threading.Lock()

    @classmethod
    def from_edges(cls, edges: Iterable[Tuple[str, str]]) -> "Graph":
        """Build a graph whose vertex order is first appearance in the edge list."""
        edges = list(edges)
        order: Dict[str, None] = {}
        for u, v in edges:
            order.setdefault(u)
            order.setdefault(v)
        return cls(list(order), edges)

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> FrozenSet[FrozenSet[str]]:
        return frozenset(frozenset(e) for e in self._nx.edges())

    def edge_list(self) -> List[Tuple[str, str]]:
        """Edges as ordered pairs, in vertex-index order."""
        return sorted(
            ((u, v) if self._index[u] < self._index[v] else (v, u) for u, v in self._nx.edges()),
            key=lambda e: (self._index[e[0]], self._index[e[1]])
        )

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, vertex: str) -> bool:
        return vertex in self._index

    def index_of(self, vertex: str) -> int:
        self.require(vertex)
        return self._index[vertex]

    def require(self, *vertices: str) -> None:
        for v in vertices:
            if v not in self._index:
                raise UnknownVertex(v)

    def neighbors(self, vertex: str) -> List[str]:
        self.require(vertex)
        return sorted(self._nx.neighbors(vertex), key=self._index.__getitem__)

    def is_adjacent(self, u: str, v: str) -> bool:
        """True when d(u, v) <= 1 (self-adjacency included)."""
        self.require(u, v)
        return u == v or self._nx.has_edge(u, v)

    # ------------------------------------------------------------------
    # Metric
    # ------------------------------------------------------------------

    def distance_matrix(self) -> np.ndarray:
        """All-pairs hop distances, indexed like `vertices` (read-only view)."""
        if self._matrix is None:
            with self._lock:
                if self._matrix is None:
                    n = len(self._vertices)
                    matrix = np.zeros((n, n), dtype=np.int64)
                    for source, lengths in nx.all_pairs_shortest_path_length(self._nx):
                        row = self._index[source]
                        for target, hops in lengths.items():
                            matrix[row, self._index[target]] = hops
                    matrix.setflags(write=False)
                    self._matrix = matrix
                    logger.debug("cached %dx%d distance matrix", n, n)
        return self._matrix

    def distance(self, u: str, v: str) -> int:
        self.require(u, v)
        return int(self.distance_matrix()[self._index[u], self._index[v]])

    def bfs_distance(self, u: str, v: str) -> int:
        """Single-pair breadth-first search, bypassing the cache."""
        self.require(u, v)
        return nx.shortest_path_length(self._nx, u, v)

    def diameter(self) -> int:
        return int(self.distance_matrix().max())

    def shortest_path(self, u: str, v: str) -> List[str]:
        self.require(u, v)
        return nx.shortest_path(self._nx, u, v)

    def simple_paths(self, u: str, v: str, max_len: int) -> Iterable[List[str]]:
        """Simple paths from u to v with at most max_len edges."""
        self.require(u, v)
        return nx.all_simple_paths(self._nx, u, v, cutoff=max_len)

    def to_text(self) -> str:
        return "\n".join(f"{u} {v}" for u, v in self.edge_list()) + "\n"


# ============================================================================
# MODULE-LEVEL OPERATIONS
# ============================================================================

def parse_graph(text: str) -> Graph:
    """
    Parse an edge-list document.

    Each non-empty line is `<u> <v>`; `#` starts a comment. Vertex order is
    first appearance.

    Args:
        text: UTF-8 edge-list document

    Returns:
        Validated Graph
    """
    edges: List[Tuple[str, str]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected '<u> <v>', got {raw.strip()!r}", number)
        u, v = tokens
        if u == v:
            raise ParseError(f"self-loop {u} {v} is not allowed", number)
        edges.append((u, v))

    if not edges:
        raise ValidationError("edge list is empty")

    graph = Graph.from_edges(edges)
    logger.info("[OK] parsed graph with %d vertices and %d edges", len(graph), len(edges))
    return graph


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as f:
        return parse_graph(f.read())


def distance(g: Graph, u: str, v: str) -> int:
    """Hop count of a shortest path between u and v."""
    return g.distance(u, v)


def diameter(g: Graph) -> int:
    """Largest hop distance over all vertex pairs."""
    return g.diameter()
