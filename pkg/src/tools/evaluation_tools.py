"""
Evaluation Tools - Lipschitz evaluations of the vertices and their pairings with walks
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Mapping, Optional, Tuple

from src.tools.graph_tools import Graph
from src.tools.walk_tools import (
    IndexSet,
    VertexSequence,
    Walk,
    WeightScheme,
    d_tau,
    make_walk,
    sum_over,
)
from src.utils.errors import DegenerateEvaluation, ParseError, ValidationError
from src.utils.logging_config import get_logger
from src.utils.rendering import format_exact
from src.utils.settings import parse_rational

logger = get_logger(__name__)


@dataclass(frozen=True)
class Evaluation:
    """
    Element of E(G): a real function on every vertex, zero at the base vertex.
    """

    graph: Graph
    base_vertex: str
    values: Mapping[str, Fraction] = field(hash=False)

    def __post_init__(self):
        self.graph.require(self.base_vertex)
        missing = [v for v in self.graph.vertices if v not in self.values]
        if missing:
            raise ValidationError(f"evaluation undefined at {', '.join(missing)}")
        extra = [v for v in self.values if v not in self.graph]
        if extra:
            raise ValidationError(f"evaluation defined off the graph at {', '.join(extra)}")
        values = {v: Fraction(self.values[v]) for v in self.graph.vertices}
        if values[self.base_vertex] != 0:
            raise ValidationError(
                f"evaluation must vanish at base vertex {self.base_vertex}, "
                f"got {values[self.base_vertex]}"
            )
        object.__setattr__(self, "values", values)

    def __call__(self, vertex: str) -> Fraction:
        self.graph.require(vertex)
        return self.values[vertex]

    @classmethod
    def zero(cls, graph: Graph, base_vertex: str) -> "Evaluation":
        return cls(graph, base_vertex, {v: Fraction(0) for v in graph.vertices})


def evaluation_from_distance(g: Graph, base_vertex: str, target: str) -> Evaluation:
    """
    phi(v) = d(v, target) - d(base, target): zero at the base, norm 1 whenever
    the graph has an edge.
    """
    offset = g.distance(base_vertex, target)
    return Evaluation(g, base_vertex, {v: Fraction(g.distance(v, target) - offset) for v in g.vertices})


def lipschitz_norm(phi: Evaluation) -> Fraction:
    """
    Max over edges of |phi(u) - phi(v)|.

    The hop metric is geodesic along edges, so this equals the supremum over
    all vertex pairs of |phi(u) - phi(v)| / d(u, v).
    """
    return max(
        (abs(phi.values[u] - phi.values[v]) for u, v in phi.graph.edge_list()),
        default=Fraction(0)
    )


def lipschitz_norm_all_pairs(phi: Evaluation) -> Fraction:
    """Brute-force sup over distinct vertex pairs; oracle for lipschitz_norm."""
    g = phi.graph
    return max(
        (abs(phi.values[u] - phi.values[v]) / g.distance(u, v) for u, v in combinations(g.vertices, 2)),
        default=Fraction(0)
    )


def pairing(scheme: WeightScheme, w: VertexSequence, phi: Evaluation, index_set: IndexSet) -> Fraction:
    """<w, phi>(A) = sum_{i in A} tau_i phi(w(i))."""
    return sum_over(scheme, index_set, w.horizon, lambda i: phi(w.at(i)))


def pairing_diff(
    scheme: WeightScheme,
    w1: VertexSequence,
    w2: VertexSequence,
    phi: Evaluation,
    index_set: IndexSet
) -> Fraction:
    """<w1 (-) w2, phi>(A) = <w1, phi>(A) - <w2, phi>(A)."""
    return pairing(scheme, w1, phi, index_set) - pairing(scheme, w2, phi, index_set)


def abs_pairing(
    scheme: WeightScheme,
    w1: VertexSequence,
    w2: VertexSequence,
    phi: Evaluation,
    index_set: IndexSet
) -> Fraction:
    """
    P_phi(w1, w2, A) = sum_{i in A} tau_i |phi(w1(i)) - phi(w2(i))|.

    Countably additive in A; the building block of canonical proximities.
    """
    horizon = max(w1.horizon, w2.horizon)
    return sum_over(scheme, index_set, horizon, lambda i: abs(phi(w1.at(i)) - phi(w2.at(i))))


def canonical_measure(scheme: WeightScheme, phi: Evaluation, w1: VertexSequence, w2: VertexSequence):
    """The set function A -> P_phi(w1, w2, A)."""
    return lambda index_set: abs_pairing(scheme, w1, w2, phi, index_set)


def composite_lipschitz(phi: Evaluation, w: VertexSequence) -> Fraction:
    """
    ||phi o w||_Lip over index pairs.

    Pairs beyond horizon + 1 repeat the tail value at a larger index gap, so
    they never raise the supremum.
    """
    last = w.horizon + 1
    values = [phi(w.at(i)) for i in range(1, last + 1)]
    return max(
        (abs(values[i] - values[j]) / (j - i) for i, j in combinations(range(last), 2)),
        default=Fraction(0)
    )


def lipschitz_norm_by_duality(phi: Evaluation, scheme: WeightScheme) -> Fraction:
    """
    sup over distinct constant walks of |<w1 (-) w2, phi>| / d_tau(w1, w2).

    For constant walks at u, v the quotient is |phi(u) - phi(v)| / d(u, v).
    """
    g = phi.graph
    best = Fraction(0)
    for u, v in combinations(g.vertices, 2):
        w1, w2 = Walk((), u), Walk((), v)
        ratio = abs(pairing_diff(scheme, w1, w2, phi, IndexSet.all())) / d_tau(scheme, g, w1, w2)
        best = max(best, ratio)
    return best


@dataclass(frozen=True)
class NormWitness:
    """A walk and two indices attaining |phi(w(i)) - phi(w(j))| / |i - j| = ||phi||_Lip."""

    walk: Walk
    indices: Tuple[int, int]
    value: Fraction
    degenerate: bool = False


def lipnorm_witness_walk(phi: Evaluation, strict: bool = False) -> NormWitness:
    """
    Certify that sup_w ||phi o w||_Lip attains ||phi||_Lip.

    The witness follows a shortest path from the base vertex to one end of a
    steepest edge and then crosses it.

    Args:
        phi: Evaluation on a graph with at least two vertices
        strict: Raise DegenerateEvaluation for constant phi instead of
            returning the constant-walk witness

    Returns:
        NormWitness
    """
    g = phi.graph
    if len(g) < 2:
        raise ValidationError("norm witness needs at least two vertices")

    norm = lipschitz_norm(phi)
    if norm == 0:
        witness = NormWitness(Walk((), phi.base_vertex), (1, 2), Fraction(0), degenerate=True)
        if strict:
            raise DegenerateEvaluation("evaluation is constant; norm 0", witness)
        logger.warning("[WARN] evaluation is constant; returning constant-walk witness")
        return witness

    u, v = next(
        (a, b) for a, b in g.edge_list() if abs(phi.values[a] - phi.values[b]) == norm
    )
    path = g.shortest_path(phi.base_vertex, u)
    walk = make_walk(g, path, v)
    k = len(path)
    return NormWitness(walk, (k, k + 1), abs(phi(walk.at(k)) - phi(walk.at(k + 1))))


# ============================================================================
# EVALUATION FILES
# ============================================================================

def parse_evaluation(text: str, g: Graph) -> Tuple[str, Dict[str, Fraction]]:
    """
    Parse a `base <vertex>` header followed by `<vertex> <rational>` lines.

    Args:
        text: Evaluation file contents
        g: Graph the values refer to

    Returns:
        (base vertex, values on the listed vertices)
    """
    base: Optional[str] = None
    values: Dict[str, Fraction] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected '<vertex> <rational>', got {raw.strip()!r}", number)
        key, value = tokens
        if key == "base":
            if base is not None:
                raise ParseError("duplicate base line", number)
            g.require(value)
            base = value
            continue
        g.require(key)
        if key in values:
            raise ParseError(f"duplicate value for {key}", number)
        try:
            values[key] = parse_rational(value)
        except ParseError as exc:
            raise ParseError(str(exc), number)
    if base is None:
        raise ParseError("missing 'base <vertex>' header")
    values.setdefault(base, Fraction(0))
    return base, values


def format_evaluation(phi: Evaluation) -> str:
    lines = [f"base {phi.base_vertex}"]
    lines += [f"{v} {format_exact(phi.values[v])}" for v in phi.graph.vertices]
    return "\n".join(lines) + "\n"
