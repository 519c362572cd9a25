"""
Extension Tools - McShane/Whitney extension of partially known evaluations

The extension is a convex combination

    phi_hat(v) = alpha * f_M(v) + (1 - alpha) * f_W(v)

with f_M(v) = max_y {f(y) - K d(v, y)} and f_W(v) = min_y {f(y) + K d(v, y)}
over the anchor vertices y. alpha = 1 is pure McShane, alpha = 0 pure
Whitney (the opposite labelling, (1 - alpha) f_M + alpha f_W, also appears
in the literature).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence

from src.tools.evaluation_tools import Evaluation, lipschitz_norm, parse_evaluation
from src.tools.graph_tools import Graph
from src.utils.errors import BadConstant, ParseError, ValidationError
from src.utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class AnchorPolicy:
    """
    Which known vertices feed the extension formulas.

    `all` uses the whole explored domain; `minus:<v,...>` leaves out the
    listed targets (their known values are still kept by `extend`).
    """

    excluded: FrozenSet[str] = frozenset()

    @classmethod
    def all(cls) -> "AnchorPolicy":
        return cls()

    @classmethod
    def minus(cls, *targets: str) -> "AnchorPolicy":
        return cls(frozenset(targets))

    def __str__(self) -> str:
        if not self.excluded:
            return "all"
        return "minus:" + ",".join(sorted(self.excluded))


def parse_anchor_policy(text: str) -> AnchorPolicy:
    text = text.strip()
    if text == "all":
        return AnchorPolicy.all()
    if text.startswith("minus:"):
        targets = [t.strip() for t in text[len("minus:"):].split(",") if t.strip()]
        if not targets:
            raise ParseError("anchor policy 'minus:' needs at least one vertex")
        return AnchorPolicy.minus(*targets)
    raise ParseError(f"anchor policy must be 'all' or 'minus:<v,...>', got {text!r}")


@dataclass(frozen=True)
class PartialEvaluation:
    """
    Evaluation known only on a vertex subset (the explored vertices).

    The restricted Lipschitz norm over the domain is computed on construction.
    """

    graph: Graph
    base_vertex: str
    values: Mapping[str, Fraction] = field(hash=False)
    anchor_policy: AnchorPolicy = AnchorPolicy()
    lipschitz_bound: Fraction = field(init=False, compare=False)

    def __post_init__(self):
        if not self.values:
            raise ValidationError("partial evaluation needs a non-empty domain")
        self.graph.require(self.base_vertex, *self.values)
        if self.base_vertex not in self.values:
            raise ValidationError(f"base vertex {self.base_vertex} must be in the domain")
        values = {v: Fraction(x) for v, x in self.values.items()}
        if values[self.base_vertex] != 0:
            raise ValidationError(f"value at base vertex {self.base_vertex} must be 0")
        self.graph.require(*self.anchor_policy.excluded)
        if self.base_vertex in self.anchor_policy.excluded:
            raise ValidationError("the base vertex cannot be excluded from the anchors")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "lipschitz_bound", restricted_lipschitz_norm(self.graph, values))

    @property
    def domain(self) -> List[str]:
        return list(self.values)

    @property
    def anchors(self) -> List[str]:
        return [v for v in self.values if v not in self.anchor_policy.excluded]

    def with_policy(self, policy: AnchorPolicy) -> "PartialEvaluation":
        return PartialEvaluation(self.graph, self.base_vertex, self.values, policy)


def restricted_lipschitz_norm(g: Graph, values: Mapping[str, Fraction]) -> Fraction:
    """L = max over domain pairs of |f(u) - f(v)| / d(u, v)."""
    return max(
        (abs(values[u] - values[v]) / g.distance(u, v) for u, v in combinations(values, 2)),
        default=Fraction(0)
    )


def partial_from_evaluation(
    phi: Evaluation,
    domain: Sequence[str],
    policy: Optional[AnchorPolicy] = None
) -> PartialEvaluation:
    """Restrict a total evaluation to the vertices in `domain`."""
    known = list(dict.fromkeys([phi.base_vertex, *domain]))
    return PartialEvaluation(phi.graph, phi.base_vertex, {v: phi(v) for v in known}, policy or AnchorPolicy())


def load_partial_evaluation(path: str, g: Graph, policy: Optional[AnchorPolicy] = None) -> PartialEvaluation:
    """Read an evaluation file (`base <v>` then `<v> <p/q>` lines) as a partial evaluation."""
    with open(path, "r", encoding="utf-8") as f:
        base, values = parse_evaluation(f.read(), g)
    return PartialEvaluation(g, base, values, policy or AnchorPolicy())


def _resolve_constant(p: PartialEvaluation, K: Optional[Fraction]) -> Fraction:
    if K is None:
        return p.lipschitz_bound
    K = Fraction(K)
    if K < p.lipschitz_bound:
        raise BadConstant(f"Lipschitz constant {K} is below the restricted norm {p.lipschitz_bound}")
    return K


def mcshane(p: PartialEvaluation, vertex: str, K: Optional[Fraction] = None) -> Fraction:
    """
    f_M(v) = max over anchors y of f(y) - K d(v, y); the largest K-Lipschitz extension.

    K defaults to the restricted Lipschitz norm.
    """
    p.graph.require(vertex)
    K = _resolve_constant(p, K)
    g = p.graph
    return max(p.values[y] - K * g.distance(vertex, y) for y in p.anchors)


def whitney(p: PartialEvaluation, vertex: str, K: Optional[Fraction] = None) -> Fraction:
    """f_W(v) = min over anchors y of f(y) + K d(v, y); the smallest K-Lipschitz extension."""
    p.graph.require(vertex)
    K = _resolve_constant(p, K)
    g = p.graph
    return min(p.values[y] + K * g.distance(vertex, y) for y in p.anchors)


def extend(p: PartialEvaluation, alpha: Fraction, K: Optional[Fraction] = None) -> Evaluation:
    """
    Total evaluation phi_hat = alpha * f_M + (1 - alpha) * f_W off the domain,
    and the known values on it.

    Args:
        p: Partial evaluation
        alpha: Blend weight in [0, 1]
        K: Lipschitz constant >= restricted norm (default: the restricted norm)

    Returns:
        Evaluation on every vertex

    Excluding anchors can push the norm of the result above K; that case is
    logged as a warning.
    """
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise ValidationError(f"alpha must lie in [0, 1], got {alpha}")
    K = _resolve_constant(p, K)

    values: Dict[str, Fraction] = {}
    for v in p.graph.vertices:
        if v in p.values:
            values[v] = p.values[v]
        else:
            values[v] = alpha * mcshane(p, v, K) + (1 - alpha) * whitney(p, v, K)
    logger.debug(
        "extended %d known values to %d vertices (alpha=%s, K=%s, anchors=%s)",
        len(p.values), len(values), alpha, K, p.anchor_policy
    )
    phi_hat = Evaluation(p.graph, p.base_vertex, values)
    if p.anchor_policy.excluded:
        norm = lipschitz_norm(phi_hat)
        if norm > K:
            logger.warning(
                "[WARN] anchors %s give an extension of norm %s, above K=%s", p.anchor_policy, norm, K
            )
    return phi_hat


@dataclass(frozen=True)
class ExtensionDetail:
    vertex: str
    policy: str
    mcshane: Fraction
    whitney: Fraction
    extended: Fraction


def explain_extension(
    p: PartialEvaluation,
    alpha: Fraction,
    policies: Sequence[AnchorPolicy],
    vertices: Optional[Sequence[str]] = None,
    K: Optional[Fraction] = None
) -> List[ExtensionDetail]:
    """
    f_M, f_W and phi_hat per vertex under each anchor policy.

    Defaults to the vertices outside the known domain.
    """
    vertices = list(vertices) if vertices is not None else [v for v in p.graph.vertices if v not in p.values]
    details = []
    for policy in policies:
        q = p.with_policy(policy)
        phi_hat = extend(q, alpha, K)
        for v in vertices:
            details.append(ExtensionDetail(v, str(policy), mcshane(q, v, K), whitney(q, v, K), phi_hat(v)))
    return details
