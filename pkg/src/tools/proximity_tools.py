"""
Proximity Tools - canonical proximity models between walks

A model holds an evaluation phi, a weight sequence s and a bound K >= sup s:

    P(w1, w2, A) = sum_{i in A} tau_i * s_i * |phi(w1(i)) - phi(w2(i))|

This module also recovers s from singleton proximities, averages per-pair
sequences, classifies walks against references and stores models as JSON.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from src.tools.evaluation_tools import Evaluation
from src.tools.graph_tools import Graph
from src.tools.walk_tools import (
    IndexSet,
    VertexSequence,
    WeightScheme,
    scheme_from_dict,
    sum_over,
)
from src.utils.errors import BadConstant, EmptyInput, InconsistentProximity, ValidationError
from src.utils.logging_config import get_logger
from src.utils.rendering import format_exact
from src.utils.settings import parse_rational

logger = get_logger(__name__)

# (w1, w2, A) -> P(w1, w2, A)
ProximityOracle = Callable[[VertexSequence, VertexSequence, IndexSet], Fraction]


# ============================================================================
# WEIGHTS AND MODELS
# ============================================================================

@dataclass(frozen=True)
class WeightSequence:
    """Non-negative s_i: `prefix` for i <= len(prefix), `tail_value` beyond."""

    prefix: Tuple[Fraction, ...] = ()
    tail_value: Fraction = Fraction(1)

    def __post_init__(self):
        prefix = tuple(Fraction(s) for s in self.prefix)
        tail_value = Fraction(self.tail_value)
        if any(s < 0 for s in prefix) or tail_value < 0:
            raise ValidationError("weights must be non-negative")
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "tail_value", tail_value)

    @classmethod
    def constant(cls, value: Fraction = Fraction(1)) -> "WeightSequence":
        return cls((), value)

    def at(self, i: int) -> Fraction:
        if i < 1:
            raise IndexError(f"weights are indexed from 1, got {i}")
        return self.prefix[i - 1] if i <= len(self.prefix) else self.tail_value

    @property
    def horizon(self) -> int:
        return len(self.prefix)

    @property
    def sup(self) -> Fraction:
        return max(self.prefix + (self.tail_value,))

    def scaled(self, factor: Fraction) -> "WeightSequence":
        return WeightSequence(tuple(s * factor for s in self.prefix), self.tail_value * factor)


@dataclass(frozen=True)
class ProximityModel:
    """
    Canonical proximity: scheme, evaluation, weights and bound.

    `bound` defaults to sup_i s_i and may not be smaller.
    """

    scheme: WeightScheme
    evaluation: Evaluation
    weights: WeightSequence = field(default_factory=WeightSequence.constant)
    bound: Optional[Fraction] = None

    def __post_init__(self):
        sup = self.weights.sup
        if self.bound is None:
            object.__setattr__(self, "bound", sup)
            return
        bound = Fraction(self.bound)
        if bound < sup:
            raise BadConstant(f"bound {bound} is below sup of the weights {sup}")
        object.__setattr__(self, "bound", bound)

    @property
    def graph(self) -> Graph:
        return self.evaluation.graph


def proximity(m: ProximityModel, w1: VertexSequence, w2: VertexSequence, index_set: IndexSet) -> Fraction:
    """
    P(w1, w2, A) for the model m.

    Beyond the longest prefix (walks and weights alike) every term is
    constant, so the cofinite part closes with the scheme's tail mass.
    """
    phi = m.evaluation
    horizon = max(w1.horizon, w2.horizon, m.weights.horizon)
    return sum_over(
        m.scheme,
        index_set,
        horizon,
        lambda i: m.weights.at(i) * abs(phi(w1.at(i)) - phi(w2.at(i)))
    )


def proximity_table(
    m: ProximityModel,
    rows: Sequence[VertexSequence],
    cols: Sequence[VertexSequence],
    index_set: Optional[IndexSet] = None
) -> List[List[Fraction]]:
    """Matrix of P(row, col, A); A defaults to all indices."""
    index_set = index_set or IndexSet.all()
    return [[proximity(m, r, c, index_set) for c in cols] for r in rows]


# ============================================================================
# WEIGHT RECOVERY
# ============================================================================

def _recover(
    singletons: Mapping[int, Fraction],
    scheme: WeightScheme,
    n: int,
    horizon: int,
    gap: Callable[[int], Fraction],
    tail_proximity: Optional[Fraction]
) -> WeightSequence:
    prefix: List[Fraction] = []
    for i in range(1, n + 1):
        if i not in singletons:
            raise InconsistentProximity(i, f"no singleton proximity given for index {i}")
        value = Fraction(singletons[i])
        if value < 0:
            raise InconsistentProximity(i, f"negative proximity {value} at index {i}")
        denominator = scheme.weight(i) * gap(i)
        if denominator == 0:
            if value != 0:
                raise InconsistentProximity(
                    i, f"proximity {value} at index {i} where the walks cannot be told apart"
                )
            prefix.append(Fraction(0))
        else:
            prefix.append(value / denominator)

    tail_value = Fraction(0)
    if tail_proximity is not None:
        value = Fraction(tail_proximity)
        denominator = sum_over(scheme, IndexSet.beyond(n), max(horizon, n), gap)
        if denominator == 0:
            if value != 0:
                raise InconsistentProximity(None, f"tail proximity {value} where the tails coincide")
        else:
            tail_value = value / denominator
    return WeightSequence(tuple(prefix), tail_value)


def recover_weights(
    singletons: Mapping[int, Fraction],
    phi0: Evaluation,
    scheme: WeightScheme,
    w1: VertexSequence,
    w2: VertexSequence,
    n: int,
    tail_proximity: Optional[Fraction] = None
) -> WeightSequence:
    """
    Invert the canonical form index by index.

    s_i = P(w1, w2, {i}) / (tau_i |phi0(w1(i)) - phi0(w2(i))|), with s_i = 0
    where the denominator vanishes. The weight beyond n is recovered from
    the proximity of {i > n} when given, otherwise set to 0.

    Args:
        singletons: i -> P(w1, w2, {i}) for 1 <= i <= n
        phi0: Evaluation of the canonical form
        scheme: Weight scheme
        w1: First walk
        w2: Second walk
        n: Number of singleton indices
        tail_proximity: P(w1, w2, {i > n}), optional

    Returns:
        WeightSequence with a prefix of length n
    """
    return _recover(
        singletons, scheme, n, max(w1.horizon, w2.horizon),
        lambda i: abs(phi0(w1.at(i)) - phi0(w2.at(i))),
        tail_proximity
    )


def recover_distance_weights(
    singletons: Mapping[int, Fraction],
    g: Graph,
    scheme: WeightScheme,
    w1: VertexSequence,
    w2: VertexSequence,
    n: int,
    tail_proximity: Optional[Fraction] = None
) -> WeightSequence:
    """Same quotient against the distance form sum tau_i s_i d(w1(i), w2(i))."""
    return _recover(
        singletons, scheme, n, max(w1.horizon, w2.horizon),
        lambda i: Fraction(g.distance(w1.at(i), w2.at(i))),
        tail_proximity
    )


def sample_singletons(
    oracle: ProximityOracle,
    w1: VertexSequence,
    w2: VertexSequence,
    n: int
) -> Dict[int, Fraction]:
    return {i: Fraction(oracle(w1, w2, IndexSet.of(i))) for i in range(1, n + 1)}


def recover_pair_weights(
    oracle: ProximityOracle,
    phi0: Evaluation,
    scheme: WeightScheme,
    w1: VertexSequence,
    w2: VertexSequence
) -> WeightSequence:
    """Query the oracle on the singletons up to the pair's horizon and on the tail beyond it."""
    n = max(w1.horizon, w2.horizon)
    singletons = sample_singletons(oracle, w1, w2, n)
    tail = Fraction(oracle(w1, w2, IndexSet.beyond(n)))
    return recover_weights(singletons, phi0, scheme, w1, w2, n, tail)


def average_weights(sequences: Sequence[WeightSequence]) -> WeightSequence:
    """
    Index-wise arithmetic mean; shorter prefixes are padded with their tail value.

    Raises:
        EmptyInput: no sequences
    """
    if not sequences:
        raise EmptyInput("cannot average an empty list of weight sequences")
    count = len(sequences)
    length = max(s.horizon for s in sequences)
    prefix = tuple(
        sum((s.at(i) for s in sequences), Fraction(0)) / count for i in range(1, length + 1)
    )
    tail_value = sum((s.tail_value for s in sequences), Fraction(0)) / count
    return WeightSequence(prefix, tail_value)


def average_pair_weights(
    oracle: ProximityOracle,
    phi0: Evaluation,
    scheme: WeightScheme,
    walks: Sequence[VertexSequence]
) -> WeightSequence:
    """Recover per unordered pair of distinct list positions and average."""
    pairs = list(combinations(range(len(walks)), 2))
    if not pairs:
        raise EmptyInput("weight recovery needs at least two walks")
    sequences = [recover_pair_weights(oracle, phi0, scheme, walks[a], walks[b]) for a, b in pairs]
    logger.debug("recovered %d per-pair weight sequences", len(sequences))
    return average_weights(sequences)


def model_oracle(m: ProximityModel) -> ProximityOracle:
    """The model's own proximity as an oracle."""
    return lambda w1, w2, index_set: proximity(m, w1, w2, index_set)


# ============================================================================
# CLASSIFICATION
# ============================================================================

def classify(
    m: ProximityModel,
    w: VertexSequence,
    refs: Sequence[VertexSequence],
    index_set: Optional[IndexSet] = None
) -> int:
    """
    Index of the nearest reference under P; ties go to the smallest index.

    Raises:
        EmptyInput: no references
    """
    if not refs:
        raise EmptyInput("classification needs at least one reference walk")
    index_set = index_set or IndexSet.all()
    scores = [proximity(m, w, ref, index_set) for ref in refs]
    return min(range(len(refs)), key=lambda k: (scores[k], k))


def partition(
    m: ProximityModel,
    walks: Sequence[VertexSequence],
    refs: Sequence[VertexSequence],
    index_set: Optional[IndexSet] = None
) -> Dict[int, List[int]]:
    """
    Cluster walks by their nearest reference.

    Returns:
        reference index -> positions in `walks`, every reference present
    """
    if not refs:
        raise EmptyInput("partition needs at least one reference walk")
    clusters: Dict[int, List[int]] = {k: [] for k in range(len(refs))}
    for position, w in enumerate(walks):
        clusters[classify(m, w, refs, index_set)].append(position)
    return clusters


# ============================================================================
# MODEL FILES
# ============================================================================

class WeightsDocument(BaseModel):
    prefix: List[str] = Field(default_factory=list)
    tail_value: str = "1"


class ModelDocument(BaseModel):
    """JSON layout of a saved model; rationals are `p/q` strings."""

    scheme: Dict[str, str]
    base_vertex: str
    evaluation: Dict[str, str]
    weights: WeightsDocument
    bound: str


def model_to_document(m: ProximityModel) -> ModelDocument:
    phi = m.evaluation
    return ModelDocument(
        scheme=m.scheme.describe(),
        base_vertex=phi.base_vertex,
        evaluation={v: format_exact(phi.values[v]) for v in phi.graph.vertices},
        weights=WeightsDocument(
            prefix=[format_exact(s) for s in m.weights.prefix],
            tail_value=format_exact(m.weights.tail_value)
        ),
        bound=format_exact(m.bound)
    )


def model_from_document(document: ModelDocument, g: Graph) -> ProximityModel:
    evaluation = Evaluation(
        g, document.base_vertex, {v: parse_rational(x) for v, x in document.evaluation.items()}
    )
    weights = WeightSequence(
        tuple(parse_rational(s) for s in document.weights.prefix),
        parse_rational(document.weights.tail_value)
    )
    return ProximityModel(scheme_from_dict(document.scheme), evaluation, weights, parse_rational(document.bound))


def save_model(m: ProximityModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(model_to_document(m).model_dump_json(indent=2))
    logger.info("[OK] saved proximity model to %s", path)


def load_model(path: str, g: Graph) -> ProximityModel:
    with open(path, "r", encoding="utf-8") as f:
        document = ModelDocument.model_validate_json(f.read())
    return model_from_document(document, g)
