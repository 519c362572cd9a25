"""
Check Tools - exact inequality suites for proximity models and walk metrics

Every check evaluates both sides as Fractions and returns a report whose
rows render as `pair, lhs, rhs, pass`. A failed domination or concavity
check raises with the report attached.
"""
from fractions import Fraction
from itertools import combinations, permutations
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from src.tools.evaluation_tools import abs_pairing, lipschitz_norm
from src.tools.graph_tools import Graph
from src.tools.proximity_tools import ProximityModel, proximity
from src.tools.walk_tools import IndexSet, VertexSequence, WeightScheme, d_tau, d_tau_restricted
from src.utils.errors import DominationViolated, WitnessCheckFailed
from src.utils.logging_config import get_logger
from src.utils.rendering import format_exact

logger = get_logger(__name__)

# (label, w1, w2, A)
Sample = Tuple[str, VertexSequence, VertexSequence, IndexSet]


class CheckRow(BaseModel):
    pair: str
    lhs: str
    rhs: str
    passed: bool


class CheckReport(BaseModel):
    """Outcome of one inequality or axiom suite."""

    name: str
    rows: List[CheckRow] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def add(self, pair: str, lhs: Fraction, rhs: Fraction, passed: Optional[bool] = None) -> None:
        self.rows.append(CheckRow(
            pair=pair,
            lhs=format_exact(lhs),
            rhs=format_exact(rhs),
            passed=lhs <= rhs if passed is None else passed
        ))

    def failures(self) -> List[CheckRow]:
        return [row for row in self.rows if not row.passed]

    def records(self) -> List[dict]:
        return [
            {"pair": row.pair, "lhs": row.lhs, "rhs": row.rhs, "pass": "yes" if row.passed else "no"}
            for row in self.rows
        ]


def check_domination(m: ProximityModel, samples: Sequence[Sample]) -> CheckReport:
    """
    P(w1, w2, A) <= ||phi||_Lip * K * sum_{i in A} tau_i d(w1(i), w2(i)) per sample.

    Raises:
        DominationViolated: on the first failing sample, with the full report
    """
    g = m.graph
    factor = lipschitz_norm(m.evaluation) * m.bound
    report = CheckReport(name="domination")
    for label, w1, w2, index_set in samples:
        lhs = proximity(m, w1, w2, index_set)
        rhs = factor * d_tau_restricted(m.scheme, g, w1, w2, index_set)
        report.add(label, lhs, rhs)
    failures = report.failures()
    if failures:
        raise DominationViolated(failures[0].pair, report)
    logger.debug("domination holds on %d samples", len(report.rows))
    return report


def check_concavity_witness(m: ProximityModel, families: Sequence[Sequence[Sample]]) -> CheckReport:
    """
    sum_k P(w1_k, w2_k, A_k) <= K * sum_k P_phi(w1_k, w2_k, A_k) per family.

    The right side evaluates the sup-norm argument at phi itself, which
    certifies the concavity inequality only when ||phi||_Lip <= 1; the
    report notes when it does not.

    Raises:
        WitnessCheckFailed: on the first failing family, with the full report
    """
    report = CheckReport(name="concavity-witness")
    norm = lipschitz_norm(m.evaluation)
    if norm > 1:
        report.notes.append(
            f"evaluation norm {format_exact(norm)} exceeds 1: passing rows do not certify concavity"
        )
    for number, family in enumerate(families, start=1):
        lhs = sum((proximity(m, w1, w2, a) for _, w1, w2, a in family), Fraction(0))
        rhs = m.bound * sum(
            (abs_pairing(m.scheme, w1, w2, m.evaluation, a) for _, w1, w2, a in family), Fraction(0)
        )
        label = "+".join(s[0] for s in family) or f"family{number}"
        report.add(label, lhs, rhs)
    failures = report.failures()
    if failures:
        raise WitnessCheckFailed(failures[0].pair, report)
    return report


def in_unit_ball(m: ProximityModel) -> bool:
    return lipschitz_norm(m.evaluation) <= 1


def check_pseudometric(
    m: ProximityModel,
    walks: Sequence[Tuple[str, VertexSequence]],
    index_set: Optional[IndexSet] = None
) -> CheckReport:
    """
    Zero diagonal, symmetry and triangle inequality of P(., ., A) on named walks.

    Non-negativity holds term by term and is checked on every pair.
    """
    index_set = index_set or IndexSet.all()
    report = CheckReport(name="pseudometric")
    p = {
        (a, b): proximity(m, wa, wb, index_set)
        for a, wa in walks for b, wb in walks
    }
    names = [name for name, _ in walks]
    for a in names:
        report.add(f"P({a},{a})", p[a, a], Fraction(0), passed=p[a, a] == 0)
    for a, b in combinations(names, 2):
        report.add(f"P({a},{b})=P({b},{a})", p[a, b], p[b, a], passed=p[a, b] == p[b, a] and p[a, b] >= 0)
    for a, b, c in permutations(names, 3):
        report.add(f"P({a},{c})<=P({a},{b})+P({b},{c})", p[a, c], p[a, b] + p[b, c])
    return report


def check_metric(
    scheme: WeightScheme,
    g: Graph,
    walks: Sequence[Tuple[str, VertexSequence]]
) -> CheckReport:
    """Metric axioms of d_tau on named walks: identity of indiscernibles, symmetry, triangle."""
    report = CheckReport(name="metric")
    d = {(a, b): d_tau(scheme, g, wa, wb) for a, wa in walks for b, wb in walks}
    sequences = dict(walks)
    names = list(sequences)
    for a, b in combinations(names, 2):
        same = sequences[a].same_sequence(sequences[b])
        report.add(f"d({a},{b})", d[a, b], d[b, a], passed=d[a, b] == d[b, a] and ((d[a, b] == 0) == same))
    for a in names:
        report.add(f"d({a},{a})", d[a, a], Fraction(0), passed=d[a, a] == 0)
    for a, b, c in permutations(names, 3):
        report.add(f"d({a},{c})<=d({a},{b})+d({b},{c})", d[a, c], d[a, b] + d[b, c])
    return report
