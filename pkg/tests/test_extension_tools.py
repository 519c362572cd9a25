"""
Tests for the McShane/Whitney extension and anchor policies.
"""
import logging
from fractions import Fraction

import pytest

from src.tools import fixture_tools as fixture
from src.tools.evaluation_tools import evaluation_from_distance, lipschitz_norm
from src.tools.extension_tools import (
    AnchorPolicy,
    PartialEvaluation,
    explain_extension,
    extend,
    load_partial_evaluation,
    mcshane,
    parse_anchor_policy,
    partial_from_evaluation,
    restricted_lipschitz_norm,
    whitney,
)
from src.utils.errors import BadConstant, ParseError, UnknownVertex, ValidationError

HALF = Fraction(1, 2)


def test_worked_example_values(explored_partial):
    phi_hat = extend(explored_partial, HALF)
    assert phi_hat("v6") == Fraction(-3, 2)
    assert phi_hat("v7") == Fraction(-3, 2)
    # known values are kept, including the excluded target
    assert phi_hat("v10") == -3
    assert phi_hat("v2") == 0


def test_all_anchor_policy_moves_v6(explored_partial):
    everything = explored_partial.with_policy(AnchorPolicy.all())
    assert mcshane(everything, "v6") == -2
    assert whitney(everything, "v6") == -2
    assert extend(everything, HALF)("v6") == -2
    assert extend(everything, HALF)("v7") == Fraction(-3, 2)


def test_excluding_target_changes_whitney_only(explored_partial):
    assert mcshane(explored_partial, "v6") == -2
    assert whitney(explored_partial, "v6") == -1


def test_restricted_norm(explored_partial):
    assert explored_partial.lipschitz_bound == 1
    assert explored_partial.domain == ["v1", "v2", "v3", "v4", "v5", "v8", "v9", "v10"]
    assert "v10" not in explored_partial.anchors


def test_extension_norm_under_each_policy(explored_partial):
    assert lipschitz_norm(extend(explored_partial.with_policy(AnchorPolicy.all()), HALF)) == 1
    assert lipschitz_norm(extend(explored_partial, HALF)) == Fraction(3, 2)


@pytest.mark.parametrize("alpha", [Fraction(0), Fraction(1, 3), Fraction(1)])
@pytest.mark.parametrize("K", [None, Fraction(1), Fraction(5, 2)])
def test_full_anchor_extension_keeps_constant(explored_partial, alpha, K):
    p = explored_partial.with_policy(AnchorPolicy.all())
    phi_hat = extend(p, alpha, K)
    assert lipschitz_norm(phi_hat) <= (K if K is not None else p.lipschitz_bound)
    for v, value in p.values.items():
        assert phi_hat(v) == value


def test_mcshane_below_whitney(explored_partial):
    p = explored_partial.with_policy(AnchorPolicy.all())
    for v in p.graph.vertices:
        assert mcshane(p, v) <= whitney(p, v)


def test_pure_mcshane_and_whitney(explored_partial):
    assert extend(explored_partial, Fraction(1))("v6") == -2
    assert extend(explored_partial, Fraction(0))("v6") == -1


def test_constant_below_restricted_norm(explored_partial):
    with pytest.raises(BadConstant):
        extend(explored_partial, HALF, Fraction(1, 2))


def test_alpha_out_of_range(explored_partial):
    with pytest.raises(ValidationError):
        extend(explored_partial, Fraction(3, 2))


def test_partial_requires_base_with_zero(example_graph):
    with pytest.raises(ValidationError):
        PartialEvaluation(example_graph, "v1", {"v2": Fraction(1)})
    with pytest.raises(ValidationError):
        PartialEvaluation(example_graph, "v1", {"v1": Fraction(1)})


def test_base_cannot_be_excluded(example_graph):
    with pytest.raises(ValidationError):
        PartialEvaluation(example_graph, "v1", {"v1": Fraction(0)}, AnchorPolicy.minus("v1"))


def test_unknown_excluded_vertex(example_graph):
    with pytest.raises(UnknownVertex):
        PartialEvaluation(example_graph, "v1", {"v1": Fraction(0)}, AnchorPolicy.minus("v77"))


@pytest.mark.parametrize("text, excluded", [
    ("all", frozenset()),
    ("minus:v10", frozenset({"v10"})),
    ("minus: v9, v10", frozenset({"v9", "v10"})),
])
def test_parse_anchor_policy(text, excluded):
    policy = parse_anchor_policy(text)
    assert policy.excluded == excluded


@pytest.mark.parametrize("text", ["minus:", "none", "minus"])
def test_parse_anchor_policy_rejects(text):
    with pytest.raises(ParseError):
        parse_anchor_policy(text)


def test_policy_text_round_trip():
    assert str(parse_anchor_policy("minus:v9,v10")) == "minus:v10,v9"
    assert str(AnchorPolicy.all()) == "all"


def test_explain_extension(explored_partial):
    details = explain_extension(
        explored_partial, HALF, [AnchorPolicy.all(), AnchorPolicy.minus("v10")]
    )
    rows = {(d.vertex, d.policy): (d.mcshane, d.whitney, d.extended) for d in details}
    assert rows["v6", "all"] == (-2, -2, -2)
    assert rows["v6", "minus:v10"] == (-2, -1, Fraction(-3, 2))
    assert rows["v7", "minus:v10"] == (-2, -1, Fraction(-3, 2))
    assert len(details) == 4


def test_partial_from_total_evaluation(example_graph):
    phi = evaluation_from_distance(example_graph, "v1", "v10")
    p = partial_from_evaluation(phi, ["v3", "v10"])
    assert p.domain == ["v1", "v3", "v10"]
    assert extend(p, HALF)("v3") == -1


def test_restricted_norm_uses_graph_distance(example_graph):
    assert restricted_lipschitz_norm(example_graph, {"v1": Fraction(0), "v10": Fraction(-3)}) == 1
    assert restricted_lipschitz_norm(example_graph, {"v1": Fraction(0), "v10": Fraction(6)}) == 2
    assert restricted_lipschitz_norm(example_graph, {"v1": Fraction(0)}) == 0


def test_excluded_anchors_above_constant_are_logged(explored_partial):
    records = []
    handler = logging.Handler()
    handler.emit = records.append
    ext_logger = logging.getLogger("walkprox.extension_tools")
    ext_logger.addHandler(handler)
    try:
        phi_hat = extend(explored_partial, Fraction(1, 2), Fraction(1))
        full = extend(explored_partial.with_policy(AnchorPolicy.all()), Fraction(1, 2), Fraction(1))
    finally:
        ext_logger.removeHandler(handler)
    assert lipschitz_norm(phi_hat) == Fraction(3, 2)
    assert lipschitz_norm(full) == 1
    warnings = [r for r in records if r.levelno == logging.WARNING]
    assert len(warnings) == 1
    assert "3/2" in warnings[0].getMessage()


def test_load_partial_evaluation(example_graph, tmp_path):
    path = tmp_path / "eval.txt"
    path.write_text(fixture.EXAMPLE_EVALUATION, encoding="utf-8")
    p = load_partial_evaluation(str(path), example_graph, parse_anchor_policy("minus:v10"))
    assert p.base_vertex == "v1"
    assert p.domain == ["v1", "v2", "v3", "v4", "v5", "v8", "v9", "v10"]
    assert "v10" not in p.anchors
    assert p.values["v10"] == -3
