"""
Tests for the domination, concavity-witness and axiom suites.
"""
from fractions import Fraction

import pytest

from src.tools import fixture_tools as fixture
from src.tools.check_tools import (
    check_concavity_witness,
    check_domination,
    check_metric,
    check_pseudometric,
    in_unit_ball,
)
from src.tools.evaluation_tools import lipschitz_norm
from src.tools.proximity_tools import ProximityModel, WeightSequence
from src.tools.walk_tools import IndexSet, Walk, restrict
from src.utils.errors import DominationViolated, WitnessCheckFailed


def table_samples(example_walks, index_set=None):
    index_set = index_set or IndexSet.all()
    return [
        (f"{c}|{r}", example_walks[c], example_walks[r], index_set)
        for c in fixture.CANDIDATES
        for r in fixture.REFERENCES
    ]


def test_domination_on_table_pairs(example_model, example_walks):
    report = check_domination(example_model, table_samples(example_walks))
    assert report.passed
    assert len(report.rows) == 9
    assert report.records()[0]["pair"] == "w4|w1"


def test_domination_on_identical_walks(example_model, example_walks):
    w = example_walks["w2"]
    report = check_domination(example_model, [("same", w, w, IndexSet.all())])
    assert report.rows[0].lhs == "0" and report.rows[0].rhs == "0"


def test_domination_for_constant_walks(example_model, example_graph):
    u, v = Walk((), "v1"), Walk((), "v6")
    report = check_domination(example_model, [("const", u, v, IndexSet.all())])
    phi = example_model.evaluation
    assert report.rows[0].lhs == "3/2"
    expected_rhs = lipschitz_norm(phi) * example_model.bound * example_graph.distance("v1", "v6")
    assert report.rows[0].rhs == "9/2" == f"{expected_rhs.numerator}/{expected_rhs.denominator}"


def test_domination_violation_carries_report(example_model, example_walks):
    broken = ProximityModel(example_model.scheme, example_model.evaluation, WeightSequence.constant(Fraction(4)))
    object.__setattr__(broken, "bound", Fraction(1, 10))
    with pytest.raises(DominationViolated) as excinfo:
        check_domination(broken, table_samples(example_walks))
    assert excinfo.value.sample == "w4|w1"
    assert not excinfo.value.report.passed
    assert excinfo.value.exit_code == 3


def test_concavity_singleton_family(example_model, example_walks):
    family = [("w4|w1", example_walks["w4"], example_walks["w1"], IndexSet.all())]
    report = check_concavity_witness(example_model, [family])
    assert report.rows[0].lhs == "1/16"
    assert report.rows[0].rhs == "1/16"
    assert report.passed


def test_concavity_empty_family(example_model):
    report = check_concavity_witness(example_model, [[]])
    assert report.rows[0].lhs == "0" and report.rows[0].rhs == "0"
    assert report.rows[0].pair == "family1"


def test_concavity_flags_evaluation_outside_unit_ball(example_model, example_walks):
    assert not in_unit_ball(example_model)
    report = check_concavity_witness(example_model, [table_samples(example_walks)])
    assert report.passed
    assert report.notes and "3/2" in report.notes[0]


def test_concavity_failure(example_model, example_walks):
    broken = ProximityModel(example_model.scheme, example_model.evaluation, WeightSequence.constant(Fraction(2)))
    object.__setattr__(broken, "bound", Fraction(1))
    family = [("w4|w1", example_walks["w4"], example_walks["w1"], IndexSet.all())]
    with pytest.raises(WitnessCheckFailed) as excinfo:
        check_concavity_witness(broken, [family])
    assert excinfo.value.family == "w4|w1"


def test_pseudometric_suite(example_model, example_walks):
    report = check_pseudometric(example_model, list(example_walks.items()))
    assert report.passed
    # 6 diagonal rows, 15 symmetry rows, 6*5*4 triangle rows
    assert len(report.rows) == 6 + 15 + 120


def test_pseudometric_suite_on_index_subset(example_model, example_walks):
    assert check_pseudometric(example_model, list(example_walks.items()), IndexSet.of(3, 4)).passed


def test_metric_suite(half, example_graph, example_walks):
    assert check_metric(half, example_graph, list(example_walks.items())).passed


def test_metric_suite_mixes_walks_and_restrictions(example_graph, example_walks, half):
    w1, w2 = example_walks["w1"], example_walks["w2"]
    named = [
        ("w1", w1),
        ("w1(N)", restrict(w1, IndexSet.all(), "v1")),
        ("w2", w2),
        ("w2({2})", restrict(w2, IndexSet.of(2), "v1")),
    ]
    report = check_metric(half, example_graph, named)
    assert report.passed
    row = next(r for r in report.rows if r.pair == "d(w1,w1(N))")
    assert row.lhs == "0" and row.passed
