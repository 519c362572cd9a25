"""
Tests for proximity models, weight recovery, averaging and classification.
"""
from fractions import Fraction

import pytest

from src.tools import fixture_tools as fixture
from src.tools.proximity_tools import (
    ProximityModel,
    WeightSequence,
    average_weights,
    classify,
    load_model,
    model_oracle,
    partition,
    proximity,
    proximity_table,
    recover_distance_weights,
    recover_pair_weights,
    recover_weights,
    sample_singletons,
    save_model,
)
from src.tools.walk_tools import IndexSet, Walk
from src.utils.errors import BadConstant, EmptyInput, InconsistentProximity, ValidationError
from src.utils.rendering import format_decimal


def refs_and_candidates(example_walks):
    refs = [example_walks[name] for name in fixture.REFERENCES]
    candidates = [example_walks[name] for name in fixture.CANDIDATES]
    return refs, candidates


# ============================================================================
# WORKED EXAMPLE
# ============================================================================

def test_worked_example_table(example_model, example_walks):
    refs, candidates = refs_and_candidates(example_walks)
    assert proximity_table(example_model, candidates, refs) == fixture.expected_rows()


def test_worked_example_rendering(example_model, example_walks):
    w4, w1, w5, w2 = (example_walks[n] for n in ("w4", "w1", "w5", "w2"))
    assert format_decimal(proximity(example_model, w4, w1, IndexSet.all())) == "0.062"
    assert format_decimal(proximity(example_model, w5, w2, IndexSet.all())) == "0.031"
    assert format_decimal(proximity(example_model, w4, example_walks["w3"], IndexSet.all())) == "0.500"


def test_worked_example_assignments(example_model, example_walks):
    refs, _ = refs_and_candidates(example_walks)
    for name, expected in fixture.EXPECTED_ASSIGNMENTS.items():
        assert fixture.REFERENCES[classify(example_model, example_walks[name], refs)] == expected


def test_proximity_vanishes_on_diagonal(example_model, example_walks):
    for w in example_walks.values():
        assert proximity(example_model, w, w, IndexSet.all()) == 0
        assert proximity(example_model, w, w, IndexSet.of(3)) == 0


def test_proximity_is_additive(example_model, example_walks):
    w6, w1 = example_walks["w6"], example_walks["w1"]
    a, b = IndexSet.of(2, 4), IndexSet.excluding(2, 4)
    total = proximity(example_model, w6, w1, IndexSet.all())
    assert proximity(example_model, w6, w1, a) + proximity(example_model, w6, w1, b) == total


# ============================================================================
# MODELS AND WEIGHTS
# ============================================================================

def test_weight_sequence():
    s = WeightSequence((Fraction(2), Fraction(0)), Fraction(1, 2))
    assert s.at(1) == 2 and s.at(2) == 0 and s.at(9) == Fraction(1, 2)
    assert s.sup == 2
    assert WeightSequence.constant().sup == 1


def test_negative_weights_are_rejected():
    with pytest.raises(ValidationError):
        WeightSequence((Fraction(-1),), Fraction(1))


def test_bound_defaults_to_sup(example_model, half):
    weights = WeightSequence((Fraction(3),), Fraction(1))
    assert ProximityModel(half, example_model.evaluation, weights).bound == 3
    with pytest.raises(BadConstant):
        ProximityModel(half, example_model.evaluation, weights, Fraction(2))


def test_weights_beyond_walk_horizon(example_model, half, example_walks):
    # the weights' own prefix extends past both walks' prefixes
    w5, w3 = example_walks["w5"], example_walks["w3"]
    weights = WeightSequence((1, 1, 1, 1, 1, 1, 1, 1), Fraction(1))
    model = ProximityModel(half, example_model.evaluation, weights)
    assert proximity(model, w5, w3, IndexSet.all()) == proximity(example_model, w5, w3, IndexSet.all())


# ============================================================================
# RECOVERY
# ============================================================================

def test_recover_weights_round_trip(example_model, half, example_walks):
    w4, w2 = example_walks["w4"], example_walks["w2"]
    truth = WeightSequence(
        (Fraction(5), Fraction(2), Fraction(7), Fraction(1, 3), Fraction(4)), Fraction(1)
    )
    model = ProximityModel(half, example_model.evaluation, truth)
    singletons = sample_singletons(model_oracle(model), w4, w2, 5)
    recovered = recover_weights(singletons, model.evaluation, half, w4, w2, 5)
    # phi_hat differs at indices 2, 4, 5 only
    assert recovered.prefix == (0, 2, 0, Fraction(1, 3), 4)
    assert recovered.tail_value == 0


def test_recover_tail_weight(example_model, half, example_graph):
    u, v = Walk((), "v1"), Walk((), "v10")
    model = ProximityModel(half, example_model.evaluation, WeightSequence.constant(Fraction(2)))
    recovered = recover_pair_weights(model_oracle(model), model.evaluation, half, u, v)
    assert recovered == WeightSequence((), Fraction(2))


def test_recover_distance_weights_round_trip(half, example_graph, example_walks):
    w1, w2 = example_walks["w1"], example_walks["w2"]
    s = {2: Fraction(3), 3: Fraction(1, 2)}
    singletons = {
        i: s.get(i, Fraction(0)) * half.weight(i) * example_graph.distance(w1.at(i), w2.at(i))
        for i in range(1, 5)
    }
    recovered = recover_distance_weights(singletons, example_graph, half, w1, w2, 4)
    assert recovered.prefix == (0, 3, Fraction(1, 2), 0)


def test_zero_convention(example_model, half, example_walks):
    w4, w2 = example_walks["w4"], example_walks["w2"]
    recovered = recover_weights({1: Fraction(0)}, example_model.evaluation, half, w4, w2, 1)
    assert recovered.prefix == (0,)


def test_inconsistent_singleton(example_model, half, example_walks):
    w4, w2 = example_walks["w4"], example_walks["w2"]
    with pytest.raises(InconsistentProximity) as excinfo:
        recover_weights({1: Fraction(1)}, example_model.evaluation, half, w4, w2, 1)
    assert excinfo.value.index == 1


def test_missing_singleton(example_model, half, example_walks):
    w4, w2 = example_walks["w4"], example_walks["w2"]
    with pytest.raises(InconsistentProximity):
        recover_weights({1: Fraction(0)}, example_model.evaluation, half, w4, w2, 2)


# ============================================================================
# AVERAGING
# ============================================================================

def test_average_of_one_sequence():
    s = WeightSequence((Fraction(1), Fraction(3)), Fraction(2))
    assert average_weights([s]) == s


def test_average_midpoint():
    averaged = average_weights([WeightSequence.constant(Fraction(1)), WeightSequence.constant(Fraction(0))])
    assert averaged == WeightSequence((), Fraction(1, 2))


def test_average_pads_with_tails():
    averaged = average_weights([WeightSequence((Fraction(2),), Fraction(0)), WeightSequence.constant()])
    assert averaged == WeightSequence((Fraction(3, 2),), Fraction(1, 2))
    assert averaged.sup <= 2


def test_average_of_nothing():
    with pytest.raises(EmptyInput):
        average_weights([])


# ============================================================================
# CLASSIFICATION
# ============================================================================

def test_reference_classifies_to_itself(example_model, example_walks):
    refs, _ = refs_and_candidates(example_walks)
    for k, ref in enumerate(refs):
        assert classify(example_model, ref, refs) == k


def test_ties_go_to_first_reference(example_model, example_walks):
    w1 = example_walks["w1"]
    assert classify(example_model, example_walks["w4"], [w1, w1]) == 0


def test_classify_needs_references(example_model, example_walks):
    with pytest.raises(EmptyInput):
        classify(example_model, example_walks["w4"], [])


def test_classify_invariant_under_scaling(example_model, half, example_walks):
    refs, candidates = refs_and_candidates(example_walks)
    scaled = ProximityModel(half, example_model.evaluation, example_model.weights.scaled(Fraction(7, 3)))
    for w in candidates:
        assert classify(scaled, w, refs) == classify(example_model, w, refs)


def test_partition(example_model, example_walks):
    refs, candidates = refs_and_candidates(example_walks)
    assert partition(example_model, candidates, refs) == {0: [0], 1: [1], 2: [2]}
    assert partition(example_model, refs, refs) == {0: [0], 1: [1], 2: [2]}
    assert partition(example_model, [], refs) == {0: [], 1: [], 2: []}


def test_partition_restricted_index_set(example_model, example_walks):
    refs, candidates = refs_and_candidates(example_walks)
    # on index 1 every walk sits at v1, so all ties go to w1
    assert partition(example_model, candidates, refs, IndexSet.of(1)) == {0: [0, 1, 2], 1: [], 2: []}


# ============================================================================
# MODEL FILES
# ============================================================================

def test_save_and_load_model(tmp_path, example_model, example_graph, example_walks):
    weights = WeightSequence((Fraction(1, 3), Fraction(2)), Fraction(1))
    model = ProximityModel(example_model.scheme, example_model.evaluation, weights, Fraction(5, 2))
    path = tmp_path / "model.json"
    save_model(model, str(path))
    loaded = load_model(str(path), example_graph)
    assert loaded.weights == weights
    assert loaded.bound == Fraction(5, 2)
    assert loaded.evaluation == model.evaluation
    w5, w1 = example_walks["w5"], example_walks["w1"]
    assert proximity(loaded, w5, w1, IndexSet.all()) == proximity(model, w5, w1, IndexSet.all())
