"""
Shared fixtures: the ten-vertex worked example and small graphs.
"""
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import pytest
from hypothesis import settings

from src.tools import fixture_tools as fixture
from src.tools.extension_tools import PartialEvaluation, parse_anchor_policy
from src.tools.evaluation_tools import parse_evaluation
from src.tools.graph_tools import Graph
from src.tools.walk_tools import GeometricScheme

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def example_graph() -> Graph:
    return fixture.example_graph()


@pytest.fixture(scope="session")
def example_walks(example_graph):
    return fixture.example_walks(example_graph)


@pytest.fixture(scope="session")
def half() -> GeometricScheme:
    return GeometricScheme(Fraction(1, 2))


@pytest.fixture(scope="session")
def explored_partial(example_graph) -> PartialEvaluation:
    """phi0 = d(., v10) - 3 on the explored vertices, anchors minus v10."""
    base, values = parse_evaluation(fixture.EXAMPLE_EVALUATION, example_graph)
    return PartialEvaluation(example_graph, base, values, parse_anchor_policy(fixture.ANCHOR_POLICY))


@pytest.fixture(scope="session")
def example_model():
    from src.ui.cli_app import build_example_model
    model, _ = build_example_model()
    return model


@pytest.fixture
def path_graph() -> Graph:
    """a - b - c - d"""
    return Graph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")])


@pytest.fixture
def triangle() -> Graph:
    return Graph(["x", "y", "z"], [("x", "y"), ("y", "z"), ("x", "z")])
