"""
Fixture Tools - the ten-vertex worked example

The graph, walks, preliminary evaluation and expected table are embedded
here and shipped under data/ with identical contents, so the CLI self-test
and the golden tests read one source.
"""
import os
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from src.tools.graph_tools import Graph, parse_graph
from src.tools.walk_tools import Walk, parse_walks
from src.utils.settings import get_settings

EXAMPLE_GRAPH = """\
# Ten-vertex example graph: base v1, target v10
v1 v2
v1 v3
v2 v4
v3 v4
v2 v5
v4 v6
v4 v9
v5 v9
v6 v8
v5 v7
v7 v9
v3 v8
v6 v10
v9 v10
v8 v10
"""

EXAMPLE_WALKS = """\
# explored walks (references)
w1: v1 v2 v5 v9 v10
w2: v1 v3 v4 v9 v10
w3: v1 v3 v8 v10
# unexplored walks (candidates)
w4: v1 v2 v5 v7 v9 v10
w5: v1 v3 v4 v6 v10
w6: v1 v3 v8 v6 v10
"""

EXAMPLE_EVALUATION = """\
# preliminary evaluation d(v, v10) - 3 on the explored vertices
base v1
v1 0
v2 0
v3 -1
v4 -1
v5 -1
v8 -2
v9 -2
v10 -3
"""

EXAMPLE_EXPECTED = """\
walk\tw1\tw2\tw3
w4\t0.062\t0.312\t0.500
w5\t0.281\t0.031\t0.219
w6\t0.406\t0.156\t0.094
"""

REFERENCES = ("w1", "w2", "w3")
CANDIDATES = ("w4", "w5", "w6")
BASE_VERTEX = "v1"
TARGET_VERTEX = "v10"
ANCHOR_POLICY = "minus:v10"
ALPHA = Fraction(1, 2)
RATIO = Fraction(1, 2)

EXPECTED_TABLE: Dict[Tuple[str, str], Fraction] = {
    ("w4", "w1"): Fraction(1, 16), ("w4", "w2"): Fraction(5, 16), ("w4", "w3"): Fraction(1, 2),
    ("w5", "w1"): Fraction(9, 32), ("w5", "w2"): Fraction(1, 32), ("w5", "w3"): Fraction(7, 32),
    ("w6", "w1"): Fraction(13, 32), ("w6", "w2"): Fraction(5, 32), ("w6", "w3"): Fraction(3, 32),
}

EXPECTED_ASSIGNMENTS = {"w4": "w1", "w5": "w2", "w6": "w3"}

DATA_FILES = {
    "graph": ("example_graph.txt", EXAMPLE_GRAPH),
    "walks": ("example_walks.txt", EXAMPLE_WALKS),
    "evaluation": ("example_eval.txt", EXAMPLE_EVALUATION),
    "expected": ("example_expected.tsv", EXAMPLE_EXPECTED),
}


def example_graph() -> Graph:
    return parse_graph(EXAMPLE_GRAPH)


def example_walks(g: Optional[Graph] = None) -> Dict[str, Walk]:
    return parse_walks(EXAMPLE_WALKS, g or example_graph())


def expected_rows() -> List[List[Fraction]]:
    return [[EXPECTED_TABLE[row, col] for col in REFERENCES] for row in CANDIDATES]


def format_assignments(assignments: Dict[str, str]) -> str:
    """`w4~w1 w5~w2 w6~w3`."""
    return " ".join(f"{walk}~{ref}" for walk, ref in assignments.items())


def data_dir() -> str:
    """Directory of the shipped data files (WALKPROX_DATA_DIR overrides)."""
    configured = get_settings().data_dir
    if configured:
        return configured
    return os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def data_path(kind: str) -> str:
    return os.path.join(data_dir(), DATA_FILES[kind][0])


def read_data_file(kind: str) -> str:
    with open(data_path(kind), "r", encoding="utf-8") as f:
        return f.read()
