"""
LangGraph State Schema for the Average-Proximity Pipeline
"""
from datetime import datetime
from fractions import Fraction
from typing import Any, Dict, List, Optional, TypedDict

from src.tools.evaluation_tools import Evaluation
from src.tools.extension_tools import AnchorPolicy, PartialEvaluation
from src.tools.graph_tools import Graph
from src.tools.proximity_tools import ProximityModel, ProximityOracle, WeightSequence
from src.tools.walk_tools import Walk, WeightScheme


class PipelineState(TypedDict):
    """
    Shared state of the pipeline.
    Each node reads its inputs here and writes its result back.
    """

    # Inputs
    graph: Graph
    walks: List[Walk]
    oracle: Optional[ProximityOracle]
    scheme: WeightScheme
    alpha: Fraction
    anchor_policy: AnchorPolicy
    lip_constant: Optional[Fraction]
    base_vertex: Optional[str]
    target_vertex: Optional[str]

    # Step 1: evaluation
    partial: Optional[PartialEvaluation]
    evaluation: Optional[Evaluation]

    # Step 2: weights
    weights: Optional[WeightSequence]
    weight_source: Optional[str]  # "recovered" | "uniform"

    # Step 3: model
    model: Optional[ProximityModel]

    # Metadata
    steps: List[str]
    created_at: str
    updated_at: str


def create_initial_state(
    graph: Graph,
    walks: List[Walk],
    scheme: WeightScheme,
    alpha: Fraction,
    oracle: Optional[ProximityOracle] = None,
    anchor_policy: Optional[AnchorPolicy] = None,
    lip_constant: Optional[Fraction] = None,
    base_vertex: Optional[str] = None,
    target_vertex: Optional[str] = None,
    partial: Optional[PartialEvaluation] = None
) -> PipelineState:
    """
    Create the initial pipeline state.

    Args:
        graph: Graph the walks live on
        walks: Explored walks W0
        scheme: Weight scheme
        alpha: McShane/Whitney blend
        oracle: Known proximity on W0 pairs; uniform weights when absent
        anchor_policy: Anchors of the extension formulas
        lip_constant: Extension constant K (default: restricted norm)
        base_vertex: Base vertex (default: start of the first walk)
        target_vertex: Target of the distance recipe (default: limit of the first walk)
        partial: Known partial evaluation, replacing the distance recipe

    Returns:
        Initialized PipelineState
    """
    now = datetime.now().isoformat()
    return PipelineState(
        graph=graph,
        walks=list(walks),
        oracle=oracle,
        scheme=scheme,
        alpha=Fraction(alpha),
        anchor_policy=anchor_policy or AnchorPolicy.all(),
        lip_constant=lip_constant,
        base_vertex=base_vertex,
        target_vertex=target_vertex,
        partial=partial,
        evaluation=None,
        weights=None,
        weight_source=None,
        model=None,
        steps=[],
        created_at=now,
        updated_at=now
    )


def update_state(state: PipelineState, updates: Dict[str, Any], step: Optional[str] = None) -> PipelineState:
    """
    Update state with new values and refresh metadata.

    Args:
        state: Current state
        updates: Fields to update
        step: Name of the finished step, appended to `steps`

    Returns:
        Updated state
    """
    new_state = {**state, **updates}
    if step:
        new_state["steps"] = state["steps"] + [step]
    new_state["updated_at"] = datetime.now().isoformat()
    return PipelineState(**new_state)
