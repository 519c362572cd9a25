"""
LangGraph Workflow for the Average-Proximity Pipeline

evaluation -> extension -> (recover_weights | uniform_weights) -> assemble
"""
from fractions import Fraction
from functools import lru_cache
from typing import List, Literal, Optional

from langgraph.graph import END, StateGraph

from src.tools.evaluation_tools import evaluation_from_distance
from src.tools.extension_tools import AnchorPolicy, PartialEvaluation, extend
from src.tools.graph_tools import Graph
from src.tools.proximity_tools import (
    ProximityModel,
    ProximityOracle,
    WeightSequence,
    average_pair_weights,
)
from src.tools.walk_tools import Walk, WeightScheme, limit_vertex
from src.utils.errors import EmptyInput
from src.utils.logging_config import get_logger
from src.workflow.state import PipelineState, create_initial_state, update_state

logger = get_logger(__name__)


# ============================================================================
# PIPELINE NODES
# ============================================================================

def evaluation_node(state: PipelineState) -> PipelineState:
    """
    Step 1a - preliminary evaluation on the explored vertices.

    Uses phi0(v) = d(v, target) - d(base, target) unless a partial
    evaluation was supplied.
    """
    if state["partial"] is not None:
        partial = state["partial"].with_policy(state["anchor_policy"])
        return update_state(state, {"partial": partial}, step="evaluation")

    walks = state["walks"]
    if not walks:
        raise EmptyInput("the pipeline needs at least one explored walk")
    g = state["graph"]
    first = walks[0]
    base = state["base_vertex"] or first.at(1)
    target = state["target_vertex"] or limit_vertex(first)
    phi0 = evaluation_from_distance(g, base, target)

    explored = list(dict.fromkeys([base] + [v for w in walks for v in w.vertices()]))
    explored.sort(key=g.index_of)
    partial = PartialEvaluation(g, base, {v: phi0(v) for v in explored}, state["anchor_policy"])
    logger.info(
        "[OK] preliminary evaluation on %d explored vertices (base %s, target %s, norm %s)",
        len(explored), base, target, partial.lipschitz_bound
    )
    return update_state(
        state,
        {"partial": partial, "base_vertex": base, "target_vertex": target},
        step="evaluation"
    )


def extension_node(state: PipelineState) -> PipelineState:
    """Step 1b - extend to every vertex with the McShane/Whitney blend."""
    evaluation = extend(state["partial"], state["alpha"], state["lip_constant"])
    logger.info("[OK] extended evaluation to %d vertices", len(evaluation.values))
    return update_state(state, {"evaluation": evaluation}, step="extension")


def recover_weights_node(state: PipelineState) -> PipelineState:
    """Step 2 - recover per-pair weights from the known proximity and average them."""
    walks = state["walks"]
    if len(walks) < 2:
        logger.warning("[WARN] weight recovery needs two walks; using uniform weights")
        return uniform_weights_node(state)
    weights = average_pair_weights(state["oracle"], state["evaluation"], state["scheme"], walks)
    return update_state(state, {"weights": weights, "weight_source": "recovered"}, step="weights")


def uniform_weights_node(state: PipelineState) -> PipelineState:
    """Step 2 - no known proximity: s_i = 1 for every i."""
    return update_state(
        state,
        {"weights": WeightSequence.constant(Fraction(1)), "weight_source": "uniform"},
        step="weights"
    )


def assemble_node(state: PipelineState) -> PipelineState:
    """Step 3 - the canonical proximity model."""
    model = ProximityModel(state["scheme"], state["evaluation"], state["weights"])
    logger.info("[OK] built %s average proximity (bound %s)", state["weight_source"], model.bound)
    return update_state(state, {"model": model}, step="assemble")


def route_weights(state: PipelineState) -> Literal["recover", "uniform"]:
    return "recover" if state["oracle"] is not None else "uniform"


# ============================================================================
# WORKFLOW CREATION
# ============================================================================

@lru_cache(maxsize=1)
def create_workflow():
    """
    Create the LangGraph workflow for the pipeline.

    Returns:
        Compiled workflow
    """
    workflow = StateGraph(PipelineState)

    workflow.add_node("evaluate", evaluation_node)
    workflow.add_node("extension", extension_node)
    workflow.add_node("recover_weights", recover_weights_node)
    workflow.add_node("uniform_weights", uniform_weights_node)
    workflow.add_node("assemble", assemble_node)

    workflow.set_entry_point("evaluate")
    workflow.add_edge("evaluate", "extension")
    workflow.add_conditional_edges(
        "extension",
        route_weights,
        {
            "recover": "recover_weights",
            "uniform": "uniform_weights"
        }
    )
    workflow.add_edge("recover_weights", "assemble")
    workflow.add_edge("uniform_weights", "assemble")
    workflow.add_edge("assemble", END)

    return workflow.compile()


# ============================================================================
# WORKFLOW EXECUTION
# ============================================================================

def run_pipeline(state: PipelineState) -> PipelineState:
    return create_workflow().invoke(state)


def build_average_proximity(
    g: Graph,
    walks: List[Walk],
    oracle: Optional[ProximityOracle],
    alpha: Fraction,
    scheme: WeightScheme,
    anchor_policy: Optional[AnchorPolicy] = None,
    lip_constant: Optional[Fraction] = None,
    base_vertex: Optional[str] = None,
    partial: Optional[PartialEvaluation] = None,
    target_vertex: Optional[str] = None
) -> ProximityModel:
    """
    Build the average proximity of a set of explored walks.

    Args:
        g: Graph
        walks: Explored walks W0 (at least one)
        oracle: Known proximity on W0 pairs, or None for s = 1
        alpha: McShane/Whitney blend in [0, 1]
        scheme: Weight scheme
        anchor_policy: Anchors of the extension formulas
        lip_constant: Extension constant K
        base_vertex: Base vertex override
        target_vertex: Target of the distance recipe (default: limit of the first walk)
        partial: Known partial evaluation, replacing the distance recipe

    Returns:
        ProximityModel
    """
    state = create_initial_state(
        g, walks, scheme, alpha,
        oracle=oracle,
        anchor_policy=anchor_policy,
        lip_constant=lip_constant,
        base_vertex=base_vertex,
        target_vertex=target_vertex,
        partial=partial
    )
    return run_pipeline(state)["model"]
