"""
Sampling Tools - candidate walks between two vertices
"""
from typing import List

import numpy as np

from src.tools.graph_tools import Graph
from src.tools.walk_tools import Walk, make_walk
from src.utils.errors import NoPathWithinLength, ValidationError
from src.utils.logging_config import get_logger

logger = get_logger(__name__)


def sample_paths(
    g: Graph,
    v_start: str,
    v_end: str,
    max_len: int,
    max_count: int,
    rng_seed: int = 0
) -> List[Walk]:
    """
    Simple-path walks from v_start that stay at v_end once they reach it.

    All simple paths with at most max_len edges are enumerated and sorted
    (length, then vertex order); when there are more than max_count, a
    seeded draw without replacement keeps max_count of them in sorted order.

    Args:
        g: Graph
        v_start: First vertex
        v_end: Limit vertex
        max_len: Maximum number of edges
        max_count: Maximum number of walks returned
        rng_seed: Seed of the numpy generator

    Returns:
        Distinct walks

    Raises:
        NoPathWithinLength: max_len is below d(v_start, v_end)
    """
    g.require(v_start, v_end)
    if max_count < 1:
        raise ValidationError("max_count must be >= 1")
    hops = g.distance(v_start, v_end)
    if max_len < hops:
        raise NoPathWithinLength(
            f"no path from {v_start} to {v_end} within {max_len} edges (distance {hops})"
        )
    if v_start == v_end:
        return [make_walk(g, (), v_end)]

    order = {v: i for i, v in enumerate(g.vertices)}
    paths = sorted(
        g.simple_paths(v_start, v_end, max_len),
        key=lambda p: (len(p), [order[v] for v in p])
    )
    if len(paths) > max_count:
        rng = np.random.default_rng(rng_seed)
        chosen = np.sort(rng.choice(len(paths), size=max_count, replace=False))
        paths = [paths[int(k)] for k in chosen]
    logger.info("[OK] sampled %d walks from %s to %s", len(paths), v_start, v_end)
    return [make_walk(g, p[:-1], p[-1]) for p in paths]
