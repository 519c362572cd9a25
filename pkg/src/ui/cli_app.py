"""
Command-Line Interface for the Walk Proximity Toolkit
"""
import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import pydantic
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from src.tools import fixture_tools as fixture
from src.tools.check_tools import (
    CheckReport,
    check_concavity_witness,
    check_domination,
    check_metric,
    check_pseudometric,
)
from src.tools.evaluation_tools import Evaluation, parse_evaluation
from src.tools.extension_tools import (
    AnchorPolicy,
    PartialEvaluation,
    explain_extension,
    extend,
    load_partial_evaluation,
    parse_anchor_policy,
)
from src.tools.graph_tools import Graph, load_graph
from src.tools.proximity_tools import (
    ProximityModel,
    classify,
    load_model,
    proximity_table,
    save_model,
)
from src.tools.sampling_tools import sample_paths
from src.tools.walk_tools import (
    GeometricScheme,
    IndexSet,
    Walk,
    d_tau_restricted,
    format_walks,
    load_walks,
    parse_index_set,
)
from src.utils.errors import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_SELF_TEST,
    ReproductionMismatch,
    UnknownWalk,
    ValidationError,
    WalkProximityError,
)
from src.utils.logging_config import configure_logging, get_logger
from src.utils.rendering import format_decimal, format_exact, render_matrix, render_records
from src.utils.settings import RunConfig
from src.workflow.graph import build_average_proximity

logger = get_logger(__name__)


# ============================================================================
# ARGUMENT PARSING
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    """Top-level parser; the shared flags are accepted after every command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="edge-list file")
    common.add_argument("--walks", help="walk file")
    common.add_argument("--eval", dest="evaluation", help="evaluation file (base line + values)")
    common.add_argument("--ratio", help="geometric weight ratio p/q in (0, 1)")
    common.add_argument("--alpha", help="McShane/Whitney blend p/q in [0, 1]")
    common.add_argument("--base", help="base vertex")
    common.add_argument("--anchor", help="extension anchors: all | minus:<v,...>")
    common.add_argument("--lip-constant", dest="lip_constant", help="extension Lipschitz constant K")
    common.add_argument("--set", dest="index_set", help="index set: all | {1,2} | ~{3}")
    common.add_argument("--decimals", type=int, help="rounding decimals")
    common.add_argument("--format", dest="output_format", choices=["tsv", "json"])
    common.add_argument("--seed", type=int)
    common.add_argument("--verbose", action="store_true", help="INFO logging on stderr")

    parser = argparse.ArgumentParser(
        prog="walkprox",
        description="Walk metrics, Lipschitz extension and proximity classification on graphs"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common], help="shortest-path distance")
    p.add_argument("u")
    p.add_argument("v")

    p = sub.add_parser("walk-dist", parents=[common], help="weighted distance between two named walks")
    p.add_argument("name1")
    p.add_argument("name2")

    p = sub.add_parser("extend", parents=[common], help="extend a partial evaluation to every vertex")
    p.add_argument("--explain", action="store_true", help="McShane/Whitney values per anchor policy")

    p = sub.add_parser("build-classify", parents=[common], help="build the average proximity and classify")
    p.add_argument("--refs", help="comma-separated reference walk names (default: all)")
    p.add_argument("--candidates", help="comma-separated candidate names (default: non-references)")
    p.add_argument("--save-model", dest="save_model", help="write the model as JSON")

    p = sub.add_parser(
        "repro-example", aliases=["repro-paper"], parents=[common], help="reproduce the ten-vertex worked example"
    )
    p.add_argument("--explain", action="store_true", help="show the extension under both anchor policies")

    p = sub.add_parser("sample-paths", parents=[common], help="simple-path walks between two vertices")
    p.add_argument("start")
    p.add_argument("end")
    p.add_argument("--max-len", dest="max_len", type=int, required=True)
    p.add_argument("--max-count", dest="max_count", type=int, default=20)

    p = sub.add_parser("check", parents=[common], help="metric, domination, concavity and pseudometric suites")
    p.add_argument("--model", help="saved model (default: uniform average proximity of the walks)")

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig.from_settings(
        graph_path=args.graph,
        walks_path=args.walks,
        evaluation_path=args.evaluation,
        ratio=args.ratio,
        alpha=args.alpha,
        lip_constant=args.lip_constant,
        base_vertex=args.base,
        anchor_policy=args.anchor,
        index_set=args.index_set,
        output_format=args.output_format,
        decimals=args.decimals,
        seed=args.seed
    )


# ============================================================================
# INPUT HELPERS
# ============================================================================

def require_graph(config: RunConfig) -> Graph:
    if not config.graph_path:
        raise ValidationError("this command needs --graph")
    return load_graph(config.graph_path)


def require_walks(config: RunConfig, g: Graph) -> Dict[str, Walk]:
    if not config.walks_path:
        raise ValidationError("this command needs --walks")
    return load_walks(config.walks_path, g)


def lookup_walks(walks: Dict[str, Walk], names: Sequence[str]) -> List[Walk]:
    for name in names:
        if name not in walks:
            raise UnknownWalk(name)
    return [walks[name] for name in names]


def split_names(text: Optional[str]) -> Optional[List[str]]:
    if text is None:
        return None
    return [name.strip() for name in text.split(",") if name.strip()]


def load_partial(config: RunConfig, g: Graph, policy: AnchorPolicy) -> PartialEvaluation:
    partial = load_partial_evaluation(config.evaluation_path, g, policy)
    if config.base_vertex and config.base_vertex != partial.base_vertex:
        raise ValidationError(
            f"--base {config.base_vertex} disagrees with the evaluation file base {partial.base_vertex}"
        )
    return partial


def emit(text: str) -> None:
    print(text)


# ============================================================================
# COMMANDS
# ============================================================================

def cmd_dist(config: RunConfig, u: str, v: str) -> int:
    g = require_graph(config)
    emit(str(g.distance(u, v)))
    return EXIT_OK


def cmd_walk_dist(config: RunConfig, name1: str, name2: str) -> int:
    g = require_graph(config)
    walks = require_walks(config, g)
    w1, w2 = lookup_walks(walks, [name1, name2])
    value = d_tau_restricted(GeometricScheme(config.ratio), g, w1, w2, parse_index_set(config.index_set))
    if config.output_format == "json":
        emit(json.dumps({"exact": format_exact(value), "decimal": format_decimal(value, config.decimals)}))
    elif value == 0:
        emit("0")
    else:
        emit(f"{format_exact(value)}\t{format_decimal(value, config.decimals)}")
    return EXIT_OK


def render_explanation(details, config: RunConfig) -> str:
    records = [
        {
            "vertex": d.vertex,
            "anchors": d.policy,
            "mcshane": format_exact(d.mcshane),
            "whitney": format_exact(d.whitney),
            "extended": format_exact(d.extended),
        }
        for d in details
    ]
    return render_records(records, ["vertex", "anchors", "mcshane", "whitney", "extended"], config.output_format)


def render_evaluation(phi: Evaluation, known: Sequence[str], config: RunConfig) -> str:
    records = [
        {
            "vertex": v,
            "exact": format_exact(phi.values[v]),
            "decimal": format_decimal(phi.values[v], config.decimals),
            "known": "yes" if v in known else "no",
        }
        for v in phi.graph.vertices
    ]
    return render_records(records, ["vertex", "exact", "decimal", "known"], config.output_format)


def cmd_extend(config: RunConfig, explain: bool) -> int:
    g = require_graph(config)
    if not config.evaluation_path:
        raise ValidationError("extend needs --eval")
    policy = parse_anchor_policy(config.anchor_policy)
    partial = load_partial(config, g, policy)
    phi_hat = extend(partial, config.alpha, config.lip_constant)
    emit(render_evaluation(phi_hat, partial.domain, config))
    if explain:
        policies = [AnchorPolicy.all()] + ([policy] if policy.excluded else [])
        emit("")
        emit(render_explanation(explain_extension(partial, config.alpha, policies, K=config.lip_constant), config))
    return EXIT_OK


def classification_output(
    model: ProximityModel,
    walks: Dict[str, Walk],
    refs: List[str],
    candidates: List[str],
    index_set: IndexSet,
    decimals: int,
    output_format: str
) -> Tuple[str, Dict[str, str], List[List[Fraction]]]:
    ref_walks = lookup_walks(walks, refs)
    cand_walks = lookup_walks(walks, candidates)
    table = proximity_table(model, cand_walks, ref_walks, index_set)
    assignments = {
        name: refs[classify(model, w, ref_walks, index_set)] for name, w in zip(candidates, cand_walks)
    }
    if output_format == "json":
        text = json.dumps({
            "table": json.loads(render_matrix(candidates, refs, table, decimals, "json")),
            "assignments": assignments,
        }, indent=2)
    else:
        text = render_matrix(candidates, refs, table, decimals) + "\n" + fixture.format_assignments(assignments)
    return text, assignments, table


def cmd_build_classify(
    config: RunConfig,
    refs: Optional[List[str]],
    candidates: Optional[List[str]],
    save_path: Optional[str]
) -> int:
    g = require_graph(config)
    walks = require_walks(config, g)
    refs = refs if refs is not None else list(walks)
    candidates = candidates if candidates is not None else [n for n in walks if n not in refs]
    policy = parse_anchor_policy(config.anchor_policy)
    partial = load_partial(config, g, policy) if config.evaluation_path else None

    model = build_average_proximity(
        g,
        lookup_walks(walks, refs),
        None,
        config.alpha,
        GeometricScheme(config.ratio),
        anchor_policy=policy,
        lip_constant=config.lip_constant,
        base_vertex=config.base_vertex,
        partial=partial
    )
    text, _, _ = classification_output(
        model, walks, refs, candidates, parse_index_set(config.index_set), config.decimals, config.output_format
    )
    emit(text)
    if save_path:
        save_model(model, save_path)
    return EXIT_OK


def build_example_model(policy: Optional[AnchorPolicy] = None) -> Tuple[ProximityModel, Dict[str, Walk]]:
    """The worked-example model, built from the embedded fixture only."""
    g = fixture.example_graph()
    walks = fixture.example_walks(g)
    model = build_average_proximity(
        g,
        lookup_walks(walks, fixture.REFERENCES),
        None,
        fixture.ALPHA,
        GeometricScheme(fixture.RATIO),
        anchor_policy=policy or parse_anchor_policy(fixture.ANCHOR_POLICY)
    )
    return model, walks


def cmd_repro_example(config: RunConfig, explain: bool) -> int:
    model, walks = build_example_model()
    refs, candidates = list(fixture.REFERENCES), list(fixture.CANDIDATES)
    text, assignments, table = classification_output(
        model, walks, refs, candidates, IndexSet.all(), 3, config.output_format
    )
    emit(text)

    if explain:
        base, values = parse_evaluation(fixture.EXAMPLE_EVALUATION, model.graph)
        partial = PartialEvaluation(model.graph, base, values)
        policies = [AnchorPolicy.all(), parse_anchor_policy(fixture.ANCHOR_POLICY)]
        emit("")
        emit(render_explanation(explain_extension(partial, fixture.ALPHA, policies), config))

    mismatches = [
        f"P({row},{col})={format_exact(table[r][c])}, expected {format_exact(fixture.EXPECTED_TABLE[row, col])}"
        for r, row in enumerate(candidates)
        for c, col in enumerate(refs)
        if table[r][c] != fixture.EXPECTED_TABLE[row, col]
    ]
    if assignments != fixture.EXPECTED_ASSIGNMENTS:
        mismatches.append(f"assignments {fixture.format_assignments(assignments)}")
    if mismatches:
        raise ReproductionMismatch("; ".join(mismatches))
    logger.info("[OK] worked example reproduced")
    return EXIT_OK


def cmd_sample_paths(config: RunConfig, start: str, end: str, max_len: int, max_count: int) -> int:
    g = require_graph(config)
    walks = sample_paths(g, start, end, max_len, max_count, config.seed)
    named = {f"p{k}": w for k, w in enumerate(walks, start=1)}
    if config.output_format == "json":
        emit(json.dumps({name: str(w).split() for name, w in named.items()}, indent=2))
    else:
        emit(format_walks(named).rstrip("\n"))
    return EXIT_OK


def cmd_check(config: RunConfig, model_path: Optional[str]) -> int:
    g = require_graph(config)
    walks = require_walks(config, g)
    scheme = GeometricScheme(config.ratio)
    index_set = parse_index_set(config.index_set)
    named = list(walks.items())

    if model_path:
        model = load_model(model_path, g)
    else:
        model = build_average_proximity(
            g, [w for _, w in named], None, config.alpha, scheme,
            anchor_policy=parse_anchor_policy(config.anchor_policy),
            lip_constant=config.lip_constant,
            base_vertex=config.base_vertex
        )

    samples = [(f"{a}|{b}", wa, wb, index_set) for a, wa in named for b, wb in named]
    reports: List[CheckReport] = [
        check_metric(scheme, g, named),
        check_domination(model, samples),
        check_concavity_witness(model, [[s] for s in samples] + [samples]),
        check_pseudometric(model, named, index_set),
    ]

    records = [{"suite": r.name, **row} for r in reports for row in r.records()]
    emit(render_records(records, ["suite", "pair", "lhs", "rhs", "pass"], config.output_format))
    for r in reports:
        for note in r.notes:
            logger.warning("[WARN] %s: %s", r.name, note)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_SELF_TEST


# ============================================================================
# MAIN
# ============================================================================

def dispatch(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    if args.command == "dist":
        return cmd_dist(config, args.u, args.v)
    if args.command == "walk-dist":
        return cmd_walk_dist(config, args.name1, args.name2)
    if args.command == "extend":
        return cmd_extend(config, args.explain)
    if args.command == "build-classify":
        return cmd_build_classify(config, split_names(args.refs), split_names(args.candidates), args.save_model)
    if args.command in ("repro-example", "repro-paper"):
        return cmd_repro_example(config, args.explain)
    if args.command == "sample-paths":
        return cmd_sample_paths(config, args.start, args.end, args.max_len, args.max_count)
    return cmd_check(config, args.model)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the process exit code."""
    args = build_parser().parse_args(argv)
    configure_logging("INFO" if args.verbose else None)
    try:
        return dispatch(args)
    except WalkProximityError as exc:
        print(json.dumps(exc.to_dict()), file=sys.stderr)
        return exc.exit_code
    except pydantic.ValidationError as exc:
        print(json.dumps({"success": False, "error": str(exc), "error_type": "ValidationError"}), file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(json.dumps({"success": False, "error": str(exc), "error_type": type(exc).__name__}), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
