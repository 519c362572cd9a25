"""
Exception hierarchy for the walk proximity toolkit.

Every error carries the CLI exit code it maps to:
    1 - input error (bad file, invalid object, bad constant)
    2 - lookup error (unknown vertex or walk name)
    3 - self-test failure (reproduction mismatch, violated inequality)
"""
from typing import Any, Optional


EXIT_OK = 0
EXIT_INPUT = 1
EXIT_LOOKUP = 2
EXIT_SELF_TEST = 3


class WalkProximityError(Exception):
    """Base class for all toolkit errors."""

    exit_code = EXIT_INPUT

    def to_dict(self) -> dict:
        return {
            "success": False,
            "error": str(self),
            "error_type": type(self).__name__
        }


# ============================================================================
# INPUT ERRORS
# ============================================================================

class ParseError(WalkProximityError):
    """Malformed line in a graph, walk, evaluation or index-set document."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ValidationError(WalkProximityError):
    """A structurally valid input violates a domain invariant."""


class NotAWalk(WalkProximityError):
    """Consecutive entries w(i), w(i+1) are more than one hop apart."""

    def __init__(self, index: int, u: str, v: str):
        self.index = index
        super().__init__(f"not a walk: d(w({index}), w({index + 1})) > 1 ({u} -> {v})")


class UnrepresentableSet(WalkProximityError):
    """Index set outside the finite/cofinite algebra."""


class BadConstant(WalkProximityError):
    """Lipschitz constant (or proximity bound) below its required minimum."""


class DegenerateEvaluation(WalkProximityError):
    """Evaluation is constant, so no walk attains a positive norm."""

    def __init__(self, message: str, witness: Any = None):
        self.witness = witness
        super().__init__(message)


class InconsistentProximity(WalkProximityError):
    """Proximity data that no canonical representation can produce."""

    def __init__(self, index: Optional[int], message: str):
        self.index = index
        super().__init__(message)


class EmptyInput(WalkProximityError):
    """An operation that needs at least one element received none."""


class NoPathWithinLength(WalkProximityError):
    """No path between two vertices fits the requested length."""


# ============================================================================
# LOOKUP ERRORS
# ============================================================================

class UnknownVertex(WalkProximityError):
    exit_code = EXIT_LOOKUP

    def __init__(self, vertex: str):
        self.vertex = vertex
        super().__init__(f"unknown vertex: {vertex!r}")


class UnknownWalk(WalkProximityError):
    exit_code = EXIT_LOOKUP

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown walk: {name!r}")


# ============================================================================
# SELF-TEST FAILURES
# ============================================================================

class DominationViolated(WalkProximityError):
    """P(w1,w2,A) exceeded ||phi||_Lip * K * d_tau(w1(A), w2(A))."""

    exit_code = EXIT_SELF_TEST

    def __init__(self, sample: str, report: Any = None):
        self.sample = sample
        self.report = report
        super().__init__(f"domination violated for {sample}")


class WitnessCheckFailed(WalkProximityError):
    exit_code = EXIT_SELF_TEST

    def __init__(self, family: str, report: Any = None):
        self.family = family
        self.report = report
        super().__init__(f"concavity witness check failed for {family}")


class ReproductionMismatch(WalkProximityError):
    exit_code = EXIT_SELF_TEST
