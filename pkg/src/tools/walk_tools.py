"""
Walk Tools - walks, weight schemes, index sets and the weighted walk metric

Walks are eventually constant: a finite prefix followed by a tail vertex
repeated forever. Indexing is 1-based everywhere, matching tau_i with i >= 1.
All metric values are exact Fractions.
"""
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Dict, FrozenSet, List, Sequence, Tuple, Union

from src.tools.graph_tools import Graph
from src.utils.errors import NotAWalk, ParseError, UnrepresentableSet, ValidationError
from src.utils.settings import parse_rational


# ============================================================================
# WEIGHT SCHEMES
# ============================================================================

class WeightScheme(ABC):
    """Positive weights tau_i (i >= 1) summing to 1."""

    @abstractmethod
    def weight(self, i: int) -> Fraction:
        ...

    @abstractmethod
    def tail_mass(self, n: int) -> Fraction:
        """Sum of weight(i) over i > n."""

    @abstractmethod
    def progression_mass(self, start: int, step: int) -> Fraction:
        """Sum of weight(start + k*step) over k >= 0."""

    @abstractmethod
    def describe(self) -> Dict[str, str]:
        ...


@dataclass(frozen=True)
class GeometricScheme(WeightScheme):
    """tau_i = (1 - r) * r^(i-1); r = 1/2 gives tau_i = 2^-i."""

    ratio: Fraction = Fraction(1, 2)

    def __post_init__(self):
        ratio = Fraction(self.ratio)
        if not 0 < ratio < 1:
            raise ValidationError(f"geometric ratio must lie in (0, 1), got {ratio}")
        object.__setattr__(self, "ratio", ratio)

    def weight(self, i: int) -> Fraction:
        if i < 1:
            raise ValueError(f"weights are indexed from 1, got {i}")
        return (1 - self.ratio) * self.ratio ** (i - 1)

    def tail_mass(self, n: int) -> Fraction:
        return self.ratio ** max(n, 0)

    def progression_mass(self, start: int, step: int) -> Fraction:
        if start < 1 or step < 1:
            raise ValueError("progression needs start >= 1 and step >= 1")
        return self.weight(start) / (1 - self.ratio ** step)

    def describe(self) -> Dict[str, str]:
        return {"kind": "geometric", "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}"}


def scheme_from_dict(data: Dict[str, str]) -> WeightScheme:
    kind = data.get("kind", "geometric")
    if kind != "geometric":
        raise ValidationError(f"unsupported weight scheme: {kind!r}")
    return GeometricScheme(parse_rational(data.get("ratio", "1/2")))


# ============================================================================
# INDEX SETS
# ============================================================================

@dataclass(frozen=True)
class IndexSet:
    """
    Finite or cofinite subset of the positive integers.

    `members` lists the elements of a finite set, or the excluded indices of
    a cofinite one.
    """

    cofinite: bool
    members: FrozenSet[int] = frozenset()

    def __post_init__(self):
        members = frozenset(int(i) for i in self.members)
        if any(i < 1 for i in members):
            raise UnrepresentableSet("index sets contain positive integers only")
        object.__setattr__(self, "members", members)

    @classmethod
    def all(cls) -> "IndexSet":
        return cls(cofinite=True)

    @classmethod
    def empty(cls) -> "IndexSet":
        return cls(cofinite=False)

    @classmethod
    def of(cls, *indices: int) -> "IndexSet":
        return cls(cofinite=False, members=frozenset(indices))

    @classmethod
    def excluding(cls, *indices: int) -> "IndexSet":
        return cls(cofinite=True, members=frozenset(indices))

    @classmethod
    def beyond(cls, n: int) -> "IndexSet":
        """{i : i > n}."""
        return cls.excluding(*range(1, n + 1))

    def __contains__(self, i: int) -> bool:
        return (i in self.members) != self.cofinite

    @property
    def is_empty(self) -> bool:
        return not self.cofinite and not self.members

    @property
    def is_full(self) -> bool:
        return self.cofinite and not self.members

    @property
    def last_listed(self) -> int:
        return max(self.members, default=0)

    def complement(self) -> "IndexSet":
        return IndexSet(not self.cofinite, self.members)

    def union(self, other: "IndexSet") -> "IndexSet":
        if not self.cofinite and not other.cofinite:
            return IndexSet(False, self.members | other.members)
        if self.cofinite and other.cofinite:
            return IndexSet(True, self.members & other.members)
        finite, cofinite = (self, other) if other.cofinite else (other, self)
        return IndexSet(True, cofinite.members - finite.members)

    def intersection(self, other: "IndexSet") -> "IndexSet":
        return self.complement().union(other.complement()).complement()

    def is_disjoint(self, other: "IndexSet") -> bool:
        return self.intersection(other).is_empty

    def __str__(self) -> str:
        if self.is_full:
            return "all"
        body = "{" + ",".join(str(i) for i in sorted(self.members)) + "}"
        return "~" + body if self.cofinite else body


_SET_LITERAL = re.compile(r"^(~?)\{\s*([0-9,\s]*)\}$")


def parse_index_set(text: str) -> IndexSet:
    """
    Parse the CLI literal syntax: `all`, `{}`, `{1,2,5}`, `~{3}`.
    """
    text = text.strip()
    if text == "all":
        return IndexSet.all()
    match = _SET_LITERAL.match(text)
    if not match:
        raise ParseError(f"bad index set literal: {text!r}")
    body = [t.strip() for t in match.group(2).split(",") if t.strip()]
    try:
        members = frozenset(int(t) for t in body)
    except ValueError:
        raise ParseError(f"bad index set literal: {text!r}")
    if any(i < 1 for i in members):
        raise ParseError(f"indices start at 1: {text!r}")
    return IndexSet(cofinite=bool(match.group(1)), members=members)


def sum_over(
    scheme: WeightScheme,
    index_set: IndexSet,
    horizon: int,
    term: Callable[[int], Fraction]
) -> Fraction:
    """
    Exact value of sum_{i in A} tau_i * term(i), for a term that is constant
    for every i > horizon.

    Args:
        scheme: Weight scheme
        index_set: The set A
        horizon: Index after which term(i) no longer changes
        term: Exact term per index

    Returns:
        Exact weighted sum
    """
    if not index_set.cofinite:
        return sum((scheme.weight(i) * term(i) for i in sorted(index_set.members)), Fraction(0))
    cut = max(horizon, index_set.last_listed)
    head = sum(
        (scheme.weight(i) * term(i) for i in range(1, cut + 1) if i not in index_set.members),
        Fraction(0)
    )
    return head + scheme.tail_mass(cut) * term(cut + 1)


# ============================================================================
# WALKS
# ============================================================================

@dataclass(frozen=True)
class VertexSequence:
    """
    Eventually constant vertex sequence: prefix, then `tail` forever.

    Trailing prefix entries equal to the tail are trimmed on construction.
    """

    prefix: Tuple[str, ...]
    tail: str

    def __post_init__(self):
        prefix = list(self.prefix)
        while prefix and prefix[-1] == self.tail:
            prefix.pop()
        object.__setattr__(self, "prefix", tuple(prefix))

    def at(self, i: int) -> str:
        """w(i), 1-based."""
        if i < 1:
            raise IndexError(f"walks are indexed from 1, got {i}")
        return self.prefix[i - 1] if i <= len(self.prefix) else self.tail

    @property
    def horizon(self) -> int:
        return len(self.prefix)

    @property
    def is_constant(self) -> bool:
        return not self.prefix

    def vertices(self) -> List[str]:
        """Distinct vertices in order of first visit."""
        return list(dict.fromkeys(self.prefix + (self.tail,)))

    def head(self, n: int) -> List[str]:
        return [self.at(i) for i in range(1, n + 1)]

    def same_sequence(self, other: "VertexSequence") -> bool:
        """Equal as sequences, whatever the kind (`==` also compares the class)."""
        return (self.prefix, self.tail) == (other.prefix, other.tail)

    def __str__(self) -> str:
        return " ".join(self.prefix + (self.tail,))


@dataclass(frozen=True)
class Walk(VertexSequence):
    """Element of W(G): consecutive vertices are adjacent or equal."""


@dataclass(frozen=True)
class RestrictedWalk(VertexSequence):
    """Restriction w(A): a Lipschitz sequence that need not be a walk."""


def make_walk(g: Graph, prefix: Sequence[str], tail: str) -> Walk:
    """
    Build a canonical walk, checking adjacency along the prefix and at the
    prefix/tail junction.

    Args:
        g: Graph
        prefix: Finite list of vertices (possibly empty)
        tail: Vertex repeated for all i > len(prefix)

    Returns:
        Canonical Walk
    """
    sequence = list(prefix) + [tail]
    g.require(*sequence)
    for i in range(len(sequence) - 1):
        if not g.is_adjacent(sequence[i], sequence[i + 1]):
            raise NotAWalk(i + 1, sequence[i], sequence[i + 1])
    return Walk(tuple(prefix), tail)


def walk_from_vertices(g: Graph, vertices: Sequence[str]) -> Walk:
    """The last listed vertex is the tail."""
    if not vertices:
        raise ValidationError("a walk needs at least one vertex")
    return make_walk(g, vertices[:-1], vertices[-1])


def lipschitz_constant(w: VertexSequence) -> int:
    """0 for constant walks, 1 otherwise: walks are 1-Lipschitz maps N -> V."""
    return 0 if w.is_constant else 1


def is_unit_sphere_walk(w: Walk) -> bool:
    return lipschitz_constant(w) == 1


def limit_vertex(w: VertexSequence) -> str:
    """The vertex v with d(w(i), v) -> 0."""
    return w.tail


def d_tau(scheme: WeightScheme, g: Graph, w: VertexSequence, u: VertexSequence) -> Fraction:
    """sum_i tau_i d(w(i), u(i)): prefix sum plus tail_mass(N) * d(tails)."""
    return d_tau_restricted(scheme, g, w, u, IndexSet.all())


def d_tau_restricted(
    scheme: WeightScheme,
    g: Graph,
    w: VertexSequence,
    u: VertexSequence,
    index_set: IndexSet
) -> Fraction:
    """sum over i in A of tau_i d(w(i), u(i))."""
    horizon = max(w.horizon, u.horizon)
    return sum_over(scheme, index_set, horizon, lambda i: Fraction(g.distance(w.at(i), u.at(i))))


def restrict(w: VertexSequence, index_set: IndexSet, base_vertex: str) -> RestrictedWalk:
    """
    w(A): equal to w on A and to the base vertex elsewhere.

    Args:
        w: Walk
        index_set: The set A
        base_vertex: Value off A

    Returns:
        RestrictedWalk (tail w.tail when A is cofinite, else base_vertex).
        For A = N it holds the sequence of w: `restrict(w, all, v0).same_sequence(w)`
        is true while `==` is not, since the kinds differ.
    """
    if index_set.cofinite:
        cut = max(w.horizon, index_set.last_listed)
        tail = w.tail
    else:
        cut = index_set.last_listed
        tail = base_vertex
    prefix = tuple(w.at(i) if i in index_set else base_vertex for i in range(1, cut + 1))
    return RestrictedWalk(prefix, tail)


# ============================================================================
# EVENTUALLY PERIODIC SEQUENCES
# ============================================================================

@dataclass(frozen=True)
class PeriodicWalk:
    """Prefix followed by a cycle repeated forever."""

    prefix: Tuple[str, ...]
    cycle: Tuple[str, ...]

    def __post_init__(self):
        if not self.cycle:
            raise ValidationError("cycle must be non-empty")

    @classmethod
    def from_walk(cls, w: VertexSequence) -> "PeriodicWalk":
        return cls(w.prefix, (w.tail,))

    def at(self, i: int) -> str:
        if i < 1:
            raise IndexError(f"walks are indexed from 1, got {i}")
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.cycle[(i - len(self.prefix) - 1) % len(self.cycle)]

    @property
    def horizon(self) -> int:
        return len(self.prefix)


def make_periodic_walk(g: Graph, prefix: Sequence[str], cycle: Sequence[str]) -> PeriodicWalk:
    """Build an eventually periodic walk, checking adjacency including the cycle wrap."""
    walk = PeriodicWalk(tuple(prefix), tuple(cycle))
    g.require(*walk.prefix, *walk.cycle)
    span = len(walk.prefix) + len(walk.cycle)
    for i in range(1, span + 1):
        if not g.is_adjacent(walk.at(i), walk.at(i + 1)):
            raise NotAWalk(i, walk.at(i), walk.at(i + 1))
    return walk


AnyWalk = Union[VertexSequence, PeriodicWalk]


def _as_periodic(w: AnyWalk) -> PeriodicWalk:
    return w if isinstance(w, PeriodicWalk) else PeriodicWalk.from_walk(w)


def d_tau_periodic(scheme: WeightScheme, g: Graph, a: AnyWalk, b: AnyWalk) -> Fraction:
    """
    d_tau between eventually periodic walks.

    Past the longer prefix the pair repeats with period L = lcm of the cycle
    lengths, so each residue class contributes progression_mass * distance.
    """
    a, b = _as_periodic(a), _as_periodic(b)
    horizon = max(a.horizon, b.horizon)
    period = lcm(len(a.cycle), len(b.cycle))
    total = sum(
        (scheme.weight(i) * g.distance(a.at(i), b.at(i)) for i in range(1, horizon + 1)),
        Fraction(0)
    )
    for j in range(period):
        i = horizon + 1 + j
        total += scheme.progression_mass(i, period) * g.distance(a.at(i), b.at(i))
    return total


def alternating_sequence(g: Graph, v1: str, v2: str, n: int) -> Walk:
    """
    w_n: alternates v1, v2, v1, ... for i <= n, then stays at v1 if n is even
    and at v2 if n is odd.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    prefix = [v1 if i % 2 == 1 else v2 for i in range(1, n + 1)]
    return make_walk(g, prefix, v1 if n % 2 == 0 else v2)


def alternating_limit(g: Graph, v1: str, v2: str) -> PeriodicWalk:
    """The period-2 limit (v1, v2, v1, v2, ...) of the alternating sequence."""
    return make_periodic_walk(g, (), (v1, v2))


# ============================================================================
# WALK FILES
# ============================================================================

def parse_walks(text: str, g: Graph) -> Dict[str, Walk]:
    """
    Parse `<name>: <v_1> ... <v_k>` lines; the last vertex is the tail.

    Args:
        text: Walk file contents
        g: Graph the walks live on

    Returns:
        Ordered mapping name -> Walk
    """
    walks: Dict[str, Walk] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, body = line.partition(":")
        name = name.strip()
        if not sep or not name or " " in name:
            raise ParseError(f"expected '<name>: <v_1> ... <v_k>', got {raw.strip()!r}", number)
        vertices = body.split()
        if not vertices:
            raise ParseError(f"walk {name!r} lists no vertices", number)
        if name in walks:
            raise ParseError(f"duplicate walk name {name!r}", number)
        try:
            walks[name] = walk_from_vertices(g, vertices)
        except NotAWalk as exc:
            raise ParseError(f"walk {name!r}: {exc}", number)
    return walks


def load_walks(path: str, g: Graph) -> Dict[str, Walk]:
    with open(path, "r", encoding="utf-8") as f:
        return parse_walks(f.read(), g)


def format_walks(walks: Dict[str, VertexSequence]) -> str:
    return "".join(f"{name}: {w}\n" for name, w in walks.items())
