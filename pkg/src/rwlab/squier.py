"""Derivation-graph edges and paths with the two-sided free-monoid action.

An edge is the 4-tuple (left context, rule, sign, right context); its source
is ``left · side · right`` where side is the rule's lhs for sign +1 and the
rhs for sign −1, and its target swaps the two sides.  Paths are composable
edge sequences that remember their start word, so the empty path at a word
is well-typed.  Everything here is immutable and pure.

Homotopy of paths is not decided anywhere in this package; this module only
constructs paths and the generating moves (interchange squares, pp⁻¹
cancellations) that invariance tests need.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .core import Rule, RwlabError, Word, word_str


class PathError(RwlabError):
    pass


@dataclass(frozen=True)
class Edge:
    left: Word
    rule: Rule
    sign: int  # +1 or -1
    right: Word

    def __post_init__(self):
        if self.sign not in (+1, -1):
            raise PathError(f"edge sign must be +1 or -1, got {self.sign}")

    @property
    def source(self) -> Word:
        side = self.rule.lhs if self.sign == 1 else self.rule.rhs
        return self.left + side + self.right

    @property
    def target(self) -> Word:
        side = self.rule.rhs if self.sign == 1 else self.rule.lhs
        return self.left + side + self.right

    def inverse(self) -> "Edge":
        return Edge(self.left, self.rule, -self.sign, self.right)

    def __str__(self):
        return f"({word_str(self.left)}, {self.rule.name}, {self.sign:+d}, {word_str(self.right)})"


def edge_endpoints(e: Edge) -> tuple:
    return (e.source, e.target)


@dataclass(frozen=True)
class Path:
    """A composable sequence of edges starting at ``start``."""

    start: Word
    edges: tuple = ()

    def __post_init__(self):
        at = self.start
        for i, e in enumerate(self.edges):
            if e.source != at:
                raise PathError(
                    f"edge {i} starts at {word_str(e.source)}, expected {word_str(at)}"
                )
            at = e.target

    @property
    def iota(self) -> Word:
        return self.start

    @property
    def tau(self) -> Word:
        return self.edges[-1].target if self.edges else self.start

    @property
    def is_positive(self) -> bool:
        return all(e.sign == 1 for e in self.edges)

    @property
    def is_closed(self) -> bool:
        return self.iota == self.tau

    def __len__(self):
        return len(self.edges)

    def __str__(self):
        parts = [word_str(self.start)]
        for e in self.edges:
            parts.append(f" --({e.rule.name},{e.sign:+d})@{len(e.left)}--> {word_str(e.target)}")
        return "".join(parts)


def empty_path(w: Word) -> Path:
    return Path(w, ())


def path_of_edge(e: Edge) -> Path:
    return Path(e.source, (e,))


def compose(p: Path, q: Path) -> Path:
    if p.tau != q.iota:
        raise PathError(
            f"cannot compose: {word_str(p.tau)} != {word_str(q.iota)}"
        )
    return Path(p.start, p.edges + q.edges)


def invert(p: Path) -> Path:
    return Path(p.tau, tuple(e.inverse() for e in reversed(p.edges)))


def act(x: Word, p: Path, y: Word) -> Path:
    """Two-sided action: extend every edge's contexts by x on the left, y on the right."""
    return Path(
        x + p.start + y,
        tuple(Edge(x + e.left, e.rule, e.sign, e.right + y) for e in p.edges),
    )


def _span(e: Edge) -> tuple:
    side = e.rule.lhs if e.sign == 1 else e.rule.rhs
    return (len(e.left), len(e.left) + len(side))


def interchange_square(e1: Edge, e2: Edge) -> Path:
    """The closed 4-edge path around two rule applications on disjoint factors.

    Both edges must be applications inside the same word with disjoint
    matched regions; the square applies them in the two possible orders and
    closes up.
    """
    if e1.source != e2.source:
        raise PathError("edges must act on a common word")
    a1, b1 = _span(e1)
    a2, b2 = _span(e2)
    if not (b1 <= a2 or b2 <= a1):
        raise PathError("matched regions overlap")
    if b2 <= a1:
        e1, e2 = e2, e1
        a1, b1, a2, b2 = a2, b2, a1, b1
    w = e1.source
    mid = w[b1:a2]
    other1 = e1.rule.rhs if e1.sign == 1 else e1.rule.lhs
    other2 = e2.rule.rhs if e2.sign == 1 else e2.rule.lhs
    first = e1  # (left1, r1, s1, mid · side2 · right2)
    second = Edge(e1.left + other1 + mid, e2.rule, e2.sign, e2.right)
    third = Edge(e1.left, e1.rule, e1.sign, mid + other2 + e2.right)
    fourth = e2
    return compose(
        compose(path_of_edge(first), path_of_edge(second)),
        compose(invert(path_of_edge(third)), invert(path_of_edge(fourth))),
    )


Realization = Callable[[Rule], Optional[Path]]


def lift_path(p: Path, realize: Realization) -> Path:
    """Replace each edge whose rule has a realization by the realizing path.

    ``realize(rule)`` returns a path from ``rule.lhs`` to ``rule.rhs`` (or
    None to keep the edge as is).  Contexts and signs are transported, so
    endpoints are preserved and lifting commutes with composition and
    inversion.
    """
    out = empty_path(p.start)
    for e in p.edges:
        base = realize(e.rule)
        if base is None:
            step = path_of_edge(e)
        else:
            if base.iota != e.rule.lhs or base.tau != e.rule.rhs:
                raise PathError(
                    f"realization of {e.rule.name} has endpoints "
                    f"{word_str(base.iota)} -> {word_str(base.tau)}, expected rule sides"
                )
            step = act(e.left, base, e.right)
            if e.sign == -1:
                step = invert(step)
        out = compose(out, step)
    return out
