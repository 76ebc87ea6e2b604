"""Green-class tags, congruence tests, Cayley-ball semimetrics, isometry.

The case-study monoid has exactly three H-classes, read off from the count
of h in a word's normal form (0, 1 or 2): the group of units, the middle
class, and the zero.  A generic Green-relation explorer is deliberately not
attempted (orbits are infinite); the h-count shortcut is what the bundled
normal-form shapes justify.

Distances are directed: d(x, y) is the least length of a generator word w
with x·w = y, computed by breadth-first search over normal forms and
reported as "unreachable within radius" beyond the bound.  Each call is
single-threaded; Ball values are immutable once returned.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .core import EMPTY, Presentation, Word, shortlex_key, word_str
from .rewrite import normalize


class HClass:
    UNITS = "Units"
    HH = "Hh"
    ZERO = "Zero"


def classify(w: Word, p: Presentation) -> str:
    """H-class tag by the h-count of the normal form (0/1/2)."""
    count = normalize(w, p).count("h")
    if count == 0:
        return HClass.UNITS
    if count == 1:
        return HClass.HH
    if count == 2:
        return HClass.ZERO
    raise ValueError(f"normal form with {count} h letters is outside the case-study shapes")


def sigma_equal(w1: Word, w2: Word, p: Presentation) -> bool:
    """The stabilizer congruence on free-group words: h·w1 and h·w2 share a
    normal form."""
    return normalize(("h",) + w1, p) == normalize(("h",) + w2, p)


@dataclass(frozen=True)
class Ball:
    center: Word
    radius: int
    distances: dict  # normal form -> least distance <= radius

    def dump_lines(self, ordering) -> List[str]:
        items = sorted(
            self.distances.items(), key=lambda kv: (kv[1], shortlex_key(kv[0], ordering))
        )
        return [f"{d}\t{word_str(w)}" for w, d in items]


class SuccessorCache:
    """Memoized right-multiplication successors, shared across BFS calls."""

    def __init__(self, p: Presentation):
        self.p = p
        self._table: Dict[Word, tuple] = {}

    def successors(self, u: Word) -> tuple:
        hit = self._table.get(u)
        if hit is None:
            hit = tuple(normalize(u + (g,), self.p) for g in self.p.alphabet.letters)
            self._table[u] = hit
        return hit


def cayley_ball(
    p: Presentation, center: Word, radius: int, cache: Optional[SuccessorCache] = None
) -> Ball:
    """Least right-multiplication distances from ``center`` up to ``radius``."""
    if cache is None:
        cache = SuccessorCache(p)
    start = normalize(center, p)
    distances = {start: 0}
    frontier = deque([start])
    while frontier:
        u = frontier.popleft()
        d = distances[u]
        if d == radius:
            continue
        for v in cache.successors(u):
            if v not in distances:
                distances[v] = d + 1
                frontier.append(v)
    return Ball(start, radius, distances)


def d_A(p: Presentation, x: Word, y: Word, radius: int) -> Optional[int]:
    """Directed distance, or None when unreachable within the radius.

    None only asserts unreachability inside the searched ball, not a global
    infinite distance.
    """
    return cayley_ball(p, x, radius).distances.get(normalize(y, p))


@dataclass
class IsometryReport:
    radius: int
    center: Word
    vertex_sets_match: bool
    pair_count: int = 0
    violations: list = field(default_factory=list)  # (u, v, d1, d2)

    @property
    def passed(self) -> bool:
        return self.vertex_sets_match and not self.violations

    def lines(self) -> List[str]:
        out = []
        status = "pass" if self.vertex_sets_match else "FAIL"
        out.append(f"vertex-sets\t{status}\tradius {self.radius} around {word_str(self.center)}")
        if self.vertex_sets_match:
            status = "pass" if not self.violations else "FAIL"
            detail = f"{self.pair_count} ordered pairs compared"
            if self.violations:
                u, v, d1, d2 = self.violations[0]
                detail += (
                    f"; first violation d({word_str(u)},{word_str(v)}) = {d1} vs {d2}"
                )
            out.append(f"distances\t{status}\t{detail}")
        return out


def isometry_check(
    p1: Presentation, p2: Presentation, radius: int, center: Word = EMPTY
) -> IsometryReport:
    """Compare the two systems' Cayley semimetrics on a common ball.

    The vertex sets (normal forms in the radius ball around ``center``) must
    coincide; then every ordered pair's bounded distance must agree, with
    "unreachable within radius" treated as a value.
    """
    cache1, cache2 = SuccessorCache(p1), SuccessorCache(p2)
    ball1 = cayley_ball(p1, center, radius, cache1)
    ball2 = cayley_ball(p2, center, radius, cache2)
    report = IsometryReport(radius, center, vertex_sets_match=set(ball1.distances) == set(ball2.distances))
    if not report.vertex_sets_match:
        return report
    vertices = sorted(ball1.distances, key=lambda w: shortlex_key(w, p1.ordering))
    for u in vertices:
        du1 = cayley_ball(p1, u, radius, cache1).distances
        du2 = cayley_ball(p2, u, radius, cache2).distances
        for v in vertices:
            report.pair_count += 1
            d1, d2 = du1.get(v), du2.get(v)
            if d1 != d2:
                report.violations.append((u, v, d1, d2))
    return report
