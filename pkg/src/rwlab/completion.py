"""Critical peaks, bounded confluence checking, completion, word problem.

A peak between two rule applications inside one word is either an inclusion
(one lhs a factor of the other) or a left-overlap (a proper suffix of one
lhs equals a proper prefix of the other); disjoint configurations are not
peaks.  Peaks involving schemas are enumerated through bounded
instantiation of the variable, which realizes every peak family needed at
desk scale; normalization during resolution matches schemas unboundedly.

An unresolved peak is an analytic outcome, not an error: it is reported as
data and feeds completion as a candidate rule.

Peak resolution is pure per peak, so a peak list may be partitioned across
workers and merged back in source order without changing the result; the
completion loop itself is sequential by contract.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .core import (
    EMPTY,
    Presentation,
    Rule,
    RwlabError,
    Word,
    instantiate_schema,
    shortlex_key,
    word_str,
    words_over,
)
from .rewrite import (
    check_orientation,
    compare_shortlex,
    normalize,
    reduction_path,
)
from .squier import Edge, Path, compose, invert, path_of_edge


@dataclass(frozen=True)
class CriticalPeak:
    """An inclusion or left-overlap between two rule applications.

    Inclusion: ``lhs2 = gamma1 · lhs1 · gamma2`` (rule1 inside rule2).
    Overlap:   ``lhs1 · gamma1 = gamma2 · lhs2`` with the shared part proper.
    ``source`` is the common ancestor word, result1/result2 the two
    one-step descendants.
    """

    kind: str  # "inclusion" | "overlap"
    rule1: Rule
    rule2: Rule
    gamma1: Word
    gamma2: Word
    source: Word

    def __post_init__(self):
        if self.kind == "inclusion":
            ok = self.gamma1 + self.rule1.lhs + self.gamma2 == self.rule2.lhs == self.source
        elif self.kind == "overlap":
            ok = (
                self.rule1.lhs + self.gamma1 == self.gamma2 + self.rule2.lhs == self.source
                and 0 < len(self.gamma2) < len(self.rule1.lhs)
                and len(self.gamma1) > 0
            )
        else:
            ok = False
        if not ok:
            raise RwlabError(f"malformed {self.kind} peak at {word_str(self.source)}")

    @property
    def result1(self) -> Word:
        if self.kind == "inclusion":
            return self.gamma1 + self.rule1.rhs + self.gamma2
        return self.rule1.rhs + self.gamma1

    @property
    def result2(self) -> Word:
        if self.kind == "inclusion":
            return self.rule2.rhs
        return self.gamma2 + self.rule2.rhs

    def edge1(self) -> Edge:
        if self.kind == "inclusion":
            return Edge(self.gamma1, self.rule1, 1, self.gamma2)
        return Edge(EMPTY, self.rule1, 1, self.gamma1)

    def edge2(self) -> Edge:
        if self.kind == "inclusion":
            return Edge(EMPTY, self.rule2, 1, EMPTY)
        return Edge(self.gamma2, self.rule2, 1, EMPTY)

    def peak_path(self) -> Path:
        """The path result1 -> source -> result2 through the two edges."""
        return compose(invert(path_of_edge(self.edge1())), path_of_edge(self.edge2()))

    def describe(self) -> str:
        return f"peak {word_str(self.source)} [{self.rule1.name},{self.rule2.name}]"


@dataclass(frozen=True)
class CriticalCircuit:
    """A resolved peak: positive paths from both results to a common word."""

    peak: CriticalPeak
    p1: Path
    p2: Path

    def __post_init__(self):
        if not (self.p1.is_positive and self.p2.is_positive):
            raise RwlabError("resolution paths must be positive")
        if self.p1.tau != self.p2.tau:
            raise RwlabError("resolution paths must end at a common word")

    def circuit(self) -> Path:
        """The closed path p1⁻¹ ∘ (peak) ∘ p2, based at the common endpoint."""
        return compose(compose(invert(self.p1), self.peak.peak_path()), self.p2)


@dataclass(frozen=True)
class UnresolvedPeak:
    peak: CriticalPeak
    nf1: Word
    nf2: Word

    @property
    def pair(self) -> tuple:
        return (self.nf1, self.nf2)


def _rule_universe(p: Presentation, schema_var_bound: int) -> List[Rule]:
    """Plain rules plus schema instances with |variable| <= bound, minus
    instances that duplicate a plain rule's rewrite."""
    rules = list(p.rules)
    seen = {(r.lhs, r.rhs) for r in rules}
    for s in p.schemas:
        for v in words_over(s.variable_range, schema_var_bound):
            inst = instantiate_schema(s, v)
            if (inst.lhs, inst.rhs) not in seen:
                seen.add((inst.lhs, inst.rhs))
                rules.append(inst)
    return rules


def _peaks_for_pair(r1: Rule, r2: Rule) -> List[CriticalPeak]:
    peaks = []
    l1, l2 = r1.lhs, r2.lhs
    # inclusions of l1 inside l2 (for identical lhs, keep one orientation)
    if len(l1) <= len(l2) and r1 is not r2 and not (l1 == l2 and r1.name > r2.name):
        for s in range(len(l2) - len(l1) + 1):
            if l2[s : s + len(l1)] == l1:
                peaks.append(
                    CriticalPeak("inclusion", r1, r2, l2[:s], l2[s + len(l1) :], l2)
                )
    # proper left-overlaps: a suffix of l1 is a prefix of l2
    for ell in range(1, min(len(l1), len(l2))):
        if l1[len(l1) - ell :] == l2[:ell]:
            peaks.append(
                CriticalPeak(
                    "overlap", r1, r2, l2[ell:], l1[: len(l1) - ell], l1 + l2[ell:]
                )
            )
    return peaks


def critical_peaks(p: Presentation, schema_var_bound: int = 0) -> List[CriticalPeak]:
    """All inclusion and overlap peaks among plain rules and bounded schema
    instances, each geometric configuration once, sorted by source."""
    rules = _rule_universe(p, schema_var_bound)
    peaks: List[CriticalPeak] = []
    for r1, r2 in itertools.product(rules, repeat=2):
        peaks.extend(_peaks_for_pair(r1, r2))
    ordering = p.ordering
    if ordering is not None:
        peaks.sort(
            key=lambda k: (
                shortlex_key(k.source, ordering),
                k.kind,
                k.rule1.name,
                k.rule2.name,
                len(k.gamma1),
            )
        )
    return peaks


def resolve_peak(peak: CriticalPeak, p: Presentation):
    """Normalize both descendants; a common irreducible yields a circuit,
    otherwise the distinct pair is reported as data (a completion candidate)."""
    nf1 = normalize(peak.result1, p)
    nf2 = normalize(peak.result2, p)
    if nf1 != nf2:
        return UnresolvedPeak(peak, nf1, nf2)
    return CriticalCircuit(peak, reduction_path(peak.result1, p), reduction_path(peak.result2, p))


@dataclass
class ConfluenceReport:
    presentation: Presentation
    schema_var_bound: int
    resolutions: list = field(default_factory=list)  # (peak, CriticalCircuit|UnresolvedPeak)

    @property
    def unresolved(self) -> List[UnresolvedPeak]:
        return [r for _, r in self.resolutions if isinstance(r, UnresolvedPeak)]

    @property
    def confluent(self) -> bool:
        return not self.unresolved

    def lines(self) -> List[str]:
        out = []
        for peak, res in self.resolutions:
            if isinstance(res, UnresolvedPeak):
                out.append(
                    f"{peak.describe()} -> UNRESOLVED({word_str(res.nf1)},{word_str(res.nf2)})"
                )
            else:
                out.append(f"{peak.describe()} -> resolved")
        return out


def is_confluent_bounded(p: Presentation, schema_var_bound: int = 0) -> ConfluenceReport:
    """Resolve every critical peak at the bound and report the outcomes."""
    check_orientation(p)
    report = ConfluenceReport(p, schema_var_bound)
    for peak in critical_peaks(p, schema_var_bound):
        report.resolutions.append((peak, resolve_peak(peak, p)))
    return report


# ---------------------------------------------------------------------------
# Knuth-Bendix completion
# ---------------------------------------------------------------------------


@dataclass
class CompletionReport:
    status: str  # "completed" | "bounded-out"
    added: list = field(default_factory=list)   # rules added, in discovery order
    removed: list = field(default_factory=list)  # rules dropped by interreduction

    @property
    def completed(self) -> bool:
        return self.status == "completed"


def _orient(u: Word, v: Word, p: Presentation) -> Optional[Tuple[Word, Word]]:
    c = compare_shortlex(u, v, p.ordering)
    if c == 0:
        return None
    return (u, v) if c > 0 else (v, u)


def knuth_bendix(
    p: Presentation,
    max_new_rules: int = 100,
    max_lhs_len: int = 12,
    schema_var_bound: int = 2,
) -> Tuple[Presentation, CompletionReport]:
    """Bounded Knuth-Bendix completion under the presentation's shortlex order.

    Unresolved peak pairs are oriented into new rules, smallest source
    first, with interreduction after every addition (right sides are kept
    normalized; a rule whose lhs becomes reducible by another rule is
    dropped and its equation re-queued).  Stops when no unresolved peaks
    remain ("completed") or when a bound trips ("bounded-out").  Identical
    pairs are discarded; shortlex is total, so no pair is unorientable.
    """
    check_orientation(p)
    report = CompletionReport("completed")
    rules: List[Rule] = list(p.rules)
    taken = {r.name for r in rules} | {s.name for s in p.schemas}
    counter = itertools.count(1)

    def fresh_name() -> str:
        while True:
            name = f"kb{next(counter)}"
            if name not in taken:
                taken.add(name)
                return name

    def current() -> Presentation:
        return Presentation(p.alphabet, tuple(rules), p.schemas, p.ordering)

    def add_rule(u: Word, v: Word) -> bool:
        """Orient and add u = v; returns False when the budget is exhausted."""
        sys = current()
        u, v = normalize(u, sys), normalize(v, sys)
        oriented = _orient(u, v, p)
        if oriented is None:
            return True
        lhs, rhs = oriented
        if len(lhs) > max_lhs_len or len(report.added) >= max_new_rules:
            report.status = "bounded-out"
            return False
        rule = Rule(fresh_name(), lhs, rhs)
        rules.append(rule)
        report.added.append(rule)
        return interreduce()

    def lhs_reducible(r: Rule, others: Presentation) -> bool:
        # A schema instance carrying the very same rewrite does not count:
        # it is the same rule seen through the schema, not a simplification.
        from .rewrite import find_redexes

        for redex in find_redexes(r.lhs, others):
            same = (
                redex.position == 0
                and redex.rule.lhs == r.lhs
                and redex.rule.rhs == r.rhs
            )
            if not same:
                return True
        return False

    def interreduce() -> bool:
        requeue: deque = deque()
        changed = True
        while changed:
            changed = False
            for i, r in enumerate(rules):
                others = Presentation(
                    p.alphabet, tuple(rules[:i] + rules[i + 1 :]), p.schemas, p.ordering
                )
                if lhs_reducible(r, others):
                    rules.pop(i)
                    report.removed.append(r)
                    requeue.append((r.lhs, r.rhs))
                    changed = True
                    break
                new_rhs = normalize(r.rhs, others)
                if new_rhs != r.rhs:
                    rules[i] = Rule(r.name, r.lhs, new_rhs, r.origin)
                    changed = True
                    break
        while requeue:
            u, v = requeue.popleft()
            if not add_rule(u, v):
                return False
        return True

    if not interreduce():
        return current(), report

    while True:
        sys = current()
        unresolved = []
        for peak in critical_peaks(sys, schema_var_bound):
            nf1 = normalize(peak.result1, sys)
            nf2 = normalize(peak.result2, sys)
            if nf1 != nf2:
                unresolved.append((peak, nf1, nf2))
        if not unresolved:
            return sys, report
        peak, nf1, nf2 = unresolved[0]  # critical_peaks is already source-sorted
        if not add_rule(nf1, nf2):
            return current(), report


# ---------------------------------------------------------------------------
# Word problem and the independent equivalence oracle
# ---------------------------------------------------------------------------


def word_problem_equal(u: Word, v: Word, p_complete: Presentation) -> bool:
    """Decide u = v by comparing normal forms.

    The caller is responsible for having verified completeness of
    ``p_complete`` (e.g. via is_confluent_bounded); orientation is checked.
    """
    return normalize(u, p_complete) == normalize(v, p_complete)


def _one_step_neighbors(w: Word, rules: List[Rule], max_len: int) -> List[Word]:
    out = []
    n = len(w)
    for r in rules:
        for src, dst in ((r.lhs, r.rhs), (r.rhs, r.lhs)):
            if n - len(src) + len(dst) > max_len:
                continue
            for i in range(n - len(src) + 1):
                if w[i : i + len(src)] == src:
                    out.append(w[:i] + dst + w[i + len(src) :])
    return out


def bfs_equivalence_oracle(u: Word, v: Word, p: Presentation, max_len: int) -> bool:
    """Decide u ↔* v inside the length-bounded universe by breadth-first
    closure under rule applications in both directions.

    Independent of normalization: no ordering, no strategy, no schemas
    beyond the presentation's plain rules.
    """
    if len(u) > max_len or len(v) > max_len:
        raise RwlabError("oracle inputs must respect the length bound")
    if p.schemas:
        raise RwlabError("the oracle only handles plain-rule presentations")
    if u == v:
        return True
    rules = list(p.rules)
    seen = {u}
    frontier = deque([u])
    while frontier:
        w = frontier.popleft()
        for nxt in _one_step_neighbors(w, rules, max_len):
            if nxt == v:
                return True
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return False


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        parent = self.parent
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[rj] = ri


def equivalence_classes(p: Presentation, max_len: int):
    """Partition the whole length-bounded universe by ↔*.

    Equivalent to running the BFS oracle on every pair: within the bounded
    universe every backward step is some forward step read the other way, so
    the components of the one-step graph are exactly the oracle's relation.
    Returns ``classof(word) -> representative index``.
    """
    if p.schemas:
        raise RwlabError("the oracle only handles plain-rule presentations")
    letters = list(p.alphabet.letters)
    k = len(letters)
    idx = {letter: i for i, letter in enumerate(letters)}
    offsets = [0]
    for n in range(max_len + 1):
        offsets.append(offsets[-1] + k**n)
    total = offsets[max_len + 1]
    uf = _UnionFind(total)

    rules = [
        (tuple(idx[x] for x in r.lhs), tuple(idx[x] for x in r.rhs)) for r in p.rules
    ]
    by_first: Dict[int, list] = {}
    for lhs, rhs in rules:
        by_first.setdefault(lhs[0], []).append((lhs, rhs))

    def rank(w) -> int:
        val = 0
        for d in w:
            val = val * k + d
        return offsets[len(w)] + val

    for n in range(max_len + 1):
        base = offsets[n]
        val = 0
        for w in itertools.product(range(k), repeat=n):
            me = base + val
            val += 1
            for i in range(n):
                for lhs, rhs in by_first.get(w[i], ()):
                    L = len(lhs)
                    if i + L <= n and w[i : i + L] == lhs:
                        uf.union(me, rank(w[:i] + rhs + w[i + L :]))

    def classof(w: Word) -> int:
        return uf.find(rank(tuple(idx[x] for x in w)))

    return classof
