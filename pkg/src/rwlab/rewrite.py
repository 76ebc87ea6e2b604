"""Redex search, single-step rewriting, normalization, shortlex order.

Reduction strategy: leftmost redex, plain rules before schema matches at a
position, ties broken by declaration order.  On a confluent system the
normal form is strategy-independent; the fixed strategy just makes traces
reproducible.  Termination is enforced by checking that every rule and
schema orients lhs > rhs under the presentation's shortlex ordering; a hard
step cap guards explicitly-unchecked runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional

from .core import (
    OrderingSpec,
    Presentation,
    Rule,
    RuleSchema,
    RwlabError,
    Word,
    instantiate_schema,
    shortlex_key,
    word_str,
    words_over,
)
from .squier import Edge, Path

DEFAULT_STEP_CAP = 10**6


class RewriteError(RwlabError):
    pass


class OrientationError(RewriteError):
    pass


@dataclass(frozen=True)
class Redex:
    """An occurrence of a rule instance's lhs inside a word."""

    position: int
    rule: Rule

    @property
    def matched_length(self) -> int:
        return len(self.rule.lhs)


def compare_shortlex(u: Word, v: Word, ordering: OrderingSpec) -> int:
    """Return -1, 0 or +1 as u is shortlex-less, equal, or greater than v.

    Shorter words are smaller; at equal length the first differing letter
    decides, where earlier precedence means greater.
    """
    ku, kv = shortlex_key(u, ordering), shortlex_key(v, ordering)
    return (ku > kv) - (ku < kv)


def _schema_match_at(w: Word, i: int, s: RuleSchema) -> Optional[Rule]:
    """Shortest instantiation of schema ``s`` whose lhs matches ``w`` at ``i``."""
    lp, ls = s.lhs_prefix, s.lhs_suffix
    if w[i : i + len(lp)] != lp:
        return None
    rng = s._range_set
    j = i + len(lp)
    end = len(w) - len(ls)
    while j <= end:
        if w[j : j + len(ls)] == ls:
            return instantiate_schema(s, w[i + len(lp) : j])
        if w[j] not in rng:
            return None
        j += 1
    return None


def _redexes_at(w: Word, i: int, p: Presentation) -> Iterator[Redex]:
    seen = set()
    for r in p.rules_by_first.get(w[i], ()):
        if w[i : i + len(r.lhs)] == r.lhs:
            seen.add((r.lhs, r.rhs))
            yield Redex(i, r)
    for s in p.schemas:
        inst = _schema_match_at(w, i, s)
        if inst is not None and (inst.lhs, inst.rhs) not in seen:
            seen.add((inst.lhs, inst.rhs))
            yield Redex(i, inst)


def find_redexes(w: Word, p: Presentation) -> List[Redex]:
    """All redexes of ``w``: per position, plain rules first then the
    shortest schema instantiation per schema; schema matches that duplicate
    a plain rule's rewrite at the same position are dropped."""
    out: List[Redex] = []
    for i in range(len(w)):
        out.extend(_redexes_at(w, i, p))
    return out


def _first_redex(w: Word, p: Presentation) -> Optional[Redex]:
    for i in range(len(w)):
        for redex in _redexes_at(w, i, p):
            return redex
    return None


def rewrite_at(w: Word, r: Redex, sign: int = 1) -> Word:
    """Apply a redex: replace the matched side by the other side.

    With sign −1 the rule's rhs must occur at the position and is replaced
    by the lhs (a reverse step).
    """
    src = r.rule.lhs if sign == 1 else r.rule.rhs
    dst = r.rule.rhs if sign == 1 else r.rule.lhs
    i = r.position
    if w[i : i + len(src)] != src:
        raise RewriteError(
            f"invalid redex: {r.rule.name} does not match {word_str(w)} at {i}"
        )
    return w[:i] + dst + w[i + len(src) :]


def _schema_oriented(s: RuleSchema, ordering: OrderingSpec) -> bool:
    """Conservatively decide lhs > rhs for every instantiation.

    Safe cases: the fixed part strictly shrinks; or it keeps length with
    equal prefixes and a shortlex-greater lhs suffix; or it keeps length and
    the prefixes already differ in favour of the lhs.
    """
    fixed_l = len(s.lhs_prefix) + len(s.lhs_suffix)
    fixed_r = len(s.rhs_prefix) + len(s.rhs_suffix)
    if fixed_l > fixed_r:
        return True
    if fixed_l != fixed_r:
        return False
    if s.lhs_prefix == s.rhs_prefix:
        return (
            len(s.lhs_suffix) == len(s.rhs_suffix)
            and compare_shortlex(s.lhs_suffix, s.rhs_suffix, ordering) > 0
        )
    rank = ordering.rank
    for x, y in zip(s.lhs_prefix, s.rhs_prefix):
        if x != y:
            return rank[x] < rank[y]
    return False


_orientation_ok: "weakref.WeakKeyDictionary" = None  # populated lazily


def check_orientation(p: Presentation) -> None:
    """Raise unless every rule and schema orients lhs > rhs under shortlex.

    The outcome is memoized per presentation; presentations are immutable.
    """
    global _orientation_ok
    if _orientation_ok is None:
        import weakref

        _orientation_ok = weakref.WeakKeyDictionary()
    if _orientation_ok.get(p):
        return
    if p.ordering is None:
        raise OrientationError("presentation has no ordering; termination not guaranteed")
    for r in p.rules:
        if compare_shortlex(r.lhs, r.rhs, p.ordering) <= 0:
            raise OrientationError(
                f"rule {r.name} is not oriented; termination not guaranteed"
            )
    for s in p.schemas:
        if not _schema_oriented(s, p.ordering):
            raise OrientationError(
                f"schema {s.name} is not oriented; termination not guaranteed"
            )
    _orientation_ok[p] = True


def normalize(
    w: Word,
    p: Presentation,
    max_steps: int = DEFAULT_STEP_CAP,
    allow_unoriented: bool = False,
) -> Word:
    """Reduce ``w`` to an irreducible word by the leftmost-redex strategy.

    The orientation check guarantees termination; pass ``allow_unoriented``
    to skip it and rely on the step cap instead.
    """
    if not allow_unoriented:
        check_orientation(p)
        cache = p._nf_cache
        hit = cache.get(w)
        if hit is not None:
            return hit
    else:
        cache = None
    seenwords = [w] if cache is not None else None
    cur = w
    for _ in range(max_steps):
        if cache is not None:
            hit = cache.get(cur)
            if hit is not None:
                cur = hit
                break
        redex = _first_redex(cur, p)
        if redex is None:
            break
        cur = rewrite_at(cur, redex)
        if seenwords is not None:
            seenwords.append(cur)
    else:
        raise RewriteError(f"step cap exceeded while reducing {word_str(w)}")
    if cache is not None:
        for u in seenwords:
            cache[u] = cur
    return cur


def reduction_path(w: Word, p: Presentation, max_steps: int = DEFAULT_STEP_CAP) -> Path:
    """The positive path witnessing ``w ->* normalize(w)`` under the strategy."""
    check_orientation(p)
    edges = []
    cur = w
    for _ in range(max_steps):
        redex = _first_redex(cur, p)
        if redex is None:
            return Path(w, tuple(edges))
        e = Edge(cur[: redex.position], redex.rule, 1, cur[redex.position + redex.matched_length :])
        edges.append(e)
        cur = e.target
    raise RewriteError(f"step cap exceeded while reducing {word_str(w)}")


def format_trace(path: Path) -> str:
    """One rewrite step per line: ``<word> --<rule>@<pos>--> <word>``."""
    lines = []
    for e in path.edges:
        lines.append(
            f"{word_str(e.source)} --{e.rule.name}@{len(e.left)}--> {word_str(e.target)}"
        )
    return "\n".join(lines)


def is_irreducible(w: Word, p: Presentation) -> bool:
    return _first_redex(w, p) is None


def enumerate_normal_forms(p: Presentation, max_len: int) -> List[Word]:
    """All irreducible words of length <= max_len, in ascending shortlex order."""
    check_orientation(p)
    out = [w for w in words_over(p.alphabet.letters, max_len) if is_irreducible(w, p)]
    out.sort(key=lambda w: shortlex_key(w, p.ordering))
    return out
