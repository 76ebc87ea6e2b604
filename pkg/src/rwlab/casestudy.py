"""Builders for the bundled case-study systems and end-to-end verifiers.

Presets
-------
P     free-group system over a, a', b, b' (the four cancellation rules)
Q     P plus h: commutation of A-letters past h, the pair swaps after a
      single h, and absorption after h h
Qbar  Q extended by the four swap schemas ``h w aᵉ bᵈ -> h w bᵈ aᵉ``,
      a complete system whose irreducible words are the normal forms
M4    Q with a redundant generator z and h h = z, as a completed system
      (the z-absorption rules are exactly what completion discovers; a
      test replays the completion and checks the rule sets coincide)
N4    the companion system where h is idempotent and z is a genuine zero

The verification drivers sweep the operations over bounded parameter
ranges and return line-oriented reports; sweeps are deterministic,
single-process, and safe to partition per parameter tuple.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

from .core import (
    EMPTY,
    Alphabet,
    OrderingSpec,
    Presentation,
    Rule,
    RuleSchema,
    RwlabError,
    Word,
    instantiate_schema,
    word_str,
)
from .completion import (
    bfs_equivalence_oracle,
    equivalence_classes,
    is_confluent_bounded,
)
from .invariant import (
    A_LETTERS,
    CtParams,
    CASE_STUDY_WEIGHTS,
    WeightSpec,
    a_pow,
    b_pow,
    closed_form_ct,
    partial_derivation,
    phi_edge,
    phi_path,
)
from .obstruction import (
    basepoint_apply,
    commutator_witness,
    phi_to_x_witness,
    x_generator,
    x_generator_a,
)
from .rewrite import enumerate_normal_forms, normalize
from .ring import RingElement, from_word, negate, right_mul, scale, sub
from .squier import Edge, Path, compose, invert, lift_path
from .structure import isometry_check

_EXP = {1: "p", -1: "m"}
_INV = {"a": "a'", "a'": "a", "b": "b'", "b'": "b"}


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------


def _i_rules() -> List[Rule]:
    return [Rule(f"I_{x}", (x, _INV[x]), EMPTY) for x in A_LETTERS]


def _k_rules() -> List[Rule]:
    return [Rule(f"K_{x}", (x, "h"), ("h", x)) for x in A_LETTERS]


def _c_rules() -> List[Rule]:
    out = []
    for eps, delta in itertools.product((1, -1), repeat=2):
        out.append(
            Rule(
                f"C_{_EXP[eps]}{_EXP[delta]}",
                ("h",) + a_pow(eps) + b_pow(delta),
                ("h",) + b_pow(delta) + a_pow(eps),
            )
        )
    return out


def _z_rules() -> List[Rule]:
    return [Rule(f"Z_{y}", ("h", "h", y), ("h", "h")) for y in A_LETTERS + ("h",)]


def _c_schemas() -> List[RuleSchema]:
    out = []
    for eps, delta in itertools.product((1, -1), repeat=2):
        out.append(
            RuleSchema(
                name=f"Cb_{_EXP[eps]}{_EXP[delta]}",
                variable="w",
                variable_range=A_LETTERS,
                lhs_prefix=("h",),
                lhs_suffix=a_pow(eps) + b_pow(delta),
                rhs_prefix=("h",),
                rhs_suffix=b_pow(delta) + a_pow(eps),
            )
        )
    return out


_A_ALPHABET = Alphabet(A_LETTERS, (("a", "a'"), ("b", "b'")))
_B_ALPHABET = Alphabet(A_LETTERS + ("h",), (("a", "a'"), ("b", "b'")))
_BZ_ALPHABET = Alphabet(A_LETTERS + ("h", "z"), (("a", "a'"), ("b", "b'")))


@lru_cache(maxsize=None)
def preset(name: str) -> Presentation:
    """The named built-in presentation (P, Q, Qbar, M4 or N4)."""
    if name == "P":
        return Presentation(
            _A_ALPHABET, tuple(_i_rules()), (), OrderingSpec(A_LETTERS)
        )
    if name == "Q":
        return Presentation(
            _B_ALPHABET,
            tuple(_i_rules() + _k_rules() + _c_rules() + _z_rules()),
            (),
            OrderingSpec(A_LETTERS + ("h",)),
        )
    if name == "Qbar":
        q = preset("Q")
        return Presentation(q.alphabet, q.rules, tuple(_c_schemas()), q.ordering)
    if name == "M4":
        zletters = A_LETTERS + ("h",)
        rules = (
            _i_rules()
            + _k_rules()
            + _c_rules()
            + [Rule("Hz", ("h", "h"), ("z",))]
            + [Rule(f"Zl_{y}", ("z", y), ("z",)) for y in zletters]
            + [Rule(f"Zr_{y}", (y, "z"), ("z",)) for y in zletters]
            + [Rule("Zz", ("z", "z"), ("z",))]
        )
        return Presentation(
            _BZ_ALPHABET,
            tuple(rules),
            tuple(_c_schemas()),
            OrderingSpec(A_LETTERS + ("h", "z")),
        )
    if name == "N4":
        zletters = A_LETTERS + ("h",)
        rules = (
            _i_rules()
            + _k_rules()
            + _c_rules()
            + [Rule("Hh", ("h", "h"), ("h",))]
            + [Rule(f"Zl_{y}", ("z", y), ("z",)) for y in zletters]
            + [Rule(f"Zr_{y}", (y, "z"), ("z",)) for y in zletters]
            + [Rule("Zz", ("z", "z"), ("z",))]
        )
        return Presentation(
            _BZ_ALPHABET,
            tuple(rules),
            tuple(_c_schemas()),
            OrderingSpec(A_LETTERS + ("h", "z")),
        )
    raise RwlabError(f"unknown preset {name} (expected P, Q, Qbar, M4 or N4)")


def build_presentations() -> Dict[str, Presentation]:
    return {name: preset(name) for name in ("P", "Q", "Qbar", "M4", "N4")}


def m4_uncompleted() -> Presentation:
    """Q plus the redundant generator z and h h -> z, before completion.

    Running knuth_bendix on this system discovers the z-absorption rules of
    the M4 preset; M4 itself ships the completed rule set so that loading it
    is cheap and deterministic.
    """
    q = preset("Q")
    return Presentation(
        _BZ_ALPHABET,
        q.rules + (Rule("Hz", ("h", "h"), ("z",)),),
        tuple(_c_schemas()),
        OrderingSpec(A_LETTERS + ("h", "z")),
    )


# ---------------------------------------------------------------------------
# Swap paths and the critical-circuit families
# ---------------------------------------------------------------------------


def c_bar_rule(w: Word, eps: int, delta: int) -> Rule:
    """The swap rule ``h w aᵉ bᵈ -> h w bᵈ aᵉ``: the plain rule when w is
    empty, otherwise the schema instance carrying its variable."""
    if not w:
        return preset("Q").rule_named(f"C_{_EXP[eps]}{_EXP[delta]}")
    return instantiate_schema(preset("Qbar").schema_named(f"Cb_{_EXP[eps]}{_EXP[delta]}"), w)


def schema_exponents(schema: RuleSchema) -> Tuple[int, int]:
    eps = 1 if schema.lhs_suffix[0] == "a" else -1
    delta = 1 if schema.lhs_suffix[1] == "b" else -1
    return eps, delta


@lru_cache(maxsize=None)
def build_C_path(w: Word, eps: int, delta: int) -> Path:
    """The swap path from ``h w aᵉ bᵈ`` to ``h w bᵈ aᵉ`` over Q.

    Each letter of w is carried out in front of h by a reverse commutation
    step, the bare pair swap happens in the middle, and the letters are
    carried back; 2|w| + 1 edges in total.
    """
    q = preset("Q")
    tail_l = a_pow(eps) + b_pow(delta)
    tail_r = b_pow(delta) + a_pow(eps)
    front, back = [], []
    for i, x in enumerate(w):
        k_rule = q.rule_named(f"K_{x}")
        front.append(Edge(w[:i], k_rule, -1, w[i + 1 :] + tail_l))
        back.append(Edge(w[:i], k_rule, 1, w[i + 1 :] + tail_r))
    middle = Edge(w, q.rule_named(f"C_{_EXP[eps]}{_EXP[delta]}"), 1, EMPTY)
    edges = tuple(front) + (middle,) + tuple(reversed(back))
    return Path(("h",) + w + tail_l, edges)


def _realize_c_bar(rule: Rule) -> Optional[Path]:
    if rule.origin is not None and rule.origin.schema.name.startswith("Cb_"):
        eps, delta = schema_exponents(rule.origin.schema)
        return build_C_path(rule.origin.variable, eps, delta)
    return None


def _close(down_right: List[Edge], down_left: List[Edge]) -> Path:
    right = Path(down_right[0].source, tuple(down_right))
    left = Path(down_left[0].source, tuple(down_left))
    return compose(right, invert(left))


def build_ct_circuit(params: CtParams) -> Path:
    """The closed path of the named family, with swap edges realized as
    swap paths over Q.

    The circuit starts at the peak source, descends the right-hand side of
    the diagram, and climbs back up the left-hand side.
    """
    q = preset("Q")
    f = params.family
    if f == "CT1":
        x, w1, w2, eps, delta = params.x, params.w1, params.w2, params.eps, params.delta
        xx = (x, _INV[x])
        tail_l, tail_r = a_pow(eps) + b_pow(delta), b_pow(delta) + a_pow(eps)
        i_rule = q.rule_named(f"I_{x}")
        bare = _close(
            [
                Edge(EMPTY, c_bar_rule(w1 + xx + w2, eps, delta), 1, EMPTY),
                Edge(("h",) + w1, i_rule, 1, w2 + tail_r),
            ],
            [
                Edge(("h",) + w1, i_rule, 1, w2 + tail_l),
                Edge(EMPTY, c_bar_rule(w1 + w2, eps, delta), 1, EMPTY),
            ],
        )
    elif f == "CT2":
        x = params.x
        xinv = _INV[x]
        bare = _close(
            [Edge((x,), q.rule_named(f"I_{xinv}"), 1, EMPTY)],
            [Edge(EMPTY, q.rule_named(f"I_{x}"), 1, (x,))],
        )
    elif f == "CT3":
        w, eps, delta = params.w, params.eps, params.delta
        i_rule = q.rule_named("I_b" if delta == 1 else "I_b'")
        bare = _close(
            [
                Edge(EMPTY, c_bar_rule(w, eps, delta), 1, b_pow(-delta)),
                Edge(EMPTY, c_bar_rule(w + b_pow(delta), eps, -delta), 1, EMPTY),
                Edge(("h",) + w, i_rule, 1, a_pow(eps)),
            ],
            [Edge(("h",) + w + a_pow(eps), i_rule, 1, EMPTY)],
        )
    elif f == "CT4":
        w, eps, delta = params.w, params.eps, params.delta
        i_rule = q.rule_named("I_a" if eps == -1 else "I_a'")
        bare = _close(
            [
                Edge(EMPTY, c_bar_rule(w + a_pow(-eps), eps, delta), 1, EMPTY),
                Edge(EMPTY, c_bar_rule(w, -eps, delta), 1, a_pow(eps)),
                Edge(("h",) + w + b_pow(delta), i_rule, 1, EMPTY),
            ],
            [Edge(("h",) + w, i_rule, 1, b_pow(delta))],
        )
    elif f == "CT5":
        x, w, eps, delta = params.x, params.w, params.eps, params.delta
        tail_l, tail_r = a_pow(eps) + b_pow(delta), b_pow(delta) + a_pow(eps)
        k_rule = q.rule_named(f"K_{x}")
        bare = _close(
            [
                Edge(EMPTY, k_rule, 1, w + tail_l),
                Edge(EMPTY, c_bar_rule((x,) + w, eps, delta), 1, EMPTY),
            ],
            [
                Edge((x,), c_bar_rule(w, eps, delta), 1, EMPTY),
                Edge(EMPTY, k_rule, 1, w + tail_r),
            ],
        )
    elif f == "CT6":
        x = params.x
        xinv = _INV[x]
        bare = _close(
            [
                Edge((x,), q.rule_named(f"K_{xinv}"), 1, EMPTY),
                Edge(EMPTY, q.rule_named(f"K_{x}"), 1, (xinv,)),
                Edge(("h",), q.rule_named(f"I_{x}"), 1, EMPTY),
            ],
            [Edge(EMPTY, q.rule_named(f"I_{x}"), 1, ("h",))],
        )
    elif f == "CT7":
        w1, e1, d1 = params.w1, params.eps1, params.delta1
        w2, e2, d2 = params.w2, params.eps2, params.delta2
        t1l, t1r = a_pow(e1) + b_pow(d1), b_pow(d1) + a_pow(e1)
        t2l, t2r = a_pow(e2) + b_pow(d2), b_pow(d2) + a_pow(e2)
        bare = _close(
            [
                Edge(EMPTY, c_bar_rule(w1 + t1l + w2, e2, d2), 1, EMPTY),
                Edge(EMPTY, c_bar_rule(w1, e1, d1), 1, w2 + t2r),
            ],
            [
                Edge(EMPTY, c_bar_rule(w1, e1, d1), 1, w2 + t2l),
                Edge(EMPTY, c_bar_rule(w1 + t1r + w2, e2, d2), 1, EMPTY),
            ],
        )
    else:
        raise RwlabError(f"unknown circuit family {f}")
    return lift_path(bare, _realize_c_bar)


# ---------------------------------------------------------------------------
# Reports and verification drivers
# ---------------------------------------------------------------------------


@dataclass
class Report:
    checks: list = field(default_factory=list)  # (name, ok, detail)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def n_pass(self) -> int:
        return sum(1 for _, ok, _ in self.checks if ok)

    def lines(self) -> List[str]:
        out = [
            f"{name}\t{'pass' if ok else 'FAIL'}\t{detail}"
            for name, ok, detail in self.checks
        ]
        out.append(f"summary: {self.n_pass}/{len(self.checks)}")
        return out

    def machine_lines(self) -> List[str]:
        out = [
            f"check={name}\tstatus={'pass' if ok else 'FAIL'}\tdetail={detail}"
            for name, ok, detail in self.checks
        ]
        out.append(f"summary={self.n_pass}/{len(self.checks)}")
        return out


def a_words(max_len: int) -> List[Word]:
    out = []
    for n in range(max_len + 1):
        out.extend(itertools.product(A_LETTERS, repeat=n))
    return out


def reduced_a_words(max_len: int) -> List[Word]:
    inv = _INV
    out = [EMPTY]
    frontier = [EMPTY]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for x in A_LETTERS:
                if not w or inv[w[-1]] != x:
                    nxt.append(w + (x,))
        out.extend(nxt)
        frontier = nxt
    return out


def word_splits(max_total: int) -> Iterator[Tuple[Word, Word]]:
    """All pairs (w1, w2) with |w1| + |w2| <= max_total."""
    for w in a_words(max_total):
        for cut in range(len(w) + 1):
            yield w[:cut], w[cut:]


SIGNS = (1, -1)


def ct_parameter_sweep(
    max_word_len: int, ct7_word_len: Optional[int] = None
) -> Iterator[CtParams]:
    """Deterministic sweep of all families.

    Single-word families sweep their slot to ``max_word_len``; the
    two-slot families (CT1, CT7) sweep all splits with total slot length
    bounded by ``max_word_len`` (CT7: ``ct7_word_len``), which covers every
    one-slot-at-a-time combination at the same bound.
    """
    if ct7_word_len is None:
        ct7_word_len = max_word_len
    for x in A_LETTERS:
        yield CtParams("CT2", x=x)
        yield CtParams("CT6", x=x)
    for w in a_words(max_word_len):
        for eps, delta in itertools.product(SIGNS, repeat=2):
            yield CtParams("CT3", w=w, eps=eps, delta=delta)
            yield CtParams("CT4", w=w, eps=eps, delta=delta)
            for x in A_LETTERS:
                yield CtParams("CT5", x=x, w=w, eps=eps, delta=delta)
    for w1, w2 in word_splits(max_word_len):
        for x in A_LETTERS:
            for eps, delta in itertools.product(SIGNS, repeat=2):
                yield CtParams("CT1", x=x, w1=w1, w2=w2, eps=eps, delta=delta)
    for w1, w2 in word_splits(ct7_word_len):
        for e1, d1, e2, d2 in itertools.product(SIGNS, repeat=4):
            yield CtParams(
                "CT7", w1=w1, eps1=e1, delta1=d1, w2=w2, eps2=e2, delta2=d2
            )


def random_ct_params(rng: random.Random, max_word_len: int, ct7_word_len: int) -> CtParams:
    family = rng.choice(("CT1", "CT3", "CT4", "CT5", "CT7"))

    def rand_word(bound):
        return tuple(rng.choice(A_LETTERS) for _ in range(rng.randint(0, bound)))

    e = lambda: rng.choice(SIGNS)
    if family == "CT1":
        return CtParams(
            "CT1", x=rng.choice(A_LETTERS), w1=rand_word(max_word_len),
            w2=rand_word(max_word_len), eps=e(), delta=e(),
        )
    if family == "CT7":
        return CtParams(
            "CT7", w1=rand_word(ct7_word_len), eps1=e(), delta1=e(),
            w2=rand_word(ct7_word_len), eps2=e(), delta2=e(),
        )
    if family == "CT5":
        return CtParams("CT5", x=rng.choice(A_LETTERS), w=rand_word(max_word_len), eps=e(), delta=e())
    return CtParams(family, w=rand_word(max_word_len), eps=e(), delta=e())


def verify_figure2(
    max_word_len: int = 4,
    ct7_word_len: Optional[int] = None,
    weights: WeightSpec = CASE_STUDY_WEIGHTS,
    samples: int = 1000,
    seed: int = 2024,
) -> Report:
    """Compare the path computation of Φ with the closed forms over the full
    deterministic sweep plus randomized tuples with independent slot lengths."""
    if ct7_word_len is None:
        ct7_word_len = min(max_word_len, 3)
    ambient = preset("P")
    report = Report()
    counts: Dict[str, int] = {}
    mismatches: Dict[str, list] = {}

    def check(params: CtParams) -> None:
        got = phi_path(build_ct_circuit(params), weights, ambient)
        want = closed_form_ct(params, ambient)
        counts[params.family] = counts.get(params.family, 0) + 1
        if got != want:
            mismatches.setdefault(params.family, []).append(params)

    for params in ct_parameter_sweep(max_word_len, ct7_word_len):
        check(params)
    rng = random.Random(seed)
    for _ in range(samples):
        check(random_ct_params(rng, max_word_len, ct7_word_len))

    for family in ("CT1", "CT2", "CT3", "CT4", "CT5", "CT6", "CT7"):
        bad = mismatches.get(family, [])
        detail = f"{counts.get(family, 0)} instances"
        if bad:
            detail += f"; first mismatch {bad[0]}"
        report.add(f"figure2 {family}", not bad, detail)
    return report


def is_case_study_nf(w: Word) -> bool:
    """Membership in the normal-form set: reduced free-group words, words
    h bʲ aᵏ, and h h."""
    hs = w.count("h")
    if hs == 0:
        return all(l in A_LETTERS for l in w) and all(
            _INV[w[i]] != w[i + 1] for i in range(len(w) - 1)
        )
    if hs == 1:
        if not w or w[0] != "h":
            return False
        rest = w[1:]
        i = 0
        if i < len(rest) and rest[i] in ("b", "b'"):
            btype = rest[i]
            while i < len(rest) and rest[i] == btype:
                i += 1
        if i < len(rest) and rest[i] in ("a", "a'"):
            atype = rest[i]
            while i < len(rest) and rest[i] == atype:
                i += 1
        return i == len(rest)
    return w == ("h", "h")


def verify_prop31(max_len: int = 6, schema_var_bound: int = 3) -> Report:
    """Normal-form shapes, bounded confluence, and oracle agreement."""
    qbar, q = preset("Qbar"), preset("Q")
    report = Report()

    bad = 0
    n_words = 0
    letters = qbar.alphabet.letters
    for n in range(max_len + 1):
        for w in itertools.product(letters, repeat=n):
            n_words += 1
            if not is_case_study_nf(normalize(w, qbar)):
                bad += 1
    report.add(
        "prop31 normal-form shapes",
        bad == 0,
        f"{n_words} words of length <= {max_len}, {bad} bad normal forms",
    )

    confluence = is_confluent_bounded(qbar, schema_var_bound)
    report.add(
        "prop31 bounded confluence",
        confluence.confluent,
        f"{len(confluence.resolutions)} peaks at schema bound {schema_var_bound}, "
        f"{len(confluence.unresolved)} unresolved",
    )

    agreement_len = max(max_len - 2, 0)
    oracle_bound = max_len + 2
    classof = equivalence_classes(q, oracle_bound)
    class_to_nf: Dict[int, Word] = {}
    nf_to_class: Dict[Word, int] = {}
    disagreements = 0
    n_checked = 0
    for n in range(agreement_len + 1):
        for w in itertools.product(letters, repeat=n):
            n_checked += 1
            cls, nf = classof(w), normalize(w, qbar)
            if class_to_nf.setdefault(cls, nf) != nf or nf_to_class.setdefault(nf, cls) != cls:
                disagreements += 1
    report.add(
        "prop31 oracle agreement",
        disagreements == 0,
        f"{n_checked} words of length <= {agreement_len} against the closure at "
        f"bound {oracle_bound}; {disagreements} partition disagreements",
    )

    rng = random.Random(31)
    sample_words = [
        tuple(rng.choice(letters) for _ in range(rng.randint(0, agreement_len)))
        for _ in range(40)
    ]
    spot_bad = 0
    for u, v in zip(sample_words[::2], sample_words[1::2]):
        direct = bfs_equivalence_oracle(u, v, q, oracle_bound)
        if direct != (classof(u) == classof(v)):
            spot_bad += 1
    report.add(
        "prop31 oracle spot-check",
        spot_bad == 0,
        f"batched closure vs direct BFS on {len(sample_words) // 2} pairs",
    )
    return report


def verify_identities(exhaust_len: int = 5, samples: int = 1000, seed: int = 7) -> Report:
    """The four derivation identities for the swap paths, exhaustively at the
    bound plus randomized tuples."""
    ambient = preset("P")
    report = Report()

    def expected_swap_image(w: Word, eps: int, delta: int) -> RingElement:
        dw = partial_derivation(w, ambient)
        return negate(
            sub(
                right_mul(dw, b_pow(delta) + a_pow(eps)),
                right_mul(dw, a_pow(eps) + b_pow(delta)),
            )
        )

    def phi_swap(w: Word, eps: int, delta: int) -> RingElement:
        return phi_path(build_C_path(w, eps, delta), CASE_STUDY_WEIGHTS, ambient)

    bad = [0, 0, 0, 0]

    for x in A_LETTERS:
        e = Edge(EMPTY, preset("Q").rule_named(f"K_{x}"), 1, EMPTY)
        if phi_edge(e, CASE_STUDY_WEIGHTS, ambient) != negate(partial_derivation((x,), ambient)):
            bad[0] += 1

    n_ii = 0
    for w in a_words(exhaust_len):
        for eps, delta in itertools.product(SIGNS, repeat=2):
            n_ii += 1
            if phi_swap(w, eps, delta) != expected_swap_image(w, eps, delta):
                bad[1] += 1

    def check_iii(x: str, w: Word, eps: int, delta: int) -> bool:
        val = -1 if x == "a" else 1 if x == "a'" else 0
        shift = scale(
            val,
            sub(
                from_word(w + b_pow(delta) + a_pow(eps), ambient),
                from_word(w + a_pow(eps) + b_pow(delta), ambient),
            ),
        )
        return phi_swap((x,) + w, eps, delta) == sub(phi_swap(w, eps, delta), shift)

    n_iii = 0
    for x in A_LETTERS:
        for w in a_words(exhaust_len - 1):
            for eps, delta in itertools.product(SIGNS, repeat=2):
                n_iii += 1
                if not check_iii(x, w, eps, delta):
                    bad[2] += 1

    def check_iv(w1: Word, w2: Word, eps: int, delta: int) -> bool:
        dw1 = partial_derivation(w1, ambient)
        shift = sub(
            right_mul(dw1, w2 + b_pow(delta) + a_pow(eps)),
            right_mul(dw1, w2 + a_pow(eps) + b_pow(delta)),
        )
        return phi_swap(w1 + w2, eps, delta) == sub(phi_swap(w2, eps, delta), shift)

    n_iv = 0
    for w1, w2 in word_splits(exhaust_len):
        for eps, delta in itertools.product(SIGNS, repeat=2):
            n_iv += 1
            if not check_iv(w1, w2, eps, delta):
                bad[3] += 1

    rng = random.Random(seed)
    n_rand = 0
    for _ in range(samples):
        w1 = tuple(rng.choice(A_LETTERS) for _ in range(rng.randint(0, exhaust_len)))
        w2 = tuple(rng.choice(A_LETTERS) for _ in range(rng.randint(0, exhaust_len)))
        x = rng.choice(A_LETTERS)
        eps, delta = rng.choice(SIGNS), rng.choice(SIGNS)
        n_rand += 1
        if not check_iii(x, w2, eps, delta):
            bad[2] += 1
        if not check_iv(w1, w2, eps, delta):
            bad[3] += 1

    report.add("identity (i) base values", bad[0] == 0, "4 letters")
    report.add("identity (ii) swap image", bad[1] == 0, f"{n_ii} instances")
    report.add(
        "identity (iii) letter prefix",
        bad[2] == 0,
        f"{n_iii} exhaustive + {n_rand} randomized instances",
    )
    report.add(
        "identity (iv) word prefix",
        bad[3] == 0,
        f"{n_iv} exhaustive + {n_rand} randomized instances",
    )
    return report


def verify_obstruction(
    commutator_len: int = 5,
    witness_word_len: int = 3,
    kill_len: int = 6,
    coset_powers: int = 10,
) -> Report:
    """Witness constructions and the basepoint computation."""
    ambient = preset("P")
    report = Report()

    n = 0
    for w in reduced_a_words(commutator_len):
        for eps, delta in itertools.product(SIGNS, repeat=2):
            commutator_witness(w, eps, delta, ambient)  # raises if unverified
            n += 1
    report.add("obstruction commutator witnesses", True, f"{n} ring-verified")

    n = 0
    for params in ct_parameter_sweep(witness_word_len, witness_word_len):
        phi_to_x_witness(params, ambient)
        n += 1
    report.add("obstruction image-to-X witnesses", True, f"{n} ring-verified")

    killed = basepoint_apply(x_generator_a(ambient)).is_zero()
    n = 0
    for w in reduced_a_words(kill_len):
        for eps, delta in itertools.product(SIGNS, repeat=2):
            n += 1
            if not basepoint_apply(x_generator(w, eps, delta, ambient)).is_zero():
                killed = False
    report.add(
        "obstruction basepoint kills generators", killed, f"(1-a) and {n} X generators"
    )

    vectors = set()
    ok = True
    for k in range(1, coset_powers + 1):
        elem = sub(from_word(EMPTY, ambient), from_word(("b",) * k, ambient))
        vec = basepoint_apply(elem)
        if vec.is_zero():
            ok = False
        vectors.add(vec.entries)
    report.add(
        "obstruction basepoint separates b-powers",
        ok and len(vectors) == coset_powers,
        f"{len(vectors)} distinct nonzero coset vectors",
    )
    return report


def verify_isometry(radius: int = 4, h_radius: int = 3, nf_len: int = 6) -> Report:
    """Identical normal forms and matching bounded distances for M4 and N4."""
    m4, n4 = preset("M4"), preset("N4")
    report = Report()
    nfs_m = enumerate_normal_forms(m4, nf_len)
    nfs_n = enumerate_normal_forms(n4, nf_len)
    report.add(
        "isometry normal-form sets",
        nfs_m == nfs_n,
        f"{len(nfs_m)} vs {len(nfs_n)} normal forms of length <= {nf_len}",
    )
    for center, r in ((EMPTY, radius), (("h",), h_radius)):
        result = isometry_check(m4, n4, r, center)
        report.add(
            f"isometry ball radius {r} around {word_str(center)}",
            result.passed,
            f"{result.pair_count} ordered pairs"
            + ("" if result.passed else f"; {len(result.violations)} violations"),
        )
    return report


# ---------------------------------------------------------------------------
# Peak classification into the circuit families
# ---------------------------------------------------------------------------


def _rule_kind(rule: Rule) -> str:
    if rule.origin is not None and rule.origin.schema.name.startswith("Cb_"):
        return "C"
    head = rule.name.split("_")[0].split("[")[0]
    return {"I": "I", "K": "K", "C": "C", "Z": "Z"}.get(head, "?")


def classify_peak(peak) -> str:
    """Family tag of a critical peak of Qbar, or "Z" for the zero component."""
    if peak.source.count("h") >= 2:
        return "Z"
    k1, k2 = _rule_kind(peak.rule1), _rule_kind(peak.rule2)
    if peak.kind == "overlap":
        if (k1, k2) == ("I", "I"):
            return "CT2"
        if (k1, k2) == ("I", "K"):
            return "CT6"
        if (k1, k2) == ("K", "C"):
            return "CT5"
        if (k1, k2) == ("C", "I"):
            return "CT3"
    else:
        if (k1, k2) == ("I", "C"):
            return "CT4" if len(peak.gamma2) == 1 else "CT1"
        if (k1, k2) == ("C", "C"):
            return "CT7"
    return "unclassified"
