"""The ∂ derivation on free-group words and the Φ invariant on paths.

Φ is parameterized by an integer weight per rule name: an edge maps to
``sign · weight(rule) · [right context]`` in the ambient monoid ring, and a
path maps to the sum of its edges.  The case-study instance weights K_a by
+1 and K_a' by −1 and everything else 0; with those weights the closed
forms of the seven critical-circuit families CT1..CT7 are implemented here
and are checked against the path computation by the verification drivers.

Left contexts never matter; right contexts may contain h (the invariant
then lands in the full monoid ring), although the circuit families only
ever produce free-group contexts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .core import EMPTY, Presentation, RwlabError, Word
from .ring import RingElement, add, from_word, right_mul, scale, sub, zero
from .squier import Edge, Path

A_LETTERS = ("a", "a'", "b", "b'")


@dataclass(frozen=True)
class WeightSpec:
    """Finitely supported integer weights, keyed by rule name."""

    entries: tuple  # tuple[tuple[str, int], ...]

    @staticmethod
    def of(mapping: Mapping[str, int]) -> "WeightSpec":
        return WeightSpec(tuple(sorted((k, v) for k, v in mapping.items() if v != 0)))

    def get(self, name: str) -> int:
        for k, v in self.entries:
            if k == name:
                return v
        return 0


# +1 per leftward commutation of a past h, -1 per commutation of a'; all
# other rules are weightless.  This is the instance under which the seven
# circuit families below have the stated closed forms.
CASE_STUDY_WEIGHTS = WeightSpec.of({"K_a": 1, "K_a'": -1})


def _letter_value(letter: str) -> int:
    if letter == "a":
        return -1
    if letter == "a'":
        return 1
    if letter in ("b", "b'"):
        return 0
    raise RwlabError(f"derivation is only defined on letters a, a', b, b' (got {letter})")


def partial_derivation(w: Word, ambient: Presentation) -> RingElement:
    """∂w, by the recursion ∂(x·w') = (∂x)·w' + ∂w' with ∂a = −1, ∂a' = +1,
    ∂b = ∂b' = 0 and ∂ε = 0, evaluated in the free-group ring."""
    values = [_letter_value(letter) for letter in w]  # validates every letter
    acc = zero(ambient)
    for i, val in enumerate(values):
        if val:
            acc = add(acc, scale(val, from_word(w[i + 1 :], ambient)))
    return acc


def phi_edge(e: Edge, weights: WeightSpec, ambient: Presentation) -> RingElement:
    """sign · weight(rule) · [right context]; zero-weight rules contribute 0
    without touching the context."""
    wt = weights.get(e.rule.name)
    if wt == 0:
        return zero(ambient)
    return scale(e.sign * wt, from_word(e.right, ambient))


def phi_path(p: Path, weights: WeightSpec, ambient: Presentation) -> RingElement:
    acc = zero(ambient)
    for e in p.edges:
        wt = weights.get(e.rule.name)
        if wt:
            acc = add(acc, scale(e.sign * wt, from_word(e.right, ambient)))
    return acc


# ---------------------------------------------------------------------------
# Closed forms for the critical-circuit families
# ---------------------------------------------------------------------------

CT_FAMILIES = ("CT1", "CT2", "CT3", "CT4", "CT5", "CT6", "CT7")

# which parameter slots each family requires
_REQUIRED = {
    "CT1": ("x", "w1", "w2", "eps", "delta"),
    "CT2": ("x",),
    "CT3": ("w", "eps", "delta"),
    "CT4": ("w", "eps", "delta"),
    "CT5": ("x", "w", "eps", "delta"),
    "CT6": ("x",),
    "CT7": ("w1", "eps1", "delta1", "w2", "eps2", "delta2"),
}


@dataclass(frozen=True)
class CtParams:
    """Parameters of one critical-circuit family instance.

    ``x`` is a single letter from a, a', b, b'; word slots are free-group
    words; exponent slots are ±1.  Only the slots the family uses may be
    set.
    """

    family: str
    x: Optional[str] = None
    w: Optional[Word] = None
    w1: Optional[Word] = None
    w2: Optional[Word] = None
    eps: Optional[int] = None
    delta: Optional[int] = None
    eps1: Optional[int] = None
    delta1: Optional[int] = None
    eps2: Optional[int] = None
    delta2: Optional[int] = None

    def __post_init__(self):
        if self.family not in CT_FAMILIES:
            raise RwlabError(f"unknown circuit family {self.family}")
        required = _REQUIRED[self.family]
        for slot in required:
            if getattr(self, slot) is None:
                raise RwlabError(f"{self.family} requires parameter {slot}")
        for slot in ("x", "w", "w1", "w2", "eps", "delta", "eps1", "delta1", "eps2", "delta2"):
            if slot not in required and getattr(self, slot) is not None:
                raise RwlabError(f"{self.family} does not take parameter {slot}")
        if self.x is not None and self.x not in A_LETTERS:
            raise RwlabError(f"x must be one of {A_LETTERS}")
        for slot in ("eps", "delta", "eps1", "delta1", "eps2", "delta2"):
            val = getattr(self, slot)
            if val is not None and val not in (1, -1):
                raise RwlabError(f"{slot} must be +1 or -1")
        for slot in ("w", "w1", "w2"):
            val = getattr(self, slot)
            if val is not None and any(l not in A_LETTERS for l in val):
                raise RwlabError(f"{slot} must be a word over a, a', b, b'")


def a_pow(eps: int) -> Word:
    return ("a",) if eps == 1 else ("a'",)


def b_pow(delta: int) -> Word:
    return ("b",) if delta == 1 else ("b'",)


def _basic_commutator(eps: int, delta: int, ambient: Presentation) -> RingElement:
    """b^δ a^ε − a^ε b^δ as a ring element."""
    return sub(
        from_word(b_pow(delta) + a_pow(eps), ambient),
        from_word(a_pow(eps) + b_pow(delta), ambient),
    )


def _shifted_commutator(x: RingElement, w2: Word, eps: int, delta: int) -> RingElement:
    """x · w2 · (b^δ a^ε − a^ε b^δ), expanded through the right action."""
    return sub(
        right_mul(x, w2 + b_pow(delta) + a_pow(eps)),
        right_mul(x, w2 + a_pow(eps) + b_pow(delta)),
    )


def _a_exponent_of(letter: str) -> Optional[int]:
    if letter == "a":
        return 1
    if letter == "a'":
        return -1
    return None


def closed_form_ct(params: CtParams, ambient: Presentation) -> RingElement:
    """The Φ-image of a family instance as a closed-form ring expression."""
    f = params.family
    if f in ("CT2", "CT3", "CT5"):
        return zero(ambient)
    if f == "CT4":
        return scale(-params.eps, _basic_commutator(params.eps, params.delta, ambient))
    if f == "CT6":
        e = _a_exponent_of(params.x)
        if e is None:
            return zero(ambient)
        unit = sub(from_word(a_pow(-e), ambient), from_word(EMPTY, ambient))
        return scale(e, unit)
    if f == "CT1":
        e = _a_exponent_of(params.x)
        if e is None:
            return zero(ambient)
        unit = sub(from_word(a_pow(-e), ambient), from_word(EMPTY, ambient))
        return scale(e, _shifted_commutator(unit, params.w2, params.eps, params.delta))
    # CT7
    unit = sub(from_word(b_pow(params.delta1), ambient), from_word(EMPTY, ambient))
    return scale(
        params.eps1, _shifted_commutator(unit, params.w2, params.eps2, params.delta2)
    )
