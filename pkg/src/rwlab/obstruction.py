"""Membership obstructions in the free-group ring.

The chain implemented here: X is the set {1−a} ∪ {1 − w·[aᵉ,bᵈ]·w⁻¹}; the
subgroup generated by a together with all conjugated commutators is
detected by the b-exponent sum (the abelianization of the free group is
Z², the subgroup covers the a-axis and the commutators die, so membership
is exactly "b-exponent zero"); the coset space of that subgroup is indexed
by the b-exponent, and applying a ring element to the basepoint coset
collapses it coordinatewise.  Witness objects express ring elements as
signed sums of right-multiplied generators and are verified by exact ring
arithmetic before they are returned, so a constructed witness is always
sound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Union

from .core import EMPTY, Presentation, RwlabError, Word, formal_inverse, word_str
from .invariant import CtParams, a_pow, b_pow, closed_form_ct
from .rewrite import normalize
from .ring import RingElement, add, format_ring, from_word, right_mul, scale, sub, zero


class WitnessError(RwlabError):
    pass


def b_exponent(w: Word) -> int:
    """(#b) − (#b')."""
    return sum(1 if l == "b" else -1 if l == "b'" else 0 for l in w)


def hn_member(w: Word) -> bool:
    """Whether ``w`` lies in the subgroup generated by a and all conjugated
    commutators: equivalent to vanishing b-exponent sum."""
    return b_exponent(w) == 0


@dataclass(frozen=True)
class CosetVector:
    """Formal Z-combination of cosets, indexed by b-exponent; no zeros."""

    entries: tuple  # tuple[tuple[int, int], ...] sorted by index

    @staticmethod
    def of(mapping) -> "CosetVector":
        return CosetVector(tuple(sorted((k, v) for k, v in mapping.items() if v != 0)))

    def is_zero(self) -> bool:
        return not self.entries

    def __str__(self):
        if not self.entries:
            return "0"
        return " ".join(f"{v:+d}·[{k}]" for k, v in self.entries)


def basepoint_apply(x: RingElement) -> CosetVector:
    """Apply ``x`` to the basepoint coset: each term lands on the coset
    indexed by its b-exponent, with the term's coefficient."""
    acc: dict = {}
    for w, c in x.terms:
        k = b_exponent(w)
        acc[k] = acc.get(k, 0) + c
    return CosetVector.of(acc)


def x_generator(w: Word, eps: int, delta: int, ambient: Presentation) -> RingElement:
    """1 − w·aᵉbᵈa⁻ᵉb⁻ᵈ·w⁻¹ over the free-group ring."""
    conj = (
        w
        + a_pow(eps)
        + b_pow(delta)
        + a_pow(-eps)
        + b_pow(-delta)
        + formal_inverse(w, ambient.alphabet)
    )
    return sub(from_word(EMPTY, ambient), from_word(conj, ambient))


def x_generator_a(ambient: Presentation) -> RingElement:
    """The distinguished generator 1 − a."""
    return sub(from_word(EMPTY, ambient), from_word(("a",), ambient))


# ---------------------------------------------------------------------------
# Witnesses
# ---------------------------------------------------------------------------

ONE_MINUS_A = "(1-a)"


@dataclass(frozen=True)
class XGenRef:
    w: Word
    eps: int
    delta: int

    def describe(self) -> str:
        return f"X(w={word_str(self.w)},eps={self.eps:+d},delta={self.delta:+d})"


Source = Union[CtParams, XGenRef, str]


@dataclass(frozen=True)
class WitnessTerm:
    source: Source
    multiplier: Word
    sign: int


def _source_value(source: Source, ambient: Presentation) -> RingElement:
    if isinstance(source, CtParams):
        return closed_form_ct(source, ambient)
    if isinstance(source, XGenRef):
        return x_generator(source.w, source.eps, source.delta, ambient)
    if source == ONE_MINUS_A:
        return x_generator_a(ambient)
    raise WitnessError(f"unknown witness source {source!r}")


def _describe_source(source: Source) -> str:
    if isinstance(source, CtParams):
        slots = []
        for name in ("x", "w", "w1", "w2", "eps", "delta", "eps1", "delta1", "eps2", "delta2"):
            val = getattr(source, name)
            if val is None:
                continue
            if isinstance(val, tuple):
                slots.append(f"{name}={word_str(val)}")
            elif name.startswith(("eps", "delta")):
                slots.append(f"{name}={val:+d}")
            else:
                slots.append(f"{name}={val}")
        return f"{source.family}({','.join(slots)})"
    if isinstance(source, XGenRef):
        return source.describe()
    return str(source)


@dataclass(frozen=True)
class Witness:
    """A target expressed as a signed sum of right-multiplied generator
    values; ring-verified on construction."""

    terms: tuple  # tuple[WitnessTerm, ...]
    target: RingElement

    def evaluate(self) -> RingElement:
        acc = zero(self.target.ambient)
        for t in self.terms:
            acc = add(
                acc,
                scale(t.sign, right_mul(_source_value(t.source, self.target.ambient), t.multiplier)),
            )
        return acc

    def verified(self) -> bool:
        return self.evaluate() == self.target

    def lines(self) -> List[str]:
        out = [
            f"{'+' if t.sign > 0 else '-'} {_describe_source(t.source)} * {word_str(t.multiplier)}"
            for t in self.terms
        ]
        out.append(f"target: {format_ring(self.target)}")
        out.append(f"verified: {'true' if self.verified() else 'false'}")
        return out


def _checked(terms: List[WitnessTerm], target: RingElement) -> Witness:
    w = Witness(tuple(terms), target)
    if not w.verified():
        raise WitnessError("witness failed ring verification")
    return w


def _is_reduced(w: Word, ambient: Presentation) -> bool:
    inv = ambient.alphabet.involution
    return all(inv.get(w[i]) != w[i + 1] for i in range(len(w) - 1))


def commutator_witness(w: Word, eps: int, delta: int, ambient: Presentation) -> Witness:
    """Express w·(bᵈaᵉ − aᵉbᵈ) as a signed sum of circuit-family images.

    Structural recursion on the reduced word w: the base case is a CT4
    image; a leading aᵉ letter is peeled with a CT1 image (whose w2 slot is
    the current suffix), a leading bᵉ letter with a CT7 image.
    """
    if not _is_reduced(w, ambient):
        raise WitnessError("commutator_witness requires a reduced word")
    target = sub(
        from_word(w + b_pow(delta) + a_pow(eps), ambient),
        from_word(w + a_pow(eps) + b_pow(delta), ambient),
    )
    terms: List[WitnessTerm] = []
    u = w
    while u:
        head, rest = u[0], u[1:]
        if head in ("a", "a'"):
            e = 1 if head == "a" else -1
            params = CtParams("CT1", x=head, w1=EMPTY, w2=u, eps=eps, delta=delta)
            terms.append(WitnessTerm(params, EMPTY, -e))
        else:
            e = 1 if head == "b" else -1
            params = CtParams(
                "CT7", w1=EMPTY, eps1=1, delta1=e, w2=rest, eps2=eps, delta2=delta
            )
            terms.append(WitnessTerm(params, EMPTY, 1))
        u = rest
    terms.append(WitnessTerm(CtParams("CT4", w=EMPTY, eps=eps, delta=delta), EMPTY, -eps))
    return _checked(terms, target)


def _x_term(w: Word, eps: int, delta: int, sign: int) -> WitnessTerm:
    """A term realizing sign · w·(bᵈaᵉ − aᵉbᵈ) from an X generator:
    (1 − w[aᵉ,bᵈ]w⁻¹) · (w bᵈ aᵉ) equals w·(bᵈaᵉ − aᵉbᵈ)."""
    return WitnessTerm(
        XGenRef(w, eps, delta), w + b_pow(delta) + a_pow(eps), sign
    )


def phi_to_x_witness(params: CtParams, ambient: Presentation) -> Witness:
    """Express a family's closed-form image over the X generators."""
    target = closed_form_ct(params, ambient)
    f = params.family
    if f in ("CT2", "CT3", "CT5"):
        return _checked([], target)
    if f == "CT4":
        return _checked([_x_term(EMPTY, params.eps, params.delta, -params.eps)], target)
    if f == "CT6":
        if params.x in ("b", "b'"):
            return _checked([], target)
        e = 1 if params.x == "a" else -1
        mult = ("a'",) if e == 1 else EMPTY
        return _checked([WitnessTerm(ONE_MINUS_A, mult, 1)], target)
    if f == "CT1":
        if params.x in ("b", "b'"):
            return _checked([], target)
        e = 1 if params.x == "a" else -1
        shifted = normalize(a_pow(-e) + params.w2, ambient)
        return _checked(
            [
                _x_term(shifted, params.eps, params.delta, e),
                _x_term(params.w2, params.eps, params.delta, -e),
            ],
            target,
        )
    # CT7
    shifted = b_pow(params.delta1) + params.w2
    return _checked(
        [
            _x_term(shifted, params.eps2, params.delta2, params.eps1),
            _x_term(params.w2, params.eps2, params.delta2, -params.eps1),
        ],
        target,
    )
