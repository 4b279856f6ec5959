"""Covering structure: deck action, free-module split, inner product,
and the one-sided comultiplications.

The cyclic deck group of order n acts on the parameter-n algebra by scaling
the degree-d part with zeta^(m*d).  Elements whose gt*-exponents are
multiples of n form the free module spanned by gt^0, ..., gt^(n-1) over the
embedded base algebra; ``decompose``/``assemble`` convert between that
module picture and plain elements.

``delta_R`` sends sum_j a_j gt^j to sum_j delta(a_j) (1 (x) gt^j) with the
right leg embedded into the covering, and ``delta_L`` places gt^j on the
left leg instead.  Both restrict to the comultiplication on the embedded
base algebra and are equivariant in the covering leg.  Left linearity over
the base holds on the nose; right linearity does not for this realisation,
so ``linearity_report`` returns the right-hand residual instead of
asserting it away.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError
from .nfalgebra import (
    Element,
    Word,
    _accumulate,
    embed_base,
    promote,
    u1_act,
)
from .qtensor import TensorElement, TripleTensor, delta, delta_word
from .scalars import Scalar


class DeckElement(NamedTuple):
    """An element of the cyclic deck group of order n."""

    n: int
    m: int

    def __add__(self, other):
        if self.n != other.n:
            raise DomainError("deck group order mismatch")
        return DeckElement(self.n, (self.m + other.m) % self.n)

    @property
    def is_identity(self) -> bool:
        return self.m % self.n == 0


def deck_act(g: DeckElement, x: Element) -> Element:
    """Each word of degree d gains the phase zeta^(m*d)."""
    if g.n != x.n:
        raise DomainError(f"deck group order {g.n} does not match algebra parameter {x.n}")
    zeta_m = Scalar.zeta(x.order, (x.order // x.n) * g.m)
    return u1_act(x, zeta_m)


def isotypic(x: Element) -> dict[int, Element]:
    """Split by degree class modulo n."""
    buckets: dict[int, dict] = {}
    for w, c in x.terms.items():
        buckets.setdefault(w.degree % x.n, {})[w] = c
    return {j: Element(x.n, t, x.order) for j, t in sorted(buckets.items())}


def is_invariant(x: Element) -> bool:
    return all(w.degree % x.n == 0 for w in x.terms)


def action_properties(n: int, count: int = 100, seed: int = 0) -> dict:
    """Involutivity on random elements plus a non-degeneracy witness."""
    rng = random.Random(seed)
    involutive_failures = []
    for _ in range(count):
        x = _random_element(rng, n)
        for m in range(n):
            g = DeckElement(n, m)
            if deck_act(g, x.star()) != deck_act(g, x).star():
                involutive_failures.append((m, x))
    gamma = Element.gamma(n)
    moved = [m for m in range(1, n) if deck_act(DeckElement(n, m), gamma) != gamma]
    return {
        "check": "deck-action-properties",
        "status": "pass" if not involutive_failures and len(moved) == n - 1 else "fail",
        "involutive_failures": involutive_failures,
        "nondegeneracy_witness": "gt",
        "moved_by": moved,
    }


def _random_element(rng: random.Random, n: int, nwords: int = 2, bound: int = 2) -> Element:
    terms: dict = {}
    for _ in range(nwords):
        total = rng.randint(0, bound + 1)
        a = rng.randint(-total, total)
        g = rng.randint(0, total - abs(a))
        gs = total - abs(a) - g
        c = (
            Scalar.rational(n, rng.choice([1, -1, 2]))
            * Scalar.t(n, rng.randint(-1, 1))
            * Scalar.zeta(n, rng.randrange(n))
        )
        w = Word(a, g, gs)
        terms[w] = terms.get(w, Scalar.zero(n)) + c
    return Element(n, terms)


# -- the free module over the base algebra ------------------------------------

@dataclass(frozen=True)
class ModuleVector:
    """Coordinates (a_0, ..., a_{n-1}) of sum_j embed(a_j) gt^j.

    Slots are base-algebra elements whose coefficients live in the order-n
    ring, so deck phases and twist factors remain representable.
    """

    n: int
    coeffs: tuple[Element, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n:
            raise DomainError(f"expected {self.n} slots, got {len(self.coeffs)}")
        for a in self.coeffs:
            if a.n != 1 or a.order != self.n:
                raise DomainError("module slots must be base elements over the covering ring")

    @property
    def order(self) -> int:
        return self.n

    def to_json(self):
        return {"n": self.n, "slots": [a.to_json() for a in self.coeffs]}


def decompose(x: Element) -> ModuleVector:
    """Split an element of the free module into base-algebra slots.

    Fails when some word has a gt*-exponent outside n*Z, i.e. when x is not
    a combination of embedded base elements times gt powers.
    """
    n = x.n
    slot_terms: list[dict] = [dict() for _ in range(n)]
    for w, c in x.terms.items():
        if w.gs % n:
            raise DomainError(
                f"element is not in the free module: word {w} has gt*-exponent {w.gs} (mod {n} != 0)"
            )
        j = w.g % n
        base_word = Word(w.apow, w.g // n, w.gs // n)
        _accumulate(slot_terms[j], base_word, c)
    return ModuleVector(n, tuple(Element(1, t, n) for t in slot_terms))


def assemble(v: ModuleVector) -> Element:
    n = v.n
    acc: dict = {}
    for j, a in enumerate(v.coeffs):
        for w, c in a.terms.items():
            _accumulate(acc, Word(w.apow, n * w.g + j, n * w.gs), c)
    return Element(n, acc, n)


def module_vector(n: int, *slots) -> ModuleVector:
    """Convenience constructor promoting order-1 base elements."""
    coeffs = []
    for a in slots:
        coeffs.append(promote(a, n) if a.order == 1 else a)
    while len(coeffs) < n:
        coeffs.append(Element.zero(1, n))
    return ModuleVector(n, tuple(coeffs))


def twist(a: Element, j: int) -> Element:
    """The automorphism sigma^j with gt^j embed(a) = embed(sigma^j a) gt^j.

    Each word gains t^(-j*apow) in the covering ring, so sigma(al) = t^-1 al
    and sigma fixes anything without alpha letters.
    """
    if a.n != 1:
        raise DomainError("twist acts on base-algebra elements")
    acc: dict = {}
    for w, c in a.terms.items():
        _accumulate(acc, w, c * Scalar.t(a.order, -j * w.apow))
    return Element(1, acc, a.order)


def deck_act_vector(g: DeckElement, v: ModuleVector) -> ModuleVector:
    """Slot j gains zeta^(m*j); same as deck-acting the assembled element."""
    zeta = Scalar.zeta(v.n, g.m)
    return ModuleVector(
        v.n, tuple(a.scale(zeta.unit_power(j)) for j, a in enumerate(v.coeffs))
    )


# -- Hilbert-module inner product ----------------------------------------------

def inner_product(x: Element, y: Element) -> Element:
    """Deck-averaged product sum_g g(x* y); always deck-invariant."""
    if x.n != y.n or x.order != y.order:
        raise DomainError("inner product arguments live in different algebras")
    base = x.star() * y
    out = Element.zero(x.n, x.order)
    for m in range(x.n):
        out = out + deck_act(DeckElement(x.n, m), base)
    return out


# -- the one-sided comultiplications -------------------------------------------

def _as_vector(v) -> ModuleVector:
    if isinstance(v, ModuleVector):
        return v
    if isinstance(v, Element):
        return decompose(v)
    raise DomainError(f"expected an element or module vector, got {type(v).__name__}")


def _embed_word(w: Word, n: int) -> Word:
    return Word(w.apow, n * w.g, n * w.gs)


def delta_R(v) -> TensorElement:
    """Base leg (x) covering leg: sum_j delta(a_j) (1 (x) gt^j)."""
    v = _as_vector(v)
    n = v.n
    acc: dict = {}
    for j, a in enumerate(v.coeffs):
        for (l, r), c in delta(a).terms.items():
            er = _embed_word(r, n)
            _accumulate(acc, (l, Word(er.apow, er.g + j, er.gs)), c)
    return TensorElement(1, n, acc, n)


def delta_L(v) -> TensorElement:
    """Covering leg (x) base leg: sum_j delta(a_j) (gt^j (x) 1)."""
    v = _as_vector(v)
    n = v.n
    acc: dict = {}
    for j, a in enumerate(v.coeffs):
        for (l, r), c in delta(a).terms.items():
            el = _embed_word(l, n)
            _accumulate(acc, (Word(el.apow, el.g + j, el.gs), r), c)
    return TensorElement(n, 1, acc, n)


def embed_tensor_leg(x: TensorElement, side: str, n: int) -> TensorElement:
    """Promote a base leg of a (1,1) tensor into the covering."""
    if side == "left":
        return x.map_words("left", lambda w: _embed_word(w, n), nleft=n)
    return x.map_words("right", lambda w: _embed_word(w, n), nright=n)


def deck_act_leg(x: TensorElement, side: str, m: int) -> TensorElement:
    """Deck-act one tensor leg (the covering leg) by zeta^(m*degree)."""
    nleg = x.nleft if side == "left" else x.nright
    zeta = Scalar.zeta(x.order, (x.order // nleg) * m)
    acc: dict = {}
    for (l, r), c in x.terms.items():
        d = l.degree if side == "left" else r.degree
        _accumulate(acc, (l, r), c * zeta.unit_power(d))
    return TensorElement(x.nleft, x.nright, acc, x.order)


def coaction_check(v) -> dict:
    """Both coaction identities, exactly.

    delta_R: (delta (x) id) after delta_R agrees with (id (x) delta_R);
    delta_L: (id (x) delta) after delta_L agrees with (delta_L (x) id).
    """
    v = _as_vector(v)
    n = v.n
    dR = delta_R(v)
    lhs_r: dict = {}
    rhs_r: dict = {}
    for (l, r), c in dR.terms.items():
        for (u, w), d in delta_word(l, n).terms.items():
            _accumulate(lhs_r, (u, w, r), c * d)
        for (u, w), d in delta_R(Element.from_word(n, r)).terms.items():
            _accumulate(rhs_r, (l, u, w), c * d)
    right_diff = TripleTensor((1, 1, n), lhs_r, n) - TripleTensor((1, 1, n), rhs_r, n)

    dL = delta_L(v)
    lhs_l: dict = {}
    rhs_l: dict = {}
    for (l, r), c in dL.terms.items():
        for (u, w), d in delta_word(r, n).terms.items():
            _accumulate(lhs_l, (l, u, w), c * d)
        for (u, w), d in delta_L(Element.from_word(n, l)).terms.items():
            _accumulate(rhs_l, (u, w, r), c * d)
    left_diff = TripleTensor((n, 1, 1), lhs_l, n) - TripleTensor((n, 1, 1), rhs_l, n)

    ok = right_diff.is_zero and left_diff.is_zero
    return {
        "check": "coaction-identities",
        "status": "pass" if ok else "fail",
        "residual_terms": right_diff.sorted_terms() + left_diff.sorted_terms(),
    }


def equivariance_check(v) -> dict:
    """One-leg deck equivariance of both maps, for every group element."""
    v = _as_vector(v)
    n = v.n
    x = assemble(v)
    failures = []
    for m in range(n):
        g = DeckElement(n, m)
        gx = deck_act(g, x)
        if delta_R(gx) != deck_act_leg(delta_R(v), "right", m):
            failures.append(("right", m))
        if delta_L(gx) != deck_act_leg(delta_L(v), "left", m):
            failures.append(("left", m))
    return {
        "check": "one-leg-equivariance",
        "status": "pass" if not failures else "fail",
        "residual_terms": failures,
    }


def linearity_report(v, a: Element, b: Element) -> dict:
    """Left linearity asserted; the right-multiplication residual returned.

    ``a`` and ``b`` are base elements.  The left identity is
    delta_L(embed(a) x) = delta(a) delta_L(x) with delta(a) acting through
    the leg embedding.  The right-hand analogue fails in general because the
    base leg of delta(a) does not t-commute past gt powers, so the residual
    delta_L(x embed(b)) - delta_L(x) delta(b) is reported, not asserted.
    """
    v = _as_vector(v)
    n = v.n
    x = assemble(v)
    a_n = promote(a, n) if a.order == 1 else a
    b_n = promote(b, n) if b.order == 1 else b

    left_lhs = delta_L(embed_base(a_n, n) * x)
    left_rhs = embed_tensor_leg(delta(a_n), "left", n) * delta_L(v)
    left_residual = left_lhs - left_rhs

    right_lhs = delta_L(x * embed_base(b_n, n))
    right_rhs = delta_L(v) * embed_tensor_leg(delta(b_n), "left", n)
    right_residual = right_lhs - right_rhs

    return {
        "check": "bimodule-linearity",
        "status": "pass" if left_residual.is_zero else "fail",
        "left_residual": left_residual,
        "right_residual": right_residual,
        "residual_terms": right_residual.sorted_terms(),
    }
