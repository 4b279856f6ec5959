"""Tensor squares and cubes with leg-wise normal forms; the comultiplication.

A TensorElement keeps one normal word per leg and multiplies leg-wise,
(a (x) b)(c (x) d) = ac (x) bd, with no interchange sign.  Legs may carry
different algebra parameters (base leg vs covering leg); the coefficient
ring order is the least common multiple of the leg parameters, so every
leg's commutation factor is an integer power of the shared t.

The comultiplication on the base algebra is the unital *-homomorphism with

    delta(al) = al (x) al - q bt* (x) bt
    delta(bt) = bt (x) al + al* (x) bt

extended to words by multiplying generator images left to right.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError
from .nfalgebra import Element, Word, word_mul, word_star, _accumulate
from .scalars import Scalar


class TensorElement:
    """Scalar-weighted sum of word pairs with per-leg algebra parameters."""

    __slots__ = ("nleft", "nright", "order", "terms")

    def __init__(self, nleft: int, nright: int, terms=None, order: int | None = None):
        if order is None:
            order = math.lcm(nleft, nright)
        if order % nleft or order % nright:
            raise DomainError("ring order must be divisible by both leg parameters")
        clean: dict = {}
        if terms:
            for (l, r), c in dict(terms).items():
                key = (Word(*l), Word(*r))
                if not isinstance(c, Scalar):
                    c = Scalar.rational(order, c)
                if c.order != order:
                    raise DomainError("coefficient ring mismatch")
                if not c.is_zero:
                    _accumulate(clean, key, c)
        object.__setattr__(self, "nleft", nleft)
        object.__setattr__(self, "nright", nright)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("TensorElement is immutable")

    @classmethod
    def zero(cls, nleft: int, nright: int, order: int | None = None) -> "TensorElement":
        return cls(nleft, nright, None, order)

    @classmethod
    def one(cls, nleft: int, nright: int, order: int | None = None) -> "TensorElement":
        return cls(nleft, nright, {(Word(0, 0, 0), Word(0, 0, 0)): 1}, order)

    def _require_compatible(self, other: "TensorElement") -> None:
        if (self.nleft, self.nright, self.order) != (other.nleft, other.nright, other.order):
            raise DomainError("tensor leg/ring mismatch")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._require_compatible(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(acc, k, c)
        return TensorElement(self.nleft, self.nright, acc, self.order)

    def __neg__(self):
        return TensorElement(
            self.nleft, self.nright, {k: -c for k, c in self.terms.items()}, self.order
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        if not isinstance(c, Scalar):
            c = Scalar.rational(self.order, c)
        return TensorElement(
            self.nleft, self.nright,
            {k: v * c for k, v in self.terms.items()}, self.order,
        )

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._require_compatible(other)
        acc: dict = {}
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                c = c1 * c2
                lw = word_mul(l1, l2, self.nleft, self.order)
                rw = word_mul(r1, r2, self.nright, self.order)
                for wl, cl in lw.items():
                    for wr, cr in rw.items():
                        _accumulate(acc, (wl, wr), c * cl * cr)
        return TensorElement(self.nleft, self.nright, acc, self.order)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "TensorElement":
        if k < 0:
            raise DomainError("negative tensor powers are not defined")
        out = TensorElement.one(self.nleft, self.nright, self.order)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.nleft, self.nright, self.order, self.terms) == (
            other.nleft, other.nright, other.order, other.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def star(self) -> "TensorElement":
        """Leg-wise adjoint with conjugated coefficients."""
        acc: dict = {}
        for (l, r), c in self.terms.items():
            sl, fl = word_star(l, self.nleft, self.order)
            sr, fr = word_star(r, self.nright, self.order)
            _accumulate(acc, (sl, sr), c.conjugate() * fl * fr)
        return TensorElement(self.nleft, self.nright, acc, self.order)

    def zz_grade(self) -> dict[tuple[int, int], "TensorElement"]:
        buckets: dict = {}
        for (l, r), c in self.terms.items():
            buckets.setdefault((l.degree, r.degree), {})[(l, r)] = c
        return {
            jk: TensorElement(self.nleft, self.nright, t, self.order)
            for jk, t in sorted(buckets.items())
        }

    def zz_support(self) -> set[tuple[int, int]]:
        return {(l.degree, r.degree) for (l, r) in self.terms}

    def map_words(self, side: str, fn, nleft: int | None = None,
                  nright: int | None = None) -> "TensorElement":
        """Apply a word map to one leg (used for leg embeddings)."""
        acc: dict = {}
        for (l, r), c in self.terms.items():
            if side == "left":
                l = fn(l)
            else:
                r = fn(r)
            _accumulate(acc, (l, r), c)
        return TensorElement(
            nleft if nleft is not None else self.nleft,
            nright if nright is not None else self.nright,
            acc, self.order,
        )

    def sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1].sort_key())
        )

    def to_json(self):
        out = {
            "nleft": self.nleft,
            "nright": self.nright,
            "terms": [
                {
                    "left": {"apow": l.apow, "g": l.g, "gs": l.gs},
                    "right": {"apow": r.apow, "g": r.g, "gs": r.gs},
                    "coeff": c.to_json(),
                }
                for (l, r), c in self.sorted_terms()
            ],
        }
        if self.order != math.lcm(self.nleft, self.nright):
            out["order"] = self.order
        return out

    def __repr__(self):
        from .expr import render_tensor

        return render_tensor(self)


class TripleTensor:
    """Three-leg analogue, rich enough for coassociativity comparisons."""

    __slots__ = ("legs", "order", "terms")

    def __init__(self, legs: tuple[int, int, int], terms=None, order: int | None = None):
        if order is None:
            order = math.lcm(*legs)
        if any(order % n for n in legs):
            raise DomainError("ring order must be divisible by all leg parameters")
        clean: dict = {}
        if terms:
            for words, c in dict(terms).items():
                key = tuple(Word(*w) for w in words)
                if not isinstance(c, Scalar):
                    c = Scalar.rational(order, c)
                if not c.is_zero:
                    _accumulate(clean, key, c)
        object.__setattr__(self, "legs", tuple(legs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("TripleTensor is immutable")

    def __eq__(self, other):
        if not isinstance(other, TripleTensor):
            return NotImplemented
        return (self.legs, self.order, self.terms) == (other.legs, other.order, other.terms)

    def __sub__(self, other):
        if (self.legs, self.order) != (other.legs, other.order):
            raise DomainError("triple tensor leg/ring mismatch")
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(acc, k, -c)
        return TripleTensor(self.legs, acc, self.order)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda kv: tuple(w.sort_key() for w in kv[0])
        )


def tensor_of(x: Element, y: Element, order: int | None = None) -> TensorElement:
    """Outer product of two elements."""
    if order is None:
        order = math.lcm(x.order, y.order)
    acc: dict = {}
    for wl, cl in x.terms.items():
        for wr, cr in y.terms.items():
            _accumulate(acc, (wl, wr), cl.promote(order) * cr.promote(order))
    return TensorElement(x.n, y.n, acc, order)


# -- comultiplication ---------------------------------------------------------

_GEN_IMAGE_CACHE: dict = {}


def _generator_images(order: int) -> dict[str, TensorElement]:
    try:
        return _GEN_IMAGE_CACHE[order]
    except KeyError:
        pass
    q = Scalar.q(order)
    al, als = Word(1, 0, 0), Word(-1, 0, 0)
    bt, bts = Word(0, 1, 0), Word(0, 0, 1)
    images = {
        "al": TensorElement(1, 1, {(al, al): 1, (bts, bt): -q}, order),
        "als": TensorElement(1, 1, {(als, als): 1, (bt, bts): -q}, order),
        "bt": TensorElement(1, 1, {(bt, al): 1, (als, bt): 1}, order),
        "bts": TensorElement(1, 1, {(bts, als): 1, (al, bts): 1}, order),
    }
    _GEN_IMAGE_CACHE[order] = images
    return images


_DELTA_WORD_CACHE: dict = {}


def delta_word(w: Word, order: int = 1) -> TensorElement:
    key = (w, order)
    try:
        return _DELTA_WORD_CACHE[key]
    except KeyError:
        pass
    images = _generator_images(order)
    out = TensorElement.one(1, 1, order)
    gen = images["al"] if w.apow >= 0 else images["als"]
    for _ in range(abs(w.apow)):
        out = out * gen
    for _ in range(w.g):
        out = out * images["bt"]
    for _ in range(w.gs):
        out = out * images["bts"]
    _DELTA_WORD_CACHE[key] = out
    return out


def delta(a: Element) -> TensorElement:
    """Comultiplication of a base-algebra element."""
    if a.n != 1:
        raise DomainError("comultiplication is defined on the base algebra")
    out = TensorElement.zero(1, 1, a.order)
    for w, c in a.terms.items():
        out = out + delta_word(w, a.order).scale(c)
    return out


def delta_respects_relations(order: int = 1) -> list[tuple[str, TensorElement]]:
    """Image of each defining relation under the comultiplication.

    The relation expressions are formed from generator images, so a zero
    result is the well-definedness of the extension, not a tautology.
    """
    im = _generator_images(order)
    one = TensorElement.one(1, 1, order)
    q = Scalar.q(order)
    return [
        ("unitarity-left", im["als"] * im["al"] + im["bts"] * im["bt"] - one),
        ("unitarity-right", im["al"] * im["als"] + (im["bt"] * im["bts"]).scale(q * q) - one),
        ("al-bt-commutation", im["al"] * im["bt"] - (im["bt"] * im["al"]).scale(q)),
        ("al-bts-commutation", im["al"] * im["bts"] - (im["bts"] * im["al"]).scale(q)),
        ("bt-normality", im["bts"] * im["bt"] - im["bt"] * im["bts"]),
    ]


def _expand_left(x: TensorElement) -> TripleTensor:
    acc: dict = {}
    for (l, r), c in x.terms.items():
        for (u, v), d in delta_word(l, x.order).terms.items():
            _accumulate(acc, (u, v, r), c * d)
    return TripleTensor((1, 1, x.nright), acc, x.order)


def _expand_right(x: TensorElement) -> TripleTensor:
    acc: dict = {}
    for (l, r), c in x.terms.items():
        for (u, v), d in delta_word(r, x.order).terms.items():
            _accumulate(acc, (l, u, v), c * d)
    return TripleTensor((x.nleft, 1, 1), acc, x.order)


def coassoc_check(a: Element) -> dict:
    """Compare (delta (x) id) delta with (id (x) delta) delta on ``a``."""
    d = delta(a)
    lhs = _expand_left(d)
    rhs = _expand_right(d)
    diff = lhs - rhs
    return {
        "check": "coassociativity",
        "status": "pass" if diff.is_zero else "fail",
        "lhs": lhs,
        "rhs": rhs,
        "residual_terms": diff.sorted_terms(),
    }


def zz_grade(x: TensorElement) -> dict[tuple[int, int], TensorElement]:
    return x.zz_grade()
