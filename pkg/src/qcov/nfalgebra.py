"""Normal-form *-algebra engine for the one-parameter covering family.

The algebra with parameter n is generated by al, al* and gt, gt* subject to

    R1:  gt* gt  ->  gt gt*
    R2:  gt  al  ->  t^-1 al gt        (likewise gt* al)
    R3:  gt  al* ->  t    al* gt       (likewise gt* al*)
    R4:  al al*  ->  1 - t^(2n) gt^n gt*^n
    R5:  al* al  ->  1 - gt^n gt*^n

where t is the order-n Laurent variable (t^n = q).  At n = 1 the generator
gt is the base generator bt and the rules are the familiar q-deformed
unitarity and commutation relations; at n > 1, gt is the n-th root adjoined
to the base algebra, with gt^n = bt.

Every element is stored as a finite Scalar-weighted sum of words in the
normal order  al^k gt^g gt*^s  (k < 0 encoding al*^(-k)).  Products are
normalised eagerly: the gamma block of the left word is commuted across the
alpha block of the right word (R2/R3), the two alpha blocks are contracted
one innermost pair at a time (R4/R5), and every emitted gt^n gt*^n block is
pushed to the right across the remaining starred or unstarred alpha letters,
collecting t^(+-2n) per letter.

Words never need commuting on their own gamma side because gt and gt*
commute with no factor (R1).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

from .errors import DomainError
from .scalars import Scalar


class Word(NamedTuple):
    """A normal-form monomial al^apow gt^g gt*^gs (apow < 0 means al*)."""

    apow: int
    g: int
    gs: int

    @property
    def degree(self) -> int:
        return self.g - self.gs

    @property
    def length(self) -> int:
        return abs(self.apow) + self.g + self.gs

    @property
    def is_identity(self) -> bool:
        return self == (0, 0, 0)

    def sort_key(self):
        # Unstarred alpha powers come before starred ones, matching the
        # usual listing of the monomial basis.
        return (0, self.apow, self.g, self.gs) if self.apow >= 0 else (
            1, -self.apow, self.g, self.gs)


IDENTITY_WORD = Word(0, 0, 0)


def _accumulate(acc: dict, key, value: Scalar) -> None:
    cur = acc.get(key)
    total = value if cur is None else cur + value
    if total.is_zero:
        acc.pop(key, None)
    else:
        acc[key] = total


def _contract_pos(a: int, k: int, nleg: int, order: int) -> dict:
    """Normal form of al^a al*^k (both > 0 allowed, either may be 0)."""
    if a == 0 or k == 0:
        return {Word(a - k, 0, 0): Scalar.one(order)}
    prev = _contract_pos(a - 1, k - 1, nleg, order)
    out: dict = {}
    emitted = -Scalar.t(order, 2 * order * k)
    for w, c in prev.items():
        _accumulate(out, w, c)
        _accumulate(out, Word(w.apow, w.g + nleg, w.gs + nleg), c * emitted)
    return out


def _contract_neg(k: int, a: int, nleg: int, order: int, r2_sign: int) -> dict:
    """Normal form of al*^k al^a."""
    if a == 0 or k == 0:
        return {Word(a - k, 0, 0): Scalar.one(order)}
    prev = _contract_neg(k - 1, a - 1, nleg, order, r2_sign)
    out: dict = {}
    emitted = -Scalar.t(order, r2_sign * 2 * order * (a - 1))
    for w, c in prev.items():
        _accumulate(out, w, c)
        _accumulate(out, Word(w.apow, w.g + nleg, w.gs + nleg), c * emitted)
    return out


def word_mul(w1: Word, w2: Word, nleg: int, order: int, r2_sign: int = -1) -> dict:
    """Product of two normal words as a dict Word -> Scalar (order ``order``).

    ``nleg`` is the algebra parameter of the leg the words live on and must
    divide ``order``; one gamma-past-alpha pass contributes t^(order/nleg).
    ``r2_sign`` flips the R2 exponent for the deliberate-mutation oracle.
    """
    if order % nleg:
        raise DomainError(f"leg parameter {nleg} does not divide ring order {order}")
    tstep = order // nleg
    a1, a2 = w1.apow, w2.apow
    passes = w1.g + w1.gs
    if a2 > 0:
        texp = r2_sign * a2 * passes * tstep
    elif a2 < 0:
        texp = (-a2) * passes * tstep
    else:
        texp = 0
    if a1 == 0 or a2 == 0 or (a1 > 0) == (a2 > 0):
        merged = {Word(a1 + a2, 0, 0): Scalar.one(order)}
    elif a1 > 0:
        merged = _contract_pos(a1, -a2, nleg, order)
    else:
        merged = _contract_neg(-a1, a2, nleg, order, r2_sign)
    g, gs = w1.g + w2.g, w1.gs + w2.gs
    front = Scalar.t(order, texp)
    out: dict = {}
    for w, c in merged.items():
        _accumulate(out, Word(w.apow, w.g + g, w.gs + gs), c * front)
    return out


def word_star(w: Word, nleg: int, order: int) -> tuple[Word, Scalar]:
    """Adjoint of a word: (al^a gt^g gt*^s)* = t^(a(g+s)) al^-a gt^s gt*^g."""
    tstep = order // nleg
    return Word(-w.apow, w.gs, w.g), Scalar.t(order, tstep * w.apow * (w.g + w.gs))


class Element:
    """A finite Scalar-weighted sum of normal words with algebra parameter n.

    ``order`` is the cyclotomic-Laurent ring order of the coefficients; it
    equals n for plain covering elements, and may be a multiple of n for
    base-algebra elements viewed inside a covering (deck phases and twist
    factors then stay representable).
    """

    __slots__ = ("n", "order", "terms")

    def __init__(self, n: int, terms=None, order: int | None = None):
        if order is None:
            order = n
        if n < 1 or order % n:
            raise DomainError(f"algebra parameter {n} incompatible with ring order {order}")
        clean: dict = {}
        if terms:
            for w, c in dict(terms).items():
                w = Word(*w)
                if w.g < 0 or w.gs < 0:
                    raise DomainError(f"negative gamma exponent in {w}")
                if not isinstance(c, Scalar):
                    c = Scalar.rational(order, c)
                if c.order != order:
                    raise DomainError("coefficient ring mismatch")
                if not c.is_zero:
                    _accumulate(clean, w, c)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("Element is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, n: int, order: int | None = None) -> "Element":
        return cls(n, None, order)

    @classmethod
    def one(cls, n: int, order: int | None = None) -> "Element":
        return cls(n, {IDENTITY_WORD: 1}, order)

    @classmethod
    def from_word(cls, n: int, word: Word, coeff=1, order: int | None = None) -> "Element":
        return cls(n, {word: coeff}, order)

    @classmethod
    def alpha(cls, n: int, order: int | None = None) -> "Element":
        return cls(n, {Word(1, 0, 0): 1}, order)

    @classmethod
    def alpha_star(cls, n: int, order: int | None = None) -> "Element":
        return cls(n, {Word(-1, 0, 0): 1}, order)

    @classmethod
    def gamma(cls, n: int, order: int | None = None) -> "Element":
        return cls(n, {Word(0, 1, 0): 1}, order)

    @classmethod
    def gamma_star(cls, n: int, order: int | None = None) -> "Element":
        return cls(n, {Word(0, 0, 1): 1}, order)

    @classmethod
    def beta(cls, n: int, order: int | None = None) -> "Element":
        """The base generator: gt^n at parameter n."""
        return cls(n, {Word(0, n, 0): 1}, order)

    @classmethod
    def beta_star(cls, n: int, order: int | None = None) -> "Element":
        return cls(n, {Word(0, 0, n): 1}, order)

    # -- linear structure ----------------------------------------------------

    def _require_compatible(self, other: "Element") -> None:
        if self.n != other.n or self.order != other.order:
            raise DomainError(
                f"algebra mismatch: ({self.n},{self.order}) vs ({other.n},{other.order})"
            )

    def __add__(self, other: "Element") -> "Element":
        self._require_compatible(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(acc, w, c)
        return Element(self.n, acc, self.order)

    def __neg__(self) -> "Element":
        return Element(self.n, {w: -c for w, c in self.terms.items()}, self.order)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        if not isinstance(c, Scalar):
            c = Scalar.rational(self.order, c)
        if c.order != self.order:
            raise DomainError("coefficient ring mismatch")
        return Element(self.n, {w: v * c for w, v in self.terms.items()}, self.order)

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.mul(other)
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "Element":
        if k < 0:
            raise DomainError("negative powers of algebra elements are not defined")
        out = Element.one(self.n, self.order)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (self.n, self.order, self.terms) == (other.n, other.order, other.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    # -- algebra -------------------------------------------------------------

    def mul(self, other: "Element", r2_sign: int = -1) -> "Element":
        self._require_compatible(other)
        acc: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                c = c1 * c2
                for w, cw in word_mul(w1, w2, self.n, self.order, r2_sign).items():
                    _accumulate(acc, w, c * cw)
        return Element(self.n, acc, self.order)

    def star(self) -> "Element":
        acc: dict = {}
        for w, c in self.terms.items():
            sw, factor = word_star(w, self.n, self.order)
            _accumulate(acc, sw, c.conjugate() * factor)
        return Element(self.n, acc, self.order)

    def grade(self) -> dict[int, "Element"]:
        """Split by word degree g - gs."""
        buckets: dict[int, dict] = {}
        for w, c in self.terms.items():
            buckets.setdefault(w.degree, {})[w] = c
        return {
            d: Element(self.n, terms, self.order) for d, terms in sorted(buckets.items())
        }

    def degrees(self) -> set[int]:
        return {w.degree for w in self.terms}

    def to_json(self):
        out = {"n": self.n, "terms": [
            {"apow": w.apow, "g": w.g, "gs": w.gs, "coeff": c.to_json()}
            for w, c in self.sorted_terms()
        ]}
        if self.order != self.n:
            out["order"] = self.order
        return out

    def __repr__(self):
        from .expr import render_element

        return render_element(self)


# -- module-level operations -------------------------------------------------

def mul(x: Element, y: Element) -> Element:
    return x.mul(y)


def star(x: Element) -> Element:
    return x.star()


def grade(x: Element) -> dict[int, Element]:
    return x.grade()


def u1_act(x: Element, u: Scalar) -> Element:
    """Scale the degree-j component by u^j for a monomial unit u."""
    if u.order != x.order:
        raise DomainError("phase lives in a different scalar ring")
    acc: dict = {}
    for w, c in x.terms.items():
        _accumulate(acc, w, c * u.unit_power(w.degree))
    return Element(x.n, acc, x.order)


def promote(a: Element, order: int) -> Element:
    """Lift coefficients into a larger ring; words are untouched."""
    if order == a.order:
        return a
    return Element(
        a.n, {w: c.promote(order) for w, c in a.terms.items()}, order
    )


def embed_base(a: Element, n: int) -> Element:
    """The inclusion of the base algebra: al -> al, bt -> gt^n, q -> t^n."""
    if a.n != 1:
        raise DomainError("only base-algebra elements embed")
    acc: dict = {}
    for w, c in a.terms.items():
        if a.order == 1:
            c = c.promote(n)
        elif a.order != n:
            raise DomainError(f"base element in ring {a.order} cannot embed at parameter {n}")
        _accumulate(acc, Word(w.apow, n * w.g, n * w.gs), c)
    return Element(n, acc, n)


def unembed(x: Element):
    """Partial inverse of embed_base; None when x is outside the image."""
    acc: dict = {}
    for w, c in x.terms.items():
        if w.g % x.n or w.gs % x.n:
            return None
        base_c = c.demote(1)
        if base_c is None:
            return None
        acc[Word(w.apow, w.g // x.n, w.gs // x.n)] = base_c
    return Element(1, acc, 1)


def basis_words(max_length: int, min_length: int = 0) -> Iterable[Word]:
    """All normal words with |apow| + g + gs within the given bounds."""
    for total in range(min_length, max_length + 1):
        for absa in range(total + 1):
            for g in range(total - absa + 1):
                gs = total - absa - g
                yield Word(absa, g, gs)
                if absa:
                    yield Word(-absa, g, gs)


@lru_cache(maxsize=None)
def _relation_exprs(n: int) -> tuple:
    al = Element.alpha(n)
    als = Element.alpha_star(n)
    bt = Element.beta(n)
    bts = Element.beta_star(n)
    one = Element.one(n)
    q = Scalar.q(n)
    return (
        ("unitarity-left", als * al + bts * bt - one),
        ("unitarity-right", al * als + (bt * bts).scale(q * q) - one),
        ("al-bt-commutation", al * bt - (bt * al).scale(q)),
        ("al-bts-commutation", al * bts - (bts * al).scale(q)),
        ("bt-normality", bts * bt - bt * bts),
    )


def defining_relation_residuals(n: int) -> list[tuple[str, Element]]:
    """The five defining relations, normalised; all must come out zero."""
    return list(_relation_exprs(n))
