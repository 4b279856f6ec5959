"""Exact arithmetic in the cyclotomic-Laurent ring Q(zeta_n)[t, t^-1].

A scalar of order n is a finite sum of monomials  r * z^i * t^j  with
rational r, where z is a primitive n-th root of unity kept reduced modulo
the n-th cyclotomic polynomial (basis 1, z, ..., z^(phi(n)-1)) and t is an
invertible Laurent variable standing for the positive real n-th root of
the deformation parameter.  The deformation parameter itself is never a
separate symbol: q = t^n, so base-ring scalars (order 1) and covering-ring
scalars (order n) coexist after promotion into one ring.

Reduction happens modulo the cyclotomic polynomial, not modulo z^n - 1,
so the ring is an integral domain: a product of nonzero scalars is
nonzero, which the obstruction analysis relies on.

Orders 1..12 are supported; everything is exact (fractions.Fraction), no
floating point enters until ``scalar_eval``.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

MAX_ORDER = 12


def _check_order(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"ring order must be a positive integer, got {n!r}")
    if n > MAX_ORDER:
        raise DomainError(f"ring order {n} exceeds the supported maximum {MAX_ORDER}")


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # Exact division of integer polynomials (ascending coefficients).
    num = list(num)
    quot = [0] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        lead, rem = divmod(num[-1], den[-1])
        if rem:
            raise ArithmeticError("non-exact polynomial division")
        quot[shift] = lead
        for i, c in enumerate(den):
            num[shift + i] -= lead * c
    while num and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the n-th cyclotomic polynomial.

    Computed by exact division of x^n - 1 by the cyclotomic polynomials of
    all proper divisors of n.
    """
    _check_order(n)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_poly(d)))
            if rem:
                raise ArithmeticError("cyclotomic division left a remainder")
    return tuple(poly)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _zeta_rows(n: int) -> tuple[tuple[int, ...], ...]:
    # Row e holds the coordinates of z^e in the basis 1, z, ..., z^(phi-1).
    phi = euler_phi(n)
    cyc = cyclotomic_poly(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(2 * n):
        rows.append(tuple(cur))
        # Multiply by x, then reduce the overflowing x^phi term (monic).
        lead = cur[-1]
        shifted = [0] + cur[:-1]
        cur = [shifted[i] - lead * cyc[i] for i in range(phi)] if lead else shifted
    return tuple(rows)


def _acc_term(acc: dict, n: int, zexp: int, texp: int, coeff: Fraction) -> None:
    if not coeff:
        return
    zexp %= n
    phi = euler_phi(n)
    if zexp < phi:
        key = (zexp, texp)
        acc[key] = acc.get(key, Fraction(0)) + coeff
    else:
        for i, ci in enumerate(_zeta_rows(n)[zexp]):
            if ci:
                key = (i, texp)
                acc[key] = acc.get(key, Fraction(0)) + ci * coeff


class Scalar:
    """An immutable element of Q(zeta_n)[t, t^-1] in canonical form."""

    __slots__ = ("order", "_terms")

    def __init__(self, order: int, terms=None):
        _check_order(order)
        acc: dict = {}
        if terms:
            for (zexp, texp), coeff in dict(terms).items():
                _acc_term(acc, order, zexp, texp, Fraction(coeff))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_terms", {k: v for k, v in acc.items() if v})

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "Scalar":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "Scalar":
        return cls(order, {(0, 0): 1})

    @classmethod
    def rational(cls, order: int, value) -> "Scalar":
        return cls(order, {(0, 0): Fraction(value)})

    @classmethod
    def t(cls, order: int, k: int = 1) -> "Scalar":
        return cls(order, {(0, k): 1})

    @classmethod
    def q(cls, order: int, k: int = 1) -> "Scalar":
        """q^k, i.e. t^(order*k)."""
        return cls(order, {(0, order * k): 1})

    @classmethod
    def zeta(cls, order: int, m: int = 1) -> "Scalar":
        return cls(order, {(m % order, 0): 1})

    # -- ring structure ----------------------------------------------------

    def _require_same_ring(self, other: "Scalar") -> None:
        if self.order != other.order:
            raise DomainError(
                f"scalar order mismatch: {self.order} vs {other.order}"
            )

    def _coerce(self, other):
        if isinstance(other, Scalar):
            self._require_same_ring(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.rational(self.order, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for key, c in other._terms.items():
            acc[key] = acc.get(key, Fraction(0)) + c
        return Scalar(self.order, acc)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.order, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc: dict = {}
        for (z1, t1), c1 in self._terms.items():
            for (z2, t2), c2 in other._terms.items():
                _acc_term(acc, self.order, z1 + z2, t1 + t2, c1 * c2)
        return Scalar(self.order, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.rational(self.order, other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.order == other.order and self._terms == other._terms

    def __hash__(self):
        return hash((self.order, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    # -- involution, units, evaluation --------------------------------------

    def conjugate(self) -> "Scalar":
        """Complex conjugation: z -> z^(n-1)-reduced, t and rationals fixed."""
        acc: dict = {}
        for (zexp, texp), c in self._terms.items():
            _acc_term(acc, self.order, (-zexp) % self.order, texp, c)
        return Scalar(self.order, acc)

    def unit_parts(self):
        """Decompose a monomial unit as (rational, zeta power, t power).

        Returns None when the scalar is not of the form r * z^m * t^k.  The
        search over the n candidate zeta powers is exact and cheap at the
        supported orders.
        """
        if not self._terms:
            return None
        for m in range(self.order):
            v = self * Scalar.zeta(self.order, -m)
            if len(v._terms) == 1:
                ((zexp, texp), c), = v._terms.items()
                if zexp == 0:
                    return (c, m, texp)
        return None

    def inverse(self) -> "Scalar":
        parts = self.unit_parts()
        if parts is None:
            raise DomainError(f"scalar is not an invertible monomial: {self}")
        c, m, k = parts
        return (
            Scalar.rational(self.order, Fraction(1) / c)
            * Scalar.zeta(self.order, -m)
            * Scalar.t(self.order, -k)
        )

    def unit_power(self, j: int) -> "Scalar":
        """self**j for any integer j, provided self is a monomial unit."""
        parts = self.unit_parts()
        if parts is None:
            raise DomainError(f"scalar is not an invertible monomial: {self}")
        c, m, k = parts
        return (
            Scalar.rational(self.order, c ** j)
            * Scalar.zeta(self.order, m * j)
            * Scalar.t(self.order, k * j)
        )

    def eval(self, q: float) -> complex:
        """Numerical value with t -> q^(1/n) (positive root), z -> e^(2 pi i/n)."""
        if not (0.0 < q < 1.0):
            raise DomainError(f"deformation parameter must lie in (0,1), got {q}")
        n = self.order
        zc = cmath.exp(2j * cmath.pi / n)
        out = 0j
        for (zexp, texp), c in self._terms.items():
            out += float(c) * zc ** zexp * q ** (texp / n)
        return out

    # -- promotion between rings -------------------------------------------

    def promote(self, order: int) -> "Scalar":
        """Reinterpret in a larger ring whose order is a multiple of ours.

        t_old = t_new^(order/old) and zeta_old = zeta_new^(order/old), so the
        numerical value is unchanged.
        """
        if order == self.order:
            return self
        if order % self.order:
            raise DomainError(
                f"cannot promote order {self.order} scalar into order {order}"
            )
        step = order // self.order
        acc: dict = {}
        for (zexp, texp), c in self._terms.items():
            _acc_term(acc, order, zexp * step, texp * step, c)
        return Scalar(order, acc)

    def demote(self, order: int):
        """Partial inverse of promote; None when not in the smaller ring."""
        if order == self.order:
            return self
        if self.order % order:
            return None
        step = self.order // order
        acc: dict = {}
        for (zexp, texp), c in self._terms.items():
            if zexp % step or texp % step:
                return None
            acc[(zexp // step, texp // step)] = c
        return Scalar(order, acc)

    # -- rendering -----------------------------------------------------------

    def monomials(self):
        """Sorted list of ((zexp, texp), coefficient)."""
        return sorted(self._terms.items())

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (zexp, texp), c in self.monomials():
            body = _monomial_str(abs(c), zexp, texp)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    __repr__ = __str__

    def to_json(self):
        return [
            {
                "zexp": zexp,
                "texp": texp,
                "num": str(c.numerator),
                "den": str(c.denominator),
            }
            for (zexp, texp), c in self.monomials()
        ]


def _monomial_str(c: Fraction, zexp: int, texp: int) -> str:
    factors = []
    if c != 1 or (zexp == 0 and texp == 0):
        factors.append(str(c))
    if zexp:
        factors.append("z" if zexp == 1 else f"z^{zexp}")
    if texp:
        factors.append("t" if texp == 1 else f"t^{texp}")
    return " ".join(factors)


# Operation aliases matching the module surface.

def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def root_of_unity(n: int, m: int) -> Scalar:
    return Scalar.zeta(n, m)


def scalar_eval(a: Scalar, q: float) -> complex:
    return a.eval(q)
