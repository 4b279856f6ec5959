"""Positive control on function algebras over finite cyclic groups.

Functions on Z_m with pointwise operations and the convolution-style
comultiplication table T[x][y] = f(x+y) form the commutative model where
the covering story works on the nose: C(Z_m) embeds into C(Z_{mn}) by
pulling back along reduction mod m, the deck group is translation by
multiples of m, the fixed algebra is exactly the embedded base, and the
restriction property of the lifted comultiplication holds exactly.

Equivariance is checked in two readings: the one-leg form
T'(x, y) = f(x - h + y), which holds for every translation, and the
two-leg form f(x - h + y - h), which fails for every nontrivial deck
translation; both outcomes are reported as computed facts.

All scalars live in the exact cyclotomic ring of order m*n so that later
character-basis cross-checks stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .scalars import Scalar


@dataclass(frozen=True)
class CyclicFun:
    """A function on Z_m, stored as its tuple of values."""

    m: int
    values: tuple
    order: int

    def __post_init__(self):
        if len(self.values) != self.m:
            raise DomainError(f"expected {self.m} values, got {len(self.values)}")

    @classmethod
    def delta(cls, m: int, i: int, order: int | None = None) -> "CyclicFun":
        order = order or m
        vals = [Scalar.zero(order)] * m
        vals[i % m] = Scalar.one(order)
        return cls(m, tuple(vals), order)

    @classmethod
    def constant(cls, m: int, c, order: int | None = None) -> "CyclicFun":
        order = order or m
        if not isinstance(c, Scalar):
            c = Scalar.rational(order, c)
        return cls(m, tuple([c] * m), order)

    def _require_compatible(self, other: "CyclicFun") -> None:
        if (self.m, self.order) != (other.m, other.order):
            raise DomainError("cyclic functions live on different groups or rings")

    def __add__(self, other):
        self._require_compatible(other)
        return CyclicFun(self.m, tuple(a + b for a, b in zip(self.values, other.values)), self.order)

    def __mul__(self, other):
        if isinstance(other, CyclicFun):
            self._require_compatible(other)
            return CyclicFun(
                self.m, tuple(a * b for a, b in zip(self.values, other.values)), self.order
            )
        return CyclicFun(self.m, tuple(a * other for a in self.values), self.order)

    def star(self) -> "CyclicFun":
        return CyclicFun(self.m, tuple(a.conjugate() for a in self.values), self.order)

    @property
    def is_zero(self) -> bool:
        return all(v.is_zero for v in self.values)


def comult(f: CyclicFun) -> list[list[Scalar]]:
    """The m x m table T[x][y] = f(x + y)."""
    m = f.m
    return [[f.values[(x + y) % m] for y in range(m)] for x in range(m)]


def comult3(f: CyclicFun) -> list:
    return [[[f.values[(x + y + z) % f.m] for z in range(f.m)] for y in range(f.m)]
            for x in range(f.m)]


def expand_table_left(table, m: int) -> list:
    """Apply the comultiplication to the first leg of a two-leg table."""
    return [[[table[(x + y) % m][z] for z in range(m)] for y in range(m)] for x in range(m)]


def expand_table_right(table, m: int) -> list:
    return [[[table[x][(y + z) % m] for z in range(m)] for y in range(m)] for x in range(m)]


def table_star(table) -> list:
    return [[v.conjugate() for v in row] for row in table]


def cover_embed(f: CyclicFun, n: int) -> CyclicFun:
    """Pull back along reduction mod m: value at x is f(x mod m)."""
    mn = f.m * n
    return CyclicFun(mn, tuple(f.values[x % f.m] for x in range(mn)), f.order)


def deck_translate(f: CyclicFun, h: int) -> CyclicFun:
    """(L_h f)(x) = f(x - h)."""
    return CyclicFun(f.m, tuple(f.values[(x - h) % f.m] for x in range(f.m)), f.order)


def translate_table(table, m: int, h_left: int, h_right: int) -> list:
    return [[table[(x - h_left) % m][(y - h_right) % m] for y in range(m)] for x in range(m)]


def lemma_equivariance_report(m: int, n: int) -> dict:
    """Both equivariance readings for every basis function and deck element.

    Returns per-case verdicts plus a summary; the two-leg reading is
    expected to fail for every nontrivial translation and the report simply
    records what the finite computation shows.
    """
    mn = m * n
    cases = []
    for i in range(mn):
        f = CyclicFun.delta(mn, i, order=mn)
        table = comult(f)
        for j in range(n):
            h = j * m
            lifted = comult(deck_translate(f, h))
            one_leg = lifted == translate_table(table, mn, h, 0)
            two_leg = lifted == translate_table(table, mn, h, h)
            cases.append({"basis": i, "h": h, "one_leg": one_leg, "two_leg": two_leg})
    one_leg_all = all(c["one_leg"] for c in cases)
    two_leg_fails = [c for c in cases if c["h"] % mn and not c["two_leg"]]
    two_leg_nontrivial_all_fail = all(
        not c["two_leg"] for c in cases if c["h"] % mn
    )
    return {
        "check": "deck-equivariance-forms",
        "m": m,
        "n": n,
        "one_leg_holds_everywhere": one_leg_all,
        "two_leg_fails_for_all_nontrivial": two_leg_nontrivial_all_fail,
        "two_leg_failure_count": len(two_leg_fails),
        "cases": cases,
        "status": "pass" if one_leg_all else "fail",
    }


def restriction_check(m: int, n: int) -> dict:
    """Lifted comultiplication restricted to the embedded base equals the
    leg-wise embedded base comultiplication, table by table."""
    mn = m * n
    failures = []
    for i in range(m):
        f = CyclicFun.delta(m, i, order=mn)
        base_table = comult(f)
        lifted = comult(cover_embed(f, n))
        embedded = [[base_table[x % m][y % m] for y in range(mn)] for x in range(mn)]
        if lifted != embedded:
            failures.append(i)
    return {
        "check": "restriction-to-base",
        "m": m,
        "n": n,
        "status": "pass" if not failures else "fail",
        "failures": failures,
    }


def fixed_algebra_report(m: int, n: int) -> dict:
    """The deck-fixed subalgebra coincides with the embedded base.

    Translation by m permutes the mn points into exactly m orbits; a
    function is fixed iff it is constant on orbits, and the orbit
    indicators are precisely the embedded base delta functions.
    """
    mn = m * n
    orbits: dict[int, list[int]] = {}
    for x in range(mn):
        orbits.setdefault(x % m, []).append(x)
    indicator_match = []
    for r, pts in sorted(orbits.items()):
        ind = CyclicFun(
            mn,
            tuple(Scalar.one(mn) if x in pts else Scalar.zero(mn) for x in range(mn)),
            mn,
        )
        indicator_match.append(ind == cover_embed(CyclicFun.delta(m, r, order=mn), n))
    symmetrized_in_base = []
    for i in range(mn):
        f = CyclicFun.delta(mn, i, order=mn)
        s = CyclicFun.constant(mn, 0, order=mn)
        for j in range(n):
            s = s + deck_translate(f, j * m)
        symmetrized_in_base.append(s == cover_embed(CyclicFun.delta(m, i % m, order=mn), n))
    ok = len(orbits) == m and all(indicator_match) and all(symmetrized_in_base)
    return {
        "check": "fixed-algebra-equals-base",
        "m": m,
        "n": n,
        "orbit_count": len(orbits),
        "status": "pass" if ok else "fail",
    }


def hopf_structure_report(m: int) -> dict:
    """Coassociativity and star-compatibility of the table comultiplication."""
    coassoc_ok = True
    star_ok = True
    for i in range(m):
        f = CyclicFun.delta(m, i)
        table = comult(f)
        left = expand_table_left(table, m)
        right = expand_table_right(table, m)
        if left != right or left != comult3(f):
            coassoc_ok = False
        if comult(f.star()) != table_star(table):
            star_ok = False
    return {
        "check": "table-comultiplication-structure",
        "m": m,
        "coassociative": coassoc_ok,
        "star_compatible": star_ok,
        "status": "pass" if coassoc_ok and star_ok else "fail",
    }


def full_report(m: int, n: int) -> dict:
    """Everything the command line shows for one (m, n) pair."""
    if m * n > 12:
        raise DomainError("m*n above 12 exceeds the supported exact scalar orders")
    equi = lemma_equivariance_report(m, n)
    return {
        "m": m,
        "n": n,
        "hopf": hopf_structure_report(m * n),
        "restriction": restriction_check(m, n),
        "fixed_algebra": fixed_algebra_report(m, n),
        "equivariance": {k: v for k, v in equi.items() if k != "cases"},
    }
