"""Graded obstruction analysis in the tensor square of the covering algebra.

No candidate of the constrained graded form can have its n-th power equal to
the comultiplication image of the base generator: the power always picks up
a cross term in grade (1, n-1) whose coefficient is a nonzero q-deformed
shuffle sum (1 + t^2 + ... + t^(2(n-1)) up to a unit), and the coefficient
ring has no zero divisors.  This module expands candidate powers, splits
them by the double grading, and reports every mismatch against the target.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .nfalgebra import Element, Word
from .qtensor import TensorElement, tensor_of
from .scalars import Scalar


def target(n: int) -> TensorElement:
    """gt^n (x) al + al* (x) gt^n, the required value of the n-th power."""
    if n < 1:
        raise DomainError("covering parameter must be positive")
    return TensorElement(
        n, n,
        {
            (Word(0, n, 0), Word(1, 0, 0)): 1,
            (Word(-1, 0, 0), Word(0, n, 0)): 1,
        },
    )


@dataclass(frozen=True)
class GradedCandidate:
    """A finitely supported sum of homogeneous double-graded components."""

    n: int
    components: dict

    def __post_init__(self):
        for (j, k), comp in self.components.items():
            if not isinstance(comp, TensorElement):
                raise DomainError("components must be tensor elements")
            if comp.is_zero:
                raise DomainError(f"stored component at {(j, k)} is zero")
            if comp.zz_support() != {(j, k)}:
                raise DomainError(f"component at {(j, k)} is not homogeneous of that grade")

    @property
    def support(self) -> set:
        return set(self.components)

    def total(self) -> TensorElement:
        out = TensorElement.zero(self.n, self.n)
        for comp in self.components.values():
            out = out + comp
        return out

    @classmethod
    def canonical(cls, n: int, lam: Scalar | int = 1, mu: Scalar | int = 1) -> "GradedCandidate":
        """lam * al* (x) gt  +  mu * gt (x) al."""
        a01 = tensor_of(Element.alpha_star(n), Element.gamma(n)).scale(lam)
        a10 = tensor_of(Element.gamma(n), Element.alpha(n)).scale(mu)
        return cls(n, {(0, 1): a01, (1, 0): a10})


@dataclass
class ObstructionReport:
    n: int
    verdict: str  # "obstructed" | "satisfied"
    target: TensorElement
    power: TensorElement
    mismatches: list  # [(grade, computed - target component)]
    cross_grade: tuple
    cross: TensorElement
    witness_coefficient: str | None
    steps: list

    def to_json(self):
        from .expr import render_tensor

        return {
            "n": self.n,
            "verdict": self.verdict,
            "witness_grade": list(self.cross_grade),
            "witness_coefficient": self.witness_coefficient,
            "cross_term": render_tensor(self.cross),
            "steps": self.steps,
            "mismatches": [
                {"grade": list(grade), "difference": render_tensor(diff)}
                for grade, diff in self.mismatches
            ],
        }


def _unit_normalized_coefficient(x: TensorElement) -> str | None:
    """Strip the t-power unit from a single-word component's coefficient."""
    if len(x.terms) != 1:
        return None
    (coeff,) = x.terms.values()
    min_texp = min(texp for (_, texp), _ in coeff.monomials())
    return str(coeff * Scalar.t(coeff.order, -min_texp))


def power_compare(candidate: GradedCandidate, n: int) -> ObstructionReport:
    """Expand the candidate's n-th power and diff it against the target."""
    if candidate.n != n:
        raise DomainError("candidate parameter does not match requested power")
    power = candidate.total() ** n
    tgt = target(n)
    by_grade = power.zz_grade()
    tgt_grades = tgt.zz_grade()
    mismatches = []
    for grade in sorted(set(by_grade) | set(tgt_grades)):
        got = by_grade.get(grade, TensorElement.zero(n, n))
        want = tgt_grades.get(grade, TensorElement.zero(n, n))
        diff = got - want
        if not diff.is_zero:
            mismatches.append((grade, diff))
    cross_grade = (1, n - 1)
    cross = by_grade.get(cross_grade, TensorElement.zero(n, n))
    return ObstructionReport(
        n=n,
        verdict="satisfied" if not mismatches else "obstructed",
        target=tgt,
        power=power,
        mismatches=mismatches,
        cross_grade=cross_grade,
        cross=cross,
        witness_coefficient=_unit_normalized_coefficient(cross),
        steps=[],
    )


def cross_term(candidate: GradedCandidate, n: int) -> TensorElement:
    """The (1, n-1) graded component of the candidate's n-th power.

    For the canonical candidate this is the obstruction witness; its exact
    coefficient is the full q-shuffle sum rather than the bare classical
    count of shuffles.
    """
    power = candidate.total() ** n
    return power.zz_grade().get((1, n - 1), TensorElement.zero(n, n))


def support_constraints(candidate: GradedCandidate, n: int) -> list[dict]:
    """Replay the structural narrowing steps on a concrete candidate.

    Each returned step records a necessary condition, whether the candidate
    triggers it, and the computed evidence: components of the power in
    grades the target cannot contain.
    """
    steps = []
    power = candidate.total() ** n
    support = candidate.support
    power_support = power.zz_support()
    target_support = target(n).zz_support()

    j_vals = [j for j, _ in support]
    k_vals = [k for _, k in support]
    outside = sorted(power_support - target_support)

    def step(name, fired, detail):
        steps.append({"step": name, "fired": fired, "detail": detail})

    jmax = max(j_vals, default=0)
    step(
        "left-degree upper bound (j <= 1)",
        jmax > 1,
        f"max left grade {jmax}; power grades outside target: {outside}" if jmax > 1
        else "within bound",
    )
    jmin = min(j_vals, default=0)
    step(
        "left-degree lower bound (j >= 0)",
        jmin < 0,
        f"min left grade {jmin}; power grades outside target: {outside}" if jmin < 0
        else "within bound",
    )
    kmax, kmin = max(k_vals, default=0), min(k_vals, default=0)
    step(
        "right-degree bounds (0 <= k <= 1)",
        kmax > 1 or kmin < 0,
        f"right grades span [{kmin},{kmax}]; power grades outside target: {outside}"
        if (kmax > 1 or kmin < 0) else "within bound",
    )

    zero_zero = power.zz_grade().get((0, 0))
    step(
        "constant component must vanish",
        (0, 0) in support and zero_zero is not None,
        "nonzero (0,0) component in the power" if (0, 0) in support and zero_zero is not None
        else "no (0,0) component",
    )
    nn = power.zz_grade().get((n, n))
    step(
        "top corner component must vanish",
        (1, 1) in support and nn is not None,
        f"nonzero ({n},{n}) component in the power" if (1, 1) in support and nn is not None
        else f"no ({n},{n}) component",
    )
    step(
        "surviving support",
        False,
        f"candidate support {sorted(support)}; admissible is a subset of [(0,1), (1,0)]",
    )
    return steps


def default_units(n: int) -> list[tuple[str, Scalar]]:
    return [
        ("1", Scalar.one(n)),
        ("-1", Scalar.rational(n, -1)),
        ("z", Scalar.zeta(n)),
        ("t", Scalar.t(n)),
        ("z t", Scalar.zeta(n) * Scalar.t(n)),
    ]


def scalar_sweep(n: int, units=None) -> list[tuple[str, str, ObstructionReport]]:
    """power_compare over the candidate family lam al* (x) gt + mu gt (x) al."""
    if units is None:
        units = default_units(n)
    out = []
    for lname, lam in units:
        for mname, mu in units:
            report = power_compare(GradedCandidate.canonical(n, lam, mu), n)
            out.append((lname, mname, report))
    return out


def counterexample_report(n: int) -> ObstructionReport:
    """The full replay for the canonical candidate at parameter n."""
    candidate = GradedCandidate.canonical(n)
    report = power_compare(candidate, n)
    report.steps = support_constraints(candidate, n)
    return report
