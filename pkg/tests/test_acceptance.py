"""Acceptance suite: one test per release criterion, at pinned tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL line
per criterion.  Every tolerance is fixed here; nothing is calibrated at
run time.
"""

import json
import random
import subprocess
import sys

from qcov import commcontrol, matrep, obstruction
from qcov.covering import (
    DeckElement,
    assemble,
    coaction_check,
    deck_act,
    decompose,
    delta_L,
    delta_R,
    embed_tensor_leg,
    equivariance_check,
    inner_product,
    is_invariant,
    linearity_report,
    module_vector,
    twist,
)
from qcov.expr import parse_element, render_element
from qcov.nfalgebra import Element, Word, basis_words, embed_base, promote
from qcov.qtensor import coassoc_check, delta, delta_respects_relations, tensor_of
from qcov.scalars import Scalar

from conftest import random_base_element, random_element
from test_obstruction import shuffle_cross_term

SEED = 77


def report_line(name: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_engine_associativity():
    rng = random.Random(SEED)
    failures = 0
    for _ in range(500):
        n = rng.choice([1, 2, 3])
        x = random_element(rng, n, nwords=2, bound=3)
        y = random_element(rng, n, nwords=2, bound=3)
        z = random_element(rng, n, nwords=2, bound=3)
        if (x * y) * z != x * (y * z):
            failures += 1
    report_line("assoc-500", failures == 0,
                f"500 random triples over n in (1,2,3), {failures} failures")


def test_symbolic_numeric_oracle():
    worst = 0.0
    for n in (2, 3):
        rep = matrep.build(0.5, n=n, N=64, L=8)
        worst = max(worst, matrep.symbolic_numeric_crosscheck(
            rep, count=100, bound=3, seed=SEED))
    rep2 = matrep.build(0.5, n=2, N=64, L=8)
    control = matrep.symbolic_numeric_crosscheck(rep2, count=100, bound=3,
                                                 seed=SEED, r2_sign=+1)
    ok = worst <= 1e-9 and control >= 0.1
    report_line("numeric-oracle", ok,
                f"max residual {worst:.2e} (tol 1e-9); mutated-rule control {control:.2e} (>= 0.1)")


def test_relation_residuals():
    worst = 0.0
    names = 0
    for n in (2, 3):
        rep = matrep.build(0.5, n=n, N=64, L=8)
        for r in matrep.check_relations(rep):
            worst = max(worst, r["max_residual"])
            names += 1
    ok = worst <= 1e-10 and names == 20
    report_line("relations-margin", ok,
                f"{names} relation checks at fock=64, worst residual {worst:.2e} (tol 1e-10)")


def test_root_power_and_spectrum():
    rep = matrep.build(0.5, n=2, N=64, L=8)
    root = matrep.root_power_residual(rep)
    spectrum = matrep.spectrum_check(rep)
    ok = root <= 1e-13 and spectrum["exact"]
    report_line("root-power-spectrum", ok,
                f"gt^n vs bt residual {root:.2e} (tol 1e-13); diagonal spectrum exact: {spectrum['exact']}")


def test_comultiplication_structure():
    residuals = [r for _, r in delta_respects_relations() if not r.is_zero]
    coassoc_failures = [w for w in basis_words(4)
                        if coassoc_check(Element.from_word(1, w))["status"] != "pass"]
    rng = random.Random(SEED)
    hom_failures = 0
    for _ in range(200):
        a = random_base_element(rng)
        b = random_base_element(rng)
        if delta(a * b) != delta(a) * delta(b) or delta(a.star()) != delta(a).star():
            hom_failures += 1
    ok = not residuals and not coassoc_failures and hom_failures == 0
    report_line("comult-welldef", ok,
                "five relations annihilated; coassociativity exact on all 55 words of "
                f"length <= 4; multiplicative/star-preserving on 200 pairs ({hom_failures} failures)")


def test_module_split_and_twist():
    round_trip_failures = []
    words = 0
    for n in (2, 3):
        for w in basis_words(6):
            if w.gs % n:
                continue
            el = Element.from_word(n, w)
            if assemble(decompose(el)) != el:
                round_trip_failures.append((n, w))
            words += 1
    rng = random.Random(SEED)
    law_failures = 0
    for _ in range(200):
        n = rng.choice([2, 3])
        a = random_base_element(rng, order=n)
        b = random_base_element(rng, order=n)
        j, k = rng.randrange(n), rng.randrange(n)
        gj = Element.from_word(n, Word(0, j, 0))
        gk = Element.from_word(n, Word(0, k, 0))
        lhs = (embed_base(a, n) * gj) * (embed_base(b, n) * gk)
        carry = Element.beta(1, n) ** ((j + k) // n)
        rhs = embed_base(a * twist(b, j) * carry, n) * Element.from_word(
            n, Word(0, (j + k) % n, 0))
        if lhs != rhs:
            law_failures += 1
    ok = not round_trip_failures and law_failures == 0
    report_line("module-split", ok,
                f"split/assemble exact on {words} module words of length <= 6; "
                f"twisted product law exact on 200 random pairs ({law_failures} failures)")


def test_one_sided_comultiplications():
    restriction_failures = []
    for n in (2, 3):
        for w in basis_words(4):
            a = promote(Element.from_word(1, w), n)
            x = embed_base(a, n)
            if delta_R(x) != embed_tensor_leg(delta(a), "right", n):
                restriction_failures.append((n, w, "R"))
            if delta_L(x) != embed_tensor_leg(delta(a), "left", n):
                restriction_failures.append((n, w, "L"))
    rng = random.Random(SEED)
    check_failures = 0
    for _ in range(25):
        n = rng.choice([2, 3])
        v = module_vector(n, *[random_base_element(rng, order=n, nwords=1)
                               for _ in range(n)])
        if coaction_check(v)["status"] != "pass":
            check_failures += 1
        if equivariance_check(v)["status"] != "pass":
            check_failures += 1
        if linearity_report(v, random_base_element(rng, order=n, nwords=1),
                            random_base_element(rng, order=n, nwords=1))["status"] != "pass":
            check_failures += 1
    witness = linearity_report(
        module_vector(2, Element.zero(1), Element.one(1)),
        Element.one(1), Element.alpha(1))
    witness_nonzero = not witness["right_residual"].is_zero
    ok = not restriction_failures and check_failures == 0 and witness_nonzero
    report_line("coactions", ok,
                "restriction to the embedded base exact to length 4; coactions, one-leg "
                "equivariance and left linearity exact on 25 random vectors; right-linearity "
                f"residual nonzero on the recorded witness: {witness_nonzero}")


def test_inner_product_axioms():
    rng = random.Random(SEED)
    exact_failures = 0
    for _ in range(80):
        n = rng.choice([2, 3])
        x = random_element(rng, n)
        y = random_element(rng, n)
        ip = inner_product(x, y)
        a = embed_base(random_base_element(rng, order=n, nwords=1), n)
        if not is_invariant(ip):
            exact_failures += 1
        if ip.star() != inner_product(y, x):
            exact_failures += 1
        if inner_product(x, y * a) != inner_product(x, y) * a:
            exact_failures += 1
        if any(deck_act(DeckElement(n, m), ip) != ip for m in range(n)):
            exact_failures += 1
    rep = matrep.build(0.5, n=2, N=64, L=8)
    floor = matrep.positivity_check(rep, count=50, seed=SEED)
    ok = exact_failures == 0 and floor >= -1e-10
    report_line("inner-product", ok,
                f"invariance/symmetry/right-linearity exact on 80 pairs; numeric "
                f"positivity floor {floor:.2e} (>= -1e-10) over 50 elements")


def test_obstruction_replay():
    n2 = obstruction.cross_term(obstruction.GradedCandidate.canonical(2), 2)
    expected2 = tensor_of(
        Element.from_word(2, Word(-1, 1, 0)),
        Element.gamma(2) * Element.alpha(2),
    ).scale(Scalar.one(2) + Scalar.t(2, 2))
    exact2 = n2 == expected2

    n3 = obstruction.cross_term(obstruction.GradedCandidate.canonical(3), 3)
    oracle3 = shuffle_cross_term(3)
    coeff3 = obstruction.power_compare(
        obstruction.GradedCandidate.canonical(3), 3).witness_coefficient
    exact3 = n3 == oracle3 and coeff3 == "1 + t^2 + t^4"

    sweep_ok = all(
        report.verdict == "obstructed"
        for n in (2, 3, 4)
        for _, _, report in obstruction.scalar_sweep(n)
    )
    trivial = obstruction.power_compare(
        obstruction.GradedCandidate.canonical(1), 1).verdict == "satisfied"
    ok = exact2 and exact3 and sweep_ok and trivial
    report_line("obstruction-replay", ok,
                f"n=2 cross term exact: {exact2}; n=3 shuffle-oracle coefficient "
                f"'{coeff3}': {exact3}; all 75 swept unit pairs obstructed: {sweep_ok}; "
                f"trivial cover satisfied: {trivial}")


def test_cyclic_control_model():
    pair_ok = True
    for m, n in ((2, 2), (3, 2), (2, 3)):
        if commcontrol.fixed_algebra_report(m, n)["status"] != "pass":
            pair_ok = False
        if commcontrol.restriction_check(m, n)["status"] != "pass":
            pair_ok = False
        equi = commcontrol.lemma_equivariance_report(m, n)
        if not equi["one_leg_holds_everywhere"]:
            pair_ok = False
        if not equi["two_leg_fails_for_all_nontrivial"]:
            pair_ok = False
    witness_cases = [
        c for c in commcontrol.lemma_equivariance_report(2, 2)["cases"]
        if c["basis"] == 1 and c["h"] == 2
    ]
    witness_ok = len(witness_cases) == 1 and witness_cases[0]["one_leg"] \
        and not witness_cases[0]["two_leg"]
    ok = pair_ok and witness_ok
    report_line("cyclic-control", ok,
                "fixed algebra == embedded base, restriction exact, one-leg holds for all "
                "(m,n) in ((2,2),(3,2),(2,3)); two-leg form fails on the recorded witness "
                f"(m=2, n=2, basis 1, shift 2): {witness_ok}")


def test_cli_round_trip_and_goldens():
    rng = random.Random(SEED)
    rt_failures = 0
    for _ in range(500):
        n = rng.choice([1, 2, 3, 4])
        x = random_element(rng, n, nwords=3, bound=3)
        if parse_element(render_element(x), n) != x:
            rt_failures += 1

    def run(*argv):
        proc = subprocess.run([sys.executable, "-m", "qcov.cli", *argv],
                              capture_output=True, text=True)
        return proc.returncode, proc.stdout

    import os

    golden_dir = os.path.join(os.path.dirname(__file__), "golden")
    code_d, out_d = run("delta", "--n", "1", "--expr", "bt", "--json")
    with open(os.path.join(golden_dir, "delta_bt_n1.json")) as fh:
        delta_ok = code_d == 0 and json.loads(out_d) == json.load(fh)
    code_c, out_c = run("counterexample", "--n", "2", "--json")
    with open(os.path.join(golden_dir, "counterexample_n2.json")) as fh:
        counter_ok = code_c == 0 and json.loads(out_c) == json.load(fh)
    num_args = ("numcheck", "--q", "0.5", "--n", "2", "--fock", "16", "--cyc", "4",
                "--tol", "1e-10", "--pairs", "5", "--seed", "1", "--json")
    code_1, out_1 = run(*num_args)
    code_2, out_2 = run(*num_args)
    num_ok = code_1 == code_2 == 0 and out_1 == out_2 \
        and json.loads(out_1)["status"] == "pass"
    ok = rt_failures == 0 and delta_ok and counter_ok and num_ok
    report_line("cli-roundtrip", ok,
                f"500 parse/print round trips ({rt_failures} failures); golden outputs "
                f"stable: delta {delta_ok}, counterexample {counter_ok}, "
                f"numeric check reproducible with fixed seed {num_ok}")
