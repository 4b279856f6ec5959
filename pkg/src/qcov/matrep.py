"""Independent numerical oracle: truncated operator model of the generators.

The base generators act on a truncated Fock space tensored with a finite
cyclic space: Q is diagonal with entries q^k, S is the down-shift, and the
bilateral shift is modelled by the cyclic permutation Omega.  Setting

    al        = S sqrt(1 - Q^2) (x) 1
    bt        = Q          (x) Omega^n
    gt        = Q^(1/n)    (x) Omega          (the covering root, gt^n = bt)
    bt-prime  = Q          (x) Omega          (the rescaled root combination)

makes every checked identity hold wherever truncation cannot interfere:
gamma letters never move the Fock index, alpha letters move it by one, so a
relation word of length d is reliable on basis vectors with Fock index at
most N-1-d (the margin rule; the bottom edge is exact since
sqrt(1 - Q^2) annihilates the vacuum).

Every symbolic rule of the rewriting engine is cross-validated here by
comparing the evaluation of a normalised product against the product of
evaluations on the margin subspace.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .nfalgebra import Element, Word
from .qtensor import TensorElement
from .scalars import Scalar


@dataclass
class MatrixRep:
    q: float
    n: int
    N: int
    L: int
    tol: float
    Q: np.ndarray
    Qt: np.ndarray
    S: np.ndarray
    Omega: np.ndarray
    alpha_F: np.ndarray          # Fock factor of al; cyclic factor is 1
    _word_cache: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.N * self.L

    # Kronecker factors (Fock, cyclic) for the generator letters of a leg
    # with algebra parameter leg_n (1 for the base leg, n for the covering).
    def letter_factors(self, leg_n: int) -> dict:
        if leg_n == self.n:
            gamma = (self.Qt, self.Omega)
        elif leg_n == 1:
            gamma = (self.Q, np.linalg.matrix_power(self.Omega, self.n))
        else:
            raise DomainError(f"leg parameter {leg_n} not represented (use 1 or {self.n})")
        eyeL = np.eye(self.L, dtype=complex)
        al = (self.alpha_F, eyeL)
        return {
            "al": al,
            "als": (al[0].conj().T, eyeL),
            "gt": gamma,
            "gts": (gamma[0].conj().T, gamma[1].conj().T),
        }

    @property
    def alpha(self) -> np.ndarray:
        return np.kron(self.alpha_F, np.eye(self.L, dtype=complex))

    @property
    def beta(self) -> np.ndarray:
        return np.kron(self.Q, np.linalg.matrix_power(self.Omega, self.n))

    @property
    def beta_tilde(self) -> np.ndarray:
        return np.kron(self.Qt, self.Omega)

    @property
    def beta_prime(self) -> np.ndarray:
        """Q (x) Omega: satisfies the base relations together with al."""
        return np.kron(self.Q, self.Omega)

    def margin_columns(self, d: int) -> np.ndarray:
        """Indices of basis vectors e_k (x) e_l with Fock index k <= N-1-d."""
        top = self.N - d
        if top <= 0:
            raise DomainError(f"no margin left for word length {d} at N={self.N}")
        return np.arange(top * self.L)

    def margin_residual(self, M: np.ndarray, d: int) -> float:
        cols = self.margin_columns(d)
        if not len(cols):
            return float("inf")
        return float(np.linalg.norm(M[:, cols], axis=0).max())


def build(q: float, n: int = 2, N: int = 64, L: int = 8, tol: float = 1e-10) -> MatrixRep:
    if not (0.0 < q < 1.0):
        raise DomainError(f"deformation parameter must lie in (0,1), got {q}")
    if N < 8:
        raise DomainError("Fock truncation must be at least 8")
    if L < 2:
        raise DomainError("cyclic dimension must be at least 2")
    if n < 1:
        raise DomainError("covering parameter must be positive")
    k = np.arange(N)
    Q = np.diag(q ** k).astype(complex)
    Qt = np.diag(q ** (k / n)).astype(complex)
    S = np.zeros((N, N), dtype=complex)
    for i in range(1, N):
        S[i - 1, i] = 1.0
    Omega = np.zeros((L, L), dtype=complex)
    for l in range(L):
        Omega[(l + 1) % L, l] = 1.0
    alpha_F = S @ np.sqrt(np.eye(N, dtype=complex) - Q @ Q)
    return MatrixRep(q=q, n=n, N=N, L=L, tol=tol, Q=Q, Qt=Qt, S=S, Omega=Omega,
                     alpha_F=alpha_F)


# -- relation residuals --------------------------------------------------------

def _relation_matrices(rep: MatrixRep, b: np.ndarray) -> list[tuple[str, np.ndarray, int]]:
    a = rep.alpha
    aH, bH = a.conj().T, b.conj().T
    eye = np.eye(rep.dim, dtype=complex)
    q2 = rep.q ** 2
    return [
        ("unitarity-left", aH @ a + bH @ b - eye, 2),
        ("unitarity-right", a @ aH + q2 * (b @ bH) - eye, 2),
        ("al-bt-commutation", a @ b - rep.q * (b @ a), 2),
        ("al-bts-commutation", a @ bH - rep.q * (bH @ a), 2),
        ("bt-normality", bH @ b - b @ bH, 2),
    ]


def check_relations(rep: MatrixRep) -> list[dict]:
    """Margin residuals of the defining relations, for the base generator
    pair (al, bt) and for the rescaled pair (al, bt-prime)."""
    out = []
    for tag, b in (("base", rep.beta), ("prime", rep.beta_prime)):
        for name, M, d in _relation_matrices(rep, b):
            r = rep.margin_residual(M, d)
            out.append({
                "relation": f"{tag}:{name}",
                "max_residual": r,
                "margin": int(rep.N - 1 - d),
                "pass": bool(r <= rep.tol),
            })
    return out


def root_power_residual(rep: MatrixRep) -> float:
    """Max entry of gt^n - bt; exact diagonal-permutation algebra."""
    diff = np.linalg.matrix_power(rep.beta_tilde, rep.n) - rep.beta
    return float(np.abs(diff).max())


# -- spectral structure --------------------------------------------------------

def _hat(x: float, k: int, q: float) -> float:
    lo, mid = q ** (2 * k + 1), q ** (2 * k)
    hi = q ** (2 * k - 1)
    if x <= lo or x >= hi:
        return 0.0
    if x <= mid:
        return (x - lo) / (mid - lo)
    return (hi - x) / (hi - mid)


def spectral_projection(rep: MatrixRep, k: int) -> np.ndarray:
    """Continuous functional calculus of the hat function on bt bt*.

    bt bt* is diagonal, so this is an exact eigenvalue-by-eigenvalue map;
    the result equals the rank-one Fock projector tensored with identity.
    """
    bb = rep.beta @ rep.beta.conj().T
    diag = np.real(np.diag(bb))
    return np.diag(np.array([_hat(x, k, rep.q) for x in diag], dtype=complex))


def spectrum_check(rep: MatrixRep) -> dict:
    """Diagonal of bt bt* against the geometric eigenvalue list."""
    bb = rep.beta @ rep.beta.conj().T
    diag = np.diag(bb)
    qk = rep.q ** np.arange(rep.N)
    expected = np.repeat(qk * qk, rep.L).astype(complex)
    off = bb - np.diag(np.diag(bb))
    exact = bool(np.array_equal(diag, expected)) and float(np.abs(off).max()) == 0.0
    vals = np.real(np.unique(diag))[::-1]
    return {
        "check": "eigenvalues of bt bt*",
        "exact": exact,
        "eigenvalues": sorted(set(np.real(diag)), reverse=True),
        "smallest": float(vals.min()),
        "tail_monotone": bool(np.all(np.diff(qk * qk) < 0)),
        "status": "pass" if exact else "fail",
    }


# -- evaluation of symbolic elements --------------------------------------------

def _eval_word_factors(rep: MatrixRep, w: Word, leg_n: int) -> tuple[np.ndarray, np.ndarray]:
    key = (w, leg_n)
    cached = rep._word_cache.get(key)
    if cached is not None:
        return cached
    letters = rep.letter_factors(leg_n)
    F = np.eye(rep.N, dtype=complex)
    C = np.eye(rep.L, dtype=complex)
    seq = []
    if w.apow >= 0:
        seq += ["al"] * w.apow
    else:
        seq += ["als"] * (-w.apow)
    seq += ["gt"] * w.g + ["gts"] * w.gs
    for name in seq:
        f, c = letters[name]
        F = F @ f
        C = C @ c
    rep._word_cache[key] = (F, C)
    return F, C


def eval_word(rep: MatrixRep, w: Word, leg_n: int) -> np.ndarray:
    F, C = _eval_word_factors(rep, w, leg_n)
    return np.kron(F, C)


def eval_element(rep: MatrixRep, x) -> np.ndarray:
    """Dense matrix of an Element or TensorElement (legs via Kronecker)."""
    if isinstance(x, Element):
        out = np.zeros((rep.dim, rep.dim), dtype=complex)
        for w, c in x.terms.items():
            out += c.eval(rep.q) * eval_word(rep, w, x.n)
        return out
    if isinstance(x, TensorElement):
        d2 = rep.dim * rep.dim
        out = np.zeros((d2, d2), dtype=complex)
        for (l, r), c in x.terms.items():
            out += c.eval(rep.q) * np.kron(
                eval_word(rep, l, x.nleft), eval_word(rep, r, x.nright)
            )
        return out
    raise DomainError(f"cannot evaluate {type(x).__name__}")


def element_margin_length(x: Element) -> int:
    return max((w.length for w in x.terms), default=0)


def eval_element_residual(rep: MatrixRep, x: Element) -> float:
    """Margin residual of eval(x) against zero; for engine-identity checks."""
    return rep.margin_residual(eval_element(rep, x), element_margin_length(x))


# -- the symbolic-vs-numeric oracle ---------------------------------------------

def _random_scalar(rng: random.Random, order: int) -> Scalar:
    c = Scalar.rational(order, rng.choice([1, -1, 2, -2]))
    c = c * Scalar.t(order, rng.randint(-1, 1))
    if order > 1 and rng.random() < 0.5:
        c = c * Scalar.zeta(order, rng.randrange(order))
    return c


def random_element(rng: random.Random, n: int, bound: int = 3, nwords: int = 3) -> Element:
    terms: dict = {}
    for _ in range(rng.randint(1, nwords)):
        w = Word(rng.randint(-bound, bound), rng.randint(0, bound), rng.randint(0, bound))
        c = _random_scalar(rng, n)
        terms[w] = terms.get(w, Scalar.zero(n)) + c
    return Element(n, terms)


def symbolic_numeric_crosscheck(
    rep: MatrixRep,
    count: int = 100,
    bound: int = 3,
    seed: int = 0,
    r2_sign: int = -1,
) -> float:
    """Max margin residual of eval(x y) against eval(x) eval(y).

    The normalised product is evaluated as a matrix; the unnormalised side
    is assembled from per-word Kronecker factors, so the comparison pits the
    rewriting rules against raw operator products.  ``r2_sign=+1`` runs the
    deliberately mutated commutation rule as a negative control.
    """
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(count):
        x = random_element(rng, rep.n, bound)
        y = random_element(rng, rep.n, bound)
        prod = x.mul(y, r2_sign=r2_sign)
        lhs = eval_element(rep, prod)
        rhs = np.zeros_like(lhs)
        for wx, cx in x.terms.items():
            Fx, Cx = _eval_word_factors(rep, wx, rep.n)
            for wy, cy in y.terms.items():
                Fy, Cy = _eval_word_factors(rep, wy, rep.n)
                rhs += (cx * cy).eval(rep.q) * np.kron(Fx @ Fy, Cx @ Cy)
        d = element_margin_length(x) + element_margin_length(y)
        worst = max(worst, rep.margin_residual(lhs - rhs, d))
    return worst


def residual_scaling(q: float, n: int, Ns=(16, 32, 64), L: int = 8,
                     tol: float = 1e-10) -> list[tuple[int, float]]:
    """Worst relation residual per Fock truncation size."""
    out = []
    for N in Ns:
        rep = build(q, n, N, L, tol)
        worst = max(r["max_residual"] for r in check_relations(rep))
        out.append((N, worst))
    return out


def positivity_check(rep: MatrixRep, count: int = 50, seed: int = 0,
                     vectors_per_element: int = 4) -> float:
    """Smallest quadratic-form value of evaluated self inner products.

    For random x the matrix of the deck-averaged product sum_g g(x* x) is
    tested against margin-supported vectors; the result should only dip
    below zero by roundoff.
    """
    from .covering import inner_product

    rng = random.Random(seed)
    worst = 0.0
    for _ in range(count):
        x = random_element(rng, rep.n, bound=2, nwords=2)
        ip = inner_product(x, x)
        M = eval_element(rep, ip)
        d = element_margin_length(ip)
        cols = rep.margin_columns(d)
        diag = np.real(np.diag(M)[cols])
        worst = min(worst, float(diag.min()))
        for _ in range(vectors_per_element):
            v = np.zeros(rep.dim, dtype=complex)
            v[cols] = rng_normal(rng, len(cols))
            v /= np.linalg.norm(v)
            worst = min(worst, float(np.real(np.vdot(v, M @ v))))
    return worst


def rng_normal(rng: random.Random, size: int) -> np.ndarray:
    return np.array([complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(size)])


def deck_consistency(rep: MatrixRep, count: int = 20, seed: int = 0) -> float:
    """eval of the deck-acted element vs the phase-weighted graded evals."""
    from .covering import DeckElement, deck_act

    rng = random.Random(seed)
    phase = np.exp(2j * np.pi / rep.n)
    worst = 0.0
    for _ in range(count):
        x = random_element(rng, rep.n, bound=2, nwords=2)
        lhs = eval_element(rep, deck_act(DeckElement(rep.n, 1), x))
        rhs = np.zeros_like(lhs)
        for d, comp in x.grade().items():
            rhs += phase ** d * eval_element(rep, comp)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def numcheck_report(q: float, n: int, N: int, L: int, tol: float,
                    pairs: int = 20, seed: int = 0, bound: int = 3) -> dict:
    """Everything the numeric command line reports, in one pass."""
    rep = build(q, n, N, L, tol)
    relations = check_relations(rep)
    root = root_power_residual(rep)
    spectrum = spectrum_check(rep)
    cross = symbolic_numeric_crosscheck(rep, count=pairs, bound=bound, seed=seed)
    ok = (
        all(r["pass"] for r in relations)
        and root <= 1e-13
        and spectrum["status"] == "pass"
        and cross <= max(tol * 10, 1e-9)
    )
    return {
        "q": q, "n": n, "fock": N, "cyc": L, "tol": tol,
        "relations": relations,
        "root_power_residual": root,
        "spectrum": {k: v for k, v in spectrum.items() if k != "eigenvalues"},
        "crosscheck": {"pairs": pairs, "seed": seed, "max_residual": cross},
        "status": "pass" if ok else "fail",
    }
