"""Report generation: one CSV summary plus matplotlib figures on disk.

The report runs the numeric relation checks across a sweep of Fock
truncations, the spectrum check, the symbolic-vs-numeric oracle with its
mutated-rule negative control, and the obstruction replay, then writes

    report.csv        one row per check (section, check, value, threshold, pass)
    spectrum.png      eigenvalues of bt bt* against the geometric law
    residuals.png     relation residuals vs truncation size, log scale
    obstruction.png   |cross-term coefficient| over the deformation range

into the output directory.
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from . import matrep, obstruction
from .scalars import Scalar


def generate_report(outdir: str, q: float = 0.5, n: int = 2, fock: int = 64,
                    cyc: int = 8, tol: float = 1e-10, seed: int = 0,
                    pairs: int = 50, fock_sweep=(16, 32, 64)) -> dict:
    os.makedirs(outdir, exist_ok=True)
    rows = []

    rep = matrep.build(q, n, fock, cyc, tol)
    relations = matrep.check_relations(rep)
    for r in relations:
        rows.append(("relations", r["relation"], r["max_residual"], tol, r["pass"]))

    root = matrep.root_power_residual(rep)
    rows.append(("root", "gt^n equals bt", root, 1e-13, root <= 1e-13))

    spectrum = matrep.spectrum_check(rep)
    rows.append(("spectrum", "bt bt* diagonal matches geometric law", 0.0 if spectrum["exact"] else 1.0,
                 0.0, spectrum["exact"]))

    cross = matrep.symbolic_numeric_crosscheck(rep, count=pairs, seed=seed)
    rows.append(("oracle", "normalised vs raw products", cross, 1e-9, cross <= 1e-9))
    control = matrep.symbolic_numeric_crosscheck(rep, count=pairs, seed=seed, r2_sign=+1)
    rows.append(("oracle", "mutated-rule negative control", control, 0.1, control >= 0.1))

    scaling = matrep.residual_scaling(q, n, Ns=fock_sweep, L=cyc, tol=tol)
    for N, worst in scaling:
        rows.append(("scaling", f"worst relation residual at fock={N}", worst, tol, worst <= tol))

    obs = obstruction.counterexample_report(n)
    rows.append(("obstruction", f"verdict at n={n}", obs.verdict, "obstructed",
                 obs.verdict == "obstructed"))
    coeff_val = abs(_cross_coefficient(obs).eval(q)) if obs.witness_coefficient else 0.0
    rows.append(("obstruction", "cross coefficient magnitude at q", coeff_val, ">0",
                 coeff_val > 0))

    csv_path = os.path.join(outdir, "report.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["section", "check", "value", "threshold", "pass"])
        for row in rows:
            writer.writerow(row)

    figures = [
        _spectrum_figure(outdir, rep),
        _residuals_figure(outdir, q, n, cyc, tol, fock_sweep),
        _obstruction_figure(outdir, n),
    ]
    return {
        "csv": csv_path,
        "figures": figures,
        "passed": all(r[4] for r in rows),
        "rows": len(rows),
    }


def _cross_coefficient(report) -> Scalar:
    (coeff,) = report.cross.terms.values()
    return coeff


def _spectrum_figure(outdir: str, rep) -> str:
    bb = rep.beta @ rep.beta.conj().T
    eigs = np.sort(np.unique(np.real(np.diag(bb))))[::-1]
    k = np.arange(len(eigs))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(k, eigs, "o", ms=4, label="computed")
    ax.semilogy(k, rep.q ** (2 * k), "-", lw=1, label=r"$q^{2k}$")
    ax.set_xlabel("level k")
    ax.set_ylabel("eigenvalue of bt bt*")
    ax.set_title(f"geometric spectrum, q={rep.q}, fock={rep.N}")
    ax.legend()
    fig.tight_layout()
    path = os.path.join(outdir, "spectrum.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _residuals_figure(outdir: str, q: float, n: int, cyc: int, tol: float,
                      fock_sweep) -> str:
    fig, ax = plt.subplots(figsize=(6, 4))
    names = None
    data = []
    for N in fock_sweep:
        rep = matrep.build(q, n, N, cyc, tol)
        rel = matrep.check_relations(rep)
        if names is None:
            names = [r["relation"] for r in rel]
        data.append([max(r["max_residual"], 1e-18) for r in rel])
    arr = np.array(data)
    for i, name in enumerate(names):
        ax.semilogy(list(fock_sweep), arr[:, i], "o-", ms=3, lw=1, label=name)
    ax.axhline(tol, color="k", ls="--", lw=1, label="tolerance")
    ax.set_xlabel("fock truncation")
    ax.set_ylabel("margin residual")
    ax.set_title(f"relation residuals, q={q}, n={n}")
    ax.legend(fontsize=6, ncol=2)
    fig.tight_layout()
    path = os.path.join(outdir, "residuals.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _obstruction_figure(outdir: str, n: int) -> str:
    report = obstruction.counterexample_report(n)
    coeff = _cross_coefficient(report)
    qs = np.linspace(0.05, 0.95, 181)
    vals = [abs(coeff.eval(float(qq))) for qq in qs]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(qs, vals, lw=1.5)
    ax.set_xlabel("q")
    ax.set_ylabel("|cross-term coefficient|")
    ax.set_title(f"obstruction witness never vanishes (n={n})")
    ax.set_ylim(bottom=0)
    fig.tight_layout()
    path = os.path.join(outdir, "obstruction.png")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
