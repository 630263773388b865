"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` or ``python -m tests.test_acceptance``.
Each test prints its verdict line before asserting, so a red criterion still
reports the measured numbers.
"""
import math
import sys
import time

import numpy as np
import pytest

from randtoeplitz import experiments as ex
from randtoeplitz.circulant import CirculantOperator, circulant_solve, is_positive_definite_circulant, strang_preconditioner
from randtoeplitz.cli import main as cli_main
from randtoeplitz.spectral import (
    check_interlacing,
    check_weyl,
    equidistribution_discrepancy,
    preconditioned_spectrum,
    symbol_log_mean,
    szego_geometric_mean,
    TestFunction,
)
from randtoeplitz.symbol import CoefficientSequence, SymbolModel, realize_coefficients
from randtoeplitz.toeplitz import build_toeplitz, matvec

SEED = ex.DEFAULT_SEED
CLUSTER_LADDER = (33, 65, 129, 257)


@pytest.fixture
def verdict(capsys):
    def report(number, title, ok, detail):
        line = f"criterion {number} {title}: {'PASS' if ok else 'FAIL'} ({detail})"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return report


def model(N, trial, zero_phases=False):
    return realize_coefficients(SymbolModel(N - 1, seed=SEED, zero_phases=zero_phases), trial)


def dense_toeplitz(c, N):
    j, k = np.indices((N, N))
    d = j - k
    vals = np.asarray(c[: N], dtype=complex)
    return np.where(d >= 0, vals[np.abs(d)], np.conj(vals[np.abs(d)]))


def test_criterion_1_fig1(verdict):
    start = time.perf_counter()
    res = ex.run_fig1(ex.ExperimentConfig("fig1", n=65, trials=100, tol=1e-10, rhs="ones").validate())
    elapsed = time.perf_counter() - start
    s = res.summary
    ok = 10 <= s["mean_iter_pcg"] <= 35 and s["mean_iter_cg"] > s["mean_iter_pcg"] and elapsed < 60
    verdict(1, "fig1", ok, f"mean CG {s['mean_iter_cg']:.2f}, mean PCG {s['mean_iter_pcg']:.2f}, "
                           f"{100 - s['failed']} valid of 100 trials, {elapsed:.1f}s")


def test_criterion_2_fig2(verdict):
    start = time.perf_counter()
    res = ex.run_fig2(ex.ExperimentConfig("fig2", m_values=[10, 30, 60, 120], trials=10).validate())
    elapsed = time.perf_counter() - start
    pcg = [r[2] for r in res.rows]
    cg = [r[1] for r in res.rows]
    finite = all(math.isfinite(v) for v in pcg + cg)
    ok = finite and max(pcg) < 2 * min(pcg) and cg[-1] > cg[0] and elapsed < 300
    table = ", ".join(f"n={n}: CG {a:.2f} PCG {b:.2f}" for n, a, b in res.rows)
    verdict(2, "fig2", ok, f"{table}; failed per n {res.summary['failed_per_n']}; {elapsed:.1f}s")


def clustering_trial():
    """First trial whose Strang preconditioner is PD at every ladder size."""
    for t in range(1, 5000):
        c = model(max(CLUSTER_LADDER), t)
        if all(is_positive_definite_circulant(strang_preconditioner(c.truncated(N - 1), N)) for N in CLUSTER_LADDER):
            return t
    raise AssertionError("no admissible trial")


def test_criterion_3_clustering(verdict):
    start = time.perf_counter()
    t = clustering_trial()
    counts = {}
    for N in CLUSTER_LADDER:
        c = model(N, t)
        counts[N] = preconditioned_spectrum(build_toeplitz(c, N), strang_preconditioner(c, N), 0.05).cluster_outliers
    elapsed = time.perf_counter() - start
    ok = counts[257] <= counts[33] + 10 and elapsed < 120
    verdict(3, "clustering", ok, f"trial {t}, outliers {counts}, {elapsed:.1f}s")


def test_criterion_4_szego(verdict):
    details, ok = [], True
    gaps = []
    for N in (16, 64, 256):
        c = CoefficientSequence(np.r_[2.0, 1.0, np.zeros(N - 2)])
        gm = szego_geometric_mean(build_toeplitz(c, N))
        oracle = (N + 1) ** (1 / N)
        ok &= abs(gm - oracle) < 1e-8
        gaps.append(abs(oracle - 1))
        details.append(f"N={N} |gm-oracle|={abs(gm - oracle):.1e}")
    ok &= gaps[0] > gaps[1] > gaps[2]
    c = model(129, 1, zero_phases=True)
    gm = szego_geometric_mean(build_toeplitz(c, 129))
    lm = symbol_log_mean(c)
    rel = abs(gm - lm) / lm
    ok &= rel < 0.05
    details.append(f"zero-phase N=129 gm {gm:.5f} vs {lm:.5f} (rel {rel:.4f})")
    verdict(4, "szego", ok, "; ".join(details))


def test_criterion_5_equidistribution(verdict):
    tests = [TestFunction.monomial(k) for k in range(5)] + [TestFunction.log1p(0.05)]
    worst = 0.0
    for N in (1, 2, 17, 64):
        for value in (5.0, 0.25):
            c = CoefficientSequence(np.r_[value, np.zeros(N - 1)])
            T = build_toeplitz(c, N)
            worst = max(worst, max(equidistribution_discrepancy(T, c, F) for F in tests))
    d = {}
    for N in (33, 257):
        c = model(N, 1, zero_phases=True)
        d[N] = equidistribution_discrepancy(build_toeplitz(c, N), c, TestFunction.monomial(2))
    ok = worst == 0.0 and d[257] < d[33]
    verdict(5, "equidistribution", ok, f"constant max {worst}, t^2 at 33 {d[33]:.4g}, at 257 {d[257]:.4g}")


def test_criterion_6_oracles(verdict):
    rng = np.random.default_rng(SEED)
    mv = 0.0
    for _ in range(20):
        N = int(rng.integers(1, 129))
        vals = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        vals[0] = vals[0].real
        c = CoefficientSequence(vals)
        x = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        ref = dense_toeplitz(vals, N) @ x
        mv = max(mv, np.linalg.norm(matvec(build_toeplitz(c, N), x) - ref) / np.linalg.norm(ref))
    res = 0.0
    for _ in range(50):
        N = int(rng.integers(1, 129))
        lam = rng.uniform(0.5, 5.0, N)  # positive spectrum, then back to a first column
        col = np.fft.ifft(lam)
        S = CirculantOperator(col)
        b = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        x = circulant_solve(S, b)
        res = max(res, np.linalg.norm(S.matvec(x) - b) / np.linalg.norm(b))
    t = next(t for t in range(1, 5000) if is_positive_definite_circulant(strang_preconditioner(model(65, t), 65)))
    c = model(65, t)
    S = strang_preconditioner(c, 65)
    eigs = preconditioned_spectrum(build_toeplitz(c, 65), S).eigenvalues
    oracle = np.linalg.eigvals(np.linalg.solve(S.dense(), dense_toeplitz(c.values, 65)))
    spec = float(np.max(np.abs(eigs - np.sort(oracle.real))))
    ok = mv < 1e-12 and res < 1e-12 and spec < 1e-8 and np.max(np.abs(oracle.imag)) < 1e-8
    verdict(6, "oracles", ok, f"matvec {mv:.1e}, circulant solve {res:.1e}, spectrum {spec:.1e} (trial {t})")


def test_criterion_7_matrix_analysis(verdict):
    rng = np.random.default_rng(SEED + 7)

    def herm(n):
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        return (A + A.conj().T) / 2

    weyl = [check_weyl(herm(n), herm(n)) for n in rng.integers(2, 9, 100)]
    inter = [check_interlacing(herm(n), int(rng.integers(0, n))) for n in rng.integers(2, 9, 100)]
    boundary = [
        check_weyl(np.eye(3), np.eye(3)),             # equality on both sides
        check_weyl(np.diag([1.0, 2.0]), np.zeros((2, 2))),
        check_interlacing(np.eye(4), 2),              # all eigenvalues equal
        check_interlacing(np.diag([1.0, 2.0, 3.0]), 0),
    ]
    ok = all(weyl) and all(inter) and all(boundary)
    verdict(7, "weyl/interlacing", ok, f"weyl {sum(weyl)}/100, interlacing {sum(inter)}/100, "
                                       f"boundary {sum(boundary)}/{len(boundary)}")


CLI_RUNS = [
    ["fig1", "--n", "33", "--trials", "20"],
    ["fig2", "--m-values", "5,10", "--trials", "5"],
    ["spectrum", "--n", "33", "--trials", "4"],
    ["equidist", "--n-values", "17,33", "--symbol", "zero-phase"],
    ["solve", "--n", "33", "--symbol", "cosine"],
    ["fig1", "--n", "33", "--trials", "8", "--rhs", "seeded-random", "--even-rule", "zero"],
]


def test_criterion_8_determinism(verdict, tmp_path):
    same = []
    for i, argv in enumerate(CLI_RUNS):
        outs = []
        for rep in range(2):
            path = tmp_path / f"{i}_{rep}.csv"
            rc = cli_main(argv + ["--out", str(path), "-q"])
            outs.append((rc, path.read_bytes()))
        same.append(outs[0] == outs[1] and outs[0][0] == 0)
    verdict(8, "determinism", all(same), f"{sum(same)}/{len(same)} commands byte-identical")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
