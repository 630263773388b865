"""Experiment sweeps behind the command-line interface.

Every trial derives its coefficients purely from ``(seed, trial)``, so sweeps
can run trials in worker processes and still emit identical CSV.
"""
from __future__ import annotations

import csv
import io
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .circulant import is_positive_definite_circulant, strang_preconditioner
from .errors import InvalidInputError, NotPositiveDefiniteError
from .solver import make_rhs, pcg_solve
from .spectral import (
    TestFunction,
    clustering_count,
    equidistribution_discrepancy,
    log_test_point,
    preconditioned_spectrum,
    spectral_bound,
    toeplitz_eigenvalues,
)
from .symbol import CoefficientSequence, SymbolModel, circulant_coefficients, realize_coefficients
from .toeplitz import ToeplitzSystem, build_toeplitz, is_positive_definite

log = logging.getLogger(__name__)

DEFAULT_SEED = 20240101
SYMBOLS = ("random-phase", "zero-phase", "circulant", "constant", "cosine")
EIG_CHECK_MAX_N = 257
FAILED = -1


@dataclass
class ExperimentConfig:
    command: str
    n: int = 65
    m_values: list = field(default_factory=lambda: list(range(10, 121)))
    n_values: list = field(default_factory=lambda: [33, 65, 129, 257])
    trials: int = 100
    trial: int = 1
    seed: int = DEFAULT_SEED
    tol: float = 1e-10
    even_rule: str = "average"
    rhs: str = "ones"
    symbol: str = "random-phase"
    epsilon: float = 0.05
    precond: str = "strang"
    pd_check: str = "auto"
    jobs: int = 1

    def validate(self):
        if self.trials < 1:
            raise InvalidInputError("trials must be >= 1")
        if not self.tol > 0:
            raise InvalidInputError("tol must be positive")
        if self.n < 2:
            raise InvalidInputError("n must be >= 2")
        if any(m < 1 for m in self.m_values) or not self.m_values:
            raise InvalidInputError("m values must be >= 1")
        if any(v < 2 for v in self.n_values) or not self.n_values:
            raise InvalidInputError("n values must be >= 2")
        if self.symbol not in SYMBOLS:
            raise InvalidInputError(f"unknown symbol {self.symbol!r}")
        if self.even_rule not in ("average", "zero"):
            raise InvalidInputError(f"unknown even rule {self.even_rule!r}")
        if self.rhs not in ("ones", "seeded-random"):
            raise InvalidInputError(f"unknown rhs kind {self.rhs!r}")
        if self.pd_check not in ("auto", "eig", "guard"):
            raise InvalidInputError(f"unknown pd check {self.pd_check!r}")
        if not self.epsilon > 0:
            raise InvalidInputError("epsilon must be positive")
        return self


def _padded(values, N) -> CoefficientSequence:
    c = np.zeros(max(N, len(values)), dtype=np.complex128)
    c[: len(values)] = values
    return CoefficientSequence(c)


def coefficients_for(cfg: ExperimentConfig, trial: int, N: int) -> CoefficientSequence:
    """Coefficient sequence of bandwidth >= N-1 for the configured symbol."""
    if cfg.symbol in ("random-phase", "zero-phase"):
        model = SymbolModel(N - 1, seed=cfg.seed, zero_phases=cfg.symbol == "zero-phase")
        return realize_coefficients(model, trial)
    if cfg.symbol == "circulant":
        return circulant_coefficients(N, (2.0, 0.5))
    if cfg.symbol == "constant":
        return _padded([5.0], N)
    return _padded([2.0, 1.0], N)


def _write_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _num(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


def _map(cfg, fn, items):
    if cfg.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def _realization_is_pd(cfg, T) -> bool:
    use_eig = cfg.pd_check == "eig" or (cfg.pd_check == "auto" and T.N <= EIG_CHECK_MAX_N)
    if not use_eig:
        return True
    return is_positive_definite(T)[0]


def iteration_trial(args) -> tuple[int, int]:
    """``(iter_cg, iter_pcg)`` for one realization; ``(-1, -1)`` when not PD."""
    cfg, N, t = args
    c = coefficients_for(cfg, t, N)
    T = build_toeplitz(c, N)
    S = strang_preconditioner(c, N, cfg.even_rule)
    if not is_positive_definite_circulant(S) or not _realization_is_pd(cfg, T):
        return FAILED, FAILED
    b = make_rhs(N, cfg.rhs, cfg.seed)
    try:
        cg = pcg_solve(T, None, b, cfg.tol)
        pcg = pcg_solve(T, S, b, cfg.tol)
    except NotPositiveDefiniteError:
        return FAILED, FAILED
    for name, rep in (("cg", cg), ("pcg", pcg)):
        if not rep.converged:
            log.warning("n=%d t=%d: %s stopped at max_iter=%d without converging", N, t, name, rep.iterations)
    return cg.iterations, pcg.iterations


@dataclass
class SweepResult:
    csv: str
    rows: list
    summary: dict


def _mean_valid(values):
    ok = [v for v in values if v != FAILED]
    return (sum(ok) / len(ok)) if ok else math.nan


def run_fig1(cfg: ExperimentConfig) -> SweepResult:
    """Rows ``t,iter_cg,iter_pcg`` for t = 1..trials at dimension n."""
    ts = list(range(1, cfg.trials + 1))
    results = _map(cfg, iteration_trial, [(cfg, cfg.n, t) for t in ts])
    rows = [(t, cg, pcg) for t, (cg, pcg) in zip(ts, results)]
    failed = sum(1 for _, cg, _ in rows if cg == FAILED)
    for t, cg, _ in rows:
        if cg == FAILED:
            log.warning("n=%d t=%d: realization not positive definite, recorded as -1", cfg.n, t)
    summary = {
        "mean_iter_cg": _mean_valid([r[1] for r in rows]),
        "mean_iter_pcg": _mean_valid([r[2] for r in rows]),
        "failed": failed,
        "failure_rate": failed / len(rows),
    }
    text = _write_csv(["t", "iter_cg", "iter_pcg"], [[_num(v) for v in r] for r in rows])
    return SweepResult(text, rows, summary)


def run_fig2(cfg: ExperimentConfig) -> SweepResult:
    """Rows ``n,avg_iter_cg,avg_iter_pcg`` over n = 2m+1, averaged over valid trials."""
    ns = [2 * m + 1 for m in cfg.m_values]
    jobs = [(cfg, n, t) for n in ns for t in range(1, cfg.trials + 1)]
    results = _map(cfg, iteration_trial, jobs)
    rows, failed = [], {}
    for i, n in enumerate(ns):
        chunk = results[i * cfg.trials:(i + 1) * cfg.trials]
        failed[n] = sum(1 for cg, _ in chunk if cg == FAILED)
        rows.append((n, _mean_valid([r[0] for r in chunk]), _mean_valid([r[1] for r in chunk])))
    total = len(results)
    summary = {"failed_per_n": failed, "failure_rate": sum(failed.values()) / total}
    text = _write_csv(["n", "avg_iter_cg", "avg_iter_pcg"],
                      [[_num(n), _num(cg), _num(pcg)] for n, cg, pcg in rows])
    return SweepResult(text, rows, summary)


def spectrum_trial(args):
    cfg, N, t = args
    c = coefficients_for(cfg, t, N)
    T = build_toeplitz(c, N)
    S = strang_preconditioner(c, N, cfg.even_rule)
    try:
        return preconditioned_spectrum(T, S, cfg.epsilon).eigenvalues
    except NotPositiveDefiniteError:
        return None


def run_spectrum(cfg: ExperimentConfig) -> SweepResult:
    """Rows ``t,index,eigenvalue`` of ``S^{-1} T`` for t = 1..trials.

    A trial whose preconditioner is not positive definite is written as one
    row ``t,-1,nan``.
    """
    ts = list(range(1, cfg.trials + 1))
    spectra = _map(cfg, spectrum_trial, [(cfg, cfg.n, t) for t in ts])
    rows, outliers = [], {}
    for t, eigs in zip(ts, spectra):
        if eigs is None:
            log.warning("n=%d t=%d: Strang preconditioner not positive definite", cfg.n, t)
            rows.append((t, FAILED, math.nan))
            outliers[t] = None
            continue
        outliers[t] = clustering_count(eigs, 1.0, cfg.epsilon)
        rows.extend((t, i, lam) for i, lam in enumerate(eigs, start=1))
    text = _write_csv(["t", "index", "eigenvalue"], [[_num(t), _num(i), _num(v)] for t, i, v in rows])
    return SweepResult(text, rows, {"outliers": outliers, "epsilon": cfg.epsilon})


def equidist_test_functions(bound: float):
    return [TestFunction.monomial(k) for k in range(5)] + [TestFunction.log1p(log_test_point(bound))]


def equidist_rows(cfg: ExperimentConfig, N: int):
    c = coefficients_for(cfg, cfg.trial, N).truncated(N - 1)
    T = build_toeplitz(c, N)
    lam = toeplitz_eigenvalues(T)
    bound = spectral_bound(T, c, lam)
    out = []
    for F in equidist_test_functions(bound):
        out.append((N, F.name, equidistribution_discrepancy(T, c, F, eigenvalues=lam)))
    return out


def equidist_job(args):
    cfg, n = args
    return equidist_rows(cfg, n)


def run_equidist(cfg: ExperimentConfig) -> SweepResult:
    """Rows ``n,test_function,discrepancy`` over the n ladder."""
    per_n = _map(cfg, equidist_job, [(cfg, n) for n in cfg.n_values])
    rows = [r for chunk in per_n for r in chunk]
    text = _write_csv(["n", "test_function", "discrepancy"], [[_num(n), name, _num(d)] for n, name, d in rows])
    return SweepResult(text, rows, {})


def run_solve(cfg: ExperimentConfig) -> SweepResult:
    """Single solve; rows ``iteration,residual_ratio``."""
    c = coefficients_for(cfg, cfg.trial, cfg.n)
    T: ToeplitzSystem = build_toeplitz(c, cfg.n)
    S = strang_preconditioner(c, cfg.n, cfg.even_rule) if cfg.precond == "strang" else None
    b = make_rhs(cfg.n, cfg.rhs, cfg.seed)
    rep = pcg_solve(T, S, b, cfg.tol)
    text = _write_csv(["iteration", "residual_ratio"], [[_num(j), _num(r)] for j, r in enumerate(rep.residual_ratios)])
    summary = {"iterations": rep.iterations, "converged": rep.converged}
    return SweepResult(text, list(enumerate(rep.residual_ratios)), summary)
