"""Dense Hermitian eigenvalues and spectral diagnostics for Toeplitz families.

Diagnostics implemented here:

* clustering of ``S^{-1} T`` around 1 (outlier counts at a given epsilon),
* discrepancy between eigenvalues and symbol samples under a test function,
* the geometric mean of the eigenvalues against ``exp(mean log f)``,
* Weyl and Cauchy-interlacing inequalities as executable checks.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .circulant import CirculantOperator, circulant_inverse_sqrt_apply
from .errors import ContractViolationError, DomainError, InvalidInputError, ResourceLimitError
from .symbol import CoefficientSequence, evaluate_symbol
from .toeplitz import DENSE_CAP, ToeplitzSystem, materialize_dense

JACOBI_TOL = 1e-12
INEQUALITY_SLACK = 1e-10
LOG_MEAN_POINTS = 4096
ZERO_CUTOFF = 1e-13


def hermitian_eigenvalues(A, cap: int = DENSE_CAP) -> np.ndarray:
    """All eigenvalues of a dense Hermitian matrix, ascending (cyclic Jacobi)."""
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise InvalidInputError(f"expected a non-empty square matrix, got shape {A.shape}")
    if A.shape[0] > cap:
        raise ResourceLimitError(f"dense eigensolver capped at N = {cap}, got {A.shape[0]}")
    if not np.all(np.isfinite(A)):
        raise InvalidInputError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(A))))
    if np.max(np.abs(A - A.conj().T)) > 1e-12 * scale:
        raise ContractViolationError("matrix is not Hermitian")
    A = 0.5 * (A + A.conj().T)
    eigs, _ = kernels.jacobi_eigvalsh(A, JACOBI_TOL, 100)
    return np.sort(eigs)


def clustering_count(eigs, center: float, epsilon: float) -> int:
    """Number of eigenvalues with ``|lambda - center| > epsilon``."""
    if not epsilon > 0:
        raise InvalidInputError("epsilon must be positive")
    return int(np.count_nonzero(np.abs(np.asarray(eigs, dtype=np.float64) - center) > epsilon))


@dataclass
class SpectralReport:
    eigenvalues: np.ndarray
    epsilon: float
    center: float = 1.0
    cluster_outliers: int = field(init=False)
    discrepancies: dict = field(default_factory=dict)
    geometric_mean: float | None = None

    def __post_init__(self):
        self.eigenvalues = np.sort(np.asarray(self.eigenvalues, dtype=np.float64))
        self.cluster_outliers = clustering_count(self.eigenvalues, self.center, self.epsilon)
        if self.geometric_mean is None and np.all(self.eigenvalues > 0):
            self.geometric_mean = float(np.exp(np.mean(np.log(self.eigenvalues))))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "eigenvalue"])
        for i, lam in enumerate(self.eigenvalues, start=1):
            w.writerow([i, f"{lam:.17g}"])
        return buf.getvalue()

    def summary_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        names = sorted(self.discrepancies)
        w.writerow(["outliers", "epsilon", "center", "geometric_mean"] + [f"disc[{n}]" for n in names])
        gm = "" if self.geometric_mean is None else f"{self.geometric_mean:.17g}"
        w.writerow([self.cluster_outliers, f"{self.epsilon:.17g}", f"{self.center:.17g}", gm]
                   + [f"{self.discrepancies[n]:.17g}" for n in names])
        return buf.getvalue()


def inverse_sqrt_circulant(S: CirculantOperator) -> CirculantOperator:
    """``S^{-1/2}`` as a circulant (first column = ``S^{-1/2} e_0``)."""
    e0 = np.zeros(S.size, dtype=np.complex128)
    e0[0] = 1.0
    return CirculantOperator(circulant_inverse_sqrt_apply(S, e0))


def preconditioned_matrix(T: ToeplitzSystem, S: CirculantOperator, cap: int = DENSE_CAP) -> np.ndarray:
    """Dense Hermitian ``S^{-1/2} T S^{-1/2}``, similar to ``S^{-1} T``."""
    if S.size != T.N:
        raise InvalidInputError("preconditioner size does not match the system")
    C = inverse_sqrt_circulant(S).dense()
    H = C @ materialize_dense(T, cap) @ C
    return 0.5 * (H + H.conj().T)


def preconditioned_spectrum(T: ToeplitzSystem, S: CirculantOperator, epsilon: float = 0.05,
                            cap: int = DENSE_CAP) -> SpectralReport:
    """Eigenvalues of ``S^{-1} T`` with outliers counted around 1."""
    eigs = hermitian_eigenvalues(preconditioned_matrix(T, S, cap), cap=cap)
    return SpectralReport(eigs, epsilon, center=1.0)


def toeplitz_eigenvalues(T: ToeplitzSystem, cap: int = DENSE_CAP) -> np.ndarray:
    return hermitian_eigenvalues(materialize_dense(T, cap), cap=cap)


@dataclass(frozen=True)
class TestFunction:
    """Test function for equidistribution: ``t**degree`` or ``log(1 + x t)``."""

    kind: str
    degree: int = 0
    x: float = 0.0

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if self.kind == "monomial":
            if not 0 <= self.degree <= 8:
                raise InvalidInputError("monomial degree must be in 0..8")
        elif self.kind != "log":
            raise InvalidInputError(f"unknown test function kind {self.kind!r}")

    @classmethod
    def monomial(cls, k: int) -> "TestFunction":
        return cls("monomial", degree=k)

    @classmethod
    def log1p(cls, x: float) -> "TestFunction":
        return cls("log", x=x)

    @property
    def name(self) -> str:
        if self.kind == "monomial":
            return f"t^{self.degree}"
        return f"log(1+{self.x:.6g}t)"

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        if self.kind == "monomial":
            return t ** self.degree
        return np.log1p(self.x * t)


def equidistribution_grid(N: int) -> np.ndarray:
    """``theta_j = -pi + 2 j pi / (N + 1)`` for ``j = 1 .. N``."""
    j = np.arange(1, N + 1)
    return -np.pi + 2.0 * np.pi * j / (N + 1)


def equidistribution_discrepancy(T: ToeplitzSystem, c: CoefficientSequence, F: TestFunction,
                                 eigenvalues=None) -> float:
    """``(1/N) |sum_j F(lambda_j) - F(f(theta_j))|`` with sorted-to-sorted pairing.

    ``eigenvalues`` may be passed to reuse one eigen-decomposition across
    several test functions.
    """
    lam = toeplitz_eigenvalues(T) if eigenvalues is None else np.sort(np.asarray(eigenvalues, float))
    if lam.shape[0] != T.N:
        raise InvalidInputError("eigenvalue count does not match the system dimension")
    g = np.sort(evaluate_symbol(c, equidistribution_grid(T.N)))
    if F.kind == "log":
        bound = max(float(np.max(np.abs(lam))), float(np.max(np.abs(g))))
        if bound > 0 and not abs(F.x) < 1.0 / bound:
            raise InvalidInputError(f"log test function needs |x| < {1.0 / bound:.6g}, got {F.x}")
    return float(abs(np.sum(F(lam) - F(g)))) / T.N


def spectral_bound(T: ToeplitzSystem, c: CoefficientSequence, eigenvalues=None) -> float:
    """``max(|lambda|, |f(theta_j)|)``, the bound the log test function must respect."""
    lam = toeplitz_eigenvalues(T) if eigenvalues is None else np.asarray(eigenvalues, float)
    g = evaluate_symbol(c, equidistribution_grid(T.N))
    return max(float(np.max(np.abs(lam))), float(np.max(np.abs(g))))


def szego_geometric_mean(T: ToeplitzSystem, eigenvalues=None) -> float:
    """``(prod lambda_j)^(1/N)`` evaluated as ``exp(mean log lambda_j)``."""
    lam = toeplitz_eigenvalues(T) if eigenvalues is None else np.asarray(eigenvalues, float)
    if np.any(lam <= 0):
        raise DomainError("geometric mean needs a positive definite matrix")
    return float(np.exp(np.mean(np.log(lam))))


def symbol_log_mean(c: CoefficientSequence, points: int = LOG_MEAN_POINTS) -> float:
    """``exp((1/2pi) int log f)`` by the periodic trapezoid rule.

    Grid points where ``|f| < 1e-13`` are dropped (log-integrable zeros such
    as ``2 + 2 cos theta`` at ``pi``); clearly negative values are an error.
    """
    theta = -np.pi + 2.0 * np.pi * np.arange(points) / points
    f = evaluate_symbol(c, theta)
    if np.any(f <= -ZERO_CUTOFF):
        raise DomainError("symbol is negative on the quadrature grid")
    kept = f[f >= ZERO_CUTOFF]
    return float(np.exp(np.mean(np.log(kept))))


def _pair_slack(*mats) -> float:
    return INEQUALITY_SLACK * max(1.0, *(float(np.max(np.abs(m))) for m in mats))


def check_weyl(A, B) -> bool:
    """``lambda_k(A) + lambda_1(B) <= lambda_k(A+B) <= lambda_k(A) + lambda_n(B)`` for all k."""
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if A.shape != B.shape:
        raise InvalidInputError(f"dimension mismatch: {A.shape} vs {B.shape}")
    la = hermitian_eigenvalues(A)
    lb = hermitian_eigenvalues(B)
    lab = hermitian_eigenvalues(A + B)
    slack = _pair_slack(A, B)
    return bool(np.all(la + lb[0] <= lab + slack) and np.all(lab <= la + lb[-1] + slack))


def check_interlacing(A_hat, delete_index: int) -> bool:
    """Eigenvalues of A_hat with row/column ``delete_index`` removed interlace those of A_hat."""
    A_hat = np.asarray(A_hat, dtype=np.complex128)
    n = A_hat.shape[0]
    if A_hat.ndim != 2 or n < 2 or A_hat.shape[1] != n:
        raise InvalidInputError("need a square matrix of size >= 2")
    if not 0 <= delete_index < n:
        raise InvalidInputError(f"delete_index {delete_index} out of range for size {n}")
    keep = np.delete(np.arange(n), delete_index)
    lam = hermitian_eigenvalues(A_hat)
    mu = hermitian_eigenvalues(A_hat[np.ix_(keep, keep)])
    slack = _pair_slack(A_hat)
    return bool(np.all(lam[:-1] <= mu + slack) and np.all(mu <= lam[1:] + slack))


def trace_defect(A, eigs) -> float:
    """``|sum lambda - trace A|``, used to sanity-check eigensolver output."""
    return abs(float(np.sum(eigs)) - float(np.trace(np.asarray(A)).real))


def log_test_point(bound: float) -> float:
    """The ``x = 1 / (2 K_bound)`` used for the logarithmic test function."""
    return 0.5 / bound if bound > 0 else 0.5
