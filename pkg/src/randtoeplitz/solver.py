"""Conjugate gradients on Toeplitz systems, optionally circulant-preconditioned."""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .circulant import CirculantOperator, circulant_solve, is_positive_definite_circulant
from .errors import InvalidInputError, NotPositiveDefiniteError
from .symbol import MASK64, counter_normal
from .toeplitz import ToeplitzSystem, matvec
from .transforms import as_complex_vector

# trial index reserved for right-hand sides; symbol realizations use t >= 0
RHS_TRIAL = MASK64


@dataclass
class SolveReport:
    iterations: int
    residual_ratios: list[float]
    converged: bool
    solution: np.ndarray
    wall_time: float


class IndefiniteSystemError(NotPositiveDefiniteError):
    """CG met a search direction with ``<d, T d> <= 0``."""

    def __init__(self, message, iteration):
        super().__init__(message)
        self.iteration = iteration


def pcg_solve(T: ToeplitzSystem, S: CirculantOperator | None, b, tol: float = 1e-10,
              max_iter: int | None = None, callback=None) -> SolveReport:
    """Preconditioned CG from ``x_0 = 0``, ``r_0 = b``.

    ``S=None`` runs plain CG. Inner products are ``<u, v> = v^* u``. Stops when
    ``||r_j|| / ||r_0|| < tol`` or after ``max_iter`` (default ``4N``)
    iterations; ``callback(j, x_j)`` is called after every update.
    """
    b = as_complex_vector(b, "b")
    N = T.N
    if b.shape[0] != N:
        raise InvalidInputError(f"b has length {b.shape[0]}, system dimension is {N}")
    if not tol > 0:
        raise InvalidInputError("tol must be positive")
    if S is not None:
        if S.size != N:
            raise InvalidInputError("preconditioner size does not match the system")
        if not is_positive_definite_circulant(S):
            raise NotPositiveDefiniteError("preconditioner is not Hermitian positive definite")
    if max_iter is None:
        max_iter = 4 * N

    def precondition(r):
        return r.copy() if S is None else circulant_solve(S, r)

    t0 = time.perf_counter()
    x = np.zeros(N, dtype=np.complex128)
    r = b.copy()
    r0 = float(np.linalg.norm(r))
    ratios = [1.0]
    if r0 == 0.0:
        return SolveReport(0, ratios, True, x, time.perf_counter() - t0)

    z = precondition(r)
    rz = np.vdot(r, z).real
    d = z
    converged = False
    j = 0
    while j < max_iter:
        j += 1
        Td = matvec(T, d)
        dTd = np.vdot(d, Td).real
        if dTd <= 0.0:
            raise IndefiniteSystemError(f"<d, T d> = {dTd:.3e} <= 0 at iteration {j}", j)
        alpha = rz / dTd
        x += alpha * d
        r -= alpha * Td
        ratios.append(float(np.linalg.norm(r)) / r0)
        if callback is not None:
            callback(j, x)
        if ratios[-1] < tol:
            converged = True
            break
        z = precondition(r)
        rz_new = np.vdot(r, z).real
        d = z + (rz_new / rz) * d
        rz = rz_new
    return SolveReport(j, ratios, converged, x, time.perf_counter() - t0)


def make_rhs(N: int, kind: str = "ones", seed: int = 20240101) -> np.ndarray:
    """Right-hand side: all ones, or reproducible real N(0,1) entries."""
    if N < 1:
        raise InvalidInputError("N must be positive")
    if kind == "ones":
        return np.ones(N, dtype=np.complex128)
    if kind == "seeded-random":
        return np.array([counter_normal(seed, RHS_TRIAL, j + 1) for j in range(N)], dtype=np.complex128)
    raise InvalidInputError(f"unknown right-hand side kind {kind!r}")


def true_residual_ratio(T: ToeplitzSystem, x, b) -> float:
    b = as_complex_vector(b, "b")
    return float(np.linalg.norm(b - matvec(T, x)) / np.linalg.norm(b))
