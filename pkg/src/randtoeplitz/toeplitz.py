"""Hermitian Toeplitz operators ``(T)_{jk} = c_{j-k}`` with FFT matvec.

The N x N matrix is the leading block of a circulant of size
``M = next_pow2(2N)`` whose first column is
``c_0 .. c_{N-1}, 0 .. 0, c_{-(N-1)} .. c_{-1}``; zero-padding ``x`` to M and
truncating the circulant product back to N gives ``T x`` exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circulant import CirculantOperator
from .errors import InvalidInputError, ResourceLimitError
from .symbol import CoefficientSequence
from .transforms import as_complex_vector, dft_forward, dft_inverse, next_pow2

DENSE_CAP = 1024


@dataclass(frozen=True)
class ToeplitzSystem:
    coefficients: CoefficientSequence
    N: int
    embedding: CirculantOperator = field(init=False, repr=False)

    def __post_init__(self):
        if self.N < 1:
            raise InvalidInputError("dimension must be positive")
        if self.coefficients.bandwidth < self.N - 1:
            raise InvalidInputError(
                f"dimension {self.N} needs bandwidth >= {self.N - 1}, got {self.coefficients.bandwidth}"
            )
        c = self.coefficients.truncated(self.N - 1).values
        M = next_pow2(2 * self.N)
        col = np.zeros(M, dtype=np.complex128)
        col[: self.N] = c
        if self.N > 1:
            col[M - self.N + 1:] = np.conj(c[1:])[::-1]
        object.__setattr__(self, "coefficients", self.coefficients.truncated(self.N - 1))
        object.__setattr__(self, "embedding", CirculantOperator(col))

    @property
    def diagonal_value(self) -> float:
        return float(self.coefficients.values[0].real)

    def matvec(self, x) -> np.ndarray:
        return matvec(self, x)


def build_toeplitz(c: CoefficientSequence, N: int) -> ToeplitzSystem:
    """N x N Hermitian Toeplitz system with its circulant embedding precomputed."""
    return ToeplitzSystem(c, N)


def matvec(T: ToeplitzSystem, x) -> np.ndarray:
    """``T x`` in O(M log M) through the cached embedding eigenvalues."""
    x = as_complex_vector(x)
    if x.shape[0] != T.N:
        raise InvalidInputError(f"x has length {x.shape[0]}, system dimension is {T.N}")
    emb = T.embedding
    padded = np.zeros(emb.size, dtype=np.complex128)
    padded[: T.N] = x
    return dft_inverse(dft_forward(padded) * emb.eigenvalues)[: T.N]


def materialize_dense(T: ToeplitzSystem, cap: int = DENSE_CAP) -> np.ndarray:
    """Dense N x N array with entries ``c_{j-k}``."""
    if T.N > cap:
        raise ResourceLimitError(f"dense materialization capped at N = {cap}, got {T.N}")
    c = T.coefficients.values
    d = np.arange(T.N)[:, None] - np.arange(T.N)[None, :]
    out = c[np.abs(d)]
    return np.where(d < 0, np.conj(out), out)


def is_positive_definite(T: ToeplitzSystem, cap: int = DENSE_CAP) -> tuple[bool, float]:
    """``(lambda_min > 0, lambda_min)`` from the dense Hermitian eigensolver."""
    from .spectral import hermitian_eigenvalues

    lam_min = float(hermitian_eigenvalues(materialize_dense(T, cap), cap=cap)[0])
    return lam_min > 0.0, lam_min
