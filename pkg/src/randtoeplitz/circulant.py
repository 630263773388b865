"""Circulant operators diagonalized by the DFT, and the Strang preconditioner.

A circulant with first column ``s`` has eigenvalues ``dft_forward(s)``, with
eigenvectors the Fourier modes, so ``S x = idft(dft(x) * dft(s))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ContractViolationError,
    InvalidInputError,
    NotPositiveDefiniteError,
    SingularOperatorError,
)
from .symbol import CoefficientSequence
from .transforms import as_complex_vector, dft_forward, dft_inverse

HERMITIAN_TOL = 1e-12
SINGULAR_RTOL = 1e-14


@dataclass(frozen=True)
class CirculantOperator:
    first_column: np.ndarray
    eigenvalues: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        col = as_complex_vector(self.first_column, "first_column").copy()
        col.setflags(write=False)
        eig = dft_forward(col)
        eig.setflags(write=False)
        object.__setattr__(self, "first_column", col)
        object.__setattr__(self, "eigenvalues", eig)

    @classmethod
    def identity(cls, N: int) -> "CirculantOperator":
        col = np.zeros(N, dtype=np.complex128)
        col[0] = 1.0
        return cls(col)

    @property
    def size(self) -> int:
        return self.first_column.shape[0]

    @property
    def is_hermitian(self) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.eigenvalues))))
        return bool(np.max(np.abs(self.eigenvalues.imag)) <= HERMITIAN_TOL * scale)

    def _check_len(self, x, name="x"):
        x = as_complex_vector(x, name)
        if x.shape[0] != self.size:
            raise InvalidInputError(f"{name} has length {x.shape[0]}, operator size is {self.size}")
        return x

    def matvec(self, x) -> np.ndarray:
        x = self._check_len(x)
        return dft_inverse(dft_forward(x) * self.eigenvalues)

    def dense(self) -> np.ndarray:
        n = self.size
        idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
        return self.first_column[idx]


def strang_preconditioner(c: CoefficientSequence, N: int, even_rule: str = "average") -> CirculantOperator:
    """Strang circulant of the N x N Toeplitz matrix built from ``c``.

    Copies the central band ``c_0 .. c_m`` into the first column and wraps the
    negative diagonals around: ``s_l = conj(c_{N-l})`` for ``l > m``. For even
    N the middle entry ``s_m`` is ``Re c_m`` (``"average"``) or 0 (``"zero"``).
    """
    if N < 1:
        raise InvalidInputError("N must be positive")
    if even_rule not in ("average", "zero"):
        raise InvalidInputError(f"unknown even_rule {even_rule!r}")
    m = N // 2
    if c.bandwidth < m:
        raise InvalidInputError(f"Strang preconditioner of size {N} needs bandwidth >= {m}")
    v = c.values
    s = np.zeros(N, dtype=np.complex128)
    if N % 2:
        s[: m + 1] = v[: m + 1]
    else:
        s[:m] = v[:m]
        # (c_m + c_{-m}) / 2 = Re c_m
        s[m] = v[m].real if even_rule == "average" else 0.0
    for l in range(m + 1, N):
        s[l] = np.conj(v[N - l])
    return CirculantOperator(s)


def circulant_eigenvalues(S: CirculantOperator) -> np.ndarray:
    """Real eigenvalues of a Hermitian circulant, ascending."""
    if not S.is_hermitian:
        raise ContractViolationError("circulant is not Hermitian: eigenvalues have imaginary parts")
    return np.sort(S.eigenvalues.real)


def _check_invertible(S: CirculantOperator):
    mags = np.abs(S.eigenvalues)
    top = mags.max()
    if top == 0.0 or mags.min() < SINGULAR_RTOL * top:
        raise SingularOperatorError("circulant is singular or numerically close to singular")


def circulant_solve(S: CirculantOperator, b) -> np.ndarray:
    """Solve ``S z = b`` through the DFT diagonalization."""
    b = S._check_len(b, "b")
    _check_invertible(S)
    return dft_inverse(dft_forward(b) / S.eigenvalues)


def circulant_inverse_sqrt_apply(S: CirculantOperator, x) -> np.ndarray:
    """Apply ``S^{-1/2}`` for a Hermitian positive definite circulant."""
    x = S._check_len(x)
    if not S.is_hermitian or np.min(S.eigenvalues.real) <= 0.0:
        raise NotPositiveDefiniteError("S^{-1/2} needs a Hermitian positive definite circulant")
    return dft_inverse(dft_forward(x) / np.sqrt(S.eigenvalues.real))


def is_positive_definite_circulant(S: CirculantOperator) -> bool:
    return S.is_hermitian and float(np.min(S.eigenvalues.real)) > 0.0
