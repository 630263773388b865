"""Discrete Fourier transforms of arbitrary length.

Conventions used everywhere in the package::

    forward:  X_j = sum_k x_k exp(-2 pi i jk / N)          (unnormalized)
    inverse:  x_k = (1/N) sum_j X_j exp(+2 pi i jk / N)

Power-of-two lengths go straight to the radix-2 kernel. Every other length
is reduced to a power-of-two circular convolution with Bluestein's chirp-z
identity ``jk = (j^2 + k^2 - (j-k)^2) / 2``, so the result is the exact DFT
of that length rather than a padded approximation.
"""
from functools import lru_cache

import numpy as np

from ._backend import kernels
from .errors import InvalidInputError


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def next_pow2(n: int) -> int:
    """Smallest power of two >= n (n >= 1)."""
    return 1 << (n - 1).bit_length()


def as_complex_vector(x, name="x") -> np.ndarray:
    """Validate and convert ``x`` to a 1-D complex128 array with finite entries."""
    arr = np.asarray(x)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise InvalidInputError(f"{name} must be a non-empty 1-D vector, got shape {arr.shape}")
    arr = arr.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return arr


@lru_cache(maxsize=128)
def _bluestein_plan(n: int):
    # k^2 mod 2n keeps the chirp argument small so exp() stays accurate.
    k = np.arange(n, dtype=np.int64)
    chirp = np.exp(-1j * np.pi * ((k * k) % (2 * n)) / n)
    m = next_pow2(2 * n - 1)
    b = np.zeros(m, dtype=np.complex128)
    b[:n] = np.conj(chirp)
    b[m - n + 1:] = np.conj(chirp[1:])[::-1]
    b_hat = kernels.fft_radix2(b, False)
    chirp.setflags(write=False)
    b_hat.setflags(write=False)
    return chirp, b_hat, m


def _dft(x: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    if _is_pow2(n):
        return kernels.fft_radix2(x, False)
    chirp, b_hat, m = _bluestein_plan(n)
    a = np.zeros(m, dtype=np.complex128)
    a[:n] = x * chirp
    conv = kernels.fft_radix2(kernels.fft_radix2(a, False) * b_hat, True) / m
    return conv[:n] * chirp


def dft_forward(x) -> np.ndarray:
    """Unnormalized forward DFT (negative exponent) of any length >= 1."""
    return _dft(as_complex_vector(x))


def dft_inverse(X) -> np.ndarray:
    """Inverse DFT with the 1/N factor, so ``dft_inverse(dft_forward(x)) == x``."""
    X = as_complex_vector(X, "X")
    n = X.shape[0]
    if _is_pow2(n):
        return kernels.fft_radix2(X, True) / n
    return np.conj(_dft(np.conj(X))) / n


def dft_direct(x) -> np.ndarray:
    """O(N^2) reference DFT, used as a test oracle."""
    x = as_complex_vector(x)
    n = x.shape[0]
    jk = np.outer(np.arange(n), np.arange(n)) % n
    return np.exp(-2j * np.pi * jk / n) @ x
