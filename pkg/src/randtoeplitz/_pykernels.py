"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``.

The FFT vectorizes each butterfly stage; the eigensolver uses a round-robin
(parallel) Jacobi ordering so that every step rotates N/2 disjoint pairs
with whole-array operations.
"""
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def _bit_reversal(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    rev.setflags(write=False)
    return rev


def fft_radix2(x, inverse=False):
    """Unnormalized DFT of a power-of-two length complex vector."""
    a = np.array(x, dtype=np.complex128, copy=True)
    n = a.shape[0]
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    if n <= 1:
        return a
    sgn = 1.0 if inverse else -1.0
    a = a[_bit_reversal(n)]
    half = 1
    while half < n:
        ang = np.pi * np.arange(half) / half
        w = np.cos(ang) + 1j * sgn * np.sin(ang)
        blocks = a.reshape(-1, 2 * half)
        even = blocks[:, :half]
        odd = blocks[:, half:] * w
        a = np.concatenate([even + odd, even - odd], axis=1).reshape(-1)
        half *= 2
    return a


@lru_cache(maxsize=32)
def _round_robin(n: int):
    players = list(range(n + (n % 2)))
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(p, q) for p, q in pairs if p < n and q < n]
        if pairs:
            P = np.array([p for p, _ in pairs], dtype=np.intp)
            Q = np.array([q for _, q in pairs], dtype=np.intp)
            rounds.append((P, Q))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigvalsh(A, tol=1e-12, max_sweeps=100):
    """Eigenvalues (unsorted) of a Hermitian matrix; returns ``(eigs, sweeps)``."""
    a = np.array(A, dtype=np.complex128, copy=True)
    n = a.shape[0]
    fro = np.linalg.norm(a)
    schedule = _round_robin(n)
    offdiag = ~np.eye(n, dtype=bool)
    # entries below this cannot affect the stopping test; rotating them underflows
    floor = 1e-30 * fro
    sweep = 0
    while True:
        off = np.linalg.norm(a[offdiag])
        if off <= tol * fro:
            break
        if sweep >= max_sweeps:
            raise RuntimeError("Jacobi iteration did not converge")
        sweep += 1
        for P, Q in schedule:
            apq = a[P, Q]
            r = np.abs(apq)
            live = r > floor
            rs = np.where(live, r, 1.0)
            e = np.where(live, apq / rs, 1.0)
            app = a[P, P].real
            aqq = a[Q, Q].real
            theta = (aqq - app) / (2.0 * rs)
            with np.errstate(over="ignore"):
                t = np.where(theta < 0.0, -1.0, 1.0) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t = np.where(live, t, 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            ec = np.conj(e)
            colP = a[:, P].copy()
            colQ = a[:, Q]
            a[:, P] = c * colP - (s * ec) * colQ
            a[:, Q] = s * colP + (c * ec) * colQ
            rowP = a[P, :].copy()
            rowQ = a[Q, :]
            a[P, :] = c[:, None] * rowP - (s * e)[:, None] * rowQ
            a[Q, :] = s[:, None] * rowP + (c * e)[:, None] * rowQ
            a[P, Q] = 0.0
            a[Q, P] = 0.0
            a[P, P] = app - t * r
            a[Q, Q] = aqq + t * r
    return np.diag(a).real.copy(), sweep
