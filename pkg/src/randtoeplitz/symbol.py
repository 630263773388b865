"""Random-phase generating functions and their Fourier coefficient sequences.

The model has deterministic magnitudes ``a_0 = 2``,
``a_k = (1 + i) / (1 + k)**p`` and coefficients ``c_k = a_k exp(i phi_k)``
where the phases ``phi_k`` are standard normal draws. Negative indices are
implicit: ``c_{-k} = conj(c_k)``, so every Toeplitz matrix built from a
sequence is Hermitian and the symbol is real valued.

Symbol convention: ``f(theta) = sum_k c_k exp(i k theta)``.

Phase generator
---------------
Each phase is a pure function of ``(seed, trial, k)``. The key is hashed
with the splitmix64 finalizer::

    mix64(z):  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
               z = (z ^ (z >> 27)) * 0x94D049BB133111EB
               return z ^ (z >> 31)                       (all mod 2**64)

    G  = 0x9E3779B97F4A7C15
    h1 = mix64(seed + G)
    h2 = mix64((h1 ^ trial) + G)
    h  = mix64((h2 ^ k) + G)

Two uniforms are taken from ``mix64(h + G)`` and ``mix64(h + 2G)`` (top 53
bits) and combined with Box-Muller, ``sqrt(-2 ln u1) cos(2 pi u2)`` with
``u1`` in (0, 1]. Integers are reduced mod 2**64 first, so negative trial
indices are valid keys.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MUL1 = 0xBF58476D1CE4E5B9
MIX_MUL2 = 0x94D049BB133111EB
_INV_2_53 = 1.0 / (1 << 53)

DEFAULT_DECAY = 1.1


def mix64(z: int) -> int:
    """splitmix64 output finalizer on a 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX_MUL1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_MUL2) & MASK64
    return z ^ (z >> 31)


def _key(seed: int, trial: int, k: int) -> int:
    h = mix64(seed + GOLDEN_GAMMA)
    h = mix64((h ^ (trial & MASK64)) + GOLDEN_GAMMA)
    return mix64((h ^ (k & MASK64)) + GOLDEN_GAMMA)


def counter_normal(seed: int, trial: int, k: int) -> float:
    """Standard normal variate keyed on ``(seed, trial, k)``; no domain check."""
    h = _key(seed, trial, k)
    u1 = ((mix64(h + GOLDEN_GAMMA) >> 11) + 1) * _INV_2_53
    u2 = (mix64(h + 2 * GOLDEN_GAMMA) >> 11) * _INV_2_53
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def gaussian_phase(seed: int, trial: int, k: int) -> float:
    """Reproducible N(0, 1) phase for coefficient ``k >= 1`` of realization ``trial``."""
    if k < 1:
        raise InvalidInputError("phases exist only for k >= 1; c_0 stays real")
    return counter_normal(seed, trial, k)


@dataclass(frozen=True)
class CoefficientSequence:
    """Nonnegative half ``c_0 .. c_K`` of a Hermitian coefficient sequence."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128, copy=True).reshape(-1)
        if v.shape[0] < 1:
            raise InvalidInputError("coefficient sequence needs at least c_0")
        if not np.all(np.isfinite(v)):
            raise InvalidInputError("coefficients must be finite")
        if v[0].imag != 0.0:
            raise InvalidInputError("c_0 must be real for a Hermitian sequence")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def bandwidth(self) -> int:
        return self.values.shape[0] - 1

    def __len__(self):
        return self.values.shape[0]

    def __getitem__(self, k: int) -> complex:
        """Coefficient ``c_k`` for any integer ``|k| <= K``, negative via conjugation."""
        if abs(k) > self.bandwidth:
            raise IndexError(f"c_{k} is outside bandwidth {self.bandwidth}")
        v = self.values[abs(k)]
        return complex(np.conj(v)) if k < 0 else complex(v)

    def truncated(self, K: int) -> "CoefficientSequence":
        if K < 0 or K > self.bandwidth:
            raise InvalidInputError(f"cannot truncate bandwidth {self.bandwidth} to {K}")
        return CoefficientSequence(self.values[: K + 1])

    def __eq__(self, other):
        if not isinstance(other, CoefficientSequence):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    __hash__ = None

    def to_csv(self) -> str:
        """Rows ``k,re,im`` for 0 <= k <= K, 17 significant digits."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "re", "im"])
        for k, z in enumerate(self.values):
            w.writerow([k, f"{z.real:.17g}", f"{z.imag:.17g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "CoefficientSequence":
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            raise InvalidInputError("empty coefficient CSV")
        ks = [int(r["k"]) for r in rows]
        if ks != list(range(len(rows))):
            raise InvalidInputError("coefficient CSV rows must be k = 0, 1, ..., K in order")
        return cls(np.array([complex(float(r["re"]), float(r["im"])) for r in rows]))


@dataclass(frozen=True)
class SymbolModel:
    """Factory of random-phase coefficient sequences.

    ``decay`` may be ``math.inf``, which leaves only ``a_0``. With
    ``zero_phases`` every phase is 0 and realizations equal the magnitudes.
    """

    bandwidth: int
    seed: int = 20240101
    decay: float = DEFAULT_DECAY
    a0: float = 2.0
    zero_phases: bool = False
    _mags: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.bandwidth < 0:
            raise InvalidInputError("bandwidth must be nonnegative")
        if not self.decay > 1.0:
            raise InvalidInputError("decay exponent must exceed 1 (Wiener class)")
        object.__setattr__(self, "seed", int(self.seed) & MASK64)
        mags = np.zeros(self.bandwidth + 1, dtype=np.complex128)
        mags[0] = self.a0
        if math.isfinite(self.decay):
            k = np.arange(1, self.bandwidth + 1, dtype=np.float64)
            mags[1:] = (1.0 + 1.0j) / (1.0 + k) ** self.decay
        mags.setflags(write=False)
        object.__setattr__(self, "_mags", mags)

    def magnitudes(self) -> np.ndarray:
        """Deterministic coefficients ``a_0 .. a_K``."""
        return self._mags

    def with_bandwidth(self, K: int) -> "SymbolModel":
        return SymbolModel(K, self.seed, self.decay, self.a0, self.zero_phases)


def realize_coefficients(model: SymbolModel, trial: int) -> CoefficientSequence:
    """Coefficients ``c_k = a_k exp(i phi_k(trial))``; ``c_0 = a_0``.

    Phases depend only on ``(seed, trial, k)``, so realizations of the same
    trial at different bandwidths agree on their common prefix.
    """
    a = model.magnitudes()
    c = a.copy()
    if not model.zero_phases and model.bandwidth > 0:
        phi = np.array([gaussian_phase(model.seed, trial, k) for k in range(1, model.bandwidth + 1)])
        c[1:] = a[1:] * np.exp(1j * phi)
    return CoefficientSequence(c)


def evaluate_symbol(c: CoefficientSequence, theta):
    """``f(theta) = c_0 + 2 Re sum_{k>=1} c_k exp(i k theta)``; scalar or array ``theta``."""
    th = np.asarray(theta, dtype=np.float64)
    v = c.values
    out = np.full(th.shape, v[0].real)
    if v.shape[0] > 1:
        k = np.arange(1, v.shape[0])
        flat = th.reshape(-1)
        # chunk to bound the (points x K) phase matrix
        acc = np.empty(flat.shape[0])
        step = max(1, 2_000_000 // k.shape[0])
        for s in range(0, flat.shape[0], step):
            ph = np.exp(1j * np.outer(flat[s:s + step], k))
            acc[s:s + step] = 2.0 * (ph @ v[1:]).real
        out = out + acc.reshape(th.shape)
    if out.ndim == 0:
        return float(out)
    return out


def wiener_tail(model: SymbolModel, K: int) -> float:
    """Upper bound on ``sum_{k>K} |a_k|`` by integral comparison.

    For ``|a_k| = sqrt(2) (1+k)^-p`` the bound is
    ``sqrt(2) (1+K)^(1-p) / (p-1)``.
    """
    if K < 0:
        raise InvalidInputError("K must be nonnegative")
    if not math.isfinite(model.decay):
        return 0.0
    p = model.decay
    return math.sqrt(2.0) * (1.0 + K) ** (1.0 - p) / (p - 1.0)


def constant_coefficients(value: float) -> CoefficientSequence:
    return CoefficientSequence([value])


def circulant_coefficients(N: int, band) -> CoefficientSequence:
    """Coefficients whose N x N Toeplitz matrix is a Hermitian circulant.

    ``band = (b_0, b_1, ..., b_r)`` with ``2r < N``; the sequence is
    ``c_k = b_k + conj(b_{N-k})`` so the wrap-around corners match.
    """
    b = np.asarray(band, dtype=np.complex128)
    r = b.shape[0] - 1
    if N < 1 or 2 * r >= N:
        raise InvalidInputError("band too wide for a circulant of this size")
    c = np.zeros(N, dtype=np.complex128)
    c[: r + 1] += b
    for k in range(1, r + 1):
        c[N - k] += np.conj(b[k])
    return CoefficientSequence(c)
