import numpy as np
import pytest

from randtoeplitz import _backend
from randtoeplitz.circulant import is_positive_definite_circulant, strang_preconditioner
from randtoeplitz.symbol import SymbolModel, realize_coefficients

SEED = 20240101

BACKENDS = [pytest.param(_backend.python_kernels, id="python")]
if _backend.compiled_kernels is not None:
    BACKENDS.append(pytest.param(_backend.compiled_kernels, id="cython"))


@pytest.fixture(params=BACKENDS)
def kernel_impl(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_hermitian(rng, n, scale=1.0):
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (A + A.conj().T) / 2


def dense_toeplitz(c, N):
    """Reference N x N Hermitian Toeplitz matrix from c_0..c_{N-1}, built entry by entry."""
    T = np.empty((N, N), dtype=complex)
    for j in range(N):
        for k in range(N):
            d = j - k
            T[j, k] = c[d] if d >= 0 else np.conj(c[-d])
    return T


def model_coefficients(N, trial, seed=SEED, zero_phases=False):
    return realize_coefficients(SymbolModel(N - 1, seed=seed, zero_phases=zero_phases), trial)


def first_trial(predicate, start=1, limit=5000):
    for t in range(start, limit):
        if predicate(t):
            return t
    raise AssertionError("no trial satisfied the predicate")


def _pd_realization(N, t, seed):
    c = model_coefficients(N, t, seed)
    return (is_positive_definite_circulant(strang_preconditioner(c, N))
            and np.linalg.eigvalsh(dense_toeplitz(c.values, N)).min() > 0)


def pd_model_trial(N, seed=SEED, start=1):
    """First trial >= start whose Toeplitz matrix and Strang preconditioner are both PD (numpy oracle)."""
    return first_trial(lambda t: _pd_realization(N, t, seed), start)


def pd_model_trials(N, count, seed=SEED):
    out = [pd_model_trial(N, seed)]
    while len(out) < count:
        out.append(pd_model_trial(N, seed, out[-1] + 1))
    return out


def strang_pd_trial(sizes, seed=SEED):
    """First trial whose Strang preconditioners are PD at every size in ``sizes``."""
    def ok(t):
        c = model_coefficients(max(sizes), t, seed)
        return all(is_positive_definite_circulant(strang_preconditioner(c, N)) for N in sizes)
    return first_trial(ok)
