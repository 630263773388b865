"""Both kernel backends against independent references."""
import numpy as np
import pytest

from randtoeplitz import _backend

from .conftest import random_hermitian


@pytest.mark.parametrize("n", [1, 2, 4, 8, 64, 1024])
def test_fft_radix2(kernel_impl, n, rng):
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    np.testing.assert_allclose(kernel_impl.fft_radix2(x, False), np.fft.fft(x), atol=1e-10 * n)
    np.testing.assert_allclose(kernel_impl.fft_radix2(x, True), np.fft.ifft(x) * n, atol=1e-10 * n)


def test_fft_radix2_rejects_non_power_of_two(kernel_impl):
    with pytest.raises(ValueError):
        kernel_impl.fft_radix2(np.ones(6, dtype=complex), False)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 33])
def test_jacobi_matches_lapack(kernel_impl, n, rng):
    A = random_hermitian(rng, n)
    eigs, sweeps = kernel_impl.jacobi_eigvalsh(A, 1e-12, 100)
    np.testing.assert_allclose(np.sort(eigs), np.linalg.eigvalsh(A), atol=1e-10)
    assert sweeps <= 20


def test_jacobi_leaves_input_alone(kernel_impl, rng):
    A = random_hermitian(rng, 6)
    before = A.copy()
    kernel_impl.jacobi_eigvalsh(A, 1e-12, 100)
    np.testing.assert_array_equal(A, before)


def test_jacobi_diagonal_needs_no_sweep(kernel_impl):
    eigs, sweeps = kernel_impl.jacobi_eigvalsh(np.diag([3.0, 1.0, 2.0]).astype(complex), 1e-12, 100)
    assert sweeps == 0
    np.testing.assert_array_equal(eigs, [3.0, 1.0, 2.0])


@pytest.mark.skipif(_backend.compiled_kernels is None, reason="compiled kernels not built or disabled")
def test_backends_agree(rng):
    A = random_hermitian(rng, 40)
    e1, _ = _backend.compiled_kernels.jacobi_eigvalsh(A, 1e-12, 100)
    e2, _ = _backend.python_kernels.jacobi_eigvalsh(A, 1e-12, 100)
    np.testing.assert_allclose(np.sort(e1), np.sort(e2), atol=1e-11)


def test_backend_selection_reports_name():
    assert _backend.BACKEND in ("cython", "python")
    assert _backend.kernels in (_backend.compiled_kernels, _backend.python_kernels)
