"""Compare the compiled and pure-numpy kernels.

    python benchmarks/bench_kernels.py --fft-sizes 256,4096,65536 --eig-sizes 33,65,129
"""
import argparse
import timeit

import numpy as np

from randtoeplitz import _backend


def _sizes(text):
    return [int(v) for v in text.split(",") if v]


def _best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--fft-sizes", type=_sizes, default=[256, 4096, 65536])
    p.add_argument("--eig-sizes", type=_sizes, default=[33, 65, 129])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)

    impls = {"python": _backend.python_kernels}
    if _backend.compiled_kernels is not None:
        impls["cython"] = _backend.compiled_kernels
    else:
        print("compiled extension not built; timing the numpy fallback only")

    rng = np.random.default_rng(0)
    print(f"{'kernel':<8}{'size':>8}" + "".join(f"{name + ' [s]':>14}" for name in impls) + f"{'speedup':>10}")
    for n in args.fft_sizes:
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        times = [_best(lambda k=k: k.fft_radix2(x), args.repeat) for k in impls.values()]
        _row("fft", n, times)
    for n in args.eig_sizes:
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        A = (A + A.conj().T) / 2
        times = [_best(lambda k=k: k.jacobi_eigvalsh(A, 1e-12, 100), args.repeat) for k in impls.values()]
        _row("jacobi", n, times)


def _row(kernel, n, times):
    speed = f"{times[0] / times[1]:>9.1f}x" if len(times) == 2 else ""
    print(f"{kernel:<8}{n:>8}" + "".join(f"{t:>14.5f}" for t in times) + speed)


if __name__ == "__main__":
    main()
