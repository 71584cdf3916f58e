"""Benchmark the numba kernels against the pure-numpy fallbacks.

The package picks its kernel backend at import time: numba when available,
or the numpy fallbacks when MOISTTEX_NO_NUMBA is set. This script times
both implementations side by side on realistic image sizes and reports the
speedup, plus the end-to-end cost of a combined 63-feature extraction on
the active backend.

Usage: python benchmarks/bench_features.py [--size 64] [--repeat 20]
"""

import argparse
import time

import numpy as np

from moisttex import _kernels
from moisttex.features import combined_features
from moisttex.image_io import quantize


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=64)
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    img = rng.integers(0, 256, (args.size, args.size)).astype(np.uint8)
    q = quantize(img, 32)

    cases = [
        ("glcm counts (1,0)",
         lambda: _kernels.glcm_counts_numpy(q.values, 32, 1, 0),
         lambda: _kernels.glcm_counts_numba(q.values, 32, 1, 0)),
        ("glrlm counts 45deg",
         lambda: _kernels.glrlm_counts_numpy(q.values, 32, 1),
         lambda: _kernels.glrlm_counts_numba(q.values, 32, 1)),
        ("lbp bins R=3 P=24",
         lambda: _kernels.lbp_bin_counts_numpy(img, 3, 24),
         lambda: _kernels.lbp_bin_counts_numba(img, 3, 24)),
    ]

    print(f"image {args.size}x{args.size}, best of {args.repeat} runs")
    if not _kernels.HAS_NUMBA:
        print("numba not installed: timing the numpy fallbacks only")
        for name, numpy_fn, _ in cases:
            print(f"  {name:22s} numpy {timeit(numpy_fn, args.repeat) * 1e3:8.3f} ms")
        return

    for name, numpy_fn, numba_fn in cases:
        numba_fn()  # compile before timing
        assert np.array_equal(numpy_fn(), numba_fn()), f"{name}: backends disagree"
        t_np = timeit(numpy_fn, args.repeat)
        t_nb = timeit(numba_fn, args.repeat)
        print(f"  {name:22s} numpy {t_np * 1e3:8.3f} ms   numba {t_nb * 1e3:8.3f} ms"
              f"   speedup {t_np / t_nb:5.1f}x")

    backend = "numba" if _kernels.USE_NUMBA else "numpy (MOISTTEX_NO_NUMBA)"
    combined_features(img)  # warm the active path
    t = timeit(lambda: combined_features(img), max(3, args.repeat // 4))
    print(f"  combined 63 features   {t * 1e3:8.3f} ms on active backend [{backend}]")


if __name__ == "__main__":
    main()
