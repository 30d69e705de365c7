"""Benchmark the compiled kernels against the pure-Python/numpy fallback.

Usage: python3 bench/benchmark_kernels.py
"""
import random
import time

from campana import _kernels_py

try:
    from campana import _kernels
except ImportError:
    _kernels = None


def bench_conic(impl, trials):
    rng = random.Random(7)
    t0 = time.perf_counter()
    for _ in range(trials):
        p = rng.choice([3, 5, 7, 11, 13])
        a = rng.randint(-500, 500) or 1
        b = rng.randint(-500, 500) or 1
        impl.conic_has_solution(a, b, p, 5)
    return time.perf_counter() - t0


def bench_norm(impl, trials, n=290):
    rng = random.Random(11)
    q = 2147483629
    coeffs = [rng.randint(-10**6, 10**6) for _ in range(n)]
    t0 = time.perf_counter()
    for _ in range(trials):
        impl.norm_mod(coeffs, q)
    return time.perf_counter() - t0


def main():
    impls = [("python", _kernels_py)]
    if _kernels is not None:
        impls.append(("compiled", _kernels))
    else:
        print("compiled extension not built; benchmarking fallback only")

    print(f"{'kernel':<28}" + "".join(f"{name:>12}" for name, _ in impls))
    rows = [
        ("conic scan (200 symbols)", bench_conic, 200),
        ("norm mod q (100 @ n=290)", bench_norm, 100),
    ]
    for label, fn, trials in rows:
        times = [fn(impl, trials) for _, impl in impls]
        cells = "".join(f"{t:>11.3f}s" for t in times)
        speedup = f"  ({times[0] / times[-1]:.1f}x)" if len(times) == 2 else ""
        print(f"{label:<28}{cells}{speedup}")


if __name__ == "__main__":
    main()
