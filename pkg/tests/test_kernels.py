import math
import random
from fractions import Fraction

import pytest

from campana import kernels
from campana import _kernels_py

try:
    from campana import _kernels as _compiled
except ImportError:
    _compiled = None


def dumb_conic_scan(a, b, p, m):
    """Reference implementation: try every triple mod p^m, primitive only."""
    M = p**m
    for z in range(M):
        for x in range(M):
            for y in range(M):
                if z % p == 0 and x % p == 0 and y % p == 0:
                    continue
                if (z * z - a * x * x - b * y * y) % M == 0:
                    return True
    return False


def test_conic_kernel_vs_dumb_scan():
    rng = random.Random(1)
    for _ in range(60):
        p = rng.choice([3, 5])
        a = rng.randint(-10, 10) or 1
        b = rng.randint(-10, 10) or 1
        # strip square factors of p the way the oracle does
        for _ in range(3):
            if a % (p * p) == 0:
                a //= p * p
            if b % (p * p) == 0:
                b //= p * p
        m = 3
        got = kernels.conic_has_solution(a, b, p, m)
        assert got == dumb_conic_scan(a, b, p, m), (a, b, p)


def test_norm_mod_closed_forms():
    rng = random.Random(2)
    q = 2147483629
    for _ in range(200):
        y1, y2 = rng.randint(-99, 99), rng.randint(-99, 99)
        assert kernels.norm_mod([y1, y2], q) == (y1 * y1 - 2 * y2 * y2) % q
        y3 = rng.randint(-99, 99)
        want = y1**3 + 2 * y2**3 + 4 * y3**3 - 6 * y1 * y2 * y3
        assert kernels.norm_mod([y1, y2, y3], q) == want % q


def test_norm_int_exact_small():
    assert kernels.norm_int([3, 1]) == 7
    assert kernels.norm_int([1, 1, 1]) == 1
    assert kernels.norm_int([0, 0, 0]) == 0
    assert kernels.norm_int([5]) == 5


def test_norm_int_multiplicative():
    # the norm of a product is the product of norms; multiply in Z[t]/(t^3-2)
    rng = random.Random(3)
    for _ in range(50):
        u = [rng.randint(-50, 50) for _ in range(3)]
        v = [rng.randint(-50, 50) for _ in range(3)]
        w = [0] * 3
        for i in range(3):
            for j in range(3):
                k = i + j
                c = u[i] * v[j]
                if k >= 3:
                    k -= 3
                    c *= 2
                w[k] += c
        assert kernels.norm_int(w) == kernels.norm_int(u) * kernels.norm_int(v)


def test_norm_value_rational_and_homogeneous():
    v = [Fraction(1, 2), Fraction(1, 3)]
    assert kernels.norm_value(v) == Fraction(1, 4) - 2 * Fraction(1, 9)
    lam = Fraction(7, 5)
    n = len(v)
    assert kernels.norm_value([lam * x for x in v]) == lam**n * kernels.norm_value(v)


def test_norm_is_zero():
    assert kernels.norm_is_zero([0, 0, 0, 0])
    assert not kernels.norm_is_zero([1, 0, 0, 0])
    assert not kernels.norm_is_zero([Fraction(1, 7), Fraction(2, 3)])
    # only the trivial rational zero exists
    rng = random.Random(4)
    for _ in range(300):
        v = [Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(4)]
        if any(v):
            assert not kernels.norm_is_zero(v)


def test_norm_large_degree():
    rng = random.Random(5)
    w = [rng.randint(-10**6, 10**6) for _ in range(290)]
    n = kernels.norm_int(w)
    # spot-check the exact value against three independent moduli
    for q in kernels.crt_primes(6)[3:]:
        assert n % q == kernels.norm_mod(w, q)


@pytest.mark.skipif(_compiled is None, reason="compiled extension not built")
def test_backend_parity():
    rng = random.Random(6)
    q = 2147483629
    for _ in range(100):
        n = rng.randint(1, 12)
        w = [rng.randint(-10**4, 10**4) for _ in range(n)]
        assert _compiled.norm_mod(w, q) == _kernels_py.norm_mod(w, q)
    for _ in range(100):
        p = rng.choice([3, 5, 7, 11])
        a = rng.randint(-200, 200) or 1
        b = rng.randint(-200, 200) or 1
        assert _compiled.conic_has_solution(a, b, p, 4) == \
            _kernels_py.conic_has_solution(a, b, p, 4)


def test_crt_primes_are_prime_and_descending():
    ps = kernels.crt_primes(5)
    assert ps == sorted(ps, reverse=True)
    assert all(p < 2**31 for p in ps)
    from campana import arith
    assert all(arith.is_prime(p) for p in ps)
