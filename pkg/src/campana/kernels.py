"""Kernel selection and exact norm-form evaluation.

At import we prefer the compiled extension (campana._kernels) and fall back
to the numpy implementation.  On top of the modular kernel this module
provides an exact evaluator for the degree-n norm form N(v_1..v_n) =
Res(x^n - 2, sum v_j x^(j-1)), via CRT up to a Hadamard-style bound.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence

from . import arith

try:  # pragma: no cover - depends on the build
    from . import _kernels as _impl
except ImportError:  # pragma: no cover
    from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
conic_has_solution = _impl.conic_has_solution
norm_mod = _impl.norm_mod

_CRT_PRIME_CEILING = (1 << 31) - 1
_crt_primes: List[int] = []


def crt_primes(k: int) -> List[int]:
    """The k largest primes below 2^31, cached."""
    while len(_crt_primes) < k:
        n = (_crt_primes[-1] if _crt_primes else _CRT_PRIME_CEILING + 2) - 2
        while not arith.is_prime(n):
            n -= 2
        _crt_primes.append(n)
    return _crt_primes[:k]


def _norm_int_bound_bits(w: Sequence[int]) -> int:
    """bits of a bound on |det| of the multiplication matrix of sum w_j t^(j-1)
    in Z[t]/(t^n - 2): rows have entries among {w_j, 2 w_j} permuted."""
    n = len(w)
    mw = max(abs(x) for x in w)
    row = 2 * mw * math.isqrt(n) + 2 * mw
    return n * max(1, row.bit_length()) + 2


def norm_int(w: Sequence[int]) -> int:
    """Exact norm of an integer coefficient vector, by CRT of modular
    resultants up to a certified bound."""
    n = len(w)
    if n == 1:
        return w[0]
    if all(x == 0 for x in w):
        return 0
    bits = _norm_int_bound_bits(w)
    k = bits // 30 + 2
    primes = crt_primes(k)
    coeffs = list(w)
    x, m = 0, 1
    for q in primes:
        r = norm_mod(coeffs, q)
        t = (r - x) * pow(m, -1, q) % q
        x += m * t
        m *= q
        if m.bit_length() > bits + 1:
            break
    if x > m // 2:
        x -= m
    return x


def norm_value(values: Sequence[Fraction]) -> Fraction:
    """Exact norm-form value at a rational point (homogeneous of degree n)."""
    vals = [Fraction(v) for v in values]
    n = len(vals)
    if n == 1:
        return vals[0]
    lcm = 1
    for v in vals:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    w = [int(v * lcm) for v in vals]
    return Fraction(norm_int(w), lcm**n)


def norm_is_zero(values: Sequence[Fraction]) -> bool:
    """Exact zero test, cheap path first: a single nonzero residue certifies
    nonvanishing; otherwise fall back to the exact value."""
    vals = [Fraction(v) for v in values]
    if all(v == 0 for v in vals):
        return True
    lcm = 1
    for v in vals:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    w = [int(v * lcm) for v in vals]
    for q in crt_primes(3):
        if norm_mod(w, q) != 0:
            return False
    return norm_int(w) == 0
