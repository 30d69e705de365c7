"""Numpy/pure-Python fallback for the hot kernels.

Same API as the compiled _kernels extension; slower, used when the
extension is unavailable.  See campana.kernels for the selection logic.
"""
from __future__ import annotations

import numpy as np

BACKEND = "py"


def conic_has_solution(a: int, b: int, p: int, m: int) -> bool:
    """Exhaustive primitive-solution scan for z^2 = a*x^2 + b*y^2 mod p^m.

    Same contract as the compiled kernel: valuations of a, b at p lie in
    {0, 1} and m is large enough for Hensel lifting.
    """
    M = p**m
    if M > 4_000_000:
        raise ValueError("modulus p^m too large for the scan kernel")
    am, bm = a % M, b % M
    t = np.arange(M, dtype=np.int64)
    t2 = t * t % M
    is_square = np.zeros(M, dtype=bool)
    is_square[t2] = True
    b_sq = np.zeros(M, dtype=bool)
    b_sq[bm * t2 % M] = True
    # x unit (normalized to 1), then y unit, then z unit
    if is_square[(am + bm * t2) % M].any():
        return True
    if is_square[(am * t2 + bm) % M].any():
        return True
    return bool(b_sq[(1 - am * t2) % M].any())


def norm_mod(coeffs: list, q: int) -> int:
    """Res(x^n - 2, h) mod q for h = sum(coeffs[j] x^j), len(coeffs) = n."""
    n = len(coeffs)
    if q >= (1 << 31) or q < 2:
        raise ValueError("q out of range")
    f = [0] * (n + 1)
    f[n] = 1
    f[0] = (-2) % q
    df = n
    g = [c % q for c in coeffs]
    dg = n - 1
    while dg >= 0 and g[dg] == 0:
        dg -= 1
    res = 1
    while True:
        if dg < 0:
            return 0
        if dg == 0:
            return res * pow(g[0], df, q) % q
        lc = g[dg]
        inv = pow(lc, -1, q)
        for i in range(df, dg - 1, -1):
            c = f[i]
            if c:
                c = c * inv % q
                shift = i - dg
                for j in range(dg + 1):
                    f[j + shift] = (f[j + shift] - c * g[j]) % q
        dr = dg - 1
        while dr >= 0 and f[dr] == 0:
            dr -= 1
        if (df & 1) and (dg & 1):
            res = (-res) % q
        res = res * pow(lc, df - (dr if dr >= 0 else 0), q) % q
        f, g = g, f
        df, dg = dg, dr
