# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: conic solvability scans and modular resultants.

Mirrors the API of _kernels_py; campana.kernels picks whichever imports.
"""

from libc.stdlib cimport malloc, free

BACKEND = "c"


def conic_has_solution(long long a, long long b, long long p, int m):
    """Exhaustive primitive-solution scan for z^2 = a*x^2 + b*y^2 mod p^m.

    a, b must be integers with p-adic valuation in {0, 1}; m must be large
    enough that any solution found mod p^m is Hensel-liftable (the caller
    guarantees m >= 2*(v_p(2) + max(v_p(a), v_p(b))) + 1).  Returns True iff
    a primitive triple (z, x, y) with the congruence exists.
    """
    cdef long long M = 1
    cdef int i
    for i in range(m):
        M *= p
    if M > 4_000_000:
        raise ValueError("modulus p^m too large for the scan kernel")
    cdef long long am = a % M
    if am < 0:
        am += M
    cdef long long bm = b % M
    if bm < 0:
        bm += M
    cdef unsigned char *sq = <unsigned char *> malloc(M)
    cdef unsigned char *bsq = <unsigned char *> malloc(M)
    if sq == NULL or bsq == NULL:
        if sq != NULL:
            free(sq)
        if bsq != NULL:
            free(bsq)
        raise MemoryError()
    cdef long long t, v
    cdef bint found = False
    try:
        for t in range(M):
            sq[t] = 0
            bsq[t] = 0
        for t in range(M):
            v = t * t % M
            sq[v] = 1
            bsq[bm * v % M] = 1
        # x is a unit, normalized to 1: z^2 = a + b*y^2
        for t in range(M):
            if sq[(am + bm * (t * t % M)) % M]:
                found = True
                break
        if not found:
            # y unit, normalized to 1: z^2 = a*x^2 + b
            for t in range(M):
                if sq[(am * (t * t % M) + bm) % M]:
                    found = True
                    break
        if not found:
            # z unit, normalized to 1: 1 - a*x^2 in {b*y^2}
            for t in range(M):
                v = (1 - am * (t * t % M)) % M
                if v < 0:
                    v += M
                if bsq[v]:
                    found = True
                    break
    finally:
        free(sq)
        free(bsq)
    return found


def norm_mod(list coeffs, long long q):
    """Res(x^n - 2, h) mod q, where h = sum(coeffs[j] * x^j), len(coeffs) = n.

    Equals the field norm of sum(coeffs[j] * 2^(j/n)) from Q(2^(1/n)) to Q,
    reduced mod q.  coeffs are Python ints (any size); q must be < 2^31.
    """
    cdef int n = len(coeffs)
    if q >= (1 << 31) or q < 2:
        raise ValueError("q out of range")
    cdef long long *f = <long long *> malloc((n + 1) * sizeof(long long))
    cdef long long *g = <long long *> malloc((n + 1) * sizeof(long long))
    if f == NULL or g == NULL:
        if f != NULL:
            free(f)
        if g != NULL:
            free(g)
        raise MemoryError()
    cdef int df, dg, i, j, shift
    cdef long long res, lc, inv, factor, c
    try:
        # f = x^n - 2
        for i in range(n + 1):
            f[i] = 0
        f[n] = 1
        f[0] = (q - 2 % q) % q
        df = n
        for i in range(n):
            g[i] = <long long> (coeffs[i] % q)
        dg = n - 1
        while dg >= 0 and g[dg] == 0:
            dg -= 1
        res = 1
        # Euclidean resultant; f monic at the start, so res = prod h(roots).
        while True:
            if dg < 0:
                res = 0
                break
            if dg == 0:
                # res *= g[0]^df
                lc = g[0]
                factor = 1
                c = lc
                j = df
                while j > 0:
                    if j & 1:
                        factor = factor * c % q
                    c = c * c % q
                    j >>= 1
                res = res * factor % q
                break
            # r = f mod g; res *= lc(g)^(df - dr) * (-1)^(df*dg) accounted below
            lc = g[dg]
            inv = _inv_mod(lc, q)
            for i in range(df, dg - 1, -1):
                c = f[i]
                if c != 0:
                    c = c * inv % q
                    shift = i - dg
                    for j in range(dg + 1):
                        f[j + shift] = (f[j + shift] - c * g[j]) % q
                        if f[j + shift] < 0:
                            f[j + shift] += q
            i = dg - 1
            while i >= 0 and f[i] == 0:
                i -= 1
            # res(f, g) = (-1)^(df*dg) * lc(g)^(df - dr) * res(g, r)
            if (df & 1) and (dg & 1):
                res = q - res if res != 0 else 0
            factor = 1
            c = lc
            j = df - (i if i >= 0 else 0)
            if i < 0:
                j = df
            while j > 0:
                if j & 1:
                    factor = factor * c % q
                c = c * c % q
                j >>= 1
            res = res * factor % q
            # swap roles
            for j in range(dg + 1):
                c = f[j]
                f[j] = g[j]
                g[j] = c
            df = dg
            dg = i
        return int(res % q)
    finally:
        free(f)
        free(g)


cdef long long _inv_mod(long long a, long long q):
    cdef long long t = 0, newt = 1, r = q, newr = a % q, quot, tmp
    while newr != 0:
        quot = r / newr
        tmp = t - quot * newt
        t = newt
        newt = tmp
        tmp = r - quot * newr
        r = newr
        newr = tmp
    if t < 0:
        t += q
    return t
