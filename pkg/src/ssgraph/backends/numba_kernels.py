"""@njit-compiled kernels over F_{p^2} for the polynomial hot path.

Same packed form and API as :mod:`ssgraph.backends.numpy_kernels`; the
degree-squared loops (mul, quo_rem, gcd, powmod, batched evaluation) are
compiled with numba, everything O(n) is simply borrowed from the numpy
lane.  Requires p < 2**31: with operands reduced into [0, p), every
intermediate below stays under 2**63 in magnitude (the worst case is a
sum of two raw products, bounded by 2*(2**31-2)**2).
"""

from __future__ import annotations

import numpy as np
from numba import njit

from . import numpy_kernels as _nplane

NAME = "numba"

from_pairs = _nplane.from_pairs
to_pairs = _nplane.to_pairs
points_from_pairs = _nplane.points_from_pairs
points_to_pairs = _nplane.points_to_pairs
deg = _nplane.deg
add = _nplane.add
sub = _nplane.sub
neg = _nplane.neg
scal = _nplane.scal
shift = _nplane.shift
deriv = _nplane.deriv


@njit(cache=True)
def _trim(f):
    n = f.shape[1]
    while n > 0 and f[0, n - 1] == 0 and f[1, n - 1] == 0:
        n -= 1
    return f[:, :n].copy()


@njit(cache=True)
def _inv_mod(a, p):
    # extended Euclid; a nonzero mod p
    old_r, r = a % p, p
    old_s, s = 1, 0
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    return old_s % p


@njit(cache=True)
def mul(f, g, p, ns):
    nf = f.shape[1]
    ng = g.shape[1]
    if nf == 0 or ng == 0:
        return np.empty((2, 0), dtype=np.int64)
    out = np.zeros((2, nf + ng - 1), dtype=np.int64)
    for i in range(nf):
        fa = f[0, i]
        fb = f[1, i]
        if fa == 0 and fb == 0:
            continue
        for j in range(ng):
            ga = g[0, j]
            gb = g[1, j]
            t0 = ((fa * ga) % p + ((fb * gb) % p) * ns) % p
            t1 = (fa * gb + fb * ga) % p
            out[0, i + j] = (out[0, i + j] + t0) % p
            out[1, i + j] = (out[1, i + j] + t1) % p
    return _trim(out)


@njit(cache=True)
def quo_rem(f, g, p, ns):
    ng = g.shape[1]
    if ng == 0:
        raise ZeroDivisionError("polynomial division by zero")
    nf = f.shape[1]
    if nf < ng:
        return np.empty((2, 0), dtype=np.int64), f.copy()
    la = g[0, ng - 1]
    lb = g[1, ng - 1]
    den = ((la * la) % p - ((lb * lb) % p) * ns) % p
    dinv = _inv_mod(den, p)
    ia = (la * dinv) % p
    ib = (-lb * dinv) % p
    r = f.copy()
    q = np.zeros((2, nf - ng + 1), dtype=np.int64)
    for k in range(nf - ng, -1, -1):
        ra = r[0, k + ng - 1]
        rb = r[1, k + ng - 1]
        if ra == 0 and rb == 0:
            continue
        ca = ((ra * ia) % p + ((rb * ib) % p) * ns) % p
        cb = (ra * ib + rb * ia) % p
        q[0, k] = ca
        q[1, k] = cb
        for j in range(ng):
            ga = g[0, j]
            gb = g[1, j]
            s0 = ((ca * ga) % p + ((cb * gb) % p) * ns) % p
            s1 = (ca * gb + cb * ga) % p
            r[0, k + j] = (r[0, k + j] - s0) % p
            r[1, k + j] = (r[1, k + j] - s1) % p
    return _trim(q), _trim(r[:, : ng - 1])


@njit(cache=True)
def rem(f, g, p, ns):
    return quo_rem(f, g, p, ns)[1]


@njit(cache=True)
def monic(f, p, ns):
    n = f.shape[1]
    if n == 0:
        return f.copy()
    la = f[0, n - 1]
    lb = f[1, n - 1]
    if la == 1 and lb == 0:
        return f.copy()
    den = ((la * la) % p - ((lb * lb) % p) * ns) % p
    dinv = _inv_mod(den, p)
    ca = (la * dinv) % p
    cb = (-lb * dinv) % p
    out = np.empty((2, n), dtype=np.int64)
    for k in range(n):
        fa = f[0, k]
        fb = f[1, k]
        out[0, k] = ((fa * ca) % p + ((fb * cb) % p) * ns) % p
        out[1, k] = (fa * cb + fb * ca) % p
    return out


@njit(cache=True)
def gcd(f, g, p, ns):
    a = f.copy()
    b = g.copy()
    while b.shape[1] > 0:
        a, b = b, rem(a, b, p, ns)
    return monic(a, p, ns)


@njit(cache=True)
def _powmod64(f, e, m, p, ns):
    result = np.zeros((2, 1), dtype=np.int64)
    result[0, 0] = 1
    base = rem(f, m, p, ns)
    while e:
        if e & 1:
            result = rem(mul(result, base, p, ns), m, p, ns)
        e >>= 1
        if e:
            base = rem(mul(base, base, p, ns), m, p, ns)
    return result


def powmod(f, e: int, m, p: int, ns: int):
    e = int(e)
    if e < 0:
        raise ValueError("negative exponent")
    if e < 2 ** 62:
        return _powmod64(f, e, m, p, ns)
    # exponent too wide for int64: drive the bits from Python
    result = from_pairs([(1, 0)], p)
    base = rem(f, m, p, ns)
    while e:
        if e & 1:
            result = rem(mul(result, base, p, ns), m, p, ns)
        e >>= 1
        if e:
            base = rem(mul(base, base, p, ns), m, p, ns)
    return result


@njit(cache=True)
def eval_many(f, xs, p, ns):
    m = xs.shape[1]
    ra = np.zeros(m, dtype=np.int64)
    rb = np.zeros(m, dtype=np.int64)
    for k in range(f.shape[1] - 1, -1, -1):
        f0 = f[0, k]
        f1 = f[1, k]
        for i in range(m):
            xa = xs[0, i]
            xb = xs[1, i]
            na = ((ra[i] * xa) % p + ((rb[i] * xb) % p) * ns + f0) % p
            nb = (ra[i] * xb + rb[i] * xa + f1) % p
            ra[i] = na
            rb[i] = nb
    out = np.empty((2, m), dtype=np.int64)
    out[0] = ra
    out[1] = rb
    return out
