"""Vectorized int64 kernels over F_{p^2} (no compilation required).

Packed form: C-contiguous ``numpy`` array of shape ``(2, n)`` and dtype
int64, ascending degree, trailing zero columns trimmed.  Row 0 is the F_p
part, row 1 the coefficient of t with t^2 = ns.  Requires p < 2**31 so
that a single product of reduced values stays below 2**62.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"

_EMPTY = np.empty((2, 0), dtype=np.int64)


def _trim(f):
    n = f.shape[1]
    while n > 0 and f[0, n - 1] == 0 and f[1, n - 1] == 0:
        n -= 1
    if n == f.shape[1]:
        return np.ascontiguousarray(f)
    return np.ascontiguousarray(f[:, :n])


def from_pairs(pairs, p: int):
    pairs = list(pairs)
    if not pairs:
        return _EMPTY
    arr = np.array([[int(a) % p for a, _ in pairs], [int(b) % p for _, b in pairs]],
                   dtype=np.int64)
    return _trim(arr)


def to_pairs(f):
    return [(int(f[0, k]), int(f[1, k])) for k in range(f.shape[1])]


def points_from_pairs(pairs, p: int):
    """Pack a positional batch of field elements (no trailing-zero trim)."""
    pairs = list(pairs)
    if not pairs:
        return _EMPTY
    return np.array([[int(a) % p for a, _ in pairs], [int(b) % p for _, b in pairs]],
                    dtype=np.int64)


def points_to_pairs(arr):
    return [(int(arr[0, k]), int(arr[1, k])) for k in range(arr.shape[1])]


def deg(f) -> int:
    return f.shape[1] - 1


def _cinv(a: int, b: int, p: int, ns: int):
    den = (a * a - ns * b * b) % p
    inv = pow(den, -1, p)
    return (a * inv) % p, (-b * inv) % p


def add(f, g, p: int):
    nf, ng = f.shape[1], g.shape[1]
    n = max(nf, ng)
    out = np.zeros((2, n), dtype=np.int64)
    out[:, :nf] += f
    out[:, :ng] += g
    return _trim(out % p)


def sub(f, g, p: int):
    nf, ng = f.shape[1], g.shape[1]
    n = max(nf, ng)
    out = np.zeros((2, n), dtype=np.int64)
    out[:, :nf] += f
    out[:, :ng] -= g
    return _trim(out % p)


def neg(f, p: int):
    return _trim((-f) % p)


def scal(f, c, p: int, ns: int):
    ca, cb = int(c[0]) % p, int(c[1]) % p
    if ca == 0 and cb == 0:
        return _EMPTY
    out = np.empty_like(f)
    out[0] = ((ca * f[0]) % p + ((cb * f[1]) % p) * ns) % p
    out[1] = (ca * f[1] + cb * f[0]) % p
    return _trim(out)


def shift(f, k: int):
    if f.shape[1] == 0:
        return _EMPTY
    out = np.zeros((2, f.shape[1] + k), dtype=np.int64)
    out[:, k:] = f
    return out


def deriv(f, p: int):
    if f.shape[1] <= 1:
        return _EMPTY
    ks = np.arange(1, f.shape[1], dtype=np.int64) % p
    return _trim((f[:, 1:] * ks) % p)


def mul(f, g, p: int, ns: int):
    nf, ng = f.shape[1], g.shape[1]
    if nf == 0 or ng == 0:
        return _EMPTY
    # np.convolve accumulates up to min(nf, ng) raw products per slot
    if min(nf, ng) * (p - 1) ** 2 < 2 ** 62:
        aa = np.convolve(f[0], g[0]) % p
        bb = np.convolve(f[1], g[1]) % p
        ab = np.convolve(f[0], g[1]) % p
        ba = np.convolve(f[1], g[0]) % p
        out = np.stack(((aa + bb * ns) % p, (ab + ba) % p))
        return _trim(out)
    # near the 2**31 limit: accumulate row by row, reducing as we go
    out = np.zeros((2, nf + ng - 1), dtype=np.int64)
    for i in range(nf):
        fa, fb = int(f[0, i]), int(f[1, i])
        if fa == 0 and fb == 0:
            continue
        out[0, i : i + ng] = (out[0, i : i + ng]
                              + (fa * g[0]) % p + ((fb * g[1]) % p) * ns) % p
        out[1, i : i + ng] = (out[1, i : i + ng] + fa * g[1] + fb * g[0]) % p
    return _trim(out)


def quo_rem(f, g, p: int, ns: int):
    ng = g.shape[1]
    if ng == 0:
        raise ZeroDivisionError("polynomial division by zero")
    nf = f.shape[1]
    if nf < ng:
        return _EMPTY, np.ascontiguousarray(f)
    ia, ib = _cinv(int(g[0, ng - 1]), int(g[1, ng - 1]), p, ns)
    r0 = f[0].copy()
    r1 = f[1].copy()
    q = np.zeros((2, nf - ng + 1), dtype=np.int64)
    g0, g1 = g[0], g[1]
    for k in range(nf - ng, -1, -1):
        ra, rb = int(r0[k + ng - 1]), int(r1[k + ng - 1])
        if ra == 0 and rb == 0:
            continue
        ca = (ra * ia + ns * rb * ib) % p
        cb = (ra * ib + rb * ia) % p
        q[0, k] = ca
        q[1, k] = cb
        r0[k : k + ng] = (r0[k : k + ng] - ((ca * g0) % p + ((cb * g1) % p) * ns)) % p
        r1[k : k + ng] = (r1[k : k + ng] - (ca * g1 + cb * g0)) % p
    r = np.stack((r0[: ng - 1], r1[: ng - 1])) if ng > 1 else _EMPTY
    return _trim(q), _trim(r)


def rem(f, g, p: int, ns: int):
    return quo_rem(f, g, p, ns)[1]


def monic(f, p: int, ns: int):
    n = f.shape[1]
    if n == 0:
        return _EMPTY
    la, lb = int(f[0, n - 1]), int(f[1, n - 1])
    if la == 1 and lb == 0:
        return np.ascontiguousarray(f)
    return scal(f, _cinv(la, lb, p, ns), p, ns)


def gcd(f, g, p: int, ns: int):
    a, b = f, g
    while b.shape[1] > 0:
        a, b = b, rem(a, b, p, ns)
    return monic(a, p, ns)


def powmod(f, e: int, m, p: int, ns: int):
    if e < 0:
        raise ValueError("negative exponent")
    result = from_pairs([(1, 0)], p)
    base = rem(f, m, p, ns)
    while e:
        if e & 1:
            result = rem(mul(result, base, p, ns), m, p, ns)
        e >>= 1
        if e:
            base = rem(mul(base, base, p, ns), m, p, ns)
    return result


def eval_many(f, xs, p: int, ns: int):
    """Evaluate f at a batch of points, given and returned as shape (2, m)."""
    xs = np.asarray(xs, dtype=np.int64)
    m = xs.shape[1]
    ra = np.zeros(m, dtype=np.int64)
    rb = np.zeros(m, dtype=np.int64)
    for k in range(f.shape[1] - 1, -1, -1):
        na = ((ra * xs[0]) % p + ((rb * xs[1]) % p) * ns + f[0, k]) % p
        nb = (ra * xs[1] + rb * xs[0] + f[1, k]) % p
        ra, rb = na, nb
    return np.stack((ra, rb))
