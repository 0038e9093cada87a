"""Reference kernels over F_{p^2} using plain Python integers.

Packed form here is a list of ``(a, b)`` pairs, ascending degree, with
trailing zero pairs trimmed; the pair ``(a, b)`` stands for ``a + b*t``
where ``t**2 = ns``.  Slow but exact for primes of any size, and the
semantic yardstick the other lanes are tested against.
"""

from __future__ import annotations

NAME = "object"

Packed = list  # list[tuple[int, int]]


def _trim(f: Packed) -> Packed:
    while f and f[-1] == (0, 0):
        f.pop()
    return f


def from_pairs(pairs, p: int) -> Packed:
    return _trim([(int(a) % p, int(b) % p) for a, b in pairs])


def to_pairs(f: Packed):
    return [(a, b) for a, b in f]


def points_from_pairs(pairs, p: int):
    """Pack a positional batch of field elements (no trailing-zero trim)."""
    return [(int(a) % p, int(b) % p) for a, b in pairs]


def points_to_pairs(out):
    return list(out)


def deg(f: Packed) -> int:
    return len(f) - 1


def _cmul(x, y, p, ns):
    a, b = x
    c, d = y
    return (a * c + ns * b * d) % p, (a * d + b * c) % p


def _cinv(x, p, ns):
    a, b = x
    den = (a * a - ns * b * b) % p
    inv = pow(den, -1, p)
    return (a * inv) % p, (-b * inv) % p


def add(f: Packed, g: Packed, p: int) -> Packed:
    n = max(len(f), len(g))
    out = []
    for k in range(n):
        fa, fb = f[k] if k < len(f) else (0, 0)
        ga, gb = g[k] if k < len(g) else (0, 0)
        out.append(((fa + ga) % p, (fb + gb) % p))
    return _trim(out)


def sub(f: Packed, g: Packed, p: int) -> Packed:
    n = max(len(f), len(g))
    out = []
    for k in range(n):
        fa, fb = f[k] if k < len(f) else (0, 0)
        ga, gb = g[k] if k < len(g) else (0, 0)
        out.append(((fa - ga) % p, (fb - gb) % p))
    return _trim(out)


def neg(f: Packed, p: int) -> Packed:
    return [((-a) % p, (-b) % p) for a, b in f]


def scal(f: Packed, c, p: int, ns: int) -> Packed:
    if c == (0, 0):
        return []
    return _trim([_cmul(x, c, p, ns) for x in f])


def shift(f: Packed, k: int) -> Packed:
    if not f:
        return []
    return [(0, 0)] * k + list(f)


def deriv(f: Packed, p: int) -> Packed:
    return _trim([((k * a) % p, (k * b) % p) for k, (a, b) in enumerate(f)][1:])


def mul(f: Packed, g: Packed, p: int, ns: int) -> Packed:
    if not f or not g:
        return []
    out = [[0, 0] for _ in range(len(f) + len(g) - 1)]
    for i, (fa, fb) in enumerate(f):
        if fa == 0 and fb == 0:
            continue
        for j, (ga, gb) in enumerate(g):
            out[i + j][0] += fa * ga + ns * fb * gb
            out[i + j][1] += fa * gb + fb * ga
    return _trim([(a % p, b % p) for a, b in out])


def quo_rem(f: Packed, g: Packed, p: int, ns: int):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return [], list(f)
    inv_lead = _cinv(g[-1], p, ns)
    r = [list(x) for x in f]
    ng = len(g)
    q = [(0, 0)] * (len(f) - ng + 1)
    for k in range(len(f) - ng, -1, -1):
        top = (r[k + ng - 1][0] % p, r[k + ng - 1][1] % p)
        if top == (0, 0):
            continue
        c = _cmul(top, inv_lead, p, ns)
        q[k] = c
        ca, cb = c
        for j, (ga, gb) in enumerate(g):
            r[k + j][0] -= ca * ga + ns * cb * gb
            r[k + j][1] -= ca * gb + cb * ga
    rem_part = _trim([(a % p, b % p) for a, b in r[: ng - 1]])
    return _trim(q), rem_part


def rem(f: Packed, g: Packed, p: int, ns: int) -> Packed:
    return quo_rem(f, g, p, ns)[1]


def monic(f: Packed, p: int, ns: int) -> Packed:
    if not f:
        return []
    if f[-1] == (1, 0):
        return list(f)
    return scal(f, _cinv(f[-1], p, ns), p, ns)


def gcd(f: Packed, g: Packed, p: int, ns: int) -> Packed:
    a, b = list(f), list(g)
    while b:
        a, b = b, rem(a, b, p, ns)
    return monic(a, p, ns)


def powmod(f: Packed, e: int, m: Packed, p: int, ns: int) -> Packed:
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


def eval_many(f: Packed, xs, p: int, ns: int):
    """Evaluate f at each point of xs (a list of coefficient pairs)."""
    out = []
    for x in xs:
        acc = (0, 0)
        for coeff in reversed(f):
            acc = _cmul(acc, x, p, ns)
            acc = ((acc[0] + coeff[0]) % p, (acc[1] + coeff[1]) % p)
        out.append(acc)
    return out
