#!/usr/bin/env python3
"""Regenerate the classical modular polynomial tables shipped in ssgraph/data.

The coefficients of the classical modular polynomial Phi_ell(X, Y) are
determined by the functional equation Phi_ell(j(q^ell), j(q)) = 0 together
with the known leading structure (monic of degree ell+1 in each variable,
symmetric).  We compute the q-expansion of j with exact integer arithmetic,
plug it in, and solve the resulting linear system for the unknown
coefficients.  The solution is verified three independent ways before the
table is written:

  * the functional equation holds to much higher q-precision than was used
    while solving,
  * the Kronecker congruence Phi_ell(X,Y) = (X^ell - Y)(X - Y^ell) mod ell,
  * for ell = 2 the result equals the classical textbook polynomial.

Usage: python scripts/gen_modpoly_tables.py [ell ...]   (default: 2 3 5)
"""

import sys
from fractions import Fraction
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "ssgraph" / "data"

# Classical Phi_2, used as an end-to-end check of the whole pipeline.
PHI2_CLASSICAL = {
    (3, 0): 1,
    (2, 2): -1,
    (2, 1): 1488,
    (2, 0): -162000,
    (1, 1): 40773375,
    (1, 0): 8748000000,
    (0, 0): -157464000000000,
}


class Laurent:
    """Integer Laurent series truncated at a fixed top exponent."""

    __slots__ = ("off", "c", "top")

    def __init__(self, off, coeffs, top):
        self.off = off          # exponent of coeffs[0]
        self.c = list(coeffs)
        self.top = top          # coefficients kept for exponents <= top
        self._trim()

    def _trim(self):
        n = self.top - self.off + 1
        del self.c[max(n, 0):]

    def coeff(self, e):
        if e > self.top:
            raise ValueError(f"coefficient q^{e} beyond truncation {self.top}")
        i = e - self.off
        if 0 <= i < len(self.c):
            return self.c[i]
        return 0

    def __add__(self, other):
        off = min(self.off, other.off)
        n = max(self.off + len(self.c), other.off + len(other.c)) - off
        out = [0] * n
        for i, v in enumerate(self.c):
            out[self.off - off + i] += v
        for i, v in enumerate(other.c):
            out[other.off - off + i] += v
        return Laurent(off, out, min(self.top, other.top))

    def __mul__(self, other):
        off = self.off + other.off
        top = min(self.top + other.off, other.top + self.off,
                  self.top, other.top)
        n = top - off + 1
        if n <= 0:
            return Laurent(off, [], top)
        out = [0] * n
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            jmax = min(len(other.c), n - i)
            for j in range(jmax):
                b = other.c[j]
                if b:
                    out[i + j] += a * b
        return Laurent(off, out, top)

    def scale(self, k):
        return Laurent(self.off, [k * v for v in self.c], self.top)

    def pow(self, e):
        result = Laurent(0, [1], self.top)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result


def j_series(nterms):
    """q-expansion of the j-function: q^-1 + 744 + 196884 q + ... (exact)."""
    n = nterms + 2
    sigma3 = [0] * (n + 1)
    for d in range(1, n + 1):
        d3 = d ** 3
        for m in range(d, n + 1, d):
            sigma3[m] += d3
    e4 = [1] + [240 * sigma3[m] for m in range(1, n + 1)]

    # eta(q)^24 / q = prod (1-q^m)^24
    prod = [1] + [0] * n
    for m in range(1, n + 1):
        for k in range(n, m - 1, -1):
            prod[k] -= prod[k - m]
    eta24 = [0] * (n + 1)
    tmp = [1] + [0] * n
    for _ in range(24):
        new = [0] * (n + 1)
        for i, a in enumerate(tmp):
            if a == 0:
                continue
            for k in range(0, n + 1 - i):
                if prod[k]:
                    new[i + k] += a * prod[k]
        tmp = new
    eta24 = tmp

    # invert eta24 (unit power series), then j = E4^3 * eta24^-1 * q^-1
    inv = [0] * (n + 1)
    inv[0] = 1
    for k in range(1, n + 1):
        acc = 0
        for i in range(1, k + 1):
            acc += eta24[i] * inv[k - i]
        inv[k] = -acc

    e4s = Laurent(0, e4, n)
    num = e4s * e4s * e4s
    res = num * Laurent(0, inv, n)
    return Laurent(res.off - 1, res.c, n - 1)


def substitute_qpow(s, ell, top):
    """s(q) -> s(q^ell), truncated at exponent `top`."""
    off = s.off * ell
    out = [0] * (top - off + 1)
    for i, v in enumerate(s.c):
        e = (s.off + i) * ell
        if e > top:
            break
        out[e - off] = v
    return Laurent(off, out, top)


def solve_modpoly(ell, verify_extra=15):
    low = -ell * (ell + 1)
    unknowns = [(r, s) for r in range(ell + 1) for s in range(r, ell + 1)]
    n_eq = len(unknowns) + 8
    # the constant unknown only shows up at q^0, so the window must reach it
    top_solve = max(low + n_eq - 1, 2)
    # every product pow2[r] * pow1[s] must stay reliable through the
    # verification horizon; each factor of j(q^ell) erodes the horizon by
    # ell and each factor of j(q) by 1, so pad by (ell+1)^2 and change
    top = max(top_solve, verify_extra) + (ell + 1) ** 2 + 8

    base = j_series(top + ell * (ell + 1) + 4)
    j1 = Laurent(base.off, base.c, top)
    j2 = substitute_qpow(base, ell, top)

    pow1 = [Laurent(0, [1], top)]
    pow2 = [Laurent(0, [1], top)]
    for _ in range(ell + 1):
        pow1.append(pow1[-1] * j1)
        pow2.append(pow2[-1] * j2)

    terms = {}
    for (r, s) in unknowns:
        t = pow2[r] * pow1[s]
        if r != s:
            t = t + pow2[s] * pow1[r]
        terms[(r, s)] = t
    rhs_series = pow2[ell + 1] + pow1[ell + 1]

    exps = list(range(low, top_solve + 1))
    A = [[Fraction(terms[u].coeff(e)) for u in unknowns] for e in exps]
    b = [Fraction(-rhs_series.coeff(e)) for e in exps]

    sol = _solve_exact(A, b, len(unknowns))
    coeffs = {}
    for (r, s), v in zip(unknowns, sol):
        assert v.denominator == 1, f"non-integer coefficient at {(r, s)}: {v}"
        if v != 0:
            coeffs[(s, r)] = int(v)   # store with i >= j
    coeffs[(ell + 1, 0)] = 1

    _verify(ell, coeffs, pow1, pow2, low, max(top_solve, verify_extra))
    return coeffs


def _solve_exact(A, b, nvars):
    m = len(A)
    rows = [A[i] + [b[i]] for i in range(m)]
    piv = 0
    for col in range(nvars):
        sel = None
        for r in range(piv, m):
            if rows[r][col] != 0:
                sel = r
                break
        assert sel is not None, "rank deficient system"
        rows[piv], rows[sel] = rows[sel], rows[piv]
        pr = rows[piv]
        inv = 1 / pr[col]
        rows[piv] = pr = [v * inv for v in pr]
        for r in range(m):
            if r != piv and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * c for a, c in zip(rows[r], pr)]
        piv += 1
    for r in range(piv, m):
        assert rows[r][nvars] == 0, "inconsistent system"
    return [rows[i][nvars] for i in range(nvars)]


def _verify(ell, coeffs, pow1, pow2, low, top):
    total = None
    for (i, j), c in coeffs.items():
        t = pow2[i] * pow1[j]
        if i != j:
            t = t + pow2[j] * pow1[i]
        t = t.scale(c)
        total = t if total is None else total + t
    for e in range(low, top + 1):
        assert total.coeff(e) == 0, (
            f"functional equation fails at q^{e} for ell={ell}")

    # Kronecker congruence mod ell
    full = {}
    for (r, s), c in coeffs.items():
        full[(r, s)] = c
        full[(s, r)] = c
    kron = {}
    for (r, s), c in (((ell + 1, 0), 1), ((ell, ell), -1),
                      ((1, 1), -1), ((0, ell + 1), 1)):
        kron[(r, s)] = c
    seen = set(full) | set(kron)
    for key in seen:
        assert (full.get(key, 0) - kron.get(key, 0)) % ell == 0, (
            f"Kronecker congruence fails at {key} for ell={ell}")

    if ell == 2:
        assert coeffs == PHI2_CLASSICAL, "Phi_2 does not match classical table"


def write_table(ell, coeffs):
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    path = DATA_DIR / f"modpoly_{ell}.txt"
    lines = [f"ell {ell}"]
    for (r, s) in sorted(coeffs, reverse=True):
        lines.append(f"{r} {s} {coeffs[(r, s)]}")
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path} ({len(coeffs)} triples)")


def main(argv):
    ells = [int(a) for a in argv[1:]] or [2, 3, 5]
    for ell in ells:
        coeffs = solve_modpoly(ell)
        write_table(ell, coeffs)


if __name__ == "__main__":
    main(sys.argv)
