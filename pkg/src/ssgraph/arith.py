"""Exact integer helpers: primality, Legendre symbols, small norm equations.

Everything here is plain bignum arithmetic.  The norm-equation solvers do
bounded exhaustive searches and return *canonical* representatives so that
downstream consumers (ideal labelling, report output) are deterministic.
"""

import math
import random
from fractions import Fraction

Integer = int
Rational = Fraction

# Deterministic Miller-Rabin witness set, valid for every n < 2^64.
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_U64 = 1 << 64


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test.

    Deterministic for n < 2^64; for larger n runs 64 pseudo-random rounds
    (error probability < 4^-64), with bases drawn from a PRNG seeded by n
    itself so repeated calls agree.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < _U64:
        bases = _SMALL_PRIMES
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1) for _ in range(64)]
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, 1} for an odd prime p."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"legendre symbol needs an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def solve_sum_of_squares(ell: int) -> tuple[int, int]:
    """The representation ell = m^2 + n^2 with 0 < m < n, for ell = 1 mod 4.

    Returned pair is canonical: the one with the smallest first entry.
    Uniqueness (up to order/sign) holds because ell is prime.
    """
    if ell % 4 != 1 or not is_prime(ell):
        raise ValueError(f"{ell} is not a prime congruent to 1 mod 4")
    m = 1
    while 2 * m * m <= ell:
        rest = ell - m * m
        n = math.isqrt(rest)
        if n * n == rest:
            return (m, n)
        m += 1
    raise AssertionError(f"no two-square representation found for {ell}")


def solve_hermite_norm(ell: int) -> tuple[int, int]:
    """The representation ell = m^2 + m*n + n^2 with 0 < m <= n, ell = 1 mod 3.

    Canonical: smallest first entry.
    """
    if ell % 3 != 1 or not is_prime(ell):
        raise ValueError(f"{ell} is not a prime congruent to 1 mod 3")
    m = 1
    while m * m <= ell:
        disc = 4 * ell - 3 * m * m
        if disc < 0:
            break
        s = math.isqrt(disc)
        if s * s == disc and (s - m) % 2 == 0:
            n = (s - m) // 2
            if n >= m > 0:
                return (m, n)
        m += 1
    raise AssertionError(f"no hermite-form representation found for {ell}")


def norm_equation_solutions(form: str, value: int, exclude_divisor: int):
    """All integer pairs (x, y) with form(x, y) == value and exclude ∤ x.

    ``form`` is "sum_squares" (x^2 + y^2) or "hermite" (x^2 + xy + y^2).
    Bounded exhaustive search over |x|, |y| <= ceil(sqrt(4*value/3)), which
    covers both forms since each is >= 3/4 * max(x, y)^2.  Results are
    sorted lexicographically.
    """
    if form not in ("sum_squares", "hermite"):
        raise ValueError(f"unknown norm form {form!r}")
    if value < 0:
        return []
    if exclude_divisor <= 0:
        raise ValueError("exclude_divisor must be a positive integer")
    bound = math.isqrt((4 * value) // 3)
    while 3 * bound * bound < 4 * value:
        bound += 1
    found = []
    for x in range(-bound, bound + 1):
        if x % exclude_divisor == 0:
            continue
        if form == "sum_squares":
            rest = value - x * x
            if rest < 0:
                continue
            y = math.isqrt(rest)
            if y * y != rest:
                continue
            found.append((x, y))
            if y != 0:
                found.append((x, -y))
        else:
            disc = 4 * value - 3 * x * x
            if disc < 0:
                continue
            s = math.isqrt(disc)
            if s * s != disc:
                continue
            for sgn in ((s,) if s == 0 else (s, -s)):
                if (sgn - x) % 2 == 0:
                    found.append((x, (sgn - x) // 2))
    return sorted(set(found))
