"""Univariate polynomials over any field context, with factorization.

The Polynomial class is generic: coefficients are FieldElements, ascending
degree, trailing zeros trimmed.  Over F_{p^2} the degree-squared operators
(mul, divrem, gcd, powmod, batched evaluation) are routed through the
compiled kernels in :mod:`ssgraph.backends`; prime and extension contexts
take the plain-Python path, which is also the reference semantics.

Factorization is squarefree decomposition (characteristic-p aware), then
distinct-degree splitting, then seeded Cantor-Zassenhaus equal-degree
splitting.  All randomness is drawn from a PRNG keyed on (seed, context,
input coefficients), so results are bit-stable across runs and backends.
"""

from __future__ import annotations

import hashlib
import random
from typing import Iterable, List, Optional, Sequence, Tuple

from . import backends
from .ff import FieldContext, FieldElement


class Polynomial:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs: Sequence[FieldElement]):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_ints(cls, ctx: FieldContext, ints: Iterable) -> "Polynomial":
        return cls(ctx, [ctx.el(c) for c in ints])

    @classmethod
    def zero(cls, ctx: FieldContext) -> "Polynomial":
        return cls(ctx, [])

    @classmethod
    def one(cls, ctx: FieldContext) -> "Polynomial":
        return cls(ctx, [ctx.one()])

    @classmethod
    def x(cls, ctx: FieldContext) -> "Polynomial":
        return cls(ctx, [ctx.zero(), ctx.one()])

    @classmethod
    def constant(cls, c: FieldElement) -> "Polynomial":
        return cls(c.ctx, [c])

    # -- basics ------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.ctx.one()

    def lead(self) -> FieldElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> FieldElement:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ctx.zero()

    def sort_key(self):
        """Canonical ordering: by degree, then coefficient vectors."""
        return (self.degree, tuple(c.key() for c in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx._key, tuple(c.key() for c in self.coeffs)))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            cs = repr(c)
            if "+" in cs or "-" in cs:
                cs = f"({cs})"
            if k == 0:
                parts.append(cs)
            elif k == 1:
                parts.append("x" if c == self.ctx.one() else f"{cs}*x")
            else:
                parts.append(f"x^{k}" if c == self.ctx.one() else f"{cs}*x^{k}")
        return " + ".join(parts)

    # -- lane plumbing (quadratic contexts ride the compiled kernels) -------

    def _use_lane(self) -> bool:
        return self.ctx.kind == "quadratic"

    def _packed(self, lane):
        return lane.from_pairs([c.coeffs for c in self.coeffs], self.ctx.p)

    @staticmethod
    def _unpacked(ctx, lane, packed) -> "Polynomial":
        return Polynomial(ctx, [FieldElement(ctx, (int(a), int(b)))
                                for a, b in lane.to_pairs(packed)])

    # -- ring operations -----------------------------------------------------

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial) or other.ctx != self.ctx:
            raise TypeError("polynomial contexts differ")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.ctx, [self.coeff(k) + other.coeff(k) for k in range(n)])

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ctx, [-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.ctx, [self.coeff(k) - other.coeff(k) for k in range(n)])

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Polynomial(self.ctx, [])
        if self._use_lane():
            lane = backends.lane_for_prime(self.ctx.p)
            out = lane.mul(self._packed(lane), other._packed(lane),
                           self.ctx.p, self.ctx.ns)
            return self._unpacked(self.ctx, lane, out)
        zero = self.ctx.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.ctx, out)

    def scale(self, c: FieldElement) -> "Polynomial":
        return Polynomial(self.ctx, [a * c for a in self.coeffs])

    def shift(self, k: int) -> "Polynomial":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Polynomial(self.ctx, [self.ctx.zero()] * k + list(self.coeffs))

    def divrem(self, other: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Polynomial(self.ctx, []), self
        if self._use_lane():
            lane = backends.lane_for_prime(self.ctx.p)
            q, r = lane.quo_rem(self._packed(lane), other._packed(lane),
                                self.ctx.p, self.ctx.ns)
            return self._unpacked(self.ctx, lane, q), self._unpacked(self.ctx, lane, r)
        rem = list(self.coeffs)
        nd = other.degree
        inv_lead = other.lead().inv()
        q = [self.ctx.zero()] * (len(rem) - nd)
        for k in range(len(rem) - nd - 1, -1, -1):
            c = rem[k + nd] * inv_lead
            if not c:
                continue
            q[k] = c
            for j in range(nd + 1):
                rem[k + j] = rem[k + j] - c * other.coeffs[j]
        return Polynomial(self.ctx, q), Polynomial(self.ctx, rem[:nd])

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return self.divrem(other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divrem(other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.lead()
        if lead == self.ctx.one():
            return self
        return self.scale(lead.inv())

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic greatest common divisor."""
        self._check(other)
        if self._use_lane():
            lane = backends.lane_for_prime(self.ctx.p)
            out = lane.gcd(self._packed(lane), other._packed(lane),
                           self.ctx.p, self.ctx.ns)
            return self._unpacked(self.ctx, lane, out)
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, modulus: "Polynomial") -> "Polynomial":
        """self**e mod modulus (square-and-multiply)."""
        self._check(modulus)
        if e < 0:
            raise ValueError("negative exponent")
        if modulus.is_zero():
            raise ZeroDivisionError("powmod with zero modulus")
        if modulus.degree == 0:
            return Polynomial(self.ctx, [])
        if self._use_lane():
            lane = backends.lane_for_prime(self.ctx.p)
            out = lane.powmod(self._packed(lane), e, modulus._packed(lane),
                              self.ctx.p, self.ctx.ns)
            return self._unpacked(self.ctx, lane, out)
        result = Polynomial.one(self.ctx)
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result

    def deriv(self) -> "Polynomial":
        return Polynomial(self.ctx, [k * c for k, c in enumerate(self.coeffs)][1:])

    # -- evaluation ------------------------------------------------------

    def __call__(self, x: FieldElement) -> FieldElement:
        return self.eval_many([x])[0]

    def eval_in(self, x: FieldElement) -> FieldElement:
        """Horner evaluation at a point of this context or an extension of it."""
        if x.ctx == self.ctx:
            return self(x)
        K = x.ctx
        acc = K.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + K.el(c)
        return acc

    def eval_many(self, points: Sequence[FieldElement]) -> List[FieldElement]:
        if not points:
            return []
        if self._use_lane():
            lane = backends.lane_for_prime(self.ctx.p)
            xs = lane.points_from_pairs([x.coeffs for x in points], self.ctx.p)
            out = lane.eval_many(self._packed(lane), xs, self.ctx.p, self.ctx.ns)
            return [FieldElement(self.ctx, (int(a), int(b)))
                    for a, b in lane.points_to_pairs(out)]
        res = []
        zero = self.ctx.zero()
        for x in points:
            acc = zero
            for c in reversed(self.coeffs):
                acc = acc * x + c
            res.append(acc)
        return res


# -- factorization ------------------------------------------------------------


def _rng_for(seed: int, ctx: FieldContext, f: Polynomial, tag: str) -> random.Random:
    blob = repr((tag, seed, ctx._key, tuple(c.key() for c in f.coeffs))).encode()
    return random.Random(int.from_bytes(hashlib.sha256(blob).digest(), "big"))


def _random_element(ctx: FieldContext, rng: random.Random) -> FieldElement:
    if ctx.kind == "prime":
        return ctx.el(rng.randrange(ctx.p))
    if ctx.kind == "quadratic":
        return ctx.el((rng.randrange(ctx.p), rng.randrange(ctx.p)))
    return ctx.el(tuple(_random_element(ctx.base, rng) for _ in range(ctx.degree)))


def _random_poly(ctx: FieldContext, degree: int, rng: random.Random) -> Polynomial:
    return Polynomial(ctx, [_random_element(ctx, rng) for _ in range(degree + 1)])


def _pth_root(f: Polynomial) -> Polynomial:
    """Inverse of g |-> g(x)^p for f known to be a p-th power (f' = 0)."""
    ctx = f.ctx
    p = ctx.p
    e = ctx.order // p  # Frobenius inverse exponent on coefficients
    coeffs = [f.coeff(k * p) ** e for k in range(f.degree // p + 1)]
    return Polynomial(ctx, coeffs)


def squarefree_decomposition(f: Polynomial) -> List[Tuple[Polynomial, int]]:
    """f monic -> [(g_i, m_i)] with f = prod g_i^{m_i}, g_i squarefree, coprime."""
    out: List[Tuple[Polynomial, int]] = []
    if f.degree < 1:
        return out
    c = f.gcd(f.deriv())
    w = f // c
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        # leftover is a perfect p-th power
        for g, m in squarefree_decomposition(_pth_root(c)):
            out.append((g, m * f.ctx.p))
    return out


def _ddf(f: Polynomial) -> List[Tuple[Polynomial, int]]:
    """Distinct-degree splitting of a monic squarefree f."""
    ctx = f.ctx
    q = ctx.order
    x = Polynomial.x(ctx)
    out = []
    h = x % f
    d = 0
    g = f
    while g.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(q, g)
        piece = g.gcd(h - (x % g))
        if piece.degree > 0:
            out.append((piece, d))
            g = g // piece
            h = h % g
    if g.degree > 0:
        out.append((g, g.degree))
    return out


def _edf(f: Polynomial, d: int, rng: random.Random) -> List[Polynomial]:
    """Split monic squarefree f, all of whose irreducible factors have degree d."""
    if f.degree == d:
        return [f]
    ctx = f.ctx
    q = ctx.order
    one = Polynomial.one(ctx)
    while True:
        r = _random_poly(ctx, f.degree - 1, rng) % f
        if r.degree < 1:
            continue
        # trace map down the degree-d Frobenius tower keeps exponents <= q
        t = r
        fr = r
        for _ in range(d - 1):
            fr = fr.powmod(q, f)
            t = (t + fr) % f
        u = t.powmod((q - 1) // 2, f)
        g = f.gcd(u - one)
        if 0 < g.degree < f.degree:
            return _edf(g, d, rng) + _edf(f // g, d, rng)


def factor(f: Polynomial, seed: int = 0) -> List[Tuple[Polynomial, int]]:
    """Monic irreducible factors with multiplicity, canonically sorted.

    The product of factor^multiplicity times f's leading coefficient
    reproduces f.  Deterministic for a given seed.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = _rng_for(seed, f.ctx, f, "factor")
    work = f.monic()
    out: List[Tuple[Polynomial, int]] = []
    for g, mult in squarefree_decomposition(work):
        for piece, d in _ddf(g):
            for irr in _edf(piece, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda pair: pair[0].sort_key())
    return out


def roots_in_field(f: Polynomial) -> List[Tuple[FieldElement, int]]:
    """Roots of f in its own context, with multiplicities, canonically sorted."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    rng = _rng_for(0, f.ctx, f, "roots")
    ctx = f.ctx
    q = ctx.order
    x = Polynomial.x(ctx)
    out: List[Tuple[FieldElement, int]] = []
    for g, mult in squarefree_decomposition(f.monic()):
        # product of the linear factors of g
        lin = g.gcd(x.powmod(q, g) - (x % g))
        if lin.degree < 1:
            continue
        for piece in _edf(lin, 1, rng):
            out.append((-piece.coeff(0), mult))
    out.sort(key=lambda pair: pair[0].key())
    return out


def find_irreducible(ctx: FieldContext, degree: int, seed: int = 0) -> Polynomial:
    """A monic irreducible of the given degree, deterministic per seed."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if degree == 1:
        return Polynomial.x(ctx)
    blob = repr(("find_irreducible", seed, ctx._key, degree)).encode()
    rng = random.Random(int.from_bytes(hashlib.sha256(blob).digest(), "big"))
    while True:
        coeffs = [_random_element(ctx, rng) for _ in range(degree)] + [ctx.one()]
        cand = Polynomial(ctx, coeffs)
        if is_irreducible(cand):
            return cand


def is_irreducible(f: Polynomial) -> bool:
    """Rabin's test: x^{q^d} = x mod f and no proper Frobenius fixed part."""
    ctx = f.ctx
    d = f.degree
    if d < 1:
        return False
    if d == 1:
        return True
    q = ctx.order
    x = Polynomial.x(ctx)
    # prime divisors of d
    divs = []
    n = d
    t = 2
    while t * t <= n:
        if n % t == 0:
            divs.append(t)
            while n % t == 0:
                n //= t
        t += 1
    if n > 1:
        divs.append(n)
    for t in divs:
        h = x.powmod(q ** (d // t), f) - (x % f)
        if f.gcd(h).degree != 0:
            return False
    return x.powmod(q ** d, f) == x % f
