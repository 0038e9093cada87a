"""Short Weierstrass curves y^2 = x^3 + ax + b over field contexts.

Provides the group law, j-invariants and canonical models, division
polynomials in their y-stripped form, x-only multiplication (so torsion
orbits can be walked without ever leaving x-coordinates), and
Frobenius-trace classification: exhaustive vectorized point counting for
p^2 <= 10^6, candidate elimination on random points beyond that.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .ff import FieldContext, FieldElement, sqrt as ff_sqrt
from .poly import Polynomial

SUPERSINGULAR_LABELS = ("0", "+p", "-p", "+2p", "-2p")

#: exhaustive point counting below this field size, sampling above
EXHAUSTIVE_COUNT_LIMIT = 10 ** 6


class Curve:
    __slots__ = ("ctx", "a", "b")

    def __init__(self, a: FieldElement, b: FieldElement):
        self.ctx = a.ctx
        self.a = a
        self.b = self.ctx.el(b)
        disc = 4 * a ** 3 + 27 * self.b ** 2
        if not disc:
            raise ValueError("singular curve: 4a^3 + 27b^2 = 0")

    def __eq__(self, other):
        return (isinstance(other, Curve) and self.ctx == other.ctx
                and self.a == other.a and self.b == other.b)

    def __hash__(self):
        return hash((self.ctx._key, self.a.key(), self.b.key()))

    def __repr__(self):
        return f"Curve(y^2 = x^3 + ({self.a!r})x + ({self.b!r}))"

    def rhs(self, x: FieldElement) -> FieldElement:
        """x^3 + ax + b, in x's own (possibly larger) context."""
        K = x.ctx
        return x ** 3 + K.el(self.a) * x + K.el(self.b)


class Point:
    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: Curve, x: Optional[FieldElement],
                 y: Optional[FieldElement], check: bool = True):
        self.curve = curve
        self.x = x
        self.y = y
        if check and x is not None:
            if y * y != curve.rhs(x):
                raise ValueError("point not on curve")

    @classmethod
    def infinity(cls, curve: Curve) -> "Point":
        return cls(curve, None, None, check=False)

    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        return (isinstance(other, Point) and self.curve == other.curve
                and self.x == other.x and self.y == other.y)

    def __hash__(self):
        key = None if self.x is None else (self.x.key(), self.y.key())
        return hash((hash(self.curve), key))

    def __repr__(self):
        return "O" if self.is_infinity() else f"({self.x!r}, {self.y!r})"

    def __neg__(self) -> "Point":
        if self.is_infinity():
            return self
        return Point(self.curve, self.x, -self.y, check=False)

    def __add__(self, other: "Point") -> "Point":
        if not isinstance(other, Point) or other.curve != self.curve:
            raise TypeError("points on different curves")
        if self.is_infinity():
            return other
        if other.is_infinity():
            return self
        E = self.curve
        if self.x == other.x:
            if self.y != other.y or not self.y:
                return Point.infinity(E)
            lam = (3 * self.x * self.x + self.x.ctx.el(E.a)) / (2 * self.y)
        else:
            lam = (other.y - self.y) / (other.x - self.x)
        x3 = lam * lam - self.x - other.x
        y3 = lam * (self.x - x3) - self.y
        return Point(E, x3, y3, check=False)

    def __sub__(self, other: "Point") -> "Point":
        return self + (-other)

    def scalar_mul(self, k: int) -> "Point":
        if k < 0:
            return (-self).scalar_mul(-k)
        result = Point.infinity(self.curve)
        addend = self
        while k:
            if k & 1:
                result = result + addend
            k >>= 1
            if k:
                addend = addend + addend
        return result

    __mul__ = scalar_mul
    __rmul__ = scalar_mul


def j_invariant(E: Curve) -> FieldElement:
    """1728 * 4a^3 / (4a^3 + 27b^2)."""
    four_a3 = 4 * E.a ** 3
    return E.ctx.el(1728) * four_a3 / (four_a3 + 27 * E.b ** 2)


def curve_from_j(j: FieldElement) -> Curve:
    """A fixed model with the given j-invariant.

    j=0 -> y^2 = x^3 + 1; j=1728 -> y^2 = x^3 + x; otherwise
    (a, b) = (3j(1728-j), 2j(1728-j)^2), which plugs back to j exactly.
    The twist class is irrelevant downstream: only codomain j's are used.
    """
    ctx = j.ctx
    if not j:
        return Curve(ctx.zero(), ctx.one())
    if j == ctx.el(1728):
        return Curve(ctx.one(), ctx.zero())
    k = ctx.el(1728) - j
    return Curve(3 * j * k, 2 * j * k * k)


def lift_x(E: Curve, x: FieldElement) -> Optional[Point]:
    """A point of E with the given x-coordinate (canonical y), if one exists.

    x may live in an extension of E's context; the point then does too.
    """
    y = ff_sqrt(E.rhs(x))
    if y is None:
        return None
    return Point(E, x, y, check=False)


# -- division polynomials -----------------------------------------------------

# The table holds the y-stripped polynomials: psi_n for odd n equals the
# classical division polynomial; for even n the classical psi_n is y times
# the entry stored here.  With f00 = x^3 + ax + b (= y^2), the doubling
# recurrences become:
#   psi_{2m+1} = psi_{m+2} psi_m^3 * f00^2   - psi_{m-1} psi_{m+1}^3        (m even)
#              = psi_{m+2} psi_m^3           - psi_{m-1} psi_{m+1}^3 * f00^2 (m odd)
#   psi_{2m}   = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2) / 2


@functools.lru_cache(maxsize=64)
def _psi_table(E: Curve, upto: int) -> Tuple[Polynomial, ...]:
    ctx = E.ctx
    a, b = E.a, E.b
    x = Polynomial.x(ctx)
    table: List[Polynomial] = [
        Polynomial.zero(ctx),
        Polynomial.one(ctx),
        Polynomial.from_ints(ctx, [2]),
        Polynomial(ctx, [-(a * a), 12 * b, 6 * a, ctx.zero(), ctx.el(3)]),
        Polynomial(ctx, [-8 * b * b - a ** 3, -4 * a * b, -5 * a * a,
                         20 * b, 5 * a, ctx.zero(), ctx.one()]).scale(ctx.el(4)),
    ]
    f00 = Polynomial(ctx, [b, a, ctx.zero(), ctx.one()])
    f00_sq = f00 * f00
    inv2 = ctx.el(2).inv()
    for k in range(5, upto + 1):
        if k % 2 == 1:
            m = (k - 1) // 2
            t1 = table[m + 2] * table[m] * table[m] * table[m]
            t2 = table[m - 1] * table[m + 1] * table[m + 1] * table[m + 1]
            if m % 2 == 0:
                table.append(t1 * f00_sq - t2)
            else:
                table.append(t1 - t2 * f00_sq)
        else:
            m = k // 2
            inner = table[m + 2] * table[m - 1] * table[m - 1] \
                - table[m - 2] * table[m + 1] * table[m + 1]
            table.append((table[m] * inner).scale(inv2))
    return tuple(table[: upto + 1])


def division_polynomial(E: Curve, n: int) -> Polynomial:
    """y-stripped n-division polynomial; for n=2 the 2-torsion cubic itself.

    For odd n this is the classical psi_n: degree (n^2-1)/2, roots exactly
    the x-coordinates of the nonzero n-torsion.  For even n >= 4 the
    classical psi_n factors as y * (entry returned here).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 2:
        return Polynomial(E.ctx, [E.b, E.a, E.ctx.zero(), E.ctx.one()])
    return _psi_table(E, n)[n]


def x_multiples(E: Curve, x1: FieldElement, count: int) -> List[FieldElement]:
    """[x([k]P) for k = 1..count] given x(P) = x1, without computing y.

    x1 may live in any extension of E's context; [k]P must be nonzero for
    every k in range (guaranteed when P has prime order > count).
    """
    table = _psi_table(E, count + 1)
    vals = [t.eval_in(x1) for t in table]
    f00v = E.rhs(x1)
    out = [x1]
    for k in range(2, count + 1):
        num = vals[k - 1] * vals[k + 1]
        den = vals[k] * vals[k]
        if k % 2 == 1:
            out.append(x1 - f00v * num / den)
        else:
            out.append(x1 - num / (f00v * den))
    return out


# -- Frobenius trace ----------------------------------------------------------


@dataclass(frozen=True)
class TraceClassification:
    """Outcome of trace classification over F_{p^2}.

    label is one of '0', '+p', '-p', '+2p', '-2p', 'ordinary'; trace holds
    the signed integer value when it was pinned down (always, for the
    exhaustive branch), None for a probabilistic 'ordinary' verdict.
    """
    label: str
    trace: Optional[int]
    method: str

    @property
    def is_supersingular(self) -> bool:
        return self.label in SUPERSINGULAR_LABELS


def _label_for_trace(t: int, p: int) -> str:
    mapping = {0: "0", p: "+p", -p: "-p", 2 * p: "+2p", -2 * p: "-2p"}
    return mapping.get(t, "ordinary")


def _count_points_exhaustive(E: Curve) -> int:
    """#E(F_{p^2}) by summing the quadratic character of x^3+ax+b.

    chi(u) for u in F_{p^2} reduces to the Legendre symbol of the norm
    u^(p+1) = u0^2 - ns*u1^2 in F_p, so one F_p-sized lookup table serves
    the whole count; rows are vectorized over the 'a' coordinate.
    """
    ctx = E.ctx
    p, ns = ctx.p, ctx.ns
    ls = np.full(p, -1, dtype=np.int64)
    ls[(np.arange(p, dtype=np.int64) ** 2) % p] = 1
    ls[0] = 0
    Aa, Ab = E.a.coeffs
    Ba, Bb = E.b.coeffs
    a = np.arange(p, dtype=np.int64)
    total = 0
    for bcoef in range(p):
        x2a = (a * a + ns * bcoef * bcoef) % p
        x2b = (2 * bcoef * a) % p
        x3a = (x2a * a + ns * ((x2b * bcoef) % p)) % p
        x3b = (x2a * bcoef + x2b * a) % p
        fa = (x3a + Aa * a + ns * Ab * bcoef + Ba) % p
        fb = (x3b + Aa * bcoef + Ab * a + Bb) % p
        total += int(ls[(fa * fa - ns * fb * fb) % p].sum())
    return p * p + 1 + total


def _random_point(E: Curve, rng: random.Random) -> Point:
    ctx = E.ctx
    while True:
        x = ctx.el((rng.randrange(ctx.p), rng.randrange(ctx.p)))
        pt = lift_x(E, x)
        if pt is not None:
            return pt


def trace_classify(E: Curve, seed: int = 0) -> TraceClassification:
    """Classify the Frobenius trace of E/F_{p^2} among 0, +-p, +-2p, ordinary.

    Exhaustive (exact) when p^2 <= 10^6.  Beyond that, candidate traces are
    eliminated on random points: t survives iff [p^2+1-t]P = O.  A unique
    survivor is declared; no survivor means ordinary; several survivors
    after the point budget raise rather than guess.
    """
    ctx = E.ctx
    if ctx.kind != "quadratic":
        raise ValueError("trace classification expects a curve over F_{p^2}")
    p = ctx.p
    q = p * p
    if q <= EXHAUSTIVE_COUNT_LIMIT:
        n_pts = _count_points_exhaustive(E)
        t = q + 1 - n_pts
        return TraceClassification(_label_for_trace(t, p), t, "exhaustive")
    rng = random.Random((seed, "trace", p, E.a.key(), E.b.key()).__repr__())
    candidates = [0, p, -p, 2 * p, -2 * p]
    for round_no in range(60):
        P = _random_point(E, rng)
        candidates = [t for t in candidates if P.scalar_mul(q + 1 - t).is_infinity()]
        if not candidates:
            return TraceClassification("ordinary", None, "probabilistic")
        if len(candidates) == 1 and round_no >= 19:
            t = candidates[0]
            return TraceClassification(_label_for_trace(t, p), t, "probabilistic")
    raise RuntimeError(
        f"trace classification ambiguous after point budget: {candidates}")


# classification is deterministic per curve and reused across a sweep
trace_classify = functools.lru_cache(maxsize=512)(trace_classify)


def is_supersingular(E: Curve) -> bool:
    return trace_classify(E).is_supersingular
