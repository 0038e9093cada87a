"""Finite fields: F_p, the quadratic extension F_{p^2}, and towers above it.

F_{p^2} is always presented as F_p[t]/(t^2 - ns) where ns is the smallest
positive quadratic non-residue mod p; this fixes the serialization of every
element (``"a+b*t"``) across runs and machines.  Extension contexts on top
of F_{p^2} host ell-torsion x-coordinates when those live beyond F_{p^2};
their modulus is supplied by the caller and assumed irreducible (the
polynomial layer constructs and certifies it).

Contexts are immutable; elements are value-like and hashable, so
everything here is safe to share across threads.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterator, Optional, Sequence, Union

from .arith import Integer, is_prime, legendre

CoeffsLike = Union[int, "FieldElement", Sequence]


class FieldContext:
    """A finite field: kind 'prime', 'quadratic', or 'extension'."""

    __slots__ = ("kind", "p", "ns", "base", "modulus", "degree", "order", "_key",
                 "_nonresidue_cache")

    def __init__(self, kind: str, p: int, ns: Optional[int] = None,
                 base: Optional["FieldContext"] = None,
                 modulus: Optional[tuple] = None):
        self.kind = kind
        self.p = p
        self.ns = ns
        self.base = base
        self.modulus = modulus
        self._nonresidue_cache = None
        if kind == "prime":
            self.degree = 1
            self.order = p
            self._key = ("prime", p)
        elif kind == "quadratic":
            self.degree = 2
            self.order = p * p
            self._key = ("quadratic", p, ns)
        elif kind == "extension":
            assert base is not None and modulus is not None
            self.degree = len(modulus) - 1
            self.order = base.order ** self.degree
            self._key = ("extension", base._key, tuple(c.coeffs for c in modulus))
        else:
            raise ValueError(f"unknown field kind {kind!r}")

    def __eq__(self, other):
        return isinstance(other, FieldContext) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.kind == "prime":
            return f"GF({self.p})"
        if self.kind == "quadratic":
            return f"GF({self.p}^2; t^2={self.ns})"
        return f"GF({self.p}^{2 * self.degree})"

    # -- element construction ------------------------------------------------

    def el(self, value: CoeffsLike) -> "FieldElement":
        """Coerce an int, a subfield element, or a coefficient vector."""
        if isinstance(value, FieldElement):
            if value.ctx == self:
                return value
            if self.kind == "extension":
                if value.ctx == self.base:
                    return FieldElement(self, self._pad((value,)))
                # tower coercion: let the base field pull the element up first
                return self.el(self.base.el(value))
            if self.kind == "quadratic" and value.ctx == prime_context(self.p):
                return FieldElement(self, (value.coeffs[0], 0))
            raise TypeError(f"cannot coerce element of {value.ctx!r} into {self!r}")
        if isinstance(value, int):
            if self.kind == "extension":
                return self.el(self.base.el(value))
            v = value % self.p
            return FieldElement(self, (v,) if self.kind == "prime" else (v, 0))
        coeffs = tuple(value)
        if self.kind == "extension":
            lifted = tuple(self.base.el(c) for c in coeffs)
            if len(lifted) > self.degree:
                raise ValueError("coefficient vector longer than extension degree")
            return FieldElement(self, self._pad(lifted))
        ints = tuple(int(c) % self.p for c in coeffs)
        if len(ints) > self.degree:
            raise ValueError("coefficient vector longer than extension degree")
        return FieldElement(self, ints + (0,) * (self.degree - len(ints)))

    def _pad(self, coeffs: tuple) -> tuple:
        zero = self.base.zero()
        return tuple(coeffs) + (zero,) * (self.degree - len(coeffs))

    def zero(self) -> "FieldElement":
        return self.el(0)

    def one(self) -> "FieldElement":
        return self.el(1)

    def gen(self) -> "FieldElement":
        """t for quadratic contexts, the residue of x for extensions."""
        if self.kind == "quadratic":
            return FieldElement(self, (0, 1))
        if self.kind == "extension":
            return FieldElement(self, self._pad((self.base.zero(), self.base.one())))
        raise ValueError("prime context has no distinguished generator")

    def iter_elements(self) -> Iterator["FieldElement"]:
        """All field elements, in canonical (lexicographic) order."""
        if self.kind == "prime":
            for a in range(self.p):
                yield FieldElement(self, (a,))
        elif self.kind == "quadratic":
            for a in range(self.p):
                for b in range(self.p):
                    yield FieldElement(self, (a, b))
        else:
            pools = [list(self.base.iter_elements()) for _ in range(self.degree)]
            for combo in itertools.product(*pools):
                yield FieldElement(self, tuple(combo))


class FieldElement:
    """Immutable element of a FieldContext; supports +, -, *, /, **."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    # -- plumbing ------------------------------------------------------------

    def _coerce(self, other) -> Optional["FieldElement"]:
        if isinstance(other, FieldElement):
            if other.ctx == self.ctx:
                return other
            try:
                return self.ctx.el(other)
            except TypeError:
                return None
        if isinstance(other, int):
            return self.ctx.el(other)
        return None

    def key(self):
        """Flattened integer tuple; defines the canonical element order."""
        if self.ctx.kind == "extension":
            return tuple(itertools.chain.from_iterable(c.key() for c in self.coeffs))
        return self.coeffs

    def __eq__(self, other):
        o = self._coerce(other) if not (isinstance(other, FieldElement)
                                        and other.ctx == self.ctx) else other
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.ctx._key, self.key()))

    def __bool__(self):
        return any(bool(c) for c in self.coeffs)

    def __repr__(self):
        return serialize_element(self)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.ctx.kind == "extension":
            return FieldElement(self.ctx, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))
        p = self.ctx.p
        return FieldElement(self.ctx,
                            tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        if self.ctx.kind == "extension":
            return FieldElement(self.ctx, tuple(-a for a in self.coeffs))
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        if ctx.kind == "prime":
            return FieldElement(ctx, ((self.coeffs[0] * o.coeffs[0]) % ctx.p,))
        if ctx.kind == "quadratic":
            a, b = self.coeffs
            c, d = o.coeffs
            p, ns = ctx.p, ctx.ns
            return FieldElement(ctx, ((a * c + ns * b * d) % p, (a * d + b * c) % p))
        # extension: schoolbook multiply, then reduce by the monic modulus
        d = ctx.degree
        zero = ctx.base.zero()
        prod = [zero] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                prod[i + j] = prod[i + j] + a * b
        mod = ctx.modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if not c:
                continue
            for j in range(d + 1):
                prod[k - d + j] = prod[k - d + j] - c * mod[j]
        return FieldElement(ctx, tuple(prod[:d]))

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        ctx = self.ctx
        if not self:
            raise ZeroDivisionError("inversion of zero field element")
        if ctx.kind == "prime":
            return FieldElement(ctx, (pow(self.coeffs[0], -1, ctx.p),))
        if ctx.kind == "quadratic":
            a, b = self.coeffs
            p, ns = ctx.p, ctx.ns
            den = pow((a * a - ns * b * b) % p, -1, p)
            return FieldElement(ctx, ((a * den) % p, (-b * den) % p))
        # extension: extended Euclid on coefficient lists over the base field
        g, inv_coeffs = _ext_euclid_inverse(ctx, list(self.coeffs))
        assert g, "modulus not irreducible or element not reduced"
        return ctx.el(inv_coeffs)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result


def _ext_euclid_inverse(ctx: FieldContext, a_coeffs: list):
    """Inverse of the residue class a(x) modulo ctx.modulus, both monic-free.

    Returns (gcd_is_unit, coefficient list of the inverse).
    """
    base = ctx.base

    def trim(f):
        while f and not f[-1]:
            f.pop()
        return f

    def divrem(f, g):
        f = list(f)
        q = [base.zero()] * max(0, len(f) - len(g) + 1)
        inv_lead = g[-1].inv()
        for k in range(len(f) - len(g), -1, -1):
            c = f[k + len(g) - 1] * inv_lead
            if not c:
                continue
            q[k] = c
            for j, gc in enumerate(g):
                f[k + j] = f[k + j] - c * gc
        return q, trim(f[: len(g) - 1])

    r0, r1 = list(ctx.modulus), trim(list(a_coeffs))
    s0, s1 = [], [base.one()]
    while r1:
        q, r = divrem(r0, r1)
        # s_next = s0 - q*s1
        prod = [base.zero()] * (max(len(q) + len(s1) - 1, 0))
        for i, qc in enumerate(q):
            if not qc:
                continue
            for j, sc in enumerate(s1):
                prod[i + j] = prod[i + j] + qc * sc
        n = max(len(s0), len(prod))
        s_next = [(s0[k] if k < len(s0) else base.zero())
                  - (prod[k] if k < len(prod) else base.zero()) for k in range(n)]
        r0, r1 = r1, r
        s0, s1 = s1, trim(s_next)
    if len(r0) != 1:
        return False, []
    lead_inv = r0[0].inv()
    return True, [c * lead_inv for c in s0]


# -- context constructors ----------------------------------------------------


@functools.lru_cache(maxsize=None)
def prime_context(p: int) -> FieldContext:
    if not is_prime(p) or p <= 3:
        raise ValueError(f"p={p} is not an odd prime > 3")
    return FieldContext("prime", p)


@functools.lru_cache(maxsize=None)
def make_quadratic_context(p: int) -> FieldContext:
    """F_{p^2} = F_p[t]/(t^2 - ns), ns the smallest positive non-residue."""
    if not is_prime(p) or p <= 3:
        raise ValueError(f"p={p} is not an odd prime > 3")
    ns = 2
    while legendre(ns, p) != -1:
        ns += 1
    return FieldContext("quadratic", p, ns=ns)


def make_extension_context(base: FieldContext, modulus) -> FieldContext:
    """Extension of *base* by a monic irreducible modulus (ascending coeffs).

    Irreducibility is the caller's responsibility; the polynomial layer's
    find_irreducible certifies what it hands over.
    """
    mod = tuple(base.el(c) for c in modulus)
    if len(mod) < 2:
        raise ValueError("modulus must have degree >= 1")
    if mod[-1] != base.one():
        raise ValueError("modulus must be monic")
    return FieldContext("extension", base.p, base=base, modulus=mod)


# -- field-level functions ---------------------------------------------------


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def _nonresidue(ctx: FieldContext) -> FieldElement:
    """Deterministic quadratic non-residue of ctx (Euler criterion scan)."""
    if ctx._nonresidue_cache is not None:
        return ctx._nonresidue_cache
    if ctx.kind == "prime":
        z = ctx.el(make_quadratic_context(ctx.p).ns)
    else:
        e = (ctx.order - 1) // 2
        z = None
        g = ctx.gen()
        for c in itertools.count():
            cand = g + c
            if cand ** e != ctx.one():
                z = cand
                break
        assert z is not None
    ctx._nonresidue_cache = z
    return z


def sqrt(a: FieldElement) -> Optional[FieldElement]:
    """Canonical square root (lexicographically smaller of the pair), or None.

    Tonelli-Shanks over the element's own context; works for prime,
    quadratic, and extension contexts alike since only field ops are used.
    """
    ctx = a.ctx
    if not a:
        return a
    q = ctx.order
    one = ctx.one()
    if a ** ((q - 1) // 2) != one:
        return None
    if q % 4 == 3:
        s = a ** ((q + 1) // 4)
    else:
        m = q - 1
        e = 0
        while m % 2 == 0:
            m //= 2
            e += 1
        y = _nonresidue(ctx) ** m
        x = a ** ((m - 1) // 2)
        b = a * x * x
        x = a * x
        r = e
        while b != one:
            k = 0
            t = b
            while t != one:
                t = t * t
                k += 1
            t = y ** (2 ** (r - k - 1))
            y = t * t
            r = k
            x = x * t
            b = b * y
        s = x
    neg = -s
    return s if s.key() <= neg.key() else neg


def frobenius_p(a: FieldElement) -> FieldElement:
    """a^p on F_{p^2}, computed as conjugation (negate the t-coefficient)."""
    ctx = a.ctx
    if ctx.kind != "quadratic":
        raise ValueError("frobenius_p expects an F_{p^2} element")
    x, y = a.coeffs
    return FieldElement(ctx, (x, (-y) % ctx.p))


def is_in_prime_field(a: FieldElement) -> bool:
    """True iff a is fixed by the p-power Frobenius on F_{p^2}."""
    return frobenius_p(a) == a


def to_base(a: FieldElement) -> FieldElement:
    """Pull an extension element known to be constant down to the base field."""
    ctx = a.ctx
    if ctx.kind != "extension":
        return a
    if any(c for c in a.coeffs[1:]):
        raise ValueError(f"element {a!r} does not lie in the base field")
    return a.coeffs[0]


# -- canonical serialization --------------------------------------------------


def serialize_element(a: FieldElement) -> str:
    """Prime: "a".  Quadratic: "a+b*t" (both digits always present)."""
    if a.ctx.kind == "prime":
        return str(a.coeffs[0])
    if a.ctx.kind == "quadratic":
        return f"{a.coeffs[0]}+{a.coeffs[1]}*t"
    return "[" + ", ".join(serialize_element(c) for c in a.coeffs) + "]"


def parse_element(ctx: FieldContext, text: str) -> FieldElement:
    """Inverse of serialize_element for prime and quadratic contexts."""
    s = text.strip()
    if ctx.kind == "prime":
        return ctx.el(int(s))
    if ctx.kind != "quadratic":
        raise ValueError("parsing is defined for prime and quadratic contexts")
    if "t" not in s:
        return ctx.el(int(s))
    left, _, right = s.partition("+")
    b_part = right.strip()
    if not b_part.endswith("*t"):
        raise ValueError(f"malformed element string {text!r}")
    return ctx.el((int(left), int(b_part[:-2])))
