"""Quaternion engine: exact ideal-class arithmetic predicting neighborhoods.

Everything here is exact: quaternions carry Fraction coordinates and
lattices a global denominator plus a 4x4 integer basis in Hermite normal
form, so lattice identity is literal data equality.  The engine predicts
the neighborhood of a special vertex without touching a curve: the norm-ell
left ideals of the standard maximal order are built through the mod-ell
matrix-ring isomorphism, partitioned into equivalence classes by exhaustive
norm-form enumeration, and the principal class supplies the loop count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from .arith import is_prime, legendre
from .report import ENGINE_QUATERNION, Neighbor, NeighborhoodReport

KIND_E1728 = "E1728"
KIND_E0 = "E0"

Mat2 = Tuple[Tuple[int, int], Tuple[int, int]]


class QuatContext:
    """The rational quaternion algebra with i^2 = -q, j^2 = -p, k = ij.

    q = 1 goes with the vertex 1728 (p = 3 mod 4), q = 3 with the vertex 0
    (p = 2 mod 3); the congruences make -q a "nice" local unit so that the
    listed standard orders are maximal.
    """

    __slots__ = ("q", "p")

    def __init__(self, q: int, p: int):
        if q not in (1, 3):
            raise ValueError("q must be 1 or 3")
        if not is_prime(p) or p <= 3:
            raise ValueError("p must be a prime > 3")
        if q == 1 and p % 4 != 3:
            raise ValueError(f"q=1 requires p = 3 mod 4, got p={p}")
        if q == 3 and p % 3 != 2:
            raise ValueError(f"q=3 requires p = 2 mod 3, got p={p}")
        self.q = q
        self.p = p

    def __eq__(self, other):
        return (isinstance(other, QuatContext)
                and (self.q, self.p) == (other.q, other.p))

    def __hash__(self):
        return hash(("quat", self.q, self.p))

    def __repr__(self):
        return f"QuatContext(q={self.q}, p={self.p})"

    def el(self, a1, a2=0, a3=0, a4=0) -> "Quaternion":
        return Quaternion(self, (Fraction(a1), Fraction(a2),
                                 Fraction(a3), Fraction(a4)))

    def one(self) -> "Quaternion":
        return self.el(1)

    def basis(self) -> Tuple["Quaternion", ...]:
        return (self.el(1), self.el(0, 1), self.el(0, 0, 1),
                self.el(0, 0, 0, 1))


class Quaternion:
    """Element a1 + a2*i + a3*j + a4*k with exact rational coordinates."""

    __slots__ = ("ctx", "co")

    def __init__(self, ctx: QuatContext, co: Tuple[Fraction, ...]):
        self.ctx = ctx
        self.co = co

    def _coerce(self, other) -> Optional["Quaternion"]:
        if isinstance(other, Quaternion):
            return other if other.ctx == self.ctx else None
        if isinstance(other, (int, Fraction)):
            return self.ctx.el(other)
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        return o is not None and self.co == o.co

    def __hash__(self):
        return hash((self.ctx, self.co))

    def __repr__(self):
        names = ("", "i", "j", "k")
        parts = [f"{c}{n}" for c, n in zip(self.co, names) if c]
        return "Quat(" + (" + ".join(parts) or "0") + ")"

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.ctx, tuple(a + b for a, b in zip(self.co, o.co)))

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(self.ctx, tuple(-a for a in self.co))

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
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Quaternion(self.ctx, tuple(a * f for a in self.co))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        q, p = self.ctx.q, self.ctx.p
        x1, x2, x3, x4 = self.co
        y1, y2, y3, y4 = o.co
        return Quaternion(self.ctx, (
            x1 * y1 - q * x2 * y2 - p * x3 * y3 - q * p * x4 * y4,
            x1 * y2 + x2 * y1 + p * (x3 * y4 - x4 * y3),
            x1 * y3 + x3 * y1 + q * (x4 * y2 - x2 * y4),
            x1 * y4 + x4 * y1 + x2 * y3 - x3 * y2,
        ))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def conj(self) -> "Quaternion":
        a1, a2, a3, a4 = self.co
        return Quaternion(self.ctx, (a1, -a2, -a3, -a4))

    def trd(self) -> Fraction:
        return 2 * self.co[0]

    def nrd(self) -> Fraction:
        q, p = self.ctx.q, self.ctx.p
        a1, a2, a3, a4 = self.co
        return a1 * a1 + q * a2 * a2 + p * a3 * a3 + q * p * a4 * a4

    def inv(self) -> "Quaternion":
        n = self.nrd()
        if not n:
            raise ZeroDivisionError("zero quaternion")
        return self.conj() * (1 / n)

    def is_zero(self) -> bool:
        return not any(self.co)


# -- integer lattices ---------------------------------------------------------


def _hnf(rows: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    """Row Hermite normal form of a full-rank generating set (4 columns).

    Upper triangular, positive diagonal, off-diagonal entries reduced into
    [0, diagonal); the output is the canonical basis of the spanned lattice.
    """
    work = [list(r) for r in rows if any(r)]
    out: List[List[int]] = []
    for col in range(4):
        while True:
            nz = [r for r in work if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                f = r[col] // piv[col]
                if f:
                    for t in range(4):
                        r[t] -= f * piv[t]
        nz = [r for r in work if r[col] != 0]
        if not nz:
            raise ValueError("generators do not span a full-rank lattice")
        piv = nz[0]
        work.remove(piv)
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
    for i in range(1, 4):
        d = out[i][i]
        for k in range(i):
            f = out[k][i] // d
            if f:
                for t in range(4):
                    out[k][t] -= f * out[i][t]
    return tuple(tuple(r) for r in out)


class Lattice:
    """Full-rank lattice in the algebra: denominator + integer HNF basis.

    Two lattices are equal iff their canonical data are equal, which is
    what makes ideal identity decidable by construction.
    """

    __slots__ = ("ctx", "den", "rows")

    def __init__(self, ctx: QuatContext, den: int,
                 rows: Tuple[Tuple[int, ...], ...]):
        self.ctx = ctx
        self.den = den
        self.rows = rows

    @classmethod
    def from_generators(cls, ctx: QuatContext,
                        gens: Sequence[Quaternion]) -> "Lattice":
        den = 1
        for g in gens:
            for c in g.co:
                den = den * c.denominator // math.gcd(den, c.denominator)
        mat = [[int(c * den) for c in g.co] for g in gens]
        rows = _hnf(mat)
        common = den
        for r in rows:
            for v in r:
                common = math.gcd(common, v)
        if common > 1:
            den //= common
            rows = tuple(tuple(v // common for v in r) for r in rows)
        return cls(ctx, den, rows)

    def __eq__(self, other):
        return (isinstance(other, Lattice) and self.ctx == other.ctx
                and self.den == other.den and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ctx, self.den, self.rows))

    def __repr__(self):
        return f"Lattice(den={self.den}, rows={self.rows})"

    def basis(self) -> Tuple[Quaternion, ...]:
        d = self.den
        return tuple(
            Quaternion(self.ctx, tuple(Fraction(v, d) for v in r))
            for r in self.rows
        )

    def contains(self, x: Quaternion) -> bool:
        w = [c * self.den for c in x.co]
        for idx in range(4):
            d = self.rows[idx][idx]
            c = w[idx] / d
            if c.denominator != 1:
                return False
            for t in range(4):
                w[t] -= c * self.rows[idx][t]
        return not any(w)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(b) for b in other.basis())

    def add(self, other: "Lattice") -> "Lattice":
        return Lattice.from_generators(self.ctx,
                                       self.basis() + other.basis())

    def multiply(self, other: "Lattice") -> "Lattice":
        gens = [x * y for x in self.basis() for y in other.basis()]
        return Lattice.from_generators(self.ctx, gens)

    def scale(self, f) -> "Lattice":
        f = Fraction(f)
        return Lattice.from_generators(
            self.ctx, [b * f for b in self.basis()])

    def det(self) -> Fraction:
        prod = 1
        for idx in range(4):
            prod *= self.rows[idx][idx]
        return Fraction(prod, self.den ** 4)

    def index_in(self, ambient: "Lattice") -> int:
        """[ambient : self] for a sublattice of ``ambient``."""
        if not ambient.contains_lattice(self):
            raise ValueError("index requires containment")
        ratio = self.det() / ambient.det()
        if ratio.denominator != 1:
            raise RuntimeError("containment held but index is not integral")
        return int(ratio)

    def conjugate(self) -> "Lattice":
        return Lattice.from_generators(
            self.ctx, [b.conj() for b in self.basis()])

    def to_json_dict(self) -> dict:
        return {"den": self.den, "rows": [list(r) for r in self.rows]}


# -- orders -------------------------------------------------------------------


def _det4(m: List[List[Fraction]]) -> Fraction:
    """Determinant of a 4x4 matrix of Fractions by fraction-free expansion."""
    a = [row[:] for row in m]
    det = Fraction(1)
    for col in range(4):
        piv = None
        for r in range(col, 4):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, 4):
            f = a[r][col] * inv
            if f:
                for c in range(col, 4):
                    a[r][c] -= f * a[col][c]
    return det


class Order(Lattice):
    """A lattice that is also a ring with 1, verified at construction."""

    __slots__ = ()

    @classmethod
    def checked(cls, lat: Lattice) -> "Order":
        order = cls(lat.ctx, lat.den, lat.rows)
        order.validate()
        return order

    def validate(self) -> None:
        if not self.contains(self.ctx.one()):
            raise ValueError("order must contain 1")
        basis = self.basis()
        for x in basis:
            if x.trd().denominator != 1 or x.nrd().denominator != 1:
                raise ValueError("order elements must be integral")
        for x in basis:
            for y in basis:
                if not self.contains(x * y):
                    raise ValueError("order not closed under multiplication")
        if self.discriminant() != self.ctx.p ** 2:
            raise ValueError(
                f"order discriminant {self.discriminant()} != p^2; "
                "not maximal in this algebra"
            )

    def discriminant(self) -> int:
        basis = self.basis()
        gram = [[(x * y.conj()).trd() for y in basis] for x in basis]
        d = _det4(gram)
        if d.denominator != 1:
            raise RuntimeError("trace pairing determinant not integral")
        return abs(int(d))


def context_for_kind(kind: str, p: int) -> QuatContext:
    if kind == KIND_E1728:
        return QuatContext(1, p)
    if kind == KIND_E0:
        return QuatContext(3, p)
    raise ValueError(f"unknown order kind {kind!r}")


def standard_order(kind: str, p: int) -> Order:
    """The standard maximal order attached to the special vertex.

    E1728 (q=1): Z + Z*i + Z*(1+j)/2 + Z*(i+k)/2.
    E0    (q=3): Z + Z*(1+i)/2 + Z*(i+k)/3 + Z*(j+k)/2.
    """
    ctx = context_for_kind(kind, p)
    half = Fraction(1, 2)
    third = Fraction(1, 3)
    if kind == KIND_E1728:
        gens = [
            ctx.el(1),
            ctx.el(0, 1),
            ctx.el(half, 0, half, 0),
            ctx.el(0, half, 0, half),
        ]
    else:
        gens = [
            ctx.el(1),
            ctx.el(half, half, 0, 0),
            ctx.el(0, third, 0, third),
            ctx.el(0, 0, half, half),
        ]
    return Order.checked(Lattice.from_generators(ctx, gens))


def e0_basis_variants_coincide(p: int) -> bool:
    """Compare two common bases for the j=0 endomorphism order.

    The order is often written as {1, (1+i)/2, j, (3+i+3j+k)/6} and
    sometimes as {1, (1+i)/2, (i+k)/3, (j+k)/2}; this computes both HNFs
    and reports whether they span the same lattice (used as a diagnostic,
    with the second basis the operational one).
    """
    ctx = QuatContext(3, p)
    sixth = Fraction(1, 6)
    half = Fraction(1, 2)
    variant = Lattice.from_generators(ctx, [
        ctx.el(1),
        ctx.el(half, half, 0, 0),
        ctx.el(0, 0, 1, 0),
        ctx.el(3 * sixth, sixth, 3 * sixth, sixth),
    ])
    operational = standard_order(KIND_E0, p)
    return (variant.den == operational.den
            and variant.rows == operational.rows)


# -- the mod-ell matrix-ring isomorphism ---------------------------------------


def _m2_mul(A: Mat2, B: Mat2, ell: int) -> Mat2:
    return (
        ((A[0][0] * B[0][0] + A[0][1] * B[1][0]) % ell,
         (A[0][0] * B[0][1] + A[0][1] * B[1][1]) % ell),
        ((A[1][0] * B[0][0] + A[1][1] * B[1][0]) % ell,
         (A[1][0] * B[0][1] + A[1][1] * B[1][1]) % ell),
    )


def _m2_add(A: Mat2, B: Mat2, ell: int) -> Mat2:
    return (
        ((A[0][0] + B[0][0]) % ell, (A[0][1] + B[0][1]) % ell),
        ((A[1][0] + B[1][0]) % ell, (A[1][1] + B[1][1]) % ell),
    )


def _m2_scale(c: int, A: Mat2, ell: int) -> Mat2:
    return (
        ((c * A[0][0]) % ell, (c * A[0][1]) % ell),
        ((c * A[1][0]) % ell, (c * A[1][1]) % ell),
    )


@dataclass(frozen=True)
class ThetaMap:
    """Ring isomorphism from O/ellO onto the 2x2 matrices over F_ell."""

    ctx: QuatContext
    ell: int
    u: int
    v: int
    mat_i: Mat2
    mat_j: Mat2

    def of(self, x: Quaternion) -> Mat2:
        ell = self.ell
        co = []
        for c in x.co:
            if c.denominator % ell == 0:
                raise ValueError("coordinate denominator not invertible "
                                 "mod ell")
            co.append(c.numerator * pow(c.denominator, -1, ell) % ell)
        one: Mat2 = ((1, 0), (0, 1))
        mat_k = _m2_mul(self.mat_i, self.mat_j, ell)
        acc: Mat2 = ((0, 0), (0, 0))
        for c, m in zip(co, (one, self.mat_i, self.mat_j, mat_k)):
            acc = _m2_add(acc, _m2_scale(c, m, ell), ell)
        return acc


def theta_iso(order: Order, ell: int) -> ThetaMap:
    """The explicit isomorphism O/ellO = M_2(F_ell).

    Requires ell prime, coprime to 2pq and to the index [O : Z<i,j,k>]
    (which is 4 for q=1 and 12 for q=3) — in particular ell > 3 and
    ell != p.  The images are theta(i) = [[0,-q],[1,0]] and
    theta(j) = [[u,qv],[v,-u]] for the canonical solution of
    u^2 + q v^2 = -p mod ell: the lexicographically smallest (u, v),
    preferring v = 0 whenever -p is a square mod ell.
    """
    ctx = order.ctx
    q, p = ctx.q, ctx.p
    if ell in (2, 3) or not is_prime(ell):
        raise ValueError("ell must be a prime > 3")
    if ell == p:
        raise ValueError("ell must differ from p")

    target = (-p) % ell
    uv: Optional[Tuple[int, int]] = None
    if legendre(target, ell) == 1:
        roots = [u for u in range(ell) if u * u % ell == target]
        uv = (min(roots), 0)
    else:
        for u in range(ell):
            rest = (target - u * u) % ell
            hit = [v for v in range(ell) if (q * v * v) % ell == rest]
            if hit:
                uv = (u, min(hit))
                break
    if uv is None:
        raise RuntimeError("no solution of u^2 + q v^2 = -p mod ell; "
                           "impossible for prime ell")
    u, v = uv
    mat_i: Mat2 = ((0, (-q) % ell), (1, 0))
    mat_j: Mat2 = ((u, (q * v) % ell), (v, (ell - u) % ell))
    theta = ThetaMap(ctx=ctx, ell=ell, u=u, v=v, mat_i=mat_i, mat_j=mat_j)

    basis = order.basis()
    for x in basis:
        for y in basis:
            if theta.of(x * y) != _m2_mul(theta.of(x), theta.of(y), ell):
                raise RuntimeError("theta failed the ring-homomorphism "
                                   "check on basis products")
    return theta


# -- left ideals ---------------------------------------------------------------


class LeftIdeal:
    """Left O-ideal, stored as its lattice; equality ignores the label."""

    __slots__ = ("order", "lattice", "label", "norm")

    def __init__(self, order: Order, lattice: Lattice,
                 label: Optional[str] = None):
        self.order = order
        self.lattice = lattice
        self.label = label
        if not order.contains_lattice(lattice):
            raise ValueError("ideal must be contained in its order")
        for x in order.basis():
            for y in lattice.basis():
                if not lattice.contains(x * y):
                    raise ValueError("lattice is not a left ideal")
        index = lattice.index_in(order)
        root = math.isqrt(index)
        if root * root != index:
            raise ValueError(f"ideal index {index} is not a perfect square")
        self.norm = root

    def __eq__(self, other):
        return (isinstance(other, LeftIdeal) and self.order == other.order
                and self.lattice == other.lattice)

    def __hash__(self):
        return hash((self.order, self.lattice))

    def __repr__(self):
        tag = f" {self.label}" if self.label else ""
        return f"LeftIdeal(norm={self.norm}{tag})"

    def basis(self) -> Tuple[Quaternion, ...]:
        return self.lattice.basis()


def ideal_norm(ideal: LeftIdeal) -> int:
    return ideal.norm


def _solve_mod(A: List[List[int]], b: List[int], ell: int) -> List[int]:
    """Solve a small square linear system over F_ell (A nonsingular)."""
    n = len(b)
    m = [row[:] + [bv] for row, bv in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] % ell), None)
        if piv is None:
            raise ValueError("singular system mod ell")
        m[col], m[piv] = m[piv], m[col]
        inv = pow(m[col][col], -1, ell)
        m[col] = [(v * inv) % ell for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] % ell:
                f = m[r][col]
                m[r] = [(v - f * w) % ell for v, w in zip(m[r], m[col])]
    return [m[r][n] % ell for r in range(n)]


def build_X_ell(order: Order, ell: int) -> List[LeftIdeal]:
    """The ell+1 left O-ideals of reduced norm ell.

    Labels follow the distinguished generators of the rank-1 matrix row
    spaces: "inf" for [[0,0],[0,1]] and a = 0..ell-1 for [[1,m_a],[0,0]],
    where m_a = a when q=1 and m_a = 2a+1 when q=3 (the labeling the
    unit-action identities are stated in).
    """
    theta = theta_iso(order, ell)
    ctx = order.ctx
    q = ctx.q
    basis = order.basis()
    images = [theta.of(b) for b in basis]
    A = [[images[m][r][c] for m in range(4)]
         for r in (0, 1) for c in (0, 1)]

    def pullback(target: Mat2, label: str) -> LeftIdeal:
        b = [target[r][c] for r in (0, 1) for c in (0, 1)]
        xs = _solve_mod(A, b, ell)
        alpha = ctx.el(0)
        for c, bm in zip(xs, basis):
            alpha = alpha + bm * c
        gens = [bm * ell for bm in basis] + [bm * alpha for bm in basis]
        ideal = LeftIdeal(order, Lattice.from_generators(ctx, gens),
                          label=label)
        if ideal.norm != ell:
            raise RuntimeError(f"pullback of {label} has norm {ideal.norm}")
        if not ideal.lattice.contains(ctx.el(ell)):
            raise RuntimeError("norm-ell ideal must contain ell")
        return ideal

    ideals = [pullback(((0, 0), (0, 1)), "inf")]
    for a in range(ell):
        m_a = a if q == 1 else (2 * a + 1) % ell
        ideals.append(pullback(((1, m_a), (0, 0)), str(a)))
    if len({i.lattice for i in ideals}) != ell + 1:
        raise RuntimeError("X_ell members are not pairwise distinct")
    return ideals


def ideal_action(ideal: LeftIdeal, r: Quaternion,
                 ell: Optional[int] = None) -> LeftIdeal:
    """The right action (r, I) -> ellO + I*r for r a unit mod ell."""
    if ell is None:
        ell = ideal.norm
    order = ideal.order
    if not order.contains(r):
        raise ValueError("r must lie in the order")
    n = r.nrd()
    if n.denominator != 1 or int(n) % ell == 0:
        raise ValueError("r must be a unit modulo ell")
    gens = [b * ell for b in order.basis()] + \
           [c * r for c in ideal.basis()]
    return LeftIdeal(order, Lattice.from_generators(order.ctx, gens))


# -- positive-definite norm-form enumeration -----------------------------------


def _gram(vectors: Sequence[Quaternion]) -> List[List[Fraction]]:
    n = len(vectors)
    return [[(vectors[r] * vectors[c].conj()).trd() / 2 for c in range(n)]
            for r in range(n)]


def _enumerate_form(gram: List[List[Fraction]],
                    target: int) -> Iterator[Tuple[int, ...]]:
    """All integer vectors with Q(x) == target, Q the given PD form.

    Exact Cholesky bounds (Fractions) with float windows widened by one;
    every candidate is filtered exactly, so the enumeration is complete.
    """
    n = len(gram)
    A = [row[:] for row in gram]
    D = [Fraction(0)] * n
    U = [[Fraction(0)] * n for _ in range(n)]
    for idx in range(n):
        D[idx] = A[idx][idx]
        if D[idx] <= 0:
            raise ValueError("form is not positive definite")
        for jdx in range(idx + 1, n):
            U[idx][jdx] = A[idx][jdx] / D[idx]
        for r in range(idx + 1, n):
            for c in range(idx + 1, n):
                A[r][c] -= A[idx][r] * A[idx][c] / D[idx]

    x = [0] * n
    out: List[Tuple[int, ...]] = []

    def descend(idx: int, rem: Fraction) -> None:
        if idx < 0:
            if rem == 0 and any(x):
                out.append(tuple(x))
            return
        s = sum((U[idx][jdx] * x[jdx] for jdx in range(idx + 1, n)),
                Fraction(0))
        radius = math.sqrt(max(float(rem / D[idx]), 0.0)) + 1e-9
        lo = math.floor(-float(s) - radius) - 1
        hi = math.ceil(-float(s) + radius) + 1
        for t in range(lo, hi + 1):
            used = D[idx] * (t + s) ** 2
            if used <= rem:
                x[idx] = t
                descend(idx - 1, rem - used)
        x[idx] = 0

    descend(n - 1, Fraction(target))
    return iter(out)


def principal_witness(ideal: LeftIdeal) -> Optional[Quaternion]:
    """A generator beta with I = O*beta, or None if I is not principal.

    beta exists iff the norm form of I represents nrd(I); candidates come
    from complete enumeration, and each is confirmed by lattice equality.
    """
    basis = ideal.basis()
    order = ideal.order
    for co in _enumerate_form(_gram(basis), ideal.norm):
        beta = order.ctx.el(0)
        for c, b in zip(co, basis):
            beta = beta + b * c
        gen = Lattice.from_generators(order.ctx,
                                      [b * beta for b in order.basis()])
        if gen == ideal.lattice:
            return beta
    return None


def is_equivalent(I: LeftIdeal,
                  J: LeftIdeal) -> Tuple[bool, Optional[Quaternion]]:
    """Whether I = J*mu for some invertible mu, with the witness.

    Candidates beta run over conj(J)*I with nrd(beta) = nrd(I)*nrd(J),
    by complete norm-form enumeration; mu = beta/nrd(J) is accepted only
    if J*mu literally equals I, so there are no false positives, and the
    classical correspondence guarantees no false negatives.
    """
    if I.order != J.order:
        raise ValueError("ideals must share their left order")
    if I.lattice == J.lattice:
        return True, I.order.ctx.one()
    prod = J.lattice.conjugate().multiply(I.lattice)
    basis = prod.basis()
    target = I.norm * J.norm
    for co in _enumerate_form(_gram(basis), target):
        beta = I.order.ctx.el(0)
        for c, b in zip(co, basis):
            beta = beta + b * c
        mu = beta * Fraction(1, J.norm)
        cand = Lattice.from_generators(I.order.ctx,
                                       [b * mu for b in J.basis()])
        if cand == I.lattice:
            return True, mu
    return False, None


# -- class partition and prediction --------------------------------------------


@dataclass(frozen=True)
class IdealClass:
    """One equivalence class of X_ell, identified by its member labels."""

    labels: Tuple[str, ...]
    principal: bool

    @property
    def size(self) -> int:
        return len(self.labels)


def _partition(ideals: Sequence[LeftIdeal]) -> List[List[LeftIdeal]]:
    classes: List[List[LeftIdeal]] = []
    for ideal in ideals:
        for cls in classes:
            ok, _ = is_equivalent(cls[0], ideal)
            if ok:
                cls.append(ideal)
                break
        else:
            classes.append([ideal])
    return classes


def class_partition(ideals: Sequence[LeftIdeal]) -> List[IdealClass]:
    return [
        IdealClass(
            labels=tuple(i.label or "?" for i in cls),
            principal=principal_witness(cls[0]) is not None,
        )
        for cls in _partition(ideals)
    ]


def right_order(ideal: LeftIdeal) -> Order:
    """O_R(I), computed from conj(I)*I = nrd(I)*O_R(I)."""
    prod = ideal.lattice.conjugate().multiply(ideal.lattice)
    return Order.checked(prod.scale(Fraction(1, ideal.norm)))


def has_sqrt_minus_p(order: Order) -> bool:
    """Whether the order contains an element with trd = 0 and nrd = p."""
    basis = order.basis()
    traces = [2 * order.rows[m][0] for m in range(4)]
    kernel = _int_kernel(traces)
    vectors = []
    for co in kernel:
        w = order.ctx.el(0)
        for c, b in zip(co, basis):
            w = w + b * c
        vectors.append(w)
    assert all(v.trd() == 0 for v in vectors)
    return any(True for _ in _enumerate_form(_gram(vectors), order.ctx.p))


def _int_kernel(t: Sequence[int]) -> List[List[int]]:
    """Basis of the rank-3 integer kernel of c -> sum(c[m]*t[m])."""
    t = list(t)
    cols = [[1 if r == c else 0 for r in range(4)] for c in range(4)]
    while True:
        nz = [idx for idx in range(1, 4) if t[idx] != 0]
        if not nz:
            break
        if t[0] == 0:
            m = nz[0]
            t[0], t[m] = t[m], t[0]
            cols[0], cols[m] = cols[m], cols[0]
            continue
        for m in nz:
            f = t[m] // t[0]
            t[m] -= f * t[0]
            cols[m] = [a - f * b for a, b in zip(cols[m], cols[0])]
        if any(t[idx] != 0 for idx in range(1, 4)):
            m = next(idx for idx in range(1, 4) if t[idx] != 0)
            t[0], t[m] = t[m], t[0]
            cols[0], cols[m] = cols[m], cols[0]
    if t[0] == 0:
        raise ValueError("trace functional vanishes identically")
    return cols[1:]


def predicted_neighborhood(kind: str, p: int, ell: int) -> NeighborhoodReport:
    """Neighborhood of the special vertex from ideal classes alone.

    Abstract report: neighbor identities are class labels (the engine has
    no j-invariants), loops = size of the principal class, multiplicity =
    class size, and the prime-field flag comes from whether the class's
    right order contains a square root of -p.
    """
    if ell in (2, 3):
        raise ValueError(
            "the quaternion engine requires ell > 3: the mod-ell "
            "matrix-ring isomorphism behind X_ell needs ell coprime to "
            "2pq and to the order index, which fails for ell in {2, 3}; "
            "use the geometric engine for those"
        )
    if not is_prime(ell):
        raise ValueError("ell must be prime")
    if ell == p:
        raise ValueError("ell must differ from p")

    order = standard_order(kind, p)
    ideals = build_X_ell(order, ell)
    loops = 0
    neighbors = []
    for cls in _partition(ideals):
        if principal_witness(cls[0]) is not None:
            loops += len(cls)
            continue
        label = "[" + "+".join(i.label or "?" for i in cls) + "]"
        fp = has_sqrt_minus_p(right_order(cls[0]))
        neighbors.append(Neighbor(j=label, multiplicity=len(cls),
                                  in_prime_field=fp))

    return NeighborhoodReport(
        p=p,
        ell=ell,
        vertex_j="1728" if kind == KIND_E1728 else "0",
        loops=loops,
        neighbors=tuple(neighbors),
        engine=ENGINE_QUATERNION,
    )
