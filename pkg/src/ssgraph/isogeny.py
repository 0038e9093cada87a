"""Geometric engine: ell-isogeny neighborhoods via kernel polynomials.

The ell+1 cyclic subgroups of E[ell] are enumerated by factoring the
division polynomial over F_{p^2} and walking x-coordinate multiple
orbits inside whatever extension hosts each irreducible factor.  Velu
power-sum formulas turn each kernel polynomial into a codomain curve;
only the codomain j-invariant is coerced back down to F_{p^2}, so the
machinery is indifferent to which model/twist a vertex is realized by
and survives subgroups that are not individually F_{p^2}-rational.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .ec import (Curve, curve_from_j, division_polynomial, is_supersingular,
                 j_invariant, x_multiples)
from .ff import (FieldContext, FieldElement, is_in_prime_field,
                 make_extension_context, parse_element, serialize_element,
                 to_base)
from .poly import Polynomial, factor
from .report import ENGINE_GEOMETRIC, Neighbor, NeighborhoodReport


@dataclass(frozen=True)
class KernelDatum:
    """One cyclic ell-subgroup: kernel polynomial plus its codomain j.

    ``h`` is monic over F_{p^2} when the subgroup is rational (the usual
    case here) and over the hosting extension otherwise; ``codomain_j``
    always lives in F_{p^2}, enforced by :func:`velu_codomain`.
    """

    h: Polynomial
    codomain_j: FieldElement


def _quadratic_of(ctx: FieldContext) -> FieldContext:
    """The F_{p^2} context underneath ``ctx`` (identity on quadratic)."""
    if ctx.kind == "quadratic":
        return ctx
    if ctx.kind == "extension" and ctx.base.kind == "quadratic":
        return ctx.base
    raise ValueError("expected F_{p^2} or a single extension of it")


def _coerce_j(j: FieldElement) -> FieldElement:
    """Coerce a codomain j-invariant down into F_{p^2}.

    For supersingular curves every codomain j lies in F_{p^2}; a failure
    here means a kernel was mis-grouped, so we raise rather than return
    an extension element.
    """
    if j.ctx.kind == "quadratic":
        return j
    _quadratic_of(j.ctx)
    try:
        return to_base(j)
    except ValueError:
        raise ValueError(
            f"codomain j-invariant {j!r} does not descend to F_(p^2)"
        ) from None


def _descend_poly(h: Polynomial, base: FieldContext) -> Optional[Polynomial]:
    """Rewrite ``h`` over ``base`` if all its coefficients are constants."""
    if h.ctx is base or h.ctx == base:
        return h
    try:
        return Polynomial(base, [to_base(c) for c in h.coeffs])
    except ValueError:
        return None


def _tau_element(c: FieldElement) -> FieldElement:
    """The p^2-power Frobenius of the coefficient field."""
    if c.ctx.kind == "quadratic":
        return c
    p = c.ctx.p
    return c ** (p * p)


def _tau_poly(h: Polynomial) -> Polynomial:
    return Polynomial(h.ctx, [_tau_element(c) for c in h.coeffs])


def velu_codomain(E: Curve, h: Polynomial) -> Tuple[Curve, FieldElement]:
    """Codomain of the isogeny with kernel polynomial ``h``.

    Uses the power-sum form of Velu's formulas: only the top three
    coefficients of ``h`` enter.  A degree-one ``h`` is ambiguous between
    a 2-isogeny and a 3-isogeny kernel; the 2-torsion case is recognized
    by its root annihilating x^3 + ax + b.
    """
    K = h.ctx
    a = K.el(E.a)
    b = K.el(E.b)
    n = h.degree
    if n < 1:
        raise ValueError("kernel polynomial must be non-constant")

    x0 = -h.coeff(0)
    if n == 1 and not ((x0 * x0 + a) * x0 + b):
        # 2-torsion kernel {O, (x0, 0)}
        t = K.el(3) * x0 * x0 + a
        w = t * x0
    else:
        e1 = -h.coeff(n - 1)
        e2 = h.coeff(n - 2) if n >= 2 else K.zero()
        e3 = -h.coeff(n - 3) if n >= 3 else K.zero()
        p1 = e1
        p2 = e1 * e1 - K.el(2) * e2
        p3 = e1 * e1 * e1 - K.el(3) * e1 * e2 + K.el(3) * e3
        t = K.el(6) * p2 + K.el(2 * n) * a
        w = K.el(10) * p3 + K.el(6) * a * p1 + K.el(4 * n) * b

    a2 = a - K.el(5) * t
    b2 = b - K.el(7) * w
    codomain = Curve(a2, b2)
    return codomain, _coerce_j(j_invariant(codomain))


def _torsion_polynomial(E: Curve, ell: int) -> Tuple[Polynomial, int]:
    """(polynomial whose roots are the torsion x-coordinates, orbit length).

    Odd ell: the y-free division polynomial, each subgroup contributing
    (ell-1)/2 roots.  ell=2: the 2-division cubic, one root per subgroup.
    """
    if ell == 2:
        ctx = E.ctx
        return Polynomial(ctx, [E.b, E.a, ctx.zero(), ctx.one()]), 1
    return division_polynomial(E, ell), (ell - 1) // 2


def enumerate_kernels(E: Curve, ell: int, seed: int = 0) -> List[KernelDatum]:
    """All ell+1 cyclic ell-subgroups of a supersingular curve.

    Factors the torsion polynomial over F_{p^2}, then repeatedly picks
    the least unused irreducible factor f (by canonical sort key), forms
    K = F_{p^2}[x]/(f), and walks the orbit x([k]P) for k = 1..(ell-1)/2
    starting from the residue of x.  The resulting kernel polynomial and
    its p^2-Frobenius conjugates are emitted together; their product has
    coefficients down in F_{p^2} and retires exactly the irreducible
    factors those subgroups account for.
    """
    ctx = E.ctx
    if ctx.kind != "quadratic":
        raise ValueError("enumerate_kernels expects a curve over F_{p^2}")
    if ell == ctx.p:
        raise ValueError("ell must differ from the field characteristic")
    if not is_supersingular(E):
        raise ValueError(
            f"curve with j={serialize_element(_coerce_j(j_invariant(E)))} is "
            "not supersingular; subgroup enumeration is only supported there"
        )

    psi, orbit_len = _torsion_polynomial(E, ell)
    pairs = factor(psi.monic(), seed=seed)
    if any(m > 1 for _, m in pairs):
        raise RuntimeError("torsion polynomial unexpectedly not squarefree")
    unused = sorted((f for f, _ in pairs), key=lambda f: f.sort_key())

    kernels: List[KernelDatum] = []
    while unused:
        f = unused[0]
        if f.degree == 1:
            K = ctx
            x1 = -f.coeff(0)
        else:
            K = make_extension_context(ctx, f.coeffs)
            x1 = K.gen()

        xs = [x1] if ell == 2 else x_multiples(E, x1, orbit_len)
        h = Polynomial.one(K)
        xvar = Polynomial.x(K)
        for xk in xs:
            h = h * (xvar - Polynomial.constant(xk))

        # Emit h together with its Galois conjugates over F_{p^2}: distinct
        # conjugates are kernel polynomials of distinct subgroups.
        orbit = [h]
        ht = _tau_poly(h)
        while ht != h:
            orbit.append(ht)
            ht = _tau_poly(ht)

        product = Polynomial.one(K)
        for hm in orbit:
            product = product * hm
        consumed = Polynomial(ctx, [to_base(c) for c in product.coeffs])

        remaining = [g for g in unused if not (consumed % g).is_zero()]
        used_degree = (sum(g.degree for g in unused)
                       - sum(g.degree for g in remaining))
        if used_degree != consumed.degree:
            raise RuntimeError("kernel bookkeeping mismatch while retiring "
                               "division-polynomial factors")
        unused = remaining

        for hm in orbit:
            hd = _descend_poly(hm, ctx)
            kernel_poly = hm if hd is None else hd
            _, j2 = velu_codomain(E, kernel_poly)
            kernels.append(KernelDatum(h=kernel_poly, codomain_j=j2))

    if len(kernels) != ell + 1:
        raise RuntimeError(
            f"expected {ell + 1} subgroups, found {len(kernels)}"
        )
    return kernels


def neighborhood(j: FieldElement, ell: int, seed: int = 0) -> NeighborhoodReport:
    """Loops and neighbors of the vertex ``j`` in the ell-isogeny graph."""
    if j.ctx.kind != "quadratic":
        raise ValueError("vertex j-invariant must be an F_{p^2} element")
    E = curve_from_j(j)
    kernels = enumerate_kernels(E, ell, seed=seed)

    loops = 0
    counts: Dict[tuple, list] = {}
    for kd in kernels:
        j2 = kd.codomain_j
        if j2 == j:
            loops += 1
            continue
        entry = counts.setdefault(j2.key(), [j2, 0])
        entry[1] += 1

    neighbors = tuple(
        Neighbor(
            j=serialize_element(j2),
            multiplicity=mult,
            in_prime_field=is_in_prime_field(j2),
        )
        for _, (j2, mult) in sorted(counts.items())
    )
    return NeighborhoodReport(
        p=j.ctx.p,
        ell=ell,
        vertex_j=serialize_element(j),
        loops=loops,
        neighbors=neighbors,
        engine=ENGINE_GEOMETRIC,
    )


# -- graph construction -------------------------------------------------------


def supersingular_count(p: int) -> int:
    """Number of supersingular j-invariants in characteristic p.

    floor(p/12) plus the classical correction 0/1/1/2 for p congruent to
    1/5/7/11 mod 12; used as a hard sanity bound on every graph built.
    """
    eps = {1: 0, 5: 1, 7: 1, 11: 2}[p % 12]
    return p // 12 + eps


@dataclass
class IsogenyGraph:
    """BFS closure of neighborhood() with canonical edge bookkeeping.

    Edges are stored once per unordered vertex pair (loops as u == v)
    with the multiplicity seen from the side discovered first.
    """

    p: int
    ell: int
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str, int], ...]
    reports: Dict[str, NeighborhoodReport] = field(repr=False)
    complete: bool = True

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "ell": self.ell,
            "engine": ENGINE_GEOMETRIC,
            "vertices": list(self.vertices),
            "edges": [
                {"u": u, "v": v, "multiplicity": m} for u, v, m in self.edges
            ],
            "complete": self.complete,
        }

    def to_dot(self) -> str:
        lines = [f"graph isogeny_{self.ell} {{",
                 f'  label="p={self.p}, ell={self.ell}";']
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for u, v, m in self.edges:
            lines.append(f'  "{u}" -- "{v}" [mult={m}];')
        lines.append("}")
        return "\n".join(lines)


def bfs_graph(start_j: FieldElement, ell: int,
              max_vertices: Optional[int] = None,
              seed: int = 0) -> IsogenyGraph:
    """Connected component of ``start_j`` in the ell-isogeny graph.

    ``max_vertices`` bounds how many vertices get their neighborhoods
    expanded; when the budget bites, the graph is returned with
    ``complete=False`` rather than raising.
    """
    ctx = start_j.ctx
    p = ctx.p
    bound = supersingular_count(p)
    budget = bound if max_vertices is None else max_vertices

    start = serialize_element(start_j)
    queue = deque([(start, start_j)])
    seen = {start}
    order: List[str] = []
    reports: Dict[str, NeighborhoodReport] = {}
    edges: List[Tuple[str, str, int]] = []
    complete = True

    while queue:
        if len(reports) >= budget:
            complete = False
            break
        name, jv = queue.popleft()
        rep = neighborhood(jv, ell, seed=seed)
        order.append(name)
        reports[name] = rep
        if rep.loops:
            edges.append((name, name, rep.loops))
        for nb in rep.neighbors:
            # The vertex expanded first records the unordered edge; by the
            # time the far endpoint is expanded, `name` is in reports.
            if nb.j not in reports:
                edges.append((name, nb.j, nb.multiplicity))
                if nb.j not in seen:
                    seen.add(nb.j)
                    queue.append((nb.j, parse_element(ctx, nb.j)))

    vertices = tuple(order) + tuple(n for n, _ in queue)
    if len(vertices) > bound:
        raise RuntimeError(
            f"graph size {len(vertices)} exceeds the supersingular count "
            f"bound {bound} for p={p}"
        )
    return IsogenyGraph(p=p, ell=ell, vertices=vertices,
                        edges=tuple(edges), reports=reports,
                        complete=complete)
