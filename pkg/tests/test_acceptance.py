"""Acceptance gate: one test and one printed PASS/FAIL line per criterion.

These tests drive the shipped interfaces (table scan, engines, oracle
command) at full desk scale; the heavy sweep comes from the session
fixture in conftest.  Each test prints a single summary line directly to
the real stdout so the verdicts are visible in captured runs too.
"""

import json
import sys
from collections import Counter
from fractions import Fraction

import pytest

from ssgraph import cli
from ssgraph.arith import legendre
from ssgraph.cli import deviation_scan, geometric_report, stable_pattern
from ssgraph.ff import make_quadratic_context, parse_element
from ssgraph.isogeny import bfs_graph, supersingular_count
from ssgraph.quat import (KIND_E0, KIND_E1728, build_X_ell, ideal_action,
                          standard_order, theta_iso, _m2_mul)

SWEEP_ELLS = (5, 7, 11, 13)


_CAPMAN = []


@pytest.fixture(autouse=True)
def _live_verdicts(request):
    """Let announce() bypass output capture so verdicts always print."""
    _CAPMAN.append(request.config.pluginmanager.getplugin("capturemanager"))
    try:
        yield
    finally:
        _CAPMAN.pop()


def announce(num: int, name: str, ok: bool, detail: str = "") -> None:
    line = f"ACCEPTANCE {num} {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    capman = _CAPMAN[-1] if _CAPMAN else None
    if capman is not None:
        with capman.global_and_fixture_disabled():
            print(f"\n{line}", flush=True)
    else:
        print(f"\n{line}", file=sys.__stdout__, flush=True)


# -- 1: largest deviating primes ------------------------------------------------

DEVIANT_PRIME_EXPECTED = {
    (5, "1728"): 83, (5, "0"): 47,
    (7, "1728"): 191, (7, "0"): 71,
    (11, "1728"): 479, (11, "0"): 311,
    (13, "1728"): 659, (13, "0"): 479,
    # optional extended row
    (17, "1728"): 1151, (17, "0"): 839,
}


def test_criterion_1_deviant_primes():
    got = {}
    bound_flags = {}
    for (ell, vertex), want in DEVIANT_PRIME_EXPECTED.items():
        row = deviation_scan(ell, vertex)
        got[(ell, vertex)] = row["value"]
        bound_flags[(ell, vertex)] = row["bound_met"]
    bad = {k: (got[k], v) for k, v in DEVIANT_PRIME_EXPECTED.items()
           if got[k] != v}
    ok = not bad
    announce(1, "deviant-primes", ok,
             f"8 required + optional ell=17 rows exact; computed "
             f"bound flags {sum(bound_flags.values())}/10 set"
             if ok else f"mismatches {bad}")
    assert ok, f"deviation scan mismatches: {bad}"


# -- 2: loop counts above the linear bound -------------------------------------


def test_criterion_2_loop_counts(sweep):
    checked = 0
    bad = []
    for (ell, vertex, p), entry in sweep.items():
        linear = 4 * ell if vertex == "1728" else 3 * ell
        if p <= linear:
            continue
        if entry["error"]:
            bad.append(((ell, vertex, p), entry["error"]))
            continue
        split = ell % 4 == 1 if vertex == "1728" else ell % 3 == 1
        want = 2 if split else 0
        checked += 1
        if entry["geo"][0] != want:
            bad.append(((ell, vertex, p), entry["geo"][0], want))
    ok = not bad and checked > 600
    announce(2, "loop-counts", ok,
             f"{checked} cases, loops always 2 or 0 per residue class"
             if ok else f"failures {bad[:5]}")
    assert ok, bad[:10]


# -- 3: stable pattern above the quadratic bound --------------------------------


def stable_cases(sweep):
    for (ell, vertex, p), entry in sweep.items():
        pat = stable_pattern(vertex, ell, p)
        if p > pat["bound"]:
            yield (ell, vertex, p), entry, pat


def test_criterion_3_stable_pattern(sweep):
    checked = 0
    bad = []
    for key, entry, pat in stable_cases(sweep):
        if entry["error"]:
            bad.append((key, entry["error"]))
            continue
        loops, mults, distinct, fp = entry["geo"]
        checked += 1
        if distinct != pat["distinct"]:
            bad.append((key, "distinct", distinct, pat["distinct"]))
        if any(m != pat["multiplicity"] for m in mults):
            bad.append((key, "multiplicity", mults))
        if fp != pat["fp"]:
            bad.append((key, "fp", fp, pat["fp"]))
    ok = not bad and checked > 100
    announce(3, "stable-pattern", ok,
             f"{checked} cases above the quadratic bound match "
             f"distinct/multiplicity/fp formulas"
             if ok else f"failures {bad[:5]}")
    assert ok, bad[:10]


# -- 4: small characteristic spot cases -----------------------------------------


def test_criterion_4_small_cases():
    failures = []

    def case(p, ell, vertex, want_loops, want_neighbors):
        rep = geometric_report(p, str(vertex), ell)
        got = (rep.loops, sorted((nb.j, nb.multiplicity)
                                 for nb in rep.neighbors))
        want = (want_loops, sorted(want_neighbors))
        if got != want:
            failures.append((p, ell, vertex, got, want))

    case(7, 2, 1728, 3, [])
    case(5, 2, 0, 3, [])
    case(5, 3, 0, 4, [])
    # char 7 has a single supersingular class and 1728 = -1 there, so all
    # four degree-3 edges are loops (the quartic is (X + 1)^4).
    case(7, 3, 1728, 4, [])
    # char 11: the only two classes are j = 1728 = 1 and j = 0; the degree-3
    # neighborhood of 1728 is two loops plus j = 0 with multiplicity 2.
    case(11, 3, 1728, 2, [("0+0*t", 2)])
    for p in (11, 19, 23, 31, 43, 179):
        rep = geometric_report(p, "1728", 2)
        if not (rep.loops == 1 and rep.distinct_count == 1
                and rep.multiplicity_profile() == (2,)):
            failures.append((p, 2, 1728, rep.profile(), "1 loop + 1x2"))

    ok = not failures
    announce(4, "small-cases", ok,
             "all spot cases exact; (7,3) is 4 loops (single-vertex graph) "
             "and (11,3) is 2 loops + j=0 x2 (two-vertex graph)"
             if ok else f"failures {failures}")
    assert ok, failures


# -- 5: cross-engine agreement ---------------------------------------------------


def test_criterion_5_cross_engine(sweep):
    bad = []
    below = 0
    for (ell, vertex, p), entry in sweep.items():
        if entry["error"]:
            bad.append(((ell, vertex, p), entry["error"]))
            continue
        pat = stable_pattern(vertex, ell, p)
        if p <= pat["bound"]:
            below += 1
        if entry["geo"] != entry["quat"]:
            bad.append(((ell, vertex, p), entry["geo"], entry["quat"]))
    ok = not bad and len(sweep) > 600
    announce(5, "cross-engine", ok,
             f"{len(sweep)} cases agree on loops/distinct/profile/fp "
             f"({below} below the quadratic bound)"
             if ok else f"disagreements {bad[:5]}")
    assert ok, bad[:10]


# -- 6: factorization shapes at stable primes ------------------------------------


def test_criterion_6_factor_shapes(sweep):
    checked = 0
    bad = []
    for (ell, vertex, p), entry, pat in stable_cases(sweep):
        if entry["error"]:
            bad.append(((ell, vertex, p), entry["error"]))
            continue
        loops, mults, distinct, fp = entry["geo"]
        split = ell % 4 == 1 if vertex == "1728" else ell % 3 == 1
        checked += 1
        # loop factor of multiplicity 2 appears exactly in the split case
        if (loops == 2) != split or loops not in (0, 2):
            bad.append(((ell, vertex, p), "loop-factor", loops, split))
        if set(mults) != {pat["multiplicity"]}:
            bad.append(((ell, vertex, p), "uniform-multiplicity", mults))
        if not (fp == pat["fp"] and distinct - fp == pat["distinct"] - pat["fp"]):
            bad.append(((ell, vertex, p), "field-split", fp, pat["fp"]))
    ok = not bad and checked > 100
    announce(6, "factor-shapes", ok,
             f"{checked} stable cases realize the loop-iff-residue and "
             f"uniform-multiplicity shape with the stated F_p split"
             if ok else f"failures {bad[:5]}")
    assert ok, bad[:10]


# -- 7: modular-polynomial oracle -------------------------------------------------


def test_criterion_7_oracle(capsys):
    rc = cli.main(["oracle-check", "--p", "47,103,167,311",
                   "--ell", "2,3,5", "--format", "json"])
    rows = json.loads(capsys.readouterr().out)
    by_case = Counter((r["p"], r["ell"]) for r in rows)
    mismatches = [r for r in rows if not r["match"]]
    sample_ok = all(
        by_case[(p, ell)] == min(20, supersingular_count(p))
        for p in (47, 103, 167, 311) for ell in (2, 3, 5)
    )
    ok = rc == 0 and not mismatches and sample_ok
    announce(7, "oracle-equivalence", ok,
             f"{len(rows)} (j, ell, p) multisets match the packaged "
             f"level-2/3/5 tables; samples cover min(20, all vertices)"
             if ok else f"rc={rc} mismatches={mismatches[:3]}")
    assert ok, (rc, mismatches[:5], by_case)


# -- 8: structural invariant suite -------------------------------------------------


def _aut_weight(ctx, name):
    j = parse_element(ctx, name)
    if j == ctx.el(0):
        return 6
    if j == ctx.el(1728):
        return 4
    return 2


def _weighted_symmetry_holds(p, ell):
    """m(u->v) * |Aut(v)| == m(v->u) * |Aut(u)| over all BFS edges."""
    ctx = make_quadratic_context(p)
    start = ctx.el(1728) if p % 4 == 3 else ctx.el(0)
    graph = bfs_graph(start, ell)
    assert graph.complete
    for u, v, _ in graph.edges:
        if u == v:
            continue
        m_uv = next(nb.multiplicity for nb in graph.reports[u].neighbors
                    if nb.j == v)
        m_vu = next(nb.multiplicity for nb in graph.reports[v].neighbors
                    if nb.j == u)
        if m_uv * _aut_weight(ctx, v) != m_vu * _aut_weight(ctx, u):
            return False
    return True


def _orbit_sizes(kind, p, ell):
    """Sizes of the unit-action orbits on the norm-ell left ideals."""
    order = standard_order(kind, p)
    ideals = build_X_ell(order, ell)
    ctx = order.ctx
    if kind == KIND_E1728:
        u = ctx.el(0, 1)                       # i, norm form x^2 + y^2
    else:
        u = ctx.el(Fraction(1, 2), Fraction(1, 2))  # eps, x^2 + xy + y^2
    reps = []
    for x in range(ell):
        r = ctx.el(x) + u
        if int(r.nrd()) % ell != 0:
            reps.append(r)
    index_of = {ideal.lattice: n for n, ideal in enumerate(ideals)}
    parent = list(range(len(ideals)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for n, ideal in enumerate(ideals):
        for r in reps:
            m = index_of[ideal_action(ideal, r, ell).lattice]
            ra, rb = find(n), find(m)
            if ra != rb:
                parent[ra] = rb
    return sorted(Counter(find(n) for n in range(len(ideals))).values())


def test_criterion_8_structural(sweep):
    problems = []

    # (a) sum of multiplicities + loops == ell + 1, everywhere
    for (ell, vertex, p), entry in sweep.items():
        if entry["error"]:
            continue
        loops, mults, _, _ = entry["geo"]
        if loops + sum(mults) != ell + 1:
            problems.append(("sum-rule", ell, vertex, p))
    for (p, ell) in ((7, 2), (5, 2), (5, 3), (11, 3), (179, 2)):
        vertex = "1728" if p % 4 == 3 else "0"
        rep = geometric_report(p, vertex, ell)
        if rep.loops + sum(nb.multiplicity for nb in rep.neighbors) != ell + 1:
            problems.append(("sum-rule-small", p, ell))

    # (b) automorphism-weighted edge symmetry on whole BFS components
    for p, ell in ((179, 2), (11, 3), (103, 5), (47, 5)):
        if not _weighted_symmetry_holds(p, ell):
            problems.append(("weighted-symmetry", p, ell))

    # (c) theta is a ring homomorphism (construction self-checks; exercise
    # a few basis products explicitly on top)
    for kind, p, ell in ((KIND_E1728, 83, 5), (KIND_E1728, 199, 13),
                         (KIND_E0, 101, 7)):
        order = standard_order(kind, p)
        th = theta_iso(order, ell)
        basis = order.basis()
        for x in basis:
            for y in basis:
                lhs = th.of(x * y)
                rhs = _m2_mul(th.of(x), th.of(y), ell)
                if lhs != rhs:
                    problems.append(("theta-hom", kind, p, ell))

    # (d) maximal-order discriminants
    for kind, ps in ((KIND_E1728, (7, 83, 199, 991)),
                     (KIND_E0, (5, 101, 983))):
        for p in ps:
            if standard_order(kind, p).discriminant() != p * p:
                problems.append(("discriminant", kind, p))

    # (e) unit-action orbit sizes: one orbit when the norm form has no
    # root of -q, else two fixed points and an orbit of length ell - 1
    for kind, p in ((KIND_E1728, 83), (KIND_E0, 101)):
        q = 1 if kind == KIND_E1728 else 3
        for ell in SWEEP_ELLS:
            split = legendre(-q, ell) == 1
            want = [1, 1, ell - 1] if split else [ell + 1]
            got = _orbit_sizes(kind, p, ell)
            if got != want:
                problems.append(("orbit-sizes", kind, ell, got, want))

    # (f) distinguished unit witnesses map I_inf to I_0
    for p in (83, 199):
        order = standard_order(KIND_E1728, p)
        ideals = build_X_ell(order, 5)
        if ideal_action(ideals[0], order.ctx.el(0, 1), 5) != ideals[1]:
            problems.append(("witness-i", p))
    for p in (101, 983):
        order = standard_order(KIND_E0, p)
        ideals = build_X_ell(order, 7)
        eps = order.ctx.el(Fraction(1, 2), Fraction(1, 2))
        if ideal_action(ideals[0], eps, 7) != ideals[1]:
            problems.append(("witness-eps", p))

    ok = not problems
    announce(8, "structural-suite", ok,
             "sum rule, automorphism-weighted edge symmetry, theta "
             "homomorphism, discriminant p^2, unit orbit sizes, and the "
             "i/eps witnesses all hold"
             if ok else f"problems {problems[:6]}")
    assert ok, problems[:10]
