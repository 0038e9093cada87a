"""Shared fixtures, most importantly the desk-scale dual-engine sweep.

The sweep evaluates both engines at every valid (ell, vertex, p) with
ell in {5, 7, 11, 13} and p <= 1000, once per session; the acceptance
tests slice it from several angles (loop counts, stable patterns,
cross-engine agreement, factorization shapes).  Failures inside a single
case are recorded as data so one bad prime cannot mask the rest.
"""

import sys
import time

import pytest

from ssgraph.arith import is_prime
from ssgraph.cli import geometric_report, quaternion_report

SWEEP_ELLS = (5, 7, 11, 13)
SWEEP_PMAX = 1000


def sweep_cases():
    for ell in SWEEP_ELLS:
        for p in range(5, SWEEP_PMAX + 1):
            if p == ell or not is_prime(p):
                continue
            if p % 4 == 3:
                yield (ell, "1728", p)
            if p % 3 == 2:
                yield (ell, "0", p)


@pytest.fixture(scope="session")
def sweep(request):
    """(ell, vertex, p) -> {"geo": profile, "quat": profile, "error": ...}

    Profiles are (loops, multiplicity profile, distinct count, fp count).
    Progress goes to the uncaptured stdout so long runs stay visibly alive.
    """
    capman = request.config.pluginmanager.getplugin("capturemanager")
    out = {}
    cases = list(sweep_cases())
    t0 = time.time()
    done = 0
    for ell, vertex, p in cases:
        entry = {"geo": None, "quat": None, "error": None}
        try:
            entry["geo"] = geometric_report(p, vertex, ell).profile()
            entry["quat"] = quaternion_report(p, vertex, ell).profile()
        except Exception as exc:
            entry["error"] = f"{type(exc).__name__}: {exc}"
        out[(ell, vertex, p)] = entry
        done += 1
        if done % 100 == 0 or done == len(cases):
            line = (f"[sweep] {done}/{len(cases)} cases "
                    f"({time.time() - t0:.0f}s)")
            if capman is not None:
                with capman.global_and_fixture_disabled():
                    print(f"\n{line}", flush=True)
            else:
                print(f"\n{line}", file=sys.__stdout__, flush=True)
    return out
