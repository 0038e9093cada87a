import random

import pytest

from ssgraph import backends
from ssgraph.backends import (FAST_LANE_PRIME_LIMIT, available_lanes,
                              get_lane, lane_for_prime, set_backend)

P, NS = 103, 5  # t^2 = 5 is a nonsquare mod 103 in these fixtures


def random_pairs(rng, n):
    return [(rng.randrange(P), rng.randrange(P)) for _ in range(n)]


def test_all_lanes_available_here():
    lanes = available_lanes()
    assert "object" in lanes and "numpy" in lanes
    # numba is a declared dependency, so its lane must import too
    assert "numba" in lanes


def test_lanes_agree_on_arithmetic():
    rng = random.Random(7)
    fp, gp = random_pairs(rng, 9), random_pairs(rng, 5)
    outputs = {}
    for name in available_lanes():
        mod = get_lane(name)
        f = mod.from_pairs(fp, P)
        g = mod.from_pairs(gp, P)
        prod = mod.mul(f, g, P, NS)
        q, r = mod.quo_rem(prod, g, P, NS)
        h = mod.gcd(prod, g, P, NS)
        pw = mod.powmod(f, 103, g, P, NS)
        outputs[name] = (
            mod.to_pairs(prod), mod.to_pairs(q), mod.to_pairs(r),
            mod.to_pairs(mod.monic(h, P, NS)), mod.to_pairs(pw),
        )
    reference = outputs["object"]
    for name, got in outputs.items():
        assert got == reference, name


def test_eval_many_matches_horner():
    rng = random.Random(3)
    fp = random_pairs(rng, 6)
    xs = random_pairs(rng, 8)
    expected = None
    for name in available_lanes():
        mod = get_lane(name)
        f = mod.from_pairs(fp, P)
        pts = mod.points_from_pairs(xs, P)
        vals = mod.points_to_pairs(mod.eval_many(f, pts, P, NS))
        if expected is None:
            expected = vals
        assert vals == expected, name


def test_lane_for_prime_routes_large_chars_to_object():
    big = 2_305_843_009_213_693_951  # > 2^31, a Mersenne prime
    assert big > FAST_LANE_PRIME_LIMIT
    assert lane_for_prime(big) is get_lane("object")
    small = lane_for_prime(103)
    assert small is backends.get_backend()


def test_set_backend_rejects_unknown_names():
    with pytest.raises(ValueError):
        set_backend("fortran")


def test_backend_switch_is_effective(monkeypatch):
    before = backends.backend_name()
    try:
        set_backend("numpy")
        assert backends.backend_name() == "numpy"
        assert lane_for_prime(11) is get_lane("numpy")
    finally:
        set_backend(before)
