import pytest

from ssgraph.arith import (is_prime, legendre, norm_equation_solutions,
                           solve_hermite_norm, solve_sum_of_squares)


def test_is_prime_small_table():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(-5, 50):
        assert is_prime(n) == (n in primes), n


def test_is_prime_carmichael_and_large():
    assert not is_prime(561)        # 3 * 11 * 17
    assert not is_prime(1729)
    assert is_prime(2 ** 61 - 1)    # Mersenne
    assert not is_prime(2 ** 61 + 1)


def test_legendre_values_mod_11():
    squares = {pow(x, 2, 11) for x in range(1, 11)}
    for a in range(1, 11):
        assert legendre(a, 11) == (1 if a in squares else -1)
    assert legendre(0, 11) == 0
    assert legendre(-1, 11) == legendre(10, 11)


def test_legendre_rejects_composite_modulus():
    with pytest.raises(ValueError):
        legendre(2, 15)


def test_two_square_representations():
    assert solve_sum_of_squares(5) == (1, 2)
    assert solve_sum_of_squares(13) == (2, 3)
    assert solve_sum_of_squares(17) == (1, 4)
    m, n = solve_sum_of_squares(97)
    assert m * m + n * n == 97 and 0 < m < n
    with pytest.raises(ValueError):
        solve_sum_of_squares(7)  # 7 = 3 mod 4


def test_hermite_representations():
    assert solve_hermite_norm(7) == (1, 2)    # 1 + 2 + 4
    assert solve_hermite_norm(13) == (1, 3)
    m, n = solve_hermite_norm(103)
    assert m * m + m * n + n * n == 103
    with pytest.raises(ValueError):
        solve_hermite_norm(5)  # 5 = 2 mod 3


def test_norm_equation_enumeration_is_complete():
    sols = norm_equation_solutions("sum_squares", 25, 5)
    # excludes x divisible by 5, so only (+-3, +-4) survive
    assert set(sols) == {(-3, -4), (-3, 4), (3, -4), (3, 4),
                         (-4, -3), (-4, 3), (4, -3), (4, 3)}
    assert sols == sorted(sols)
    herm = norm_equation_solutions("hermite", 7, 7)
    for x, y in herm:
        assert x * x + x * y + y * y == 7 and x % 7 != 0
    assert (1, 2) in herm and (-1, -2) in herm


def test_norm_equation_rejects_bad_form():
    with pytest.raises(ValueError):
        norm_equation_solutions("cubic", 5, 1)
    assert norm_equation_solutions("hermite", -3, 1) == []
