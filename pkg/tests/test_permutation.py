import math
import random

import pytest

from ld2.gf2n import Field
from ld2.permutation import (
    CentralMap,
    frobenius_trinomial_is_permutation,
    inner_term_never_zero,
    is_permutation_bruteforce,
)

GAMMA = 0b010
GAMMA2 = 0b100


# --- independent mini-field oracle (works for even degrees too) -----------

def _pmod(a, f):
    df = f.bit_length()
    while a.bit_length() >= df:
        a ^= f << (a.bit_length() - df)
    return a


def _mini_irreducible(n):
    for f in range(1 << n | 1, 1 << (n + 1), 2):
        if all(_pmod(f, d) for d in range(2, 1 << (n // 2 + 1)) if d.bit_length() > 1):
            return f
    raise AssertionError


def _mini_mul(a, b, f):
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    return _pmod(acc, f)


# --- brute-force bijectivity ------------------------------------------------

def test_bruteforce_identity_and_frobenius(f8):
    assert is_permutation_bruteforce(lambda x: x, f8)
    assert is_permutation_bruteforce(f8.sqr, f8)


def test_bruteforce_rejects_seventh_power(f8):
    # x^7 is 1 on every nonzero element
    assert not is_permutation_bruteforce(lambda x: f8.pow(x, 7), f8)


def test_bruteforce_capacity_guard():
    field = Field(25)
    with pytest.raises(ValueError):
        is_permutation_bruteforce(lambda x: x, field)


def test_affine_maps_are_bijections(f8):
    # every ax + b with a != 0 permutes the field
    for a in range(1, 8):
        for b in range(8):
            assert is_permutation_bruteforce(lambda x: f8.mul(a, x) ^ b, f8)


@pytest.mark.parametrize("n", [3, 5])
def test_monomial_bijectivity_matches_gcd(n):
    field = Field(n)
    for e in range(field.order):
        expected = math.gcd(e, field.order - 1) == 1
        assert is_permutation_bruteforce(lambda x: field.pow(x, e), field) == expected


# --- the trinomial permutation criterion ------------------------------------

def test_trinomial_criterion_known_answers():
    assert frobenius_trinomial_is_permutation(2, 3)  # gcd(5, 7) = 1
    assert not frobenius_trinomial_is_permutation(1, 2)  # gcd(3, 3) = 3
    with pytest.raises(ValueError):
        frobenius_trinomial_is_permutation(0, 3)
    with pytest.raises(ValueError):
        frobenius_trinomial_is_permutation(3, 3)


def test_trinomial_criterion_at_the_scheme_instance():
    # k = m over n = 2m - 1: (2^m - 1)(2^m + 1) = 1 mod 2^n - 1
    for m in (2, 3, 4, 5):
        n = 2 * m - 1
        assert ((1 << m) - 1) * ((1 << m) + 1) % ((1 << n) - 1) == 1
        assert frobenius_trinomial_is_permutation(m, n)


def test_trinomial_criterion_matches_bruteforce_all_n():
    # independent mini-field arithmetic so even degrees are covered too
    for n in range(2, 12):
        f = _mini_irreducible(n)
        order = 1 << n
        for k in range(1, n):
            images = set()
            for x in range(order):
                xk = x
                for _ in range(k):
                    xk = _mini_mul(xk, xk, f)
                images.add(_mini_mul(xk, x, f) ^ xk ^ x)
            brute = len(images) == order
            assert brute == frobenius_trinomial_is_permutation(k, n), (n, k)


# --- the inner term and the central map --------------------------------------

def test_inner_term_toy_fixture(f8):
    assert inner_term_never_zero(f8, 0b111)
    # gamma has trace 0, so x^4 + x + gamma has a root
    assert not inner_term_never_zero(f8, GAMMA)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_inner_term_all_trace_one_alphas(n):
    field = Field(n)
    for alpha in range(field.order):
        if field.trace(alpha) == 1:
            assert inner_term_never_zero(field, alpha)


def test_central_map_rejects_trace_zero_alpha(f8):
    with pytest.raises(ValueError):
        CentralMap(f8, GAMMA)
    with pytest.raises(ValueError):
        CentralMap(f8, 8)


def test_central_map_toy_values(f8):
    cm = CentralMap(f8, 0b111)
    # g(0) = alpha^3; oracle by repeated multiplication
    acc = 1
    for _ in range(3):
        acc = f8.mul(acc, 0b111)
    assert acc == GAMMA
    assert cm(0) == GAMMA
    # inner term is 1 at x = 1 + g^2, so g(x) = 1 + x = g^2
    assert cm(0b101) == GAMMA2
    assert is_permutation_bruteforce(cm, f8)


@pytest.mark.parametrize("n", [3, 5])
def test_central_map_bijective_random_alphas(n):
    field = Field(n)
    rng = random.Random(n)
    tested = 0
    while tested < 8:
        alpha = rng.randrange(field.order)
        if field.trace(alpha) != 1:
            continue
        assert is_permutation_bruteforce(CentralMap(field, alpha), field)
        tested += 1
