import random

import pytest

from k2ds.cyclotomic import (
    CyclotomicError,
    CyclotomicInt,
    chi,
    chi_is_homomorphism,
    chi_push,
    exact_divide,
    norm,
    norm_by_matrix,
    pi_pair,
    sylvester_resultant,
    verify_uniformizer,
)
from k2ds.presentation import GeneratorId
from k2ds.ring import GroupRingElement, RingError, RingSpec
from k2ds.symbols import basis_symbol, validate


def test_pi_squared_p3():
    pi = CyclotomicInt.pi(3)
    z = CyclotomicInt.zeta(3)
    assert pi ** 2 == -3 * z
    assert z ** 3 == 1


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_uniformizer(p):
    out = verify_uniformizer(p)
    assert out["check"] and abs(out["norm_u"]) == 1 and out["norm_u_by_matrix"] == out["norm_u"]
    assert out["u_times_inverse_is_one"] and out["one_plus_pi_to_p_is_one"]
    assert out["pi_p_in_p_pi"]


def test_uniformizer_p3_value():
    assert verify_uniformizer(3)["u"] == list((-CyclotomicInt.zeta(3) ** 2).coeffs)


def test_uniformizer_bounds():
    with pytest.raises(RingError):
        verify_uniformizer(17)
    with pytest.raises(RingError):
        verify_uniformizer(2)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_norm_pi(p):
    assert norm(CyclotomicInt.pi(p)) == p


def test_norm_two_ways():
    rng = random.Random(8)
    for p in (3, 5, 7):
        for _ in range(20):
            a = CyclotomicInt(p, [rng.randint(-6, 6) for _ in range(p - 1)])
            assert norm(a) == norm_by_matrix(a)


def test_resultant_small():
    # Res(t^2 + 1, t - 2) = 5
    assert abs(sylvester_resultant([1, 0, 1], [-2, 1])) == 5


def test_exact_division():
    pi = CyclotomicInt.pi(5)
    with pytest.raises(CyclotomicError):
        exact_divide(CyclotomicInt.scalar(5, 1), pi)
    assert exact_divide(pi * pi, pi) == pi


def test_modulus_mismatch():
    with pytest.raises(CyclotomicError):
        CyclotomicInt.pi(3) + CyclotomicInt.pi(3, 9)


def test_chi_push_T2():
    for p, k in [(3, 2), (5, 3), (3, 4)]:
        spec = RingSpec("zpk", p, 1, k)
        sym = basis_symbol(GeneratorId.symbol(1, (p - 1,)), spec)
        assert chi_push(sym) == pi_pair(p, p ** k)


def test_chi_zero():
    spec = RingSpec("zpk", 3, 1, 2)
    b = GroupRingElement.x(spec, 1) + 4
    img = chi_push(validate(GroupRingElement(spec), b))
    assert img[0].is_zero() and img[1] == chi(b)


def test_chi_homomorphism_random():
    rng = random.Random(9)
    for p, k in [(3, 2), (5, 2), (3, 3)]:
        spec = RingSpec("zpk", p, 1, k)
        M = p ** k
        for _ in range(50):
            a = GroupRingElement(spec, {(j,): rng.randrange(M) for j in range(p)})
            b = GroupRingElement(spec, {(j,): rng.randrange(M) for j in range(p)})
            assert chi_is_homomorphism(a, b)
            # compatible with reduction mod p
            assert chi(a).reduce_mod(p) == chi(a, p)


def test_chi_needs_cyclic():
    with pytest.raises(CyclotomicError):
        chi(GroupRingElement.x(RingSpec("fpg", 3, 2), 1))
