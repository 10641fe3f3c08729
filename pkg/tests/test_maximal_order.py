import random

import pytest

from k2ds.lattice import convolve, index, lattice_leq
from k2ds.maximal_order import (
    enumerate_subgroups,
    gamma_lattice,
    gaussian_binomial,
    gtilde_vector,
    i_plus_gtilde,
    ideal_I,
    ideal_J,
    idempotent,
    is_ideal,
    is_idempotent,
    is_ring_closed,
    order_info,
    pk_gamma,
    quotient_mod_pk_gamma,
    subgroup_count,
    zg_lattice,
)
from k2ds.ring import RingError

GRID = [(2, 1), (2, 2), (3, 2)]


def test_subgroup_counts():
    assert len(enumerate_subgroups(3, 2)) == 6
    assert len(enumerate_subgroups(2, 2)) == 5
    assert len(enumerate_subgroups(2, 1)) == 2
    for p in (2, 3, 5):
        for n in (1, 2, 3):
            subs = enumerate_subgroups(p, n)
            assert len(subs) == subgroup_count(p, n)
            assert len({h.basis for h in subs}) == len(subs)
            for d in range(n + 1):
                assert sum(1 for h in subs if h.dim == d) == gaussian_binomial(n, d, p)


def test_idempotents():
    trivial = enumerate_subgroups(2, 1)[0]
    assert idempotent(trivial).vector == (1, 0)
    full = enumerate_subgroups(2, 1)[1]
    v = list(idempotent(full).vector)
    assert v == [1, 1]
    assert convolve(v, v, 2, 1) == [2, 2]
    for p, n in [(3, 2), (2, 3)]:
        reps = [idempotent(h) for h in enumerate_subgroups(p, n)]
        assert all(is_idempotent(r) for r in reps)
        assert all(sum(r.vector) == r.subgroup.order for r in reps)
        assert len({r.vector for r in reps}) == len(reps)


def test_gamma_p2_n1():
    g = gamma_lattice(2, 1)
    assert g.contains([0.5, 0.5])
    assert index(zg_lattice(2, 1), g) == 2


@pytest.mark.parametrize("p,n", GRID)
def test_gamma_is_an_order(p, n):
    g = gamma_lattice(p, n)
    zg = zg_lattice(p, n)
    assert lattice_leq(zg, g)
    assert is_ring_closed(g, p, n)
    rng = random.Random(p * 10 + n)
    for _ in range(10):
        a = [rng.randint(-3, 3) for _ in range(p ** n)]
        b = [rng.randint(-3, 3) for _ in range(p ** n)]
        assert g.contains(convolve(a, b, p, n))


@pytest.mark.parametrize("p,n", GRID)
def test_I_and_J(p, n):
    zg = zg_lattice(p, n)
    I, J = ideal_I(p, n), ideal_J(p, n)
    assert is_ideal(I, p, n) and is_ideal(J, p, n)
    assert i_plus_gtilde(p, n) == J
    assert lattice_leq(J.scaled(p), I)
    assert lattice_leq(I, J) and lattice_leq(J, zg)
    assert lattice_leq(I, zg.scaled(p))


@pytest.mark.parametrize("p,n", GRID)
def test_pk_gamma_inclusion(p, n):
    zg = zg_lattice(p, n)
    for k in range(0, n + 2):
        assert lattice_leq(pk_gamma(p, n, k), zg) == (k >= n)


def test_gtilde_annihilates_augmentation():
    for p, n in GRID:
        gt = gtilde_vector(p, n)
        for i in range(n):
            x = [0] * (p ** n)
            x[0] = -1
            x[p ** (n - 1 - i)] = 1  # sigma_i in lexicographic indexing
            assert not any(convolve(gt, x, p, n))


def test_quotient_orders():
    assert quotient_mod_pk_gamma(2, 1, 2).order == 8
    assert quotient_mod_pk_gamma(2, 1, 1).order == 2
    with pytest.raises(RingError):
        quotient_mod_pk_gamma(2, 2, 1)


def test_quotient_homomorphism():
    q = quotient_mod_pk_gamma(2, 2, 3)
    rng = random.Random(4)
    for _ in range(30):
        v = [rng.randint(-30, 30) for _ in range(4)]
        w = [rng.randint(-30, 30) for _ in range(4)]
        assert q.mul(q.reduce(v), q.reduce(w)) == q.reduce(convolve(v, w, 2, 2))


def test_order_info_report():
    info = order_info(2, 2)
    assert info["subgroup_count"] == 5
    assert info["gamma_index_over_zg"] == 16
    assert all(v for k, v in info["checks"].items() if k != "pk_gamma_in_zg")
    assert info["checks"]["pk_gamma_in_zg"] == {"0": False, "1": False, "2": True, "3": True}
