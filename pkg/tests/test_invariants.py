import itertools

import pytest

from k2ds.invariants import (
    basis_size,
    clusters,
    imaginary_cluster,
    k2_rank,
    k2_rank_mod_I,
    k2c_exponent,
    lower_bounds,
    sk1_inverse_limit,
    sk1_rank,
    sk1_zg_rank,
)
from k2ds.maximal_order import enumerate_subgroups
from k2ds.presentation import Unsupported
from k2ds.ring import RingError, RingSpec


def covered_specs():
    for fam in ("fpg", "zpk", "fpg-gtilde", "zg-pkgamma"):
        for p, n, k in itertools.product((2, 3, 5), (1, 2, 3), (1, 2, 3, 4)):
            if p == 5 and n == 3:
                continue
            try:
                spec = RingSpec(fam, p, n, k)
                k2_rank(spec)
            except (RingError, Unsupported):
                continue
            yield spec


def test_rank_equals_basis_size():
    specs = list(covered_specs())
    assert len(specs) > 40
    for spec in specs:
        assert k2_rank(spec).value == basis_size(spec), spec


def test_rank_examples():
    assert k2_rank(RingSpec("fpg", 3, 2)).value == 8
    assert k2_rank(RingSpec("fpg", 3, 2)).citation == "Lemma generators"
    for k in (2, 3, 5):
        assert k2_rank(RingSpec("zpk", 2, 2, k)).value == 6
        assert k2_rank(RingSpec("zpk", 3, 1, k)).value == 1
    assert k2_rank(RingSpec("zg-pkgamma", 2, 2, 2)).value == 4
    assert k2_rank(RingSpec("zg-pkgamma", 3, 2, 2)).value == 8
    assert k2_rank_mod_I(3, 2).value == 10


def test_stable_ranks_agree():
    for p, n in [(2, 2), (3, 2), (2, 3)]:
        for k in (n + 1, n + 2):
            assert k2_rank(RingSpec("zg-pkgamma", p, n, k)).value == k2_rank(RingSpec("zpk", p, n, k)).value


def test_rank_monotone_in_n():
    for fam, k in [("fpg", 1), ("zpk", 4)]:
        for p in (2, 3):
            vals = [k2_rank(RingSpec(fam, p, n, k)).value for n in (1, 2, 3, 4)]
            assert vals == sorted(vals)


def test_uncovered_rank():
    with pytest.raises(Unsupported):
        k2_rank(RingSpec("zg-pkgamma", 3, 1, 1))


def test_k2c():
    assert k2c_exponent(2, 2)["enumerated"] == 5
    assert k2c_exponent(3, 2)["enumerated"] == 10
    for p in (2, 3, 5, 7):
        assert k2c_exponent(p, 1)["enumerated"] == 1
    assert k2c_exponent(2, 2)["total_rank"] == 6


def test_clusters():
    for p, n in [(2, 2), (3, 2), (3, 3), (5, 2)]:
        cl = clusters(p, n)
        assert len(cl) == 1 + (p ** n - 1) // (p - 1)
        assert sum(size for _, size in cl) == p ** n
    assert imaginary_cluster(2, 3) == []


def test_sk1():
    assert sk1_inverse_limit(3, 2) == [3, 3, 3, 3]
    assert sk1_inverse_limit(2, 2) == []
    assert sk1_rank(3, 2, 1).value == 2
    assert sk1_rank(3, 2, 2).value == 4
    assert sk1_rank(3, 2, 5).value == 4
    with pytest.raises(Unsupported):
        sk1_rank(2, 2, 1)
    for p, n in [(3, 2), (3, 3), (5, 2)]:
        lines = sum(1 for h in enumerate_subgroups(p, n) if h.dim == 1)
        assert len(sk1_inverse_limit(p, n)) == lines


def test_bounds():
    b = lower_bounds(3, 2)
    assert (b["k2_zg"].value, b["wh2"].value) == (6, 5)
    assert lower_bounds(5, 2)["k2_zg"].value == 20
    assert sk1_zg_rank(3, 2).value == 0
    with pytest.raises(Unsupported):
        lower_bounds(2, 2)


def test_bounds_clamp_flag():
    b = lower_bounds(7, 1)
    assert b["k2_zg"].value == 0 and b["k2_zg"].extra["raw"] == 0
    r = sk1_zg_rank(11, 2)
    assert r.value >= 0
    assert r.extra["clamped"] == (r.extra["raw"] < 0)
