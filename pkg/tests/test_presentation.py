import pytest

from k2ds.presentation import (
    GeneratorId,
    Unsupported,
    basis,
    classify,
    enumerate_set,
    fp_rank,
    pivot_generator,
    relation_matrix,
    verify_rank,
)
from k2ds.ring import RingSpec


def test_small_sets():
    T = [str(g) for g in enumerate_set("T", 2, 2)]
    assert T == ["<x1,x2>", "<x1,x1>", "<x1,x1*x2>", "<x2,x2>", "<x2,x1>", "<x2,x1*x2>"]
    assert [str(g) for g in enumerate_set("T1", 2, 2)] == ["<x1,x2>"]
    assert [str(g) for g in enumerate_set("T2", 2, 2)] == ["<x1,x1>", "<x2,x2>"]
    assert [str(g) for g in enumerate_set("T3", 2, 2)] == ["<x1,x1*x2>", "<x2,x1*x2>"]
    assert enumerate_set("Si", 3, 2, i=1) == [(1, 0), (2, 0)]
    assert len(enumerate_set("S", 3, 2)) == 8
    with pytest.raises(ValueError):
        enumerate_set("Si", 3, 2)
    with pytest.raises(ValueError):
        enumerate_set("T9", 3, 2)


def test_classify():
    assert classify(GeneratorId.symbol(1, (1, 1)), 2) == {"T3"}
    assert classify(GeneratorId.symbol(1, (0, 2)), 3) == {"T1"}
    assert classify(GeneratorId.symbol(1, (2, 2)), 3) == {"T3"}
    assert classify(GeneratorId.pp(), 2) == {"PP"}
    assert classify(GeneratorId.symbol(2, (2, 0)), 3) == set()


def test_fpg_basis_example():
    s = RingSpec("fpg", 3, 2)
    ids = [str(g) for g in basis(s)]
    assert len(ids) == 8
    assert "<x1,x2>" not in ids and "<x2,x1>" in ids


def test_pp_only_for_p2():
    assert str(basis(RingSpec("zpk", 2, 2, 2))[-1]) == "<-p,-p>"
    assert all(g.kind == "symbol" for g in basis(RingSpec("zpk", 3, 2, 2)))


def test_uncovered_cases():
    with pytest.raises(Unsupported):
        basis(RingSpec("fpg-gtilde", 3, 1))
    with pytest.raises(Unsupported):
        basis(RingSpec("zg-pkgamma", 3, 1, 1))
    with pytest.raises(Unsupported):
        basis(RingSpec("zpk", 3, 2, 1))


def test_stable_basis_equals_zpk():
    for p, n in [(2, 2), (3, 2), (2, 3)]:
        for k in range(n + 1, n + 3):
            a = basis(RingSpec("zg-pkgamma", p, n, k))
            assert a == basis(RingSpec("zpk", p, n, k))


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
def test_relation_matrix(p, n):
    out = verify_rank(p, n)
    assert out["pass"], out


def test_relation_rows_pivot_on_T1():
    m = relation_matrix(3, 2)
    for mu, row in zip(m.row_monomials, m.rows):
        g = pivot_generator(mu)
        assert "T1" in classify(g, 3)
        assert row[m.columns.index(g)] != 0


def test_fp_rank():
    assert fp_rank([[1, 2], [2, 4]], 5) == 1
    assert fp_rank([[1, 2], [2, 4]], 3) == 1
    assert fp_rank([[1, 1], [1, 0]], 2) == 2
    assert fp_rank([[0, 3], [3, 0]], 3) == 0


def test_documented_counts():
    assert len(enumerate_set("T", 3, 2)) == 16
    assert (len(enumerate_set("T1", 3, 2)), len(enumerate_set("T2", 3, 2)), len(enumerate_set("T3", 3, 2))) == (6, 2, 2)
    assert len(enumerate_set("S", 2, 3)) == 7 and len(enumerate_set("Si", 2, 3, i=1)) == 1
    m = relation_matrix(2, 3)
    assert m.shape == (4, 18)


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (2, 3), (5, 2), (3, 3)])
def test_sets_disjoint_and_basis_partition(p, n):
    t1, t2, t3 = (set(enumerate_set(name, p, n)) for name in ("T1", "T2", "T3"))
    if n >= 2:
        assert not (t1 & t2 or t1 & t3 or t2 & t3)
    T = set(enumerate_set("T", p, n))
    for fam, k in [("fpg", 1), ("zpk", 2), ("fpg-gtilde", 1), ("zg-pkgamma", n)]:
        b = basis(RingSpec(fam, p, n, k))
        syms = {g for g in b if g.kind == "symbol"}
        assert syms <= T and len(syms) == len(set(b)) - (1 if GeneratorId.pp() in b else 0)
