"""Generator sets T, T1, T2, T3, S, S_i, explicit K2 bases, and the scholium
relation matrix over F_p."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .ring import format_monomial


class Unsupported(Exception):
    """The requested case is outside what the theorems cover."""


PP_ID = "<-p,-p>"


@dataclass(frozen=True, order=True)
class GeneratorId:
    # kind "symbol" is <x_i, x^lam>; kind "pp" is the scalar symbol <-p,-p>
    kind: str
    i: int = 0
    lam: tuple = ()

    def __str__(self):
        if self.kind == "pp":
            return PP_ID
        return f"<x{self.i},{format_monomial(self.lam)}>"

    @classmethod
    def symbol(cls, i, lam):
        return cls("symbol", i, tuple(lam))

    @classmethod
    def pp(cls):
        return cls("pp")


def _nonzero_exponents(p, n):
    return [lam for lam in itertools.product(range(p), repeat=n) if any(lam)]


def _pure_power(i, lam):
    return lam[i - 1] > 0 and all(e == 0 for j, e in enumerate(lam) if j != i - 1)


def in_T1(i, lam, p):
    return all(e == 0 for e in lam[: i - 1]) and lam[i - 1] <= p - 2 and any(lam)


def in_T2(i, lam, p):
    return lam[i - 1] == p - 1 and all(e == 0 for j, e in enumerate(lam) if j != i - 1)


def in_T3(i, lam, p):
    return all(e == p - 1 for e in lam)


def enumerate_set(name, p, n, i=None):
    """Ordered members of one of the sets T, T1, T2, T3, S, Si.

    T-type sets return GeneratorId lists ordered by (i, lam); S and Si return
    exponent vectors in lexicographic order.  Si needs the index ``i``.
    """
    exps = _nonzero_exponents(p, n)
    if name == "S":
        return exps
    if name == "Si":
        if i is None or not 1 <= i <= n:
            raise ValueError("Si needs an index 1 <= i <= n")
        return [lam for lam in exps if _pure_power(i, lam)]
    tests = {
        "T": lambda i, lam: True,
        "T1": lambda i, lam: in_T1(i, lam, p),
        "T2": lambda i, lam: in_T2(i, lam, p),
        "T3": lambda i, lam: in_T3(i, lam, p),
    }
    if name not in tests:
        raise ValueError(f"unknown set {name!r}")
    test = tests[name]
    return [GeneratorId.symbol(ii, lam) for ii in range(1, n + 1) for lam in exps if test(ii, lam)]


def classify(gid, p):
    """Return the set of labels among T1, T2, T3 that gid belongs to."""
    if gid.kind == "pp":
        return {"PP"}
    out = set()
    if in_T1(gid.i, gid.lam, p):
        out.add("T1")
    if in_T2(gid.i, gid.lam, p):
        out.add("T2")
    if in_T3(gid.i, gid.lam, p):
        out.add("T3")
    return out


def basis_rule(spec):
    """(excluded labels, include <-p,-p>, citation) describing basis(spec)."""
    p, n, k, fam = spec.p, spec.n, spec.k, spec.family
    tau = p == 2
    if fam == "fpg":
        return {"T1", "T2"}, False, "Lemma generators"
    if fam == "zpk":
        if k < 2:
            raise Unsupported("zpk with k = 1 is the ring fpg; use --ring fpg")
        if n == 1:
            return {"T1"}, tau, "Lemma C_p fir"
        return {"T1"}, tau, "Theorem nontrivial2"
    if fam == "fpg-gtilde":
        if n < 2:
            raise Unsupported("unsupported: fpg-gtilde is only covered for n >= 2")
        return {"T1", "T2", "T3"}, False, "Lemma result1"
    if fam == "zg-pkgamma":
        if n == 1:
            if k < 2:
                raise Unsupported("unsupported: Z[C_p]/p^k Gamma is only covered for k >= 2")
            return {"T1"}, tau, "Lemma C_p sec"
        if k == n:
            return {"T1", "T3"}, tau, "Theorem main-thm"
        return {"T1"}, tau, "Theorem main-thm"
    raise Unsupported(f"unsupported family {fam}")


def basis(spec):
    """Ordered explicit basis of K2 for the ring spec."""
    excluded, with_pp, _ = basis_rule(spec)
    out = [g for g in enumerate_set("T", spec.p, spec.n) if not classify(g, spec.p) & excluded]
    if with_pp:
        out.append(GeneratorId.pp())
    return out


# -- relation matrix ---------------------------------------------------------


@dataclass
class RelationMatrix:
    p: int
    n: int
    columns: list  # GeneratorId, <x_i, s> with s in S \ S_i
    row_monomials: list  # exponent vectors mu with >= 2 support variables
    rows: list  # dense lists of residues mod p

    @property
    def shape(self):
        return len(self.rows), len(self.columns)


def relation_matrix(p, n):
    columns = [g for g in enumerate_set("T", p, n) if not _pure_power(g.i, g.lam)]
    col_index = {(g.i, g.lam): c for c, g in enumerate(columns)}
    mus = [mu for mu in _nonzero_exponents(p, n) if sum(1 for e in mu if e) >= 2]
    rows = []
    for mu in mus:
        row = [0] * len(columns)
        for j, e in enumerate(mu, start=1):
            if e:
                lam = list(mu)
                lam[j - 1] -= 1
                row[col_index[(j, tuple(lam))]] = e % p
        rows.append(row)
    return RelationMatrix(p, n, columns, mus, rows)


def fp_rank(rows, p):
    """Rank over F_p by Gaussian elimination, pivoting on the first nonzero column."""
    if p == 2:
        return _rank_gf2(rows)
    work = [list(r) for r in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][c] % p), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = pow(work[rank][c], -1, p)
        prow = [(v * inv) % p for v in work[rank]]
        work[rank] = prow
        for r in range(len(work)):
            if r != rank and work[r][c] % p:
                f = work[r][c]
                work[r] = [(a - f * b) % p for a, b in zip(work[r], prow)]
        rank += 1
        if rank == len(work):
            break
    return rank


def _rank_gf2(rows):
    # rows packed into ints; bit c is column c
    packed = []
    for r in rows:
        v = 0
        for c, e in enumerate(r):
            if e % 2:
                v |= 1 << c
        packed.append(v)
    rank = 0
    pivots = {}
    for v in packed:
        while v:
            low = v & -v
            if low in pivots:
                v ^= pivots[low]
            else:
                pivots[low] = v
                rank += 1
                break
    return rank


def expected_quotient_rank(p, n):
    return (n - 1) * (p ** n - 1)


def verify_rank(p, n):
    m = relation_matrix(p, n)
    rank = fp_rank(m.rows, p) if m.rows else 0
    columns, nrows = len(m.columns), len(m.rows)
    # closed-form counts for the matrix shape
    assert columns == n * (p ** n - p)
    assert nrows == sum(comb(n, t) * (p - 1) ** t for t in range(2, n + 1))
    expected = expected_quotient_rank(p, n)
    return {
        "p": p,
        "n": n,
        "columns": columns,
        "rows": nrows,
        "rank": rank,
        "quotient_rank": columns - rank,
        "expected": expected,
        "pass": rank == nrows and columns - rank == expected,
    }


def pivot_generator(mu):
    """The T1 symbol eliminated by the scholium relation of monomial mu."""
    i = next(j for j, e in enumerate(mu, start=1) if e)
    lam = list(mu)
    lam[i - 1] -= 1
    return GeneratorId.symbol(i, lam)
