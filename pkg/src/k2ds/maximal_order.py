"""The maximal order Gamma of Q[G] for G = C_p^n, the ideals I and J = |G| Gamma,
and the finite rings Z[G]/p^k Gamma."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .lattice import (
    FiniteQuotientRing,
    IntegerLattice,
    convolve,
    group_elements,
    group_index,
    index,
    lattice_leq,
    translate,
)
from .ring import RingError, is_prime


def _check(p, n):
    if not is_prime(p):
        raise RingError(f"p must be prime, got {p}")
    if n < 1:
        raise RingError(f"n must be >= 1, got {n}")


def _rref(rows, p):
    work = [[x % p for x in r] for r in rows]
    out = []
    ncols = len(work[0]) if work else 0
    for c in range(ncols):
        piv = next((r for r in work if r[c]), None)
        if piv is None:
            continue
        inv = pow(piv[c], -1, p)
        piv = [(x * inv) % p for x in piv]
        work = [r for r in work if r is not piv and any(r)]
        work = [[(a - r[c] * b) % p for a, b in zip(r, piv)] for r in work]
        out = [[(a - r[c] * b) % p for a, b in zip(r, piv)] for r in out]
        out.append(piv)
        work = [r for r in work if any(r)]
    return sorted(out, key=lambda r: next(i for i, x in enumerate(r) if x))


@dataclass(frozen=True)
class Subgroup:
    p: int
    n: int
    basis: tuple  # rows of the reduced echelon form

    @property
    def dim(self):
        return len(self.basis)

    @property
    def order(self):
        return self.p ** self.dim

    def elements(self):
        out = []
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            v = [0] * self.n
            for c, row in zip(coeffs, self.basis):
                v = [(a + c * b) % self.p for a, b in zip(v, row)]
            out.append(tuple(v))
        return sorted(out)


def gaussian_binomial(n, d, q):
    num = den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subgroup_count(p, n):
    return sum(gaussian_binomial(n, d, p) for d in range(n + 1))


def enumerate_subgroups(p, n):
    """All subgroups of (Z/p)^n, one per reduced echelon form, ordered by
    dimension and then by echelon matrix."""
    _check(p, n)
    seen = set()
    vecs = [v for v in itertools.product(range(p), repeat=n) if any(v)]
    out = [Subgroup(p, n, ())]
    layer = {()}
    for _ in range(n):
        nxt = set()
        for b in layer:
            for v in vecs:
                r = tuple(map(tuple, _rref(list(b) + [list(v)], p)))
                if len(r) == len(b) + 1 and r not in seen:
                    seen.add(r)
                    nxt.add(r)
        layer = nxt
        out.extend(Subgroup(p, n, r) for r in sorted(nxt))
    return out


@dataclass(frozen=True)
class IdempotentRep:
    subgroup: Subgroup
    vector: tuple  # |H| e_H over the sigma-basis

    @property
    def denominator(self):
        return self.subgroup.order


def idempotent(h):
    v = [0] * (h.p ** h.n)
    for g in h.elements():
        v[group_index(g, h.p)] = 1
    return IdempotentRep(h, tuple(v))


def is_idempotent(rep):
    """Scaled check (|H| e_H)^2 = |H| (|H| e_H)."""
    v = list(rep.vector)
    h = rep.subgroup
    return convolve(v, v, h.p, h.n) == [h.order * x for x in v]


def _ideal_rows(vec, p, n):
    return [translate(list(vec), g, p, n) for g in group_elements(p, n)]


def zg_lattice(p, n):
    N = p ** n
    return IntegerLattice([[int(i == j) for j in range(N)] for i in range(N)])


def gamma_lattice(p, n):
    """Gamma = sum over H of Z[G] e_H, with denominator |G|."""
    _check(p, n)
    N = p ** n
    rows = []
    for h in enumerate_subgroups(p, n):
        scaled = [(N // h.order) * x for x in idempotent(h).vector]
        rows.extend(_ideal_rows(scaled, p, n))
    return IntegerLattice(rows, N)


def ideal_J(p, n):
    return gamma_lattice(p, n).scaled(p ** n)


def ideal_I(p, n):
    """The Z[G]-ideal generated by |G| e_H for proper subgroups H."""
    _check(p, n)
    N = p ** n
    rows = []
    for h in enumerate_subgroups(p, n):
        if h.dim == n:
            continue
        scaled = [(N // h.order) * x for x in idempotent(h).vector]
        rows.extend(_ideal_rows(scaled, p, n))
    return IntegerLattice(rows)


def gtilde_vector(p, n):
    return [1] * (p ** n)


def pk_gamma(p, n, k):
    return gamma_lattice(p, n).scaled(p ** k)


def quotient_mod_pk_gamma(p, n, k):
    if k < n:
        raise RingError(f"p^k Gamma lies in Z[G] only for k >= n (got k={k}, n={n})")
    return FiniteQuotientRing(pk_gamma(p, n, k), p, n)


def is_ideal(lat, p, n):
    for i in range(n):
        g = tuple(int(j == i) for j in range(n))
        for r in lat.basis_vectors():
            if not lat.contains(translate(r, g, p, n)):
                return False
    return True


def is_ring_closed(lat, p, n):
    vecs = lat.basis_vectors()
    for a in vecs:
        for b in vecs:
            if not lat.contains(convolve(a, b, p, n)):
                return False
    return True


def i_plus_gtilde(p, n):
    """The lattice I + Z * Gtilde."""
    return IntegerLattice(ideal_I(p, n).rows + [gtilde_vector(p, n)])


def order_info(p, n):
    """Lattice-level facts about Gamma, I and J as a JSON-ready dict."""
    zg = zg_lattice(p, n)
    gamma = gamma_lattice(p, n)
    I = ideal_I(p, n)
    J = ideal_J(p, n)
    subs = enumerate_subgroups(p, n)
    return {
        "p": p,
        "n": n,
        "subgroup_count": len(subs),
        "subgroup_count_formula": subgroup_count(p, n),
        "gamma_index_over_zg": index(zg, gamma),
        "checks": {
            "gamma_ring_closed": is_ring_closed(gamma, p, n),
            "zg_in_gamma": lattice_leq(zg, gamma),
            "idempotents": all(is_idempotent(idempotent(h)) for h in subs),
            "I_ideal": is_ideal(I, p, n),
            "J_ideal": is_ideal(J, p, n),
            "J_equals_I_plus_Gtilde": i_plus_gtilde(p, n) == J,
            "pJ_in_I": lattice_leq(J.scaled(p), I),
            "I_in_J": lattice_leq(I, J),
            "J_in_ZG": lattice_leq(J, zg),
            "I_in_pZG": lattice_leq(I, zg.scaled(p)),
            "pk_gamma_in_zg": {
                str(k): lattice_leq(pk_gamma(p, n, k), zg) for k in range(0, n + 2)
            },
        },
        "gamma": gamma.as_dict(),
        "I": I.as_dict(),
        "J": J.as_dict(),
    }
