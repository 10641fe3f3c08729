"""Rank, order and bound formulas for K2 and SK1 of the rings built from an
elementary abelian p-group, together with independent enumerations that
cross-check them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .presentation import Unsupported, basis, basis_rule
from .ring import RingError, RingSpec, is_prime


def tau(p):
    return 1 if p == 2 else 0


@dataclass(frozen=True)
class RankReport:
    quantity: str
    p: int
    n: int
    k: int | None
    value: int
    citation: str
    extra: dict = field(default_factory=dict, compare=False)

    def as_dict(self):
        out = {"quantity": self.quantity, "p": self.p, "n": self.n, "k": self.k,
               "value": self.value, "citation": self.citation}
        out.update(self.extra)
        return out


def _formula(spec):
    p, n, k, fam = spec.p, spec.n, spec.k, spec.family
    t = tau(p)
    if fam == "fpg":
        return (n - 1) * (p ** n - 1)
    if fam == "fpg-gtilde":
        return (n - 1) * (p ** n - 2) - 1
    if fam == "zpk":
        return (n - 1) * p ** n + 1 + t
    if fam == "zg-pkgamma":
        if k == n and n >= 2:
            return (n - 1) * (p ** n - 1) + t
        return (n - 1) * p ** n + 1 + t
    raise Unsupported(f"unsupported family {fam}")  # pragma: no cover


def k2_rank(spec: RingSpec) -> RankReport:
    """p-rank of K2 of the ring, from the closed form.  basis_rule raises
    Unsupported for cases the theorems do not cover."""
    _, _, citation = basis_rule(spec)
    value = _formula(spec)
    return RankReport("k2_rank", spec.p, spec.n, spec.k, value, citation,
                      {"ring": spec.family})


def k2_rank_mod_I(p, n):
    """Rank of K2(Z[G]/I), I generated by |G| e_H over proper subgroups H."""
    if n < 2:
        raise Unsupported("unsupported: Z[G]/I is only covered for n >= 2")
    return RankReport("k2_rank_mod_I", p, n, None, (n - 1) * p ** n + 1 + tau(p),
                      "Lemma result2")


def basis_size(spec):
    return len(basis(spec))


# -- order of continuous K2 ----------------------------------------------------


def _order_of(g, p):
    return 1 if not any(g) else p


def k2c_exponent_enumerated(p, n):
    """Sum over g in G of log_p |G / <g>|, by walking all p^n elements."""
    total = 0
    for g in itertools.product(range(p), repeat=n):
        quotient = p ** n // _order_of(g, p)
        e = 0
        while quotient > 1:
            quotient //= p
            e += 1
        total += e
    return total


def k2c_exponent_formula(p, n):
    return (n - 1) * p ** n + 1


def k2c_exponent(p, n):
    if not is_prime(p) or n < 1:
        raise RingError("need p prime and n >= 1")
    a = k2c_exponent_enumerated(p, n)
    b = k2c_exponent_formula(p, n)
    return {"p": p, "n": n, "enumerated": a, "closed_form": b, "agree": a == b,
            "total_rank": b + tau(p), "citation": "Equation K2c-order"}


# -- characters and SK1 -------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    p: int
    c: tuple  # chi(sigma_i) = zeta_p^{c_i}

    @property
    def image_order(self):
        return 1 if not any(self.c) else self.p

    @property
    def imaginary(self):
        # Z[chi] != Z: for p = 2 this needs |Im chi| > 2, impossible here
        return self.image_order > 2


def _normalize(c, p):
    lead = next((x for x in c if x), None)
    if lead is None:
        return tuple(c)
    inv = pow(lead, -1, p)
    return tuple((x * inv) % p for x in c)


def clusters(p, n):
    """One character per Galois orbit (scalar classes of c under F_p^*), with
    orbit sizes."""
    orbits = {}
    for c in itertools.product(range(p), repeat=n):
        orbits.setdefault(_normalize(c, p), []).append(c)
    return [(Character(p, rep), len(orbits[rep])) for rep in sorted(orbits)]


def imaginary_cluster(p, n):
    return [chi for chi, _ in clusters(p, n) if chi.imaginary]


def sk1_inverse_limit(p, n):
    """Invariant factors of the inverse limit of SK1(Z[G], (p^k))."""
    return [chi.image_order for chi in imaginary_cluster(p, n)]


def _require_odd(p):
    if not is_prime(p):
        raise RingError(f"p must be prime, got {p}")
    if p == 2:
        raise Unsupported("unsupported: theorem requires odd p")


def sk1_rank(p, n, k):
    _require_odd(p)
    if n < 1 or k < 1:
        raise RingError("need n >= 1 and k >= 1")
    m = (p ** n - 1) // (p - 1)
    value = m - n if k == 1 else m
    return RankReport("sk1_rank", p, n, k, value, "Theorem sk1")


def _clamp(name, value, p, n, citation):
    extra = {"raw": value, "clamped": value < 0}
    return RankReport(name, p, n, None, max(value, 0), citation, extra)


def lower_bounds(p, n):
    _require_odd(p)
    k2 = 1 + (n - 1) * p ** n - comb(p + n - 1, p)
    wh2 = k2 - n * (n - 1) // 2
    return {
        "k2_zg": _clamp("k2_zg_lower_bound", k2, p, n, "Corollary lowerbounds"),
        "wh2": _clamp("wh2_lower_bound", wh2, p, n, "Corollary lowerbounds"),
    }


def sk1_zg_rank(p, n):
    _require_odd(p)
    value = (p ** n - 1) // (p - 1) - comb(p + n - 1, p)
    return _clamp("sk1_zg_rank", value, p, n, "Remark after Theorem sk1")
