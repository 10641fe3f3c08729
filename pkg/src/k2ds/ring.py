"""Exact arithmetic in truncated group rings of elementary abelian p-groups.

Elements live in (Z/p^k)[x_1..x_n] / ((1+x_i)^p - 1), stored sparsely in the
x-monomial basis where x_i = sigma_i - 1.  Four ring families are supported:

    fpg         F_p[G]
    zpk         (Z/p^k)[G]
    fpg-gtilde  F_p[G] / (sum of all group elements)
    zg-pkgamma  Z[G] / p^k Gamma, k >= n (elements are carried as (Z/p^k)[G]
                representatives; see k2ds.maximal_order for canonical cosets)
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from math import comb

FAMILIES = ("fpg", "zpk", "fpg-gtilde", "zg-pkgamma")

FAMILY_ALIASES = {
    "fpg": "fpg", "FpG": "fpg",
    "zpk": "zpk", "ZpkG": "zpk",
    "fpg-gtilde": "fpg-gtilde", "FpGModGtilde": "fpg-gtilde",
    "zg-pkgamma": "zg-pkgamma", "ZGModPkGamma": "zg-pkgamma",
}


class RingError(ValueError):
    pass


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class RingSpec:
    family: str
    p: int
    n: int
    k: int = 1
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        fam = FAMILY_ALIASES.get(self.family)
        if fam is None:
            raise RingError(f"unknown ring family {self.family!r}")
        object.__setattr__(self, "family", fam)
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise RingError(f"p must be prime, got {self.p!r}")
        if self.n < 1:
            raise RingError("n must be >= 1")
        if self.k < 1:
            raise RingError("k must be >= 1")
        if fam in ("fpg", "fpg-gtilde") and self.k != 1:
            raise RingError(f"family {fam} forces k = 1")
        if fam == "zg-pkgamma" and self.k < self.n:
            raise RingError("zg-pkgamma requires k >= n (so that p^k Gamma lies in Z[G])")

    @property
    def modulus(self):
        return self.p ** self.k

    @property
    def top(self):
        """Exponent vector of prod x_j^(p-1)."""
        return (self.p - 1,) * self.n

    def monomials(self):
        return itertools.product(range(self.p), repeat=self.n)

    def __str__(self):
        return f"{self.family}(p={self.p}, n={self.n}, k={self.k})"

    # -- multiplication tables ------------------------------------------

    def _xpow(self):
        # univariate x^a for 0 <= a <= 2p-2, reduced by
        # x^p = -sum_{j=1}^{p-1} C(p,j) x^j  (mod p^k)
        tab = self._cache.get("xpow")
        if tab is not None:
            return tab
        p, M = self.p, self.modulus
        rel = {j: (-comb(p, j)) % M for j in range(1, p)}
        tab = []
        cur = {0: 1}
        for _ in range(2 * p - 1):
            tab.append({e: c for e, c in cur.items() if c})
            nxt = {}
            for e, c in cur.items():
                if e + 1 < p:
                    nxt[e + 1] = (nxt.get(e + 1, 0) + c) % M
                else:
                    for j, r in rel.items():
                        nxt[j] = (nxt.get(j, 0) + c * r) % M
            cur = nxt
        self._cache["xpow"] = tab
        return tab

    def mono_mul(self, lam, mu):
        """Product x^lam * x^mu as a dict exponent -> residue."""
        key = ("mm", lam, mu) if lam <= mu else ("mm", mu, lam)
        res = self._cache.get(key)
        if res is not None:
            return res
        tab = self._xpow()
        M = self.modulus
        res = {(): 1}
        for a, b in zip(lam, mu):
            uni = tab[a + b]
            nxt = {}
            for e, c in res.items():
                for j, d in uni.items():
                    ee = e + (j,)
                    nxt[ee] = (nxt.get(ee, 0) + c * d) % M
            res = nxt
        res = {e: c for e, c in res.items() if c}
        if self.family == "fpg-gtilde":
            res.pop(self.top, None)
        self._cache[key] = res
        return res


class GroupRingElement:
    """Immutable element of a supported ring, in the x-monomial basis."""

    __slots__ = ("spec", "coeffs", "_hash")

    def __init__(self, spec, coeffs=None):
        self.spec = spec
        M = spec.modulus
        clean = {}
        if coeffs:
            for lam, c in coeffs.items():
                lam = tuple(lam)
                if len(lam) != spec.n or any(not 0 <= e < spec.p for e in lam):
                    raise RingError(f"exponent vector {lam} outside [0,p-1]^{spec.n}")
                c %= M
                if c:
                    clean[lam] = (clean.get(lam, 0) + c) % M
        if spec.family == "fpg-gtilde":
            clean.pop(spec.top, None)
        self.coeffs = {lam: c for lam, c in clean.items() if c}
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def scalar(cls, spec, c):
        return cls(spec, {(0,) * spec.n: c})

    @classmethod
    def monomial(cls, spec, lam, c=1):
        return cls(spec, {tuple(lam): c})

    @classmethod
    def x(cls, spec, i):
        """The generator x_i (1-based)."""
        lam = [0] * spec.n
        lam[i - 1] = 1
        return cls(spec, {tuple(lam): 1})

    @classmethod
    def _raw(cls, spec, coeffs):
        obj = cls.__new__(cls)
        obj.spec = spec
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GroupRingElement):
            if other.spec != self.spec:
                raise RingError(f"ring mismatch: {self.spec} vs {other.spec}")
            return other
        if isinstance(other, int):
            return GroupRingElement.scalar(self.spec, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        M = self.spec.modulus
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            v = (out.get(lam, 0) + c) % M
            if v:
                out[lam] = v
            else:
                out.pop(lam, None)
        return GroupRingElement._raw(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        M = self.spec.modulus
        return GroupRingElement._raw(self.spec, {lam: (-c) % M for lam, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        spec = self.spec
        M = spec.modulus
        out = {}
        for lam, c in self.coeffs.items():
            for mu, d in other.coeffs.items():
                cd = c * d
                for nu, e in spec.mono_mul(lam, mu).items():
                    out[nu] = (out.get(nu, 0) + cd * e) % M
        return GroupRingElement._raw(spec, {nu: c for nu, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.invert() ** (-e)
        result = GroupRingElement.scalar(self.spec, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElement.scalar(self.spec, other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec.family, self.spec.p, self.spec.n, self.spec.k,
                               frozenset(self.coeffs.items())))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"GroupRingElement({format_element(self)!r}, {self.spec})"

    def __str__(self):
        return format_element(self)

    # -- queries -----------------------------------------------------------

    def augmentation(self):
        """Constant coefficient (lambda = 0), a residue mod p^k."""
        return self.coeffs.get((0,) * self.spec.n, 0)

    def is_unit(self):
        # local ring with maximal ideal (p, x_1..x_n)
        return self.augmentation() % self.spec.p != 0

    def in_augmentation_ideal(self):
        return self.augmentation() == 0

    def is_monomial(self):
        """True for a single term with coefficient 1."""
        if len(self.coeffs) != 1:
            return False
        (c,) = self.coeffs.values()
        return c == 1

    def invert(self):
        if not self.is_unit():
            raise RingError(f"{format_element(self)} is not a unit")
        spec = self.spec
        M = spec.modulus
        c0inv = pow(self.augmentation(), -1, M)
        # a = c0 (1 + r) with r in the radical; (1+r)^-1 = sum (-r)^j
        r = self * c0inv - 1
        neg_r = -r
        total = GroupRingElement.scalar(spec, 1)
        term = total
        while True:
            term = term * neg_r
            if not term:
                break
            total = total + term
        return total * c0inv

    def terms(self):
        """Terms sorted by (weight, exponent vector)."""
        return sorted(self.coeffs.items(), key=lambda t: (weight(self.spec, t[0], t[1]), t[0]))

    def degree(self):
        return max((sum(lam) for lam in self.coeffs), default=-1)


def valuation(p, c):
    if c == 0:
        return float("inf")
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


def weight(spec, lam, c):
    """Total x-degree plus (p-1) times the p-adic valuation of the coefficient."""
    return sum(lam) + (spec.p - 1) * valuation(spec.p, c)


# -- sigma basis -------------------------------------------------------------


def from_sigma_basis(v, spec):
    """Element sum_g v[g] sigma^g, with g an exponent vector in [0,p-1]^n."""
    M = spec.modulus
    out = GroupRingElement(spec)
    for g, c in v.items():
        g = tuple(g)
        if len(g) != spec.n or any(not 0 <= e < spec.p for e in g):
            raise RingError(f"group element {g} outside [0,p-1]^{spec.n}")
        if c % M == 0:
            continue
        # prod (1+x_i)^{g_i}, exponents stay below p so no reduction is needed
        term = {(): c % M}
        for gi in g:
            nxt = {}
            for e, cc in term.items():
                for j in range(gi + 1):
                    nxt[e + (j,)] = (nxt.get(e + (j,), 0) + cc * comb(gi, j)) % M
            term = nxt
        out = out + GroupRingElement(spec, term)
    return out


def to_sigma_basis(a):
    """Coordinates of a over the group elements sigma^g (zero entries omitted)."""
    spec = a.spec
    M = spec.modulus
    out = {}
    for lam, c in a.coeffs.items():
        # x^lam = prod (sigma_i - 1)^{lam_i}
        term = {(): c}
        for li in lam:
            nxt = {}
            for e, cc in term.items():
                for j in range(li + 1):
                    coef = comb(li, j) * (-1) ** (li - j)
                    nxt[e + (j,)] = (nxt.get(e + (j,), 0) + cc * coef) % M
            term = nxt
        for g, cc in term.items():
            out[g] = (out.get(g, 0) + cc) % M
    return {g: c for g, c in out.items() if c}


def gtilde(spec):
    """The sum of all group elements, in the x-basis."""
    if spec.family == "fpg-gtilde":
        raise RingError("gtilde is zero by construction in fpg-gtilde")
    return from_sigma_basis({g: 1 for g in spec.monomials()}, spec)


def augmentation(a):
    return a.augmentation()


# -- text form -----------------------------------------------------------------


def format_monomial(lam):
    parts = []
    for i, e in enumerate(lam, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_element(a):
    if not a.coeffs:
        return "0"
    out = []
    for lam, c in sorted(a.coeffs.items(), key=lambda t: (sum(t[0]), t[0])):
        mono = format_monomial(lam)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<p>p)(?![\w])|(?P<coef>\d+))?\s*
        (?P<star>\*)?\s*
        (?P<mono>x\d+(?:\s*\^\s*\d+)?(?:\s*\*\s*x\d+(?:\s*\^\s*\d+)?)*)?\s*""",
    re.VERBOSE,
)
_VAR_RE = re.compile(r"x(\d+)(?:\s*\^\s*(\d+))?")


def parse_element(text, spec):
    """Parse the canonical text form ``c*x1^e1*...*xn^en + ...``.

    Exponents >= p are accepted and reduced; the literal ``p`` stands for the
    integer p (so ``-p`` is -p).
    """
    s = text.strip()
    if not s:
        raise RingError("empty expression")
    result = GroupRingElement(spec)
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos:
            raise RingError(f"cannot parse {text!r} at offset {pos}")
        sign = m.group("sign")
        if sign is None and not first:
            raise RingError(f"missing operator in {text!r} at offset {pos}")
        if m.group("p"):
            coef = spec.p
        elif m.group("coef"):
            coef = int(m.group("coef"))
        else:
            coef = None
        mono = m.group("mono")
        if coef is None and mono is None:
            raise RingError(f"empty term in {text!r} at offset {pos}")
        if m.group("star") and (coef is None or mono is None):
            raise RingError(f"dangling '*' in {text!r}")
        term = GroupRingElement.scalar(spec, 1 if coef is None else coef)
        if mono:
            for var in _VAR_RE.finditer(mono):
                i = int(var.group(1))
                e = int(var.group(2)) if var.group(2) else 1
                if not 1 <= i <= spec.n:
                    raise RingError(f"variable x{i} out of range for n={spec.n}")
                term = term * GroupRingElement.x(spec, i) ** e
        result = result - term if sign == "-" else result + term
        pos = m.end()
        first = False
    return result
