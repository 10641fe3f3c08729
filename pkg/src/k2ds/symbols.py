"""Dennis-Stein symbol calculus and reduction onto explicit K2 bases.

All K2 groups handled here have exponent p, so symbol values are F_p vectors
(additive notation).  ``reduce`` rewrites an arbitrary supported symbol with
exact K2 identities:

* second-argument peel   <a, b + c> = <a, b> + <a, c (1 - ab)^-1>
* first-argument peel    <a + a', b> = <a, b> + <a' (1 - ab)^-1, b>
* inverted DS3           <x_i m, m2> = <x_i, m m2> + <m, x_i m2>
* exponent p             p <a, m> = <a, p m + sum_j (-1)^(j+1) C(p,j) a^(j-1) m^j> = 0,
                         which expresses <a, p m> through terms of higher weight

Second arguments are peeled one term p^v x^mu at a time, lowest weight first
(weight = degree + (p-1) v), so every step strictly raises weight and the
recursion ends on the nilpotent tail.  What remains are symbols <x_i, x^lam>,
read off the basis table (T1 symbols solved out of their scholium relation).
Unit arguments go through Steinberg symbols, split into scalar and
principal-unit parts; scalar symbols are 2-adic Hilbert symbols when p = 2.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb

from .presentation import GeneratorId, Unsupported, basis, basis_rule, classify
from .ring import GroupRingElement, RingError, format_element, parse_element


class SymbolError(ValueError):
    pass


@dataclass(frozen=True)
class DennisSteinSymbol:
    a: GroupRingElement
    b: GroupRingElement

    @property
    def spec(self):
        return self.a.spec

    def __str__(self):
        return format_symbol(self)


@dataclass(frozen=True)
class SteinbergSymbol:
    u: GroupRingElement
    v: GroupRingElement

    def __str__(self):
        return "{" + format_element(self.u) + "," + format_element(self.v) + "}"


class SymbolWord:
    """Formal Z-linear combination of symbols, in additive notation."""

    def __init__(self, terms=()):
        acc = {}
        order = []
        for sym, mult in terms:
            if sym not in acc:
                order.append(sym)
            acc[sym] = acc.get(sym, 0) + mult
        self.terms = [(s, acc[s]) for s in order if acc[s]]

    def __add__(self, other):
        if isinstance(other, (DennisSteinSymbol, SteinbergSymbol)):
            other = SymbolWord([(other, 1)])
        return SymbolWord(self.terms + other.terms)

    def __neg__(self):
        return SymbolWord([(s, -m) for s, m in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return " + ".join(f"{m}*{s}" for s, m in self.terms) or "0"


class SymbolVector:
    """Coordinates of a K2 element over basis(spec), residues mod p."""

    def __init__(self, spec, coords=None):
        self.spec = spec
        p = spec.p
        self.coords = {g: c % p for g, c in (coords or {}).items() if c % p}

    def __eq__(self, other):
        if not isinstance(other, SymbolVector):
            return NotImplemented
        return self.spec == other.spec and self.coords == other.coords

    def __add__(self, other):
        return SymbolVector(self.spec, _vadd(self.coords, other.coords, self.spec.p))

    def __neg__(self):
        return SymbolVector(self.spec, {g: -c for g, c in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def __bool__(self):
        return bool(self.coords)

    def is_zero(self):
        return not self.coords

    def as_dict(self):
        """Basis-ordered {id string: coordinate}."""
        return {str(g): c for g, c in sorted(self.coords.items())}

    def dense(self):
        return [self.coords.get(g, 0) for g in basis(self.spec)]

    def __repr__(self):
        return f"SymbolVector({self.as_dict()})"


def _vadd(u, v, p, scale=1):
    out = dict(u)
    for g, c in v.items():
        r = (out.get(g, 0) + scale * c) % p
        if r:
            out[g] = r
        else:
            out.pop(g, None)
    return out


# -- construction -----------------------------------------------------------------


def validate(a, b):
    if a.spec != b.spec:
        raise SymbolError(f"ring mismatch: {a.spec} vs {b.spec}")
    if not (1 - a * b).is_unit():
        raise SymbolError(f"1 - ab is not a unit for <{format_element(a)},{format_element(b)}>")
    return DennisSteinSymbol(a, b)


def to_steinberg(s):
    """<a,b> = {a, 1-ab} for a unit a."""
    if not s.a.is_unit():
        raise SymbolError(f"first argument {format_element(s.a)} is not a unit")
    return SteinbergSymbol(s.a, 1 - s.a * s.b)


def ds3_expand(a, b, c):
    """<a, bc> as the word <ab, c> + <ac, b>."""
    validate(a, b * c)
    return SymbolWord([(validate(a * b, c), 1), (validate(a * c, b), 1)])


def scholium_word(factors):
    """The word sum_i <f_i, x/f_i> for x the product of the factors (reduces to 0)."""
    if not factors:
        raise SymbolError("need at least one factor")
    spec = factors[0].spec
    one = GroupRingElement.scalar(spec, 1)
    terms = []
    for idx, f in enumerate(factors):
        rest = one
        for jdx, g in enumerate(factors):
            if jdx != idx:
                rest = rest * g
        terms.append((validate(f, rest), 1))
    return SymbolWord(terms)


# -- scalar K2 -------------------------------------------------------------------


def _odd_part(a):
    e = 0
    while a % 2 == 0:
        a //= 2
        e += 1
    return e, a


def hilbert2(a, b):
    """2-adic Hilbert symbol (a,b)_2 of nonzero integers, as 0 (trivial) or 1."""
    alpha, u = _odd_part(a)
    beta, v = _odd_part(b)

    def eps(x):
        return ((x - 1) // 2) % 2

    def omega(x):
        return ((x * x - 1) // 8) % 2

    return (eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)) % 2


# -- reduction engine -----------------------------------------------------------------


class Reducer:
    """Reduction of symbols over one ring spec; caches the per-spec tables."""

    def __init__(self, spec):
        self.spec = spec
        self.p = spec.p
        self.excluded, self.with_pp, self.citation = basis_rule(spec)
        self.basis = basis(spec)
        self._table = {}
        self._mono = {}
        self._inv = {}
        self.zero = GroupRingElement(spec)
        self.one = GroupRingElement.scalar(spec, 1)

    # vectors are plain dicts GeneratorId -> residue inside the engine

    def _add(self, u, v, scale=1):
        return _vadd(u, v, self.p, scale)

    def table(self, i, lam):
        """Coordinates of <x_i, x^lam>, coefficient 1."""
        key = (i, lam)
        hit = self._table.get(key)
        if hit is not None:
            return hit
        p = self.p
        gid = GeneratorId.symbol(i, lam)
        labels = classify(gid, p) if any(lam) else {"zero"}
        pure = any(lam) and all(e == 0 for j, e in enumerate(lam) if j != i - 1)
        if not any(lam):
            val = {}
        elif pure and lam[i - 1] <= p - 2:
            # (lam_i + 1) <x_i, x_i^lam_i> = 0 by the scholium relation
            val = {}
        elif "T1" in labels:
            mu = list(lam)
            mu[i - 1] += 1
            val = {}
            for j, e in enumerate(mu, start=1):
                if j == i or not e:
                    continue
                nu = list(mu)
                nu[j - 1] -= 1
                val = self._add(val, self.table(j, tuple(nu)), e)
            coef = (-pow(mu[i - 1], -1, p)) % p
            val = {g: (c * coef) % p for g, c in val.items() if (c * coef) % p}
        elif labels & self.excluded:
            val = {}
        else:
            val = {gid: 1}
        self._table[key] = val
        return val

    def _inverse(self, e):
        inv = self._inv.get(e)
        if inv is None:
            inv = e.invert()
            self._inv[e] = inv
        return inv

    def _coef_mono(self, lam, v):
        return GroupRingElement.monomial(self.spec, lam, self.p ** v)

    def _lowest(self, b):
        # lowest-weight nonconstant term as (lam, valuation, unit part)
        lam, c = next(t for t in b.terms() if any(t[0]))
        v = 0
        while c % self.p == 0:
            c //= self.p
            v += 1
        return lam, v

    def peel_second(self, lam, v, b):
        """<p^v x^lam, b> for nonconstant x^lam and arbitrary b.

        Constants are peeled one unit at a time (<a, 1> = 0); other terms one
        copy of p^v x^mu at a time, lowest weight first.  Corrections always
        have strictly larger weight, which is bounded, so the loop ends.
        """
        a = self._coef_mono(lam, v)
        total = {}
        while b:
            if b.augmentation():
                b = (b - 1) * self._inverse(1 - a)
                continue
            mu, w = self._lowest(b)
            total = self._add(total, self.value(lam, v, mu, w))
            m = self._coef_mono(mu, w)
            b = (b - m) * self._inverse(1 - a * m)
        return total

    def value(self, lam, v1, mu, v2):
        """<p^v1 x^lam, p^v2 x^mu>, both arguments nonconstant."""
        key = (lam, v1, mu, v2)
        hit = self._mono.get(key)
        if hit is not None:
            return hit
        p = self.p
        if v2 >= 1:
            # p<a, m> = <a, pm + sum_{j>=2} (-1)^{j+1} C(p,j) a^{j-1} m^j> = 0
            a = self._coef_mono(lam, v1)
            m = self._coef_mono(mu, v2 - 1)
            rest = self.zero
            am = a * m
            power = m
            for j in range(2, p + 1):
                power = power * am  # a^{j-1} m^j
                rest = rest + power * ((-1) ** (j + 1) * comb(p, j))
            pm = m * p
            val = self._add({}, self.peel_second(lam, v1, rest * self._inverse(1 - a * pm)), -1)
        elif v1 >= 1:
            val = self._add({}, self.value(mu, 0, lam, v1), -1)
        elif sum(lam) == 1:
            val = self.table(lam.index(1) + 1, mu)
        else:
            # <x_i m, m2> = <x_i, m m2> + <m, x_i m2>
            i = next(j for j, e in enumerate(lam) if e)
            rest = list(lam)
            rest[i] -= 1
            rest = tuple(rest)
            e_i = tuple(1 if j == i else 0 for j in range(len(lam)))
            x_rest = self._coef_mono(rest, 0)
            x_i = self._coef_mono(e_i, 0)
            x_mu = self._coef_mono(mu, 0)
            val = self._add(self.peel_second(e_i, 0, x_rest * x_mu),
                            self.peel_second(rest, 0, x_i * x_mu))
        self._mono[key] = val
        return val

    def pair(self, a, b):
        """Coordinates of <a, b>; the symbol must already be valid."""
        if not a or not b:
            return {}
        if a.in_augmentation_ideal():
            total = {}
            while a:
                lam, v = self._lowest(a)
                m = self._coef_mono(lam, v)
                total = self._add(total, self.peel_second(lam, v, b))
                a = (a - m) * self._inverse(1 - m * b)
            return total
        if b.in_augmentation_ideal():
            return self._add({}, self.pair(b, a), -1)
        if a.is_unit():
            return self.steinberg(a, 1 - a * b)
        if b.is_unit():
            return self._add({}, self.steinberg(b, 1 - a * b), -1)
        if len(a.coeffs) == 1 and len(b.coeffs) == 1:
            return self.scalar_ds(a.augmentation(), b.augmentation())
        raise Unsupported(
            f"unsupported symbol shape <{format_element(a)},{format_element(b)}>: "
            "both arguments non-units outside the augmentation ideal")

    def steinberg(self, u, v):
        """Coordinates of the Steinberg symbol {u, v} of two units."""
        M = self.spec.modulus
        u0, v0 = u.augmentation(), v.augmentation()
        u1 = u * pow(u0, -1, M)
        v1 = v * pow(v0, -1, M)
        total = self.scalar_steinberg(u0, v0)
        total = self._add(total, self._scalar_principal(u0, v1))
        total = self._add(total, self._scalar_principal(v0, u1), -1)
        # {u1, v1} = <u1, (1 - v1) u1^-1>, then drop <1, r> = {1, 1 - r} = 0
        r = (1 - v1) * self._inverse(u1)
        s = u1 - 1
        total = self._add(total, self.pair(s * self._inverse(1 - r), r))
        return total

    def _scalar_principal(self, c, w):
        # {c, w} = -<w, (1 - c) w^-1> with w = 1 + s
        if c % self.spec.modulus == 1 or w == self.one:
            return {}
        r = (1 - c) * self._inverse(w)
        s = w - 1
        return self._add({}, self.pair(s * self._inverse(1 - r), r), -1)

    def scalar_steinberg(self, u0, v0):
        if not self.with_pp or self.spec.k < 2:
            return {}
        return {GeneratorId.pp(): 1} if hilbert2(u0, v0) else {}

    def scalar_ds(self, a0, b0):
        # K2(Z/p^k) is trivial for odd p and for F_2; Z/2 (Hilbert symbol) otherwise
        if not self.with_pp or self.spec.k < 2 or a0 == 0 or b0 == 0:
            return {}
        return {GeneratorId.pp(): 1} if hilbert2(a0, 1 - a0 * b0) else {}

    def reduce(self, obj):
        if isinstance(obj, DennisSteinSymbol):
            vec = self.pair(obj.a, obj.b)
        elif isinstance(obj, SteinbergSymbol):
            if not (obj.u.is_unit() and obj.v.is_unit()):
                raise SymbolError("Steinberg symbol entries must be units")
            vec = self.steinberg(obj.u, obj.v)
        elif isinstance(obj, SymbolWord):
            vec = {}
            for sym, mult in obj.terms:
                vec = self._add(vec, self.reduce(sym).coords, mult)
        else:
            raise TypeError(f"cannot reduce {type(obj).__name__}")
        return SymbolVector(self.spec, vec)


_REDUCERS = {}


def reducer(spec):
    r = _REDUCERS.get(spec)
    if r is None:
        r = _REDUCERS[spec] = Reducer(spec)
    return r


def reduce(obj, spec=None):
    """Coordinates of a symbol, Steinberg symbol or word over basis(spec)."""
    if spec is None:
        if isinstance(obj, DennisSteinSymbol):
            spec = obj.spec
        elif isinstance(obj, SteinbergSymbol):
            spec = obj.u.spec
        elif isinstance(obj, SymbolWord) and obj.terms:
            spec = _spec_of(obj.terms[0][0])
        else:
            raise SymbolError("cannot infer the ring of an empty word; pass spec")
    return reducer(spec).reduce(obj)


def _spec_of(sym):
    return sym.spec if isinstance(sym, DennisSteinSymbol) else sym.u.spec


def basis_symbol(gid, spec):
    """The Dennis-Stein symbol named by a basis id."""
    if gid.kind == "pp":
        m = GroupRingElement.scalar(spec, -spec.p)
        return validate(m, m)
    return validate(GroupRingElement.x(spec, gid.i), GroupRingElement.monomial(spec, gid.lam))


# -- text form -----------------------------------------------------------------------


_SYMBOL_RE = re.compile(r"^\s*[<⟨](.*)[>⟩]\s*$", re.S)


def parse_symbol(text, spec):
    """Parse ``<expr, expr>`` into a validated symbol."""
    m = _SYMBOL_RE.match(text)
    if not m:
        raise SymbolError(f"symbol must look like <a, b>: {text!r}")
    body = m.group(1)
    if body.count(",") != 1:
        raise SymbolError(f"symbol needs exactly one comma: {text!r}")
    left, right = body.split(",")
    try:
        a = parse_element(left, spec)
        b = parse_element(right, spec)
    except RingError as exc:
        raise SymbolError(str(exc)) from exc
    return validate(a, b)


def format_symbol(s):
    return f"<{format_element(s.a).replace(' ', '')},{format_element(s.b).replace(' ', '')}>"
