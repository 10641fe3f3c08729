"""Full-rank integer lattices in row Hermite normal form, Smith invariants, and
finite quotient rings Z[G]/L for ideals L of the group ring."""
from __future__ import annotations

import itertools
import json
from fractions import Fraction
from math import gcd


class LatticeError(ValueError):
    pass


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf_rows(rows, ncols=None):
    """Row-style HNF of the row span: upper triangular, positive diagonal,
    entries above each pivot reduced into [0, pivot).  Requires full column rank."""
    work = [list(r) for r in rows if any(r)]
    if ncols is None:
        if not work:
            raise LatticeError("empty row set")
        ncols = len(work[0])
    basis = []
    for c in range(ncols):
        # gather rows with nonzero entry in column c and combine into one pivot
        pivot = None
        rest = []
        for r in work:
            if r[c] == 0:
                rest.append(r)
            elif pivot is None:
                pivot = r
            else:
                g, x, y = _xgcd(pivot[c], r[c])
                a, b = pivot[c] // g, r[c] // g
                new_pivot = [x * u + y * v for u, v in zip(pivot, r)]
                other = [b * u - a * v for u, v in zip(pivot, r)]
                pivot = new_pivot
                if any(other):
                    rest.append(other)
        if pivot is None:
            raise LatticeError("rows do not span a full-rank lattice")
        if pivot[c] < 0:
            pivot = [-u for u in pivot]
        basis.append(pivot)
        work = rest
    if any(any(r) for r in work):  # pragma: no cover - elimination leaves nothing behind
        raise LatticeError("elimination left residual rows")
    for i in range(len(basis)):
        d = basis[i][i]
        for j in range(i):
            q = basis[j][i] // d
            if q:
                basis[j] = [u - q * v for u, v in zip(basis[j], basis[i])]
    return basis


def snf_invariants(m):
    """Invariant factors d1 | d2 | ... of an integer matrix (nonzero ones only)."""
    a = [list(r) for r in m]
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    out = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for r in a:
            r[t], r[pj] = r[pj], r[t]
        while True:
            d = a[t][t]
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // d
                    a[i] = [u - q * v for u, v in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // d
                    for r in a:
                        r[j] -= q * r[t]
                    if a[t][j]:
                        done = False
            if not done:
                nz = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
                nz += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
                _, pi, pj = min(nz)
                a[t], a[pi] = a[pi], a[t]
                for r in a:
                    r[t], r[pj] = r[pj], r[t]
                continue
            # divisibility: fold any offending entry into row t
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % d), None)
            if bad is None:
                break
            a[t] = [u + v for u, v in zip(a[t], a[bad[0]])]
        out.append(abs(a[t][t]))
        t += 1
    return out


class IntegerLattice:
    """The lattice (1/denominator) * rowspan(hnf), full rank in Z^N."""

    def __init__(self, rows, denominator=1):
        if denominator <= 0:
            raise LatticeError("denominator must be positive")
        h = hnf_rows(rows)
        g = denominator
        for r in h:
            for u in r:
                g = gcd(g, u)
        self.denominator = denominator // g
        self.rows = [[u // g for u in r] for r in h]

    @classmethod
    def from_hnf(cls, rows, denominator=1):
        return cls(rows, denominator)

    @property
    def rank(self):
        return len(self.rows)

    def __eq__(self, other):
        return (isinstance(other, IntegerLattice) and self.denominator == other.denominator
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.denominator, tuple(map(tuple, self.rows))))

    def __repr__(self):
        return f"IntegerLattice(denominator={self.denominator}, hnf={self.rows})"

    def det(self):
        """Covolume as an exact Fraction."""
        d = 1
        for i, r in enumerate(self.rows):
            d *= r[i]
        return Fraction(d, self.denominator ** self.rank)

    def scaled(self, c):
        c = Fraction(c)
        return IntegerLattice([[u * c.numerator for u in r] for r in self.rows],
                              self.denominator * c.denominator)

    def _coords(self, v):
        """Integer coordinates of v over the basis, or None if v is not in L."""
        w = [Fraction(x) * self.denominator for x in v]
        if any(x.denominator != 1 for x in w):
            return None
        w = [int(x) for x in w]
        coords = []
        for i, r in enumerate(self.rows):
            q, rem = divmod(w[i], r[i])
            if rem:
                return None
            coords.append(q)
            if q:
                w = [a - q * b for a, b in zip(w, r)]
        return coords if not any(w) else None

    def contains(self, v):
        if len(v) != self.rank:
            raise LatticeError("ambient rank mismatch")
        return self._coords(v) is not None

    def basis_vectors(self):
        return [[Fraction(u, self.denominator) for u in r] for r in self.rows]

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True)

    def as_dict(self):
        return {"denominator": self.denominator, "hnf_rows": self.rows}

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(d["hnf_rows"], d["denominator"])


def hnf(rows):
    return IntegerLattice(rows)


def contains(lat, v):
    return lat.contains(v)


def lattice_leq(l1, l2):
    if l1.rank != l2.rank:
        raise LatticeError("ambient rank mismatch")
    return all(l2.contains(v) for v in l1.basis_vectors())


def index(l1, l2):
    """[L2 : L1] for L1 contained in L2."""
    if not lattice_leq(l1, l2):
        raise LatticeError("index requires L1 to be contained in L2")
    q = l1.det() / l2.det()
    if q.denominator != 1:  # pragma: no cover - impossible for nested lattices
        raise LatticeError("non-integral index")
    return int(q)


def lattice_sum(*lats):
    d = 1
    for lat in lats:
        d = d * lat.denominator // gcd(d, lat.denominator)
    rows = []
    for lat in lats:
        f = d // lat.denominator
        rows.extend([u * f for u in r] for r in lat.rows)
    return IntegerLattice(rows, d)


# -- group ring structure ------------------------------------------------------------


def group_elements(p, n):
    """Elements of (Z/p)^n in lexicographic order; position = sigma-basis index."""
    return list(itertools.product(range(p), repeat=n))


def group_index(g, p):
    idx = 0
    for e in g:
        idx = idx * p + e
    return idx


def convolve(v, w, p, n):
    """Product in Z[G] of coordinate vectors over the sigma-basis."""
    elems = group_elements(p, n)
    out = [0] * len(elems)
    for i, a in enumerate(v):
        if not a:
            continue
        gi = elems[i]
        for j, b in enumerate(w):
            if b:
                h = tuple((x + y) % p for x, y in zip(gi, elems[j]))
                out[group_index(h, p)] += a * b
    return out


def translate(v, g, p, n):
    """sigma^g * v."""
    elems = group_elements(p, n)
    out = [0] * len(v)
    for i, a in enumerate(v):
        if a:
            h = tuple((x + y) % p for x, y in zip(elems[i], g))
            out[group_index(h, p)] = a
    return out


class FiniteQuotientRing:
    """Z[G] / ideal with canonical coset representatives."""

    def __init__(self, ideal, p, n):
        if ideal.denominator != 1:
            raise LatticeError("ideal must lie in Z[G]")
        if ideal.rank != p ** n:
            raise LatticeError("ideal has the wrong ambient rank")
        self.ideal = ideal
        self.p, self.n = p, n
        for i in range(n):
            g = tuple(1 if j == i else 0 for j in range(n))
            for r in ideal.rows:
                if not ideal.contains(translate(r, g, p, n)):
                    raise LatticeError("lattice is not an ideal of Z[G]")

    @property
    def order(self):
        return int(self.ideal.det())

    def reduce(self, v):
        w = list(v)
        for i, r in enumerate(self.ideal.rows):
            q = w[i] // r[i]
            if q:
                w = [a - q * b for a, b in zip(w, r)]
        return w

    def add(self, v, w):
        return self.reduce([a + b for a, b in zip(v, w)])

    def mul(self, v, w):
        return self.reduce(convolve(v, w, self.p, self.n))

    def one(self):
        e = [0] * (self.p ** self.n)
        e[0] = 1
        return self.reduce(e)

    def group_shape(self):
        """Invariant factors (> 1) of the additive group."""
        return [d for d in snf_invariants(self.ideal.rows) if d != 1]


def quotient_ring(ideal, p, n):
    return FiniteQuotientRing(ideal, p, n)
