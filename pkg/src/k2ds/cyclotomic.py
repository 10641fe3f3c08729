"""Exact arithmetic in A = Z[zeta_p] and A/(p^k), the uniformizer pi = zeta - 1,
and the map Z/p^k[C_p] -> A/(p^k) sending sigma to zeta."""
from __future__ import annotations

from fractions import Fraction

from .ring import RingError, is_prime

DEFAULT_BOUND = 13


class CyclotomicError(ValueError):
    pass


def _reduce(poly, p, modulus=None):
    """Reduce a coefficient list (any length) modulo Phi_p, returning p - 1 entries."""
    folded = [0] * p
    for i, c in enumerate(poly):
        folded[i % p] += c
    top = folded[p - 1]
    out = [c - top for c in folded[: p - 1]]
    if modulus is not None:
        out = [c % modulus for c in out]
    return tuple(out)


class CyclotomicInt:
    """An element sum c_i zeta^i (0 <= i <= p-2), optionally modulo p^k."""

    __slots__ = ("p", "coeffs", "modulus")

    def __init__(self, p, coeffs, modulus=None):
        if not is_prime(p):
            raise RingError(f"p must be prime, got {p}")
        self.p = p
        self.modulus = modulus
        self.coeffs = _reduce(list(coeffs), p, modulus)

    @classmethod
    def zeta(cls, p, modulus=None):
        return cls(p, [0, 1], modulus)

    @classmethod
    def pi(cls, p, modulus=None):
        return cls(p, [-1, 1], modulus)

    @classmethod
    def scalar(cls, p, c, modulus=None):
        return cls(p, [c], modulus)

    def _coerce(self, other):
        if isinstance(other, int):
            return CyclotomicInt.scalar(self.p, other, self.modulus)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        if other.p != self.p or other.modulus != self.modulus:
            raise CyclotomicError("operands live in different rings")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicInt(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.p, [-a for a in self.coeffs], self.modulus)

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
        prod = [0] * (2 * self.p)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return CyclotomicInt(self.p, prod, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise CyclotomicError("negative powers are not supported")
        out = CyclotomicInt.scalar(self.p, 1, self.modulus)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.scalar(self.p, other, self.modulus)
        return (isinstance(other, CyclotomicInt) and self.p == other.p
                and self.modulus == other.modulus and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.p, self.coeffs, self.modulus))

    def __repr__(self):
        mod = f", mod {self.modulus}" if self.modulus else ""
        return f"CyclotomicInt({self.p}, {list(self.coeffs)}{mod})"

    def is_zero(self):
        return not any(self.coeffs)

    def reduce_mod(self, modulus):
        return CyclotomicInt(self.p, self.coeffs, modulus)

    def mult_matrix(self):
        """Matrix of multiplication by self on the basis 1, zeta, ..., zeta^{p-2}
        (row j holds self * zeta^j)."""
        z = CyclotomicInt.zeta(self.p, self.modulus)
        rows, cur = [], self
        for _ in range(self.p - 1):
            rows.append(list(cur.coeffs))
            cur = cur * z
        return rows


# -- exact linear algebra ---------------------------------------------------------


def bareiss_det(m):
    """Fraction-free determinant of a square integer matrix."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _trim(poly):
    poly = list(poly)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def sylvester_resultant(f, g):
    """Res(f, g) for coefficient lists in ascending degree."""
    f, g = _trim(f), _trim(g)
    m, n = len(f) - 1, len(g) - 1
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return bareiss_det(rows)


def cyclotomic_poly(p):
    return [1] * p


def norm(a):
    """Algebraic norm N_{Q(zeta)/Q}(a) = Res(Phi_p, a(t)); Phi_p is monic."""
    if a.modulus is not None:
        raise CyclotomicError("norm is defined on Z[zeta_p] only")
    return sylvester_resultant(cyclotomic_poly(a.p), list(a.coeffs))


def norm_by_matrix(a):
    """The norm again, as the determinant of multiplication by a."""
    return bareiss_det(a.mult_matrix())


def _solve(m, b):
    """Solve x * m = b over Q (m square, rows = basis images); None if singular."""
    n = len(m)
    # transpose so that columns are images: sum_j x_j m[j] = b
    aug = [[Fraction(m[j][i]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[r][n] for r in range(n)]


def exact_divide(a, b):
    """a / b in Z[zeta_p]; raises CyclotomicError if the quotient is not integral."""
    if a.modulus is not None or b.modulus is not None:
        raise CyclotomicError("division is defined on Z[zeta_p] only")
    x = _solve(b.mult_matrix(), list(a.coeffs))
    if x is None:
        raise CyclotomicError("division by zero")
    if any(c.denominator != 1 for c in x):
        raise CyclotomicError("quotient is not in Z[zeta_p]")
    return CyclotomicInt(a.p, [int(c) for c in x])


def divides(b, a):
    try:
        exact_divide(a, b)
        return True
    except CyclotomicError:
        return False


def verify_uniformizer(p, bound=DEFAULT_BOUND):
    """u = p / pi^{p-1}, checked integral and a unit (norm +-1)."""
    if not is_prime(p) or p == 2:
        raise RingError("verify_uniformizer needs an odd prime p")
    if p > bound:
        raise RingError(f"p = {p} exceeds the configured bound {bound}")
    pi = CyclotomicInt.pi(p)
    pik = pi ** (p - 1)
    u = exact_divide(CyclotomicInt.scalar(p, p), pik)
    v = exact_divide(pik, CyclotomicInt.scalar(p, p))
    nu = norm(u)
    return {
        "p": p,
        "u": list(u.coeffs),
        "norm_u": nu,
        "norm_u_by_matrix": norm_by_matrix(u),
        "norm_pi": norm(pi),
        "inverse_u": list(v.coeffs),
        "u_times_inverse_is_one": u * v == 1,
        "check": u * pik == p and abs(nu) == 1,
        "one_plus_pi_to_p_is_one": (1 + pi) ** p == 1,
        "pi_p_in_p_pi": divides(CyclotomicInt.scalar(p, p) * pi, pi ** p),
    }


# -- the character chi ---------------------------------------------------------------


def chi(a, modulus=None):
    """Image of a in Z/p^k[C_p] (x = sigma - 1 basis) under sigma -> zeta."""
    spec = a.spec
    if spec.n != 1:
        raise CyclotomicError("chi is defined on cyclic group rings (n = 1)")
    if spec.family not in ("fpg", "zpk"):
        raise CyclotomicError(f"chi is not defined on family {spec.family}")
    modulus = spec.modulus if modulus is None else modulus
    p = spec.p
    pi = CyclotomicInt.pi(p, modulus)
    out = CyclotomicInt.scalar(p, 0, modulus)
    for lam, c in a.coeffs.items():
        out = out + (pi ** lam[0]) * c
    return out


def chi_push(symbol):
    """Push a Dennis-Stein symbol <a, b> over Z/p^k[C_p] to the pair
    (chi(a), chi(b)) over A/(p^k)."""
    return (chi(symbol.a), chi(symbol.b))


def chi_is_homomorphism(a, b):
    return chi(a * b) == chi(a) * chi(b) and chi(a + b) == chi(a) + chi(b)


def pi_pair(p, modulus):
    """The symbol <pi, pi^{p-1}> as a pair over A/(modulus)."""
    pi = CyclotomicInt.pi(p, modulus)
    return (pi, pi ** (p - 1))

