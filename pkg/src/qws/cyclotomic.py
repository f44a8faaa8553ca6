"""Exact arithmetic in cyclotomic fields Q(zeta_H).

An element is stored as a coefficient vector of length phi(H) over the
rationals, representing a polynomial in a fixed primitive H-th root of
unity ``w``, reduced modulo the H-th cyclotomic polynomial.  All
operations are exact; equality is equality of canonical coefficient
vectors.

Conductors embed whenever H | H', so mixed-conductor arithmetic lifts
both operands to the lcm conductor first.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

ZERO = Fraction(0)
ONE = Fraction(1)


def _poly_trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    """Quotient and remainder of dense rational polynomials (ascending order)."""
    a = list(a)
    if len(a) < len(b):
        return [], _poly_trim(a)
    q = [ZERO] * (len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        coeff = a[i + len(b) - 1] * inv_lead
        if coeff != 0:
            q[i] = coeff
            for j, bj in enumerate(b):
                a[i + j] -= coeff * bj
    return _poly_trim(q), _poly_trim(a)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(H: int) -> tuple[Fraction, ...]:
    """Coefficients of Phi_H (ascending), computed by dividing x^H - 1."""
    if H < 1:
        raise ValueError("conductor must be positive")
    num = [ZERO] * (H + 1)
    num[0], num[H] = -ONE, ONE
    for d in range(1, H):
        if H % d == 0:
            q, r = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not r
            num = q
    return tuple(num)


def euler_phi(H: int) -> int:
    return len(cyclotomic_polynomial(H)) - 1


class CycloField:
    """Shared per-conductor context: reduction table and cached constants."""

    _cache: dict[int, "CycloField"] = {}

    def __new__(cls, H: int):
        f = cls._cache.get(H)
        if f is None:
            f = super().__new__(cls)
            f._init(H)
            cls._cache[H] = f
        return f

    def _init(self, H: int) -> None:
        self.H = H
        phi_poly = cyclotomic_polynomial(H)
        self.degree = len(phi_poly) - 1
        d = self.degree
        # x^k mod Phi_H for k in [d, 2d-2], used to fold products back into the basis
        table = []
        row = [-c for c in phi_poly[:d]]
        table.append(tuple(row))
        for _ in range(d - 2):
            shifted = [ZERO] + row[:-1]
            top = row[-1]
            row = [shifted[j] + top * table[0][j] for j in range(d)]
            table.append(tuple(row))
        self.reduction = table
        self.zero = Cyclo(self, (ZERO,) * d)
        self.one = Cyclo(self, (ONE,) + (ZERO,) * (d - 1))

    def from_rational(self, r) -> "Cyclo":
        r = Fraction(r)
        return Cyclo(self, (r,) + (ZERO,) * (self.degree - 1))

    def zeta(self, power: int = 1) -> "Cyclo":
        """The root of unity w^power in canonical form."""
        power %= self.H
        c = [ZERO] * (self.H if power >= self.degree else self.degree)
        c[power] = ONE
        return Cyclo(self, self._reduce(c))

    def _reduce(self, c: list[Fraction]) -> tuple[Fraction, ...]:
        d = self.degree
        if len(c) <= d:
            return tuple(c) + (ZERO,) * (d - len(c))
        out = list(c[:d])
        for k in range(d, len(c)):
            ck = c[k]
            if ck == 0:
                continue
            row = self._power_mod(k)
            for j in range(d):
                out[j] += ck * row[j]
        return tuple(out)

    def _power_mod(self, k: int) -> tuple[Fraction, ...]:
        # x^k mod Phi_H for arbitrary k >= degree
        while k - self.degree >= len(self.reduction):
            row = self.reduction[-1]
            shifted = [ZERO] + list(row[:-1])
            top = row[-1]
            base = self.reduction[0]
            self.reduction.append(
                tuple(shifted[j] + top * base[j] for j in range(self.degree))
            )
        return self.reduction[k - self.degree]

    def __repr__(self):
        return f"CycloField({self.H})"


class Cyclo:
    """Element of Q(zeta_H), canonical coefficient vector in the power basis."""

    __slots__ = ("field", "c")

    def __init__(self, field: CycloField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.c = coeffs

    # ------------------------------------------------------------------ basics
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return all(x == 0 for x in self.c[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.c[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        if not isinstance(other, Cyclo):
            return NotImplemented
        if self.field is other.field:
            return self.c == other.c
        a, b = lift_pair(self, other)
        return a.c == b.c

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.field.H, self.c))

    # -------------------------------------------------------------- arithmetic
    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return self, self.field.from_rational(other)
        if isinstance(other, Cyclo):
            if other.field is self.field:
                return self, other
            return lift_pair(self, other)
        return self, NotImplemented

    def __add__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Cyclo(a.field, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.field, tuple(-x for x in self.c))

    def __sub__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Cyclo(a.field, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclo(self.field, tuple(x * other for x in self.c))
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = self._coerce(other)
        d = a.field.degree
        prod = [ZERO] * (2 * d - 1)
        for i, x in enumerate(a.c):
            if x == 0:
                continue
            for j, y in enumerate(b.c):
                if y != 0:
                    prod[i + j] += x * y
        return Cyclo(a.field, a.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        """Field inverse via the extended Euclidean algorithm against Phi_H."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        if self.is_rational():
            return self.field.from_rational(1 / self.c[0])
        a = _poly_trim(list(self.c))
        b = list(cyclotomic_polynomial(self.field.H))
        # invariants: s*a0 + t*b0 = r (t not tracked)
        r0, r1 = b, a
        s0, s1 = [ZERO], [ONE]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            s = _poly_sub(s0, _poly_mul(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s
        if not r1:
            raise ZeroDivisionError("element not invertible (shares factor with Phi_H)")
        scale = 1 / r1[0]
        inv = [x * scale for x in s1]
        return Cyclo(self.field, self.field._reduce(inv))

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return f"Cyclo({self.field.H}, {cyclo_str(self)})"


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [ZERO] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _poly_trim(out)


def embed(a: Cyclo, field: CycloField) -> Cyclo:
    """Embed Q(zeta_H) into Q(zeta_H') for H | H' via zeta_H = zeta_H'^(H'/H)."""
    if a.field is field:
        return a
    if field.H % a.field.H != 0:
        raise ValueError(f"no embedding of conductor {a.field.H} into {field.H}")
    step = field.H // a.field.H
    out = field.zero
    for i, x in enumerate(a.c):
        if x != 0:
            out = out + field.zeta(step * i) * x
    return out


def lift_pair(a: Cyclo, b: Cyclo):
    H = a.field.H * b.field.H // gcd(a.field.H, b.field.H)
    f = CycloField(H)
    return embed(a, f), embed(b, f)


def rational_sqrt(r, min_conductor: int = 1):
    """An exact square root of a nonzero rational inside a cyclotomic field.

    Returns (field, element) with element**2 == r.  The conductor is the
    lcm of min_conductor with what the quadratic subfield requires
    (Gauss sums for odd primes, zeta_8 combinations for 2, zeta_4 for signs).
    """
    r = Fraction(r)
    if r == 0:
        f = CycloField(min_conductor)
        return f, f.zero
    # sqrt(num/den) = sqrt(num*den)/den; factor num*den = sign * t^2 * m, m squarefree
    s = r.numerator * r.denominator
    t = Fraction(1, r.denominator)
    m = 1
    v = abs(s)
    d = 2
    while d * d <= v:
        e = 0
        while v % d == 0:
            v //= d
            e += 1
        t *= Fraction(d) ** (e // 2)
        if e % 2:
            m *= d
        d += 1
    if v > 1:
        m *= v
    if s < 0:
        m = -m

    conductor = min_conductor
    has_sqrt2 = False
    mm = abs(m)
    if mm % 2 == 0:
        conductor = _lcm(conductor, 8)
        has_sqrt2 = True
        mm //= 2
    p = 3
    odd_primes = []
    while p * p <= mm:
        if mm % p == 0:
            odd_primes.append(p)
            mm //= p
        else:
            p += 2
    if mm > 1:
        odd_primes.append(mm)
    for p in odd_primes:
        conductor = _lcm(conductor, p)
    # decide whether the Gauss-sum product squares to +|m| or -|m|
    sign = 1
    for p in odd_primes:
        if p % 4 == 3:
            sign = -sign
    if (m < 0 and sign == 1) or (m > 0 and sign == -1):
        conductor = _lcm(conductor, 4)
        need_i = True
    else:
        need_i = False

    f = CycloField(conductor)
    val = f.from_rational(t)
    if has_sqrt2:
        step = conductor // 8
        val = val * (f.zeta(step) + f.zeta(7 * step))
    for p in odd_primes:
        step = conductor // p
        g = f.zero
        for a in range(1, p):
            if pow(a, (p - 1) // 2, p) == 1:
                g = g + f.zeta(step * a)
            else:
                g = g - f.zeta(step * a)
        val = val * g
    if need_i:
        val = val * f.zeta(conductor // 4)
    assert val * val == f.from_rational(r), "square root construction failed"
    return f, val


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ----------------------------------------------------------------- formatting
def _frac_str(x: Fraction) -> str:
    return str(x)


def cyclo_str(a: Cyclo) -> str:
    """Canonical string as a polynomial in w (no outer parentheses)."""
    terms = []
    for i, x in enumerate(a.c):
        if x == 0:
            continue
        if i == 0:
            terms.append((x, ""))
        else:
            mon = "w" if i == 1 else f"w^{i}"
            terms.append((x, mon))
    if not terms:
        return "0"
    parts = []
    for k, (x, mon) in enumerate(terms):
        neg = x < 0
        mag = -x if neg else x
        if mon and mag == 1:
            body = mon
        elif mon:
            body = f"{_frac_str(mag)}*{mon}"
        else:
            body = _frac_str(mag)
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)
