"""Rational functions in the formal parameter q over a cyclotomic field.

``QLaurent`` is a Laurent polynomial in q (dense coefficients plus a
valuation offset), which keeps the shift q^m exact for negative m
without introducing denominators.  ``QRat`` is a quotient of two of
them in canonical form: coprime numerator/denominator, denominator a
monic ordinary polynomial with nonzero constant term.  The parameter q
is formal throughout; nothing is ever evaluated numerically.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyclo, CycloField, cyclo_str, embed


class QLaurent:
    """Laurent polynomial sum_k c[k] * q^(val+k) with c[0], c[-1] nonzero."""

    __slots__ = ("field", "val", "c")

    def __init__(self, field: CycloField, val: int, coeffs):
        coeffs = list(coeffs)
        lo = 0
        while lo < len(coeffs) and coeffs[lo].is_zero():
            lo += 1
        hi = len(coeffs)
        while hi > lo and coeffs[hi - 1].is_zero():
            hi -= 1
        self.field = field
        if lo == hi:
            self.val = 0
            self.c = ()
        else:
            self.val = val + lo
            self.c = tuple(coeffs[lo:hi])

    # ------------------------------------------------------------ constructors
    @staticmethod
    def zero(field: CycloField) -> "QLaurent":
        return QLaurent(field, 0, ())

    @staticmethod
    def one(field: CycloField) -> "QLaurent":
        return QLaurent(field, 0, (field.one,))

    @staticmethod
    def monomial(field: CycloField, coeff: Cyclo, power: int = 0) -> "QLaurent":
        return QLaurent(field, power, (coeff,))

    # ----------------------------------------------------------------- queries
    def is_zero(self) -> bool:
        return not self.c

    def degree(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no degree")
        return self.val + len(self.c) - 1

    def leading(self) -> Cyclo:
        return self.c[-1]

    def constant_coeff(self) -> Cyclo:
        """Coefficient of q^0."""
        k = -self.val
        if 0 <= k < len(self.c):
            return self.c[k]
        return self.field.zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, QLaurent):
            return NotImplemented
        if self.field is not other.field:
            a, b = lift_qlaurent(self, other)
            return a == b
        return self.val == other.val and self.c == other.c

    def __hash__(self):
        return hash((self.field.H, self.val, self.c))

    # -------------------------------------------------------------- arithmetic
    def __add__(self, other: "QLaurent") -> "QLaurent":
        if self.field is not other.field:
            a, b = lift_qlaurent(self, other)
            return a + b
        if not self.c:
            return other
        if not other.c:
            return self
        lo = min(self.val, other.val)
        hi = max(self.val + len(self.c), other.val + len(other.c))
        out = [self.field.zero] * (hi - lo)
        for i, x in enumerate(self.c):
            out[self.val - lo + i] = x
        for i, x in enumerate(other.c):
            out[other.val - lo + i] = out[other.val - lo + i] + x
        return QLaurent(self.field, lo, out)

    def __neg__(self) -> "QLaurent":
        return QLaurent(self.field, self.val, tuple(-x for x in self.c))

    def __sub__(self, other: "QLaurent") -> "QLaurent":
        return self + (-other)

    def __mul__(self, other) -> "QLaurent":
        if isinstance(other, Cyclo):
            other = QLaurent.monomial(self.field, other)
        if not isinstance(other, QLaurent):
            return NotImplemented
        if self.field is not other.field:
            a, b = lift_qlaurent(self, other)
            return a * b
        if not self.c or not other.c:
            return QLaurent.zero(self.field)
        out = [self.field.zero] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x.is_zero():
                continue
            for j, y in enumerate(other.c):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return QLaurent(self.field, self.val + other.val, out)

    def shift(self, k: int) -> "QLaurent":
        """Multiply by q^k."""
        if not self.c:
            return self
        return QLaurent(self.field, self.val + k, self.c)

    def scale(self, a: Cyclo) -> "QLaurent":
        if a.is_zero():
            return QLaurent.zero(self.field)
        return QLaurent(self.field, self.val, tuple(x * a for x in self.c))

    # ------------------------------------------------- polynomial-part algebra
    def poly_part(self) -> "QLaurent":
        """Shift valuation to 0 (the associate used by gcd and divmod)."""
        if not self.c:
            return self
        return QLaurent(self.field, 0, self.c)

    def divmod_poly(self, other: "QLaurent"):
        """Euclidean division for valuation-0 polynomials."""
        assert self.val == 0 and other.val == 0 and other.c
        rem = list(self.c)
        db = len(other.c)
        if len(rem) < db:
            return QLaurent.zero(self.field), self
        quo = [self.field.zero] * (len(rem) - db + 1)
        inv_lead = other.c[-1].inverse()
        for i in range(len(rem) - db, -1, -1):
            coeff = rem[i + db - 1] * inv_lead
            if not coeff.is_zero():
                quo[i] = coeff
                for j, bj in enumerate(other.c):
                    rem[i + j] = rem[i + j] - coeff * bj
        return QLaurent(self.field, 0, quo), QLaurent(self.field, 0, rem)

    def monic(self) -> "QLaurent":
        if not self.c:
            return self
        return self.scale(self.c[-1].inverse())

    def eval_at_one(self) -> Cyclo:
        out = self.field.zero
        for x in self.c:
            out = out + x
        return out

    def subst_q_power(self, m: int) -> "QLaurent":
        """Substitute q -> q^m (m may be negative or zero)."""
        if not self.c:
            return self
        if m == 0:
            return QLaurent(self.field, 0, (self.eval_at_one(),))
        terms = {}
        for i, x in enumerate(self.c):
            if not x.is_zero():
                terms[(self.val + i) * m] = x
        lo = min(terms)
        hi = max(terms)
        out = [self.field.zero] * (hi - lo + 1)
        for k, x in terms.items():
            out[k - lo] = x
        return QLaurent(self.field, lo, out)

    def __repr__(self):
        return f"QLaurent({qlaurent_str(self, 'q')})"


def lift_qlaurent(a: QLaurent, b: QLaurent):
    from math import gcd as _gcd

    H = a.field.H * b.field.H // _gcd(a.field.H, b.field.H)
    f = CycloField(H)
    ea = QLaurent(f, a.val, tuple(embed(x, f) for x in a.c))
    eb = QLaurent(f, b.val, tuple(embed(x, f) for x in b.c))
    return ea, eb


def qlaurent_gcd(a: QLaurent, b: QLaurent) -> QLaurent:
    """Monic gcd of the polynomial parts (units q^k discarded)."""
    a = a.poly_part()
    b = b.poly_part()
    while not b.is_zero():
        _, r = a.divmod_poly(b.monic())
        a, b = b, r.poly_part() if not r.is_zero() else QLaurent.zero(a.field)
    return a.monic()


class QRat:
    """Element of Q(zeta_H)(q) in canonical form.

    num is a Laurent polynomial, den a monic polynomial with nonzero
    constant term, gcd(num, den) = 1.  Zero is 0/1.  Equality of
    canonical forms is decidable equality in the field.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: QLaurent, den: QLaurent, reduce: bool = True):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        field = num.field
        if den.field is not field:
            num, den = lift_qlaurent(num, den)
            field = num.field
        if num.is_zero():
            self.num = num
            self.den = QLaurent.one(field)
            return
        shift = -den.val
        if shift:
            num = num.shift(shift)
            den = den.shift(shift)
        if reduce and len(den.c) > 1:
            g = qlaurent_gcd(num, den)
            if len(g.c) > 1:
                num_p, r = num.poly_part().divmod_poly(g)
                assert r.is_zero()
                den_p, r = den.divmod_poly(g)
                assert r.is_zero()
                num = num_p.shift(num.val)
                den = den_p
                shift = -den.val
                if shift:
                    num = num.shift(shift)
                    den = den.shift(shift)
        lead = den.leading()
        if not (lead == 1):
            inv = lead.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    # ------------------------------------------------------------ constructors
    @staticmethod
    def zero(field: CycloField) -> "QRat":
        return QRat(QLaurent.zero(field), QLaurent.one(field), reduce=False)

    @staticmethod
    def one(field: CycloField) -> "QRat":
        return QRat(QLaurent.one(field), QLaurent.one(field), reduce=False)

    @staticmethod
    def from_cyclo(a: Cyclo) -> "QRat":
        return QRat(
            QLaurent.monomial(a.field, a), QLaurent.one(a.field), reduce=False
        )

    @staticmethod
    def from_rational(field: CycloField, r) -> "QRat":
        return QRat.from_cyclo(field.from_rational(Fraction(r)))

    @staticmethod
    def q_power(field: CycloField, k: int) -> "QRat":
        return QRat(
            QLaurent.monomial(field, field.one, k),
            QLaurent.one(field),
            reduce=False,
        )

    @property
    def field(self) -> CycloField:
        return self.num.field

    # ----------------------------------------------------------------- queries
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_polynomial(self) -> bool:
        return len(self.den.c) == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QRat.from_rational(self.field, other)
        if not isinstance(other, QRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -------------------------------------------------------------- arithmetic
    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return QRat.from_rational(self.field, other)
        if isinstance(other, Cyclo):
            return QRat.from_cyclo(other)
        if isinstance(other, QRat):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return QRat(self.num + o.num, self.den)
        return QRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return QRat(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_polynomial() and o.is_polynomial():
            return QRat(self.num * o.num, self.den * o.den, reduce=False)
        # cross-cancel to keep degrees small
        a = QRat(self.num, o.den)
        b = QRat(o.num, self.den)
        return QRat(a.num * b.num, a.den * b.den, reduce=False)

    __rmul__ = __mul__

    def inverse(self) -> "QRat":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return QRat(self.den, self.num, reduce=False)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QRat.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # ------------------------------------------------------------ substitution
    def subst_q_power(self, m: int) -> "QRat":
        """Substitute q -> q^m; for m = 0 this is the value at q = 1 of the
        reduced form (errors if the reduced denominator vanishes there)."""
        num = self.num.subst_q_power(m)
        den = self.den.subst_q_power(m)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes under substitution")
        return QRat(num, den)

    def embed(self, field: CycloField) -> "QRat":
        if field is self.field:
            return self
        num = QLaurent(field, self.num.val, tuple(embed(x, field) for x in self.num.c))
        den = QLaurent(field, self.den.val, tuple(embed(x, field) for x in self.den.c))
        return QRat(num, den, reduce=False)

    def as_cyclo(self) -> Cyclo:
        if not self.is_polynomial() or (self.num.c and self.num.val != 0):
            raise ValueError(f"{self} is not a constant")
        if self.num.is_zero():
            return self.field.zero
        return self.num.c[0]

    def __repr__(self):
        return f"QRat({qrat_str(self)})"


# ----------------------------------------------------------------- formatting
def qlaurent_str(p: QLaurent, var: str = "q") -> str:
    if p.is_zero():
        return "0"
    parts = []
    first = True
    for i, x in enumerate(p.c):
        if x.is_zero():
            continue
        k = p.val + i
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if x.is_rational():
            r = x.as_fraction()
            neg = r < 0
            mag = -r if neg else r
            if mon and mag == 1:
                body = mon
            elif mon:
                body = f"{mag}*{mon}"
            else:
                body = str(mag)
            sep = ("-" if neg else "") if first else (" - " if neg else " + ")
        else:
            body = f"({cyclo_str(x)})" + (f"*{mon}" if mon else "")
            sep = "" if first else " + "
        parts.append(sep + body)
        first = False
    return "".join(parts)


def _needs_parens(p: QLaurent) -> bool:
    return sum(1 for x in p.c if not x.is_zero()) > 1


def qrat_str(r: QRat, var: str = "q") -> str:
    """Canonical serialization num(q)/den(q); round-trips via parse_qrat."""
    ns = qlaurent_str(r.num, var)
    if r.is_polynomial():
        return ns
    if _needs_parens(r.num) or not r.num.is_zero() and (
        not r.num.c[0].is_rational() or r.num.c[0].as_fraction() < 0
    ):
        ns = f"({ns})"
    ds = qlaurent_str(r.den, var)
    if _needs_parens(r.den):
        ds = f"({ds})"
    return f"{ns}/{ds}"


# --------------------------------------------------------------------- parser
class _Tokens:
    def __init__(self, text: str):
        self.toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(("int", int(text[i:j])))
                i = j
            elif ch in "+-*/^()":
                self.toks.append((ch, ch))
                i += 1
            elif ch in ("w", "q", "t"):
                self.toks.append(("sym", ch))
                i += 1
            else:
                raise ValueError(f"unexpected character {ch!r} in expression")
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def next(self):
        t = self.peek()
        self.pos += 1
        return t


def parse_qrat(text: str, field: CycloField, var: str = "q") -> QRat:
    """Parse an exact expression in integers, w, and q into the field.

    Accepts + - * / ^ and parentheses; '/' is field division, so strings
    like "(1 - w*q)/(1 + q)" evaluate to canonical form exactly.
    """
    toks = _Tokens(text)

    def atom():
        kind, val = toks.next()
        if kind == "int":
            return QRat.from_rational(field, val)
        if kind == "sym":
            if val == "w":
                return QRat.from_cyclo(field.zeta(1))
            if val == var or val in ("q", "t"):
                return QRat.q_power(field, 1)
            raise ValueError(f"unknown symbol {val}")
        if kind == "(":
            e = expr()
            kind, _ = toks.next()
            if kind != ")":
                raise ValueError("missing closing parenthesis")
            return e
        raise ValueError(f"unexpected token {val!r}")

    def factor():
        sign = 1
        while toks.peek()[0] == "-":
            toks.next()
            sign = -sign
        base = atom()
        if toks.peek()[0] == "^":
            toks.next()
            esign = 1
            while toks.peek()[0] == "-":
                toks.next()
                esign = -esign
            kind, val = toks.next()
            if kind != "int":
                raise ValueError("exponent must be an integer")
            base = base ** (esign * val)
        return -base if sign < 0 else base

    def term():
        out = factor()
        while toks.peek()[0] in ("*", "/"):
            op, _ = toks.next()
            rhs = factor()
            out = out * rhs if op == "*" else out / rhs
        return out

    def expr():
        out = term()
        while toks.peek()[0] in ("+", "-"):
            op, _ = toks.next()
            rhs = term()
            out = out + rhs if op == "+" else out - rhs
        return out

    result = expr()
    if toks.peek()[0] is not None:
        raise ValueError("trailing tokens in expression")
    return result
