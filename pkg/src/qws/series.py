"""Truncated Laurent series in the loop variable z over Q(zeta_H)(q).

A series knows its coefficients on an explicit window [lo, hi] and, per
side, whether everything outside is exactly zero (``exact_below`` /
``exact_above``).  A Laurent polynomial is exact on both sides; the
formal delta distribution is exact on neither.  Every arithmetic
operation certifies the window on which the result is fully determined
and returns exactly that; an empty certified window raises WindowError
at the point of use, never silently truncates.

The q-shift automorphism tau acts by multiplying the mode-m coefficient
by q^m, which is exact and window-preserving.
"""

from __future__ import annotations

from .cyclotomic import CycloField
from .errors import WindowError
from .qfield import QRat, parse_qrat, qrat_str

INF = float("inf")

DEFAULT_INVERSE_EXTRA = 16


class LaurentSeries:
    __slots__ = ("field", "lo", "hi", "coeffs", "exact_below", "exact_above")

    def __init__(self, field, lo, hi, coeffs, exact_below=False, exact_above=False):
        coeffs = {m: c for m, c in coeffs.items() if lo <= m <= hi and not c.is_zero()}
        # exact sides carry no information in padding zeros; shrink to support
        if exact_below:
            while lo <= hi and lo not in coeffs:
                lo += 1
        if exact_above:
            while hi >= lo and hi not in coeffs:
                hi -= 1
        if lo > hi:
            coeffs = {}
            if exact_below and exact_above:
                lo, hi = 0, -1
        self.field = field
        self.lo = lo
        self.hi = hi
        self.coeffs = coeffs
        self.exact_below = exact_below
        self.exact_above = exact_above

    # ------------------------------------------------------------ constructors
    @staticmethod
    def zero(field: CycloField) -> "LaurentSeries":
        return LaurentSeries(field, 0, -1, {}, True, True)

    @staticmethod
    def from_terms(field, terms: dict, exact: bool = True) -> "LaurentSeries":
        """Laurent polynomial from {mode: QRat-like} (ints and Fractions accepted)."""
        coeffs = {}
        for m, c in terms.items():
            if not isinstance(c, QRat):
                c = QRat.from_rational(field, c)
            coeffs[int(m)] = c
        if not coeffs:
            return LaurentSeries.zero(field)
        lo, hi = min(coeffs), max(coeffs)
        return LaurentSeries(field, lo, hi, coeffs, exact, exact)

    @staticmethod
    def constant(field, c) -> "LaurentSeries":
        return LaurentSeries.from_terms(field, {0: c})

    @staticmethod
    def monomial(field, c, mode: int) -> "LaurentSeries":
        return LaurentSeries.from_terms(field, {mode: c})

    @staticmethod
    def delta(field, lo: int, hi: int) -> "LaurentSeries":
        """The all-ones window of the formal distribution sum_m z^m."""
        one = QRat.one(field)
        return LaurentSeries(field, lo, hi, {m: one for m in range(lo, hi + 1)})

    # ----------------------------------------------------------------- queries
    def coeff(self, m: int) -> QRat:
        """Coefficient at a mode where it is determined (WindowError otherwise)."""
        if m in self.coeffs:
            return self.coeffs[m]
        if self.lo <= m <= self.hi:
            return QRat.zero(self.field)
        if m < self.lo and self.exact_below:
            return QRat.zero(self.field)
        if m > self.hi and self.exact_above:
            return QRat.zero(self.field)
        raise WindowError(f"mode {m} not certified (window [{self.lo},{self.hi}])")

    def known_at(self, m: int) -> bool:
        if self.lo <= m <= self.hi:
            return True
        if m < self.lo:
            return self.exact_below
        return self.exact_above

    def is_exact(self) -> bool:
        return self.exact_below and self.exact_above

    def is_zero_exact(self) -> bool:
        return self.is_exact() and not self.coeffs

    def window_empty(self) -> bool:
        return self.lo > self.hi and not self.is_exact()

    def support_lo(self):
        """Lower end of possible support (-inf when unknown below)."""
        if not self.exact_below:
            return -INF
        return min(self.coeffs) if self.coeffs else INF

    def support_hi(self):
        if not self.exact_above:
            return INF
        return max(self.coeffs) if self.coeffs else -INF

    def valuation(self) -> int:
        if not self.exact_below:
            raise WindowError("valuation of a series with unknown low modes")
        if not self.coeffs:
            raise ValueError("valuation of the zero series")
        return min(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            (self.lo, self.hi, self.exact_below, self.exact_above)
            == (other.lo, other.hi, other.exact_below, other.exact_above)
            and self.coeffs == other.coeffs
        )

    def agrees_with(self, other: "LaurentSeries", require_overlap: bool = True) -> bool:
        """Equality of coefficients on the common determined window."""
        lo = max(self.lo if not self.exact_below else -INF,
                 other.lo if not other.exact_below else -INF)
        hi = min(self.hi if not self.exact_above else INF,
                 other.hi if not other.exact_above else INF)
        if lo == -INF:
            lo = min([self.lo, other.lo] + [min(self.coeffs, default=0)]
                     + [min(other.coeffs, default=0)])
        if hi == INF:
            hi = max([self.hi, other.hi] + [max(self.coeffs, default=0)]
                     + [max(other.coeffs, default=0)])
        if lo > hi and require_overlap:
            raise WindowError("no common certified window to compare on")
        for m in range(int(lo), int(hi) + 1):
            if self.coeff(m) != other.coeff(m):
                return False
        return True

    # -------------------------------------------------------------- arithmetic
    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        lo = max(-INF if self.exact_below else self.lo,
                 -INF if other.exact_below else other.lo)
        hi = min(INF if self.exact_above else self.hi,
                 INF if other.exact_above else other.hi)
        eb = self.exact_below and other.exact_below
        ea = self.exact_above and other.exact_above
        support = set(self.coeffs) | set(other.coeffs)
        if lo == -INF:
            lo = min(support, default=0)
        if hi == INF:
            hi = max(support, default=-1)
        coeffs = {}
        for m in support:
            if lo <= m <= hi:
                a = self.coeffs.get(m)
                b = other.coeffs.get(m)
                coeffs[m] = (a + b) if a is not None and b is not None else (a or b)
        return LaurentSeries(self.field, int(lo), int(hi), coeffs, eb, ea)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(
            self.field, self.lo, self.hi,
            {m: -c for m, c in self.coeffs.items()},
            self.exact_below, self.exact_above,
        )

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def scale(self, a) -> "LaurentSeries":
        """Multiply by an exact scalar from the coefficient field."""
        if not isinstance(a, QRat):
            a = QRat.from_rational(self.field, a)
        if a.is_zero():
            return LaurentSeries.zero(self.field)
        return LaurentSeries(
            self.field, self.lo, self.hi,
            {m: c * a for m, c in self.coeffs.items()},
            self.exact_below, self.exact_above,
        )

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        if self.is_zero_exact() or other.is_zero_exact():
            return LaurentSeries.zero(self.field)
        lo, hi = -INF, INF
        if not self.exact_below:
            hs = other.support_hi()
            lo = max(lo, self.lo + hs) if hs < INF else INF
        if not other.exact_below:
            hs = self.support_hi()
            lo = max(lo, other.lo + hs) if hs < INF else INF
        if not self.exact_above:
            ls = other.support_lo()
            hi = min(hi, self.hi + ls) if ls > -INF else -INF
        if not other.exact_above:
            ls = self.support_lo()
            hi = min(hi, other.hi + ls) if ls > -INF else -INF
        eb = self.exact_below and other.exact_below
        ea = self.exact_above and other.exact_above
        if lo == -INF:  # exact below on both sides
            lo = self.support_lo() + other.support_lo()
        if hi == INF:
            hi = self.support_hi() + other.support_hi()
        if lo > hi:
            return LaurentSeries(self.field, 0, -1, {}, eb, ea)
        coeffs = {}
        for i, x in self.coeffs.items():
            for j, y in other.coeffs.items():
                m = i + j
                if lo <= m <= hi:
                    prev = coeffs.get(m)
                    coeffs[m] = x * y if prev is None else prev + x * y
        return LaurentSeries(self.field, int(lo), int(hi), coeffs, eb, ea)

    def tau(self, power: int = 1) -> "LaurentSeries":
        """The q-shift g(z) -> g(q^power z): mode m picks up q^(m*power)."""
        if power == 0:
            return self
        return LaurentSeries(
            self.field, self.lo, self.hi,
            {m: c * QRat.q_power(self.field, m * power) for m, c in self.coeffs.items()},
            self.exact_below, self.exact_above,
        )

    def inverse(self, top: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse of a series with known leading term.

        Requires exact_below and a nonzero lowest coefficient.  The result
        is exact below with valuation -v; its top mode is the certified
        bound for truncated input, or ``top`` for exact input (defaulting
        to valuation + DEFAULT_INVERSE_EXTRA).
        """
        if not self.exact_below:
            raise WindowError("cannot invert: low modes are not certified")
        if not self.coeffs:
            raise ZeroDivisionError("inverse of the zero series")
        v = self.valuation()
        c = self.coeffs[v]
        cinv = c.inverse()
        if len(self.coeffs) == 1 and self.is_exact():
            return LaurentSeries.from_terms(self.field, {-v: cinv})
        if self.exact_above:
            out_top = top if top is not None else -v + DEFAULT_INVERSE_EXTRA
        else:
            certified = self.hi - 2 * v
            out_top = certified if top is None else min(top, certified)
        if out_top < -v:
            raise WindowError("requested inverse window is empty")
        y = {-v: cinv}
        for s in range(1, out_top + v + 1):
            acc = None
            for d in range(1, s + 1):
                x = self.coeffs.get(v + d)
                if x is None:
                    continue
                term = x * y[-v + s - d]
                acc = term if acc is None else acc + term
            y[-v + s] = QRat.zero(self.field) if acc is None else -(cinv * acc)
        return LaurentSeries(self.field, -v, out_top, y, True, False)

    # -------------------------------------------------------------- structure
    def restrict(self, lo: int, hi: int) -> "LaurentSeries":
        """View on a subwindow (exactness flags survive only if redundant)."""
        eb = self.exact_below and lo <= self.lo
        ea = self.exact_above and hi >= self.hi
        return LaurentSeries(
            self.field, max(lo, self.lo if not self.exact_below else lo),
            min(hi, self.hi if not self.exact_above else hi),
            {m: c for m, c in self.coeffs.items() if lo <= m <= hi}, eb, ea,
        )

    def res_pair(self, other: "LaurentSeries") -> QRat:
        """Diagonal-mode pairing sum_m X_m Y_(-m), certified or WindowError."""
        for mine, theirs, name in (
            (self, other, "left"), (other, self, "right")
        ):
            if not mine.exact_above:
                # unknown high modes of one factor must hit certain zeros
                if not (theirs.exact_below and mine.hi + theirs.lo >= 0):
                    raise WindowError(f"pairing not certified ({name} high modes)")
            if not mine.exact_below:
                if not (theirs.exact_above and mine.lo + theirs.hi <= 0):
                    raise WindowError(f"pairing not certified ({name} low modes)")
        out = QRat.zero(self.field)
        for m, x in self.coeffs.items():
            y = other.coeffs.get(-m)
            if y is not None:
                out = out + x * y
        return out

    # ----------------------------------------------------------- serialization
    def to_json(self) -> dict:
        modes = {str(m): qrat_str(self.coeffs[m]) for m in sorted(self.coeffs)}
        return {
            "window": [self.lo, self.hi],
            "conductor": self.field.H,
            "exact": [self.exact_below, self.exact_above],
            "modes": modes,
        }

    @staticmethod
    def from_json(data: dict, field: CycloField | None = None) -> "LaurentSeries":
        f = field or CycloField(int(data.get("conductor", 1)))
        lo, hi = data["window"]
        eb, ea = data.get("exact", [False, False])
        coeffs = {int(m): parse_qrat(s, f) for m, s in data["modes"].items()}
        return LaurentSeries(f, int(lo), int(hi), coeffs, bool(eb), bool(ea))

    def __repr__(self):
        terms = ", ".join(
            f"z^{m}: {qrat_str(self.coeffs[m])}" for m in sorted(self.coeffs)
        )
        flags = ("[" + ("=" if self.exact_below else "?") + f"{self.lo},{self.hi}"
                 + ("=" if self.exact_above else "?") + "]")
        return f"LaurentSeries({flags} {terms})"
