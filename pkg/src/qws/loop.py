"""SL(n) loop matrices: the gauge action, cell membership, companion forms.

Positive roots correspond to lower-triangular matrices, so N is lower
unitriangular, N' its bottom-row subgroup, and the cell M^s consists of
matrices with -1 on the superdiagonal and zeros above it.  The Coxeter
representative is the signed cycle with -1 superdiagonal and +1 in the
bottom-left corner; conjugating a diagonal by its inverse cycles the
entries downward.

Structural predicates are strict (they require exact zeros and ones);
value comparisons on truncated series go through ``matrix_agrees``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CycloField
from .errors import ShapeError, WindowError
from .qfield import QRat
from .series import LaurentSeries


class LoopMatrix:
    __slots__ = ("field", "n", "rows")

    def __init__(self, field: CycloField, rows):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.n = len(self.rows)
        assert all(len(r) == self.n for r in self.rows)

    # ------------------------------------------------------------ constructors
    @staticmethod
    def identity(field: CycloField, n: int) -> "LoopMatrix":
        one = LaurentSeries.constant(field, 1)
        zero = LaurentSeries.zero(field)
        return LoopMatrix(
            field, [[one if i == j else zero for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def from_scalars(field: CycloField, rows) -> "LoopMatrix":
        return LoopMatrix(
            field,
            [[LaurentSeries.constant(field, x) for x in row] for row in rows],
        )

    @staticmethod
    def diagonal(field: CycloField, entries) -> "LoopMatrix":
        n = len(entries)
        zero = LaurentSeries.zero(field)
        return LoopMatrix(
            field,
            [[entries[i] if i == j else zero for j in range(n)] for i in range(n)],
        )

    def copy(self) -> "LoopMatrix":
        return LoopMatrix(self.field, self.rows)

    # -------------------------------------------------------------- arithmetic
    def __matmul__(self, other: "LoopMatrix") -> "LoopMatrix":
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = None
                for k in range(n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if a.is_zero_exact() or b.is_zero_exact():
                        continue
                    term = a * b
                    acc = term if acc is None else acc + term
                row.append(acc if acc is not None else LaurentSeries.zero(self.field))
            out.append(row)
        return LoopMatrix(self.field, out)

    def __add__(self, other: "LoopMatrix") -> "LoopMatrix":
        return LoopMatrix(
            self.field,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __sub__(self, other: "LoopMatrix") -> "LoopMatrix":
        return LoopMatrix(
            self.field,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __neg__(self) -> "LoopMatrix":
        return LoopMatrix(self.field, [[-a for a in r] for r in self.rows])

    def tau(self, power: int = 1) -> "LoopMatrix":
        return LoopMatrix(
            self.field, [[a.tau(power) for a in r] for r in self.rows]
        )

    def det(self) -> LaurentSeries:
        n = self.n
        if n == 1:
            return self.rows[0][0]
        acc = None
        for j in range(n):
            entry = self.rows[0][j]
            if entry.is_zero_exact():
                continue
            minor = LoopMatrix(
                self.field,
                [[self.rows[i][c] for c in range(n) if c != j]
                 for i in range(1, n)],
            )
            term = entry * minor.det()
            if j % 2:
                term = -term
            acc = term if acc is None else acc + term
        return acc if acc is not None else LaurentSeries.zero(self.field)

    # ----------------------------------------------------------------- inverse
    def is_unitriangular(self, lower: bool) -> bool:
        for i in range(self.n):
            if not _is_one(self.rows[i][i]):
                return False
            rng = range(i + 1, self.n) if lower else range(i)
            for j in rng:
                if not self.rows[i][j].is_zero_exact():
                    return False
        return True

    def inverse(self, top: int | None = None) -> "LoopMatrix":
        n = self.n
        if self.is_unitriangular(lower=True) or self.is_unitriangular(lower=False):
            nil = self - LoopMatrix.identity(self.field, n)
            out = LoopMatrix.identity(self.field, n)
            power = LoopMatrix.identity(self.field, n)
            for _ in range(1, n):
                power = power @ nil
                out = out + power if _ % 2 == 0 else out - power
            return out
        if all(
            self.rows[i][j].is_zero_exact()
            for i in range(n) for j in range(n) if i != j
        ):
            return LoopMatrix.diagonal(
                self.field, [self.rows[i][i].inverse(top) for i in range(n)]
            )
        d = self.det()
        dinv = d.inverse(top)
        adj = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = LoopMatrix(
                    self.field,
                    [[self.rows[r][c] for c in range(n) if c != i]
                     for r in range(n) if r != j],
                )
                term = minor.det()
                if (i + j) % 2:
                    term = -term
                row.append(term * dinv)
            adj.append(row)
        return LoopMatrix(self.field, adj)

    def __repr__(self):
        body = ",\n  ".join(str([repr(e) for e in row]) for row in self.rows)
        return f"LoopMatrix(n={self.n},\n  {body})"

    # ----------------------------------------------------------- serialization
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "conductor": self.field.H,
            "entries": [[e.to_json() for e in row] for row in self.rows],
        }

    @staticmethod
    def from_json(data: dict) -> "LoopMatrix":
        field = CycloField(int(data.get("conductor", 1)))
        rows = [
            [LaurentSeries.from_json(e, field) for e in row]
            for row in data["entries"]
        ]
        return LoopMatrix(field, rows)


def _is_one(s: LaurentSeries) -> bool:
    return s.is_exact() and dict(s.coeffs) == {0: QRat.one(s.field)}


def _is_minus_one(s: LaurentSeries) -> bool:
    return s.is_exact() and dict(s.coeffs) == {0: -QRat.one(s.field)}


def matrix_agrees(a: LoopMatrix, b: LoopMatrix, require_overlap: bool = True) -> bool:
    """Entrywise coefficient agreement on the common certified windows."""
    for ra, rb in zip(a.rows, b.rows):
        for x, y in zip(ra, rb):
            if not x.agrees_with(y, require_overlap=require_overlap):
                return False
    return True


# ----------------------------------------------------------------- gauge action
def qgauge(v: LoopMatrix, L: LoopMatrix, v_inverse: LoopMatrix | None = None) -> LoopMatrix:
    """The q-gauge action (v, L) -> v^tau . L . v^(-1)."""
    vinv = v_inverse if v_inverse is not None else v.inverse()
    return v.tau() @ L @ vinv


# ------------------------------------------------------------------- coxeter rep
def coxeter_rep(n: int, field: CycloField | None = None) -> LoopMatrix:
    """The signed-cycle SL(n) representative (the display with -1 above
    the diagonal and +1 in the bottom-left corner).

    Its inverse conjugates diagonals downward:
    rep^-1 . diag(a_1,...,a_n) . rep = diag(a_n, a_1, ..., a_{n-1}).
    """
    if n < 2:
        raise ShapeError("coxeter_rep needs n >= 2")
    f = field or CycloField(1)
    zero = LaurentSeries.zero(f)
    one = LaurentSeries.constant(f, 1)
    rows = [[zero] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = -one
    rows[n - 1][0] = one
    return LoopMatrix(f, rows)


# ------------------------------------------------------------------- membership
def is_in_N(L: LoopMatrix) -> bool:
    return L.is_unitriangular(lower=True)


def is_in_Nbar(L: LoopMatrix) -> bool:
    return L.is_unitriangular(lower=False)


def is_in_Nprime(L: LoopMatrix) -> bool:
    n = L.n
    if not is_in_N(L):
        return False
    for i in range(n - 1):
        for j in range(i):
            if not L.rows[i][j].is_zero_exact():
                return False
    return True


def is_in_Mcell(L: LoopMatrix) -> bool:
    n = L.n
    for i in range(n):
        for j in range(i + 2, n):
            if not L.rows[i][j].is_zero_exact():
                return False
        if i + 1 < n and not _is_minus_one(L.rows[i][i + 1]):
            return False
    return True


def is_in_Bbar(L: LoopMatrix) -> bool:
    """The opposite Borel: upper triangular with invertible diagonal."""
    n = L.n
    for i in range(n):
        for j in range(i):
            if not L.rows[i][j].is_zero_exact():
                return False
        d = L.rows[i][i]
        if d.window_empty() or not d.exact_below or not d.coeffs:
            return False
    return True


def ensure_mcell(L: LoopMatrix) -> None:
    if not is_in_Mcell(L):
        raise ShapeError("matrix is not in the companion cell shape")


def det_is_one(L: LoopMatrix) -> bool:
    d = L.det()
    if d.window_empty():
        raise WindowError("determinant window is empty")
    one = QRat.one(L.field)
    for m in range(d.lo, d.hi + 1):
        want = one if m == 0 else QRat.zero(L.field)
        if d.coeff(m) != want:
            return False
    if d.is_exact() and 0 not in d.coeffs:
        return False
    return True


# ------------------------------------------------------------ scalar operators
@dataclass
class CanonicalOperator:
    """An n-th order scalar q-difference operator via its companion matrix.

    Encodes tau^n phi + u_{n-1} tau^{n-1} phi + ... + u_1 tau phi + phi = 0.
    """

    field: CycloField
    us: list  # u_1 ... u_{n-1} as LaurentSeries

    @property
    def n(self) -> int:
        return len(self.us) + 1

    def matrix(self) -> LoopMatrix:
        n = self.n
        m = coxeter_rep(n, self.field)
        rows = [list(r) for r in m.rows]
        for j, u in enumerate(self.us, start=1):
            rows[n - 1][j] = u
        return LoopMatrix(self.field, rows)

    def coefficients(self) -> list:
        """Coefficients of phi, tau phi, ..., tau^n phi."""
        one = LaurentSeries.constant(self.field, 1)
        return [one] + list(self.us) + [one]

    def agrees_with(self, other: "CanonicalOperator") -> bool:
        return all(a.agrees_with(b) for a, b in zip(self.us, other.us))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "conductor": self.field.H,
            "u": [u.to_json() for u in self.us],
        }

    @staticmethod
    def from_json(data: dict) -> "CanonicalOperator":
        field = CycloField(int(data.get("conductor", 1)))
        return CanonicalOperator(
            field, [LaurentSeries.from_json(u, field) for u in data["u"]]
        )


def scalar_operator(c: CanonicalOperator) -> list:
    return c.coefficients()


def companion_from_scalar(field: CycloField, coeffs: list) -> CanonicalOperator:
    """Inverse of scalar_operator; endpoints must be exactly 1."""
    if len(coeffs) < 3:
        raise ShapeError("scalar operator needs order >= 2")
    if not (_is_one(coeffs[0]) and _is_one(coeffs[-1])):
        raise ShapeError("scalar operator must have unit end coefficients")
    return CanonicalOperator(field, list(coeffs[1:-1]))


def companion_from_matrix(L: LoopMatrix) -> CanonicalOperator:
    n = L.n
    if not is_in_Mcell(L):
        raise ShapeError("not a companion matrix")
    # rows 0..n-2 must be exactly the coxeter pattern; bottom-left exactly 1
    for i in range(n - 1):
        for j in range(n):
            e = L.rows[i][j]
            if j == i + 1:
                continue
            if not e.is_zero_exact():
                raise ShapeError("companion rows must vanish off the superdiagonal")
    if not _is_one(L.rows[n - 1][0]):
        raise ShapeError("companion matrix must have unit bottom-left entry")
    return CanonicalOperator(L.field, [L.rows[n - 1][j] for j in range(1, n)])
