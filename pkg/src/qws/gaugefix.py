"""Reduction of companion-cell loop matrices to canonical form.

Two independent algorithms compute the unique lower-unipotent gauge n
with n^tau . L . n^(-1) a companion matrix:

* ``gauge_fix_elimination`` forces the rows of n directly: row 1 is
  e_1 and each next row is -tau(previous row) . L, which the cell shape
  keeps unipotent; the scalar coefficients then come from one
  triangular solve against the last row.

* ``gauge_fix_recursive`` runs the graded orbit recursion: unknowns are
  one-parameter subgroups indexed by (height k, orbit position p) of
  the Coxeter orbits, solved in that order through repeated
  N' s^(-1) N factorizations.

Uniqueness makes exact agreement of the two a meaningful oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeError, WindowError
from .loop import (
    CanonicalOperator,
    LoopMatrix,
    coxeter_rep,
    ensure_mcell,
    is_in_N,
    matrix_agrees,
)
from .qfield import QRat
from .roots import build_root_system, coxeter_data, coxeter_orbits
from .series import LaurentSeries


@dataclass
class GaugeFixResult:
    gauge: LoopMatrix
    canonical: CanonicalOperator


def coxeter_rep_inv(n: int, field) -> LoopMatrix:
    """Inverse of coxeter_rep: -1 on the subdiagonal, +1 top-right."""
    zero = LaurentSeries.zero(field)
    one = LaurentSeries.constant(field, 1)
    rows = [[zero] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = -one
    rows[0][n - 1] = one
    return LoopMatrix(field, rows)


def _row_times_matrix(row, L: LoopMatrix):
    n = L.n
    out = []
    for j in range(n):
        acc = None
        for k in range(n):
            a, b = row[k], L.rows[k][j]
            if a.is_zero_exact() or b.is_zero_exact():
                continue
            term = a * b
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else LaurentSeries.zero(L.field))
    return out


def _series_is_one_valued(s: LaurentSeries) -> bool:
    if s.window_empty():
        raise WindowError("cannot verify a unit entry on an empty window")
    one = QRat.one(s.field)
    for m in range(s.lo, s.hi + 1):
        if s.coeff(m) != (one if m == 0 else QRat.zero(s.field)):
            return False
    if s.is_exact() and 0 not in s.coeffs:
        return False
    return True


def _series_is_zero_valued(s: LaurentSeries) -> bool:
    if s.is_zero_exact():
        return True
    if s.window_empty():
        raise WindowError("cannot verify a vanishing entry on an empty window")
    return not s.coeffs


def gauge_fix_elimination(L: LoopMatrix) -> GaugeFixResult:
    """Directly solve the companion-form conditions row by row."""
    ensure_mcell(L)
    n = L.n
    field = L.field
    one = LaurentSeries.constant(field, 1)
    zero = LaurentSeries.zero(field)
    rows = [[one if j == 0 else zero for j in range(n)]]
    for _ in range(n - 1):
        prev = [s.tau() for s in rows[-1]]
        nxt = [-s for s in _row_times_matrix(prev, L)]
        rows.append(nxt)
    # the cell shape forces the unit staircase; normalize it to exact form
    for i, row in enumerate(rows):
        if not _series_is_one_valued(row[i]):
            raise ShapeError("row recursion left the unipotent cell")
        row[i] = one
        for j in range(i + 1, n):
            if not _series_is_zero_valued(row[j]):
                raise ShapeError("row recursion left the unipotent cell")
            row[j] = zero
    gauge = LoopMatrix(field, rows)
    assert is_in_N(gauge)

    w = _row_times_matrix([s.tau() for s in rows[-1]], L)
    coeffs = [None] * n
    for j in range(n - 1, -1, -1):
        c = w[j]
        coeffs[j] = c
        if c.is_zero_exact():
            continue
        w = [wx - c * rx for wx, rx in zip(w, rows[j])]
    for j in range(n):
        if not _series_is_zero_valued(w[j]):
            raise ShapeError("companion conditions are inconsistent")
    if not _series_is_one_valued(coeffs[0]):
        raise ShapeError("input is not unimodular: companion corner is not 1")
    return GaugeFixResult(gauge, CanonicalOperator(field, coeffs[1:]))


def factor_cell(F: LoopMatrix):
    """Factor F in the cell as vtilde . s^(-1) . utilde.

    Returns (ubar, utilde) where ubar = s(vtilde) is upper unitriangular
    and utilde is lower unitriangular, from the unipotent-by-unipotent
    factorization of s . F.  Entries forced by the cell structure are
    verified on their certified windows and normalized to exact 0/1.
    """
    n = F.n
    field = F.field
    G = coxeter_rep_inv(n, field) @ F
    one = LaurentSeries.constant(field, 1)
    zero = LaurentSeries.zero(field)
    u_rows: list = [None] * n
    ubar_rows = [[one if i == j else zero for j in range(n)] for i in range(n)]

    def normalize(row, i):
        if not _series_is_one_valued(row[i]):
            raise ShapeError("factorization left the cell (diagonal)")
        row[i] = one
        for j in range(i + 1, n):
            if not _series_is_zero_valued(row[j]):
                raise ShapeError("factorization left the cell (upper part)")
            row[j] = zero
        return row

    u_rows[n - 1] = normalize(list(G.rows[n - 1]), n - 1)
    for i in range(n - 2, -1, -1):
        res = list(G.rows[i])
        for jp in range(n - 1, i, -1):
            c = res[jp]
            ubar_rows[i][jp] = c
            if not c.is_zero_exact():
                res = [rx - c * ux for rx, ux in zip(res, u_rows[jp])]
        u_rows[i] = normalize(res, i)
    return LoopMatrix(field, ubar_rows), LoopMatrix(field, u_rows)


def _root_position(root) -> tuple[int, int]:
    """Matrix slot of a positive A-type root (consecutive-run vector)."""
    ones = [i for i, x in enumerate(root) if x == 1]
    assert ones and all(x in (0, 1) for x in root)
    assert ones == list(range(ones[0], ones[-1] + 1))
    return ones[-1] + 1, ones[0]


def _level_entries(u: LoopMatrix, k: int):
    """Entries on subdiagonal k after peeling lower graded levels."""
    n = u.n
    field = u.field
    W = u
    for lev in range(1, k):
        one = LaurentSeries.constant(field, 1)
        zero = LaurentSeries.zero(field)
        rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
        for i in range(lev, n):
            rows[i][i - lev] = W.rows[i][i - lev]
        X = LoopMatrix(field, rows)
        W = X.inverse() @ W
    return {(i, i - k): W.rows[i][i - k] for i in range(k, n)}


def gauge_fix_recursive(L: LoopMatrix) -> GaugeFixResult:
    """Graded orbit recursion through the cell factorization."""
    ensure_mcell(L)
    n = L.n
    field = L.field
    if n < 2:
        raise ShapeError("need n >= 2")
    cd = coxeter_data(build_root_system("A", n - 1))
    orbits = coxeter_orbits(cd)
    h = cd.h
    assert h == n

    one = LaurentSeries.constant(field, 1)
    zero = LaurentSeries.zero(field)
    gauge = LoopMatrix.identity(field, n)
    for k in range(1, n):
        orbit = orbits[k - 1]
        for p in range(h - k):
            root = orbit[p]
            assert sum(root) == k, "orbit ordering violates the height lemma"
            pos = _root_position(root)
            F = gauge.tau() @ L
            _, utilde = factor_cell(F)
            x = _level_entries(utilde, k)[pos]
            rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
            rows[pos[0]][pos[1]] = x
            gauge = gauge @ LoopMatrix(field, rows)

    F = gauge.tau() @ L
    ubar, utilde = factor_cell(F)
    if not matrix_agrees(utilde, gauge):
        raise ShapeError("graded recursion did not reach its fixed point")
    us = [ubar.rows[0][j] for j in range(1, n)]
    return GaugeFixResult(gauge, CanonicalOperator(field, us))


def gauge_fix(L: LoopMatrix, method: str = "elimination") -> GaugeFixResult:
    if method == "elimination":
        return gauge_fix_elimination(L)
    if method == "recursive":
        return gauge_fix_recursive(L)
    raise ValueError(f"unknown method {method!r}")
