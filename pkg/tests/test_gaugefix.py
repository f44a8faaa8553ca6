import random

import pytest

from qws.cyclotomic import CycloField
from qws.errors import ShapeError
from qws.gaugefix import (
    coxeter_rep_inv,
    factor_cell,
    gauge_fix,
    gauge_fix_elimination,
    gauge_fix_recursive,
)
from qws.linalg import kernel
from qws.loop import (
    CanonicalOperator,
    LoopMatrix,
    coxeter_rep,
    is_in_N,
    is_in_Nprime,
    matrix_agrees,
    qgauge,
)
from qws.qfield import QRat
from qws.sampling import random_mcell, random_polynomial_series, random_unipotent
from qws.series import LaurentSeries

F1 = CycloField(1)


def consts(rows):
    return LoopMatrix.from_scalars(F1, rows)


def test_coxeter_rep_inverse():
    for n in (2, 3, 4):
        rep = coxeter_rep(n)
        inv = coxeter_rep_inv(n, F1)
        assert matrix_agrees(rep @ inv, LoopMatrix.identity(F1, n))


def test_factor_cell_round_trip():
    rng = random.Random(9)
    for n in (2, 3, 4):
        L = random_mcell(F1, n, rng)
        ubar, utilde = factor_cell(L)
        vtilde = coxeter_rep(n, F1) @ ubar @ coxeter_rep_inv(n, F1)
        assert is_in_N(utilde)
        rebuilt = vtilde @ coxeter_rep(n, F1) @ utilde
        assert matrix_agrees(rebuilt, L)
        # vtilde lands in the bottom-row subgroup, valuewise
        for i in range(n - 1):
            for j in range(n):
                entry = vtilde.rows[i][j]
                want = 1 if i == j else 0
                assert all(
                    entry.coeff(m) == (want if m == 0 else 0)
                    for m in range(entry.lo, entry.hi + 1)
                )


def test_companion_fixed_by_gauge_fix():
    us = [LaurentSeries.from_terms(F1, {0: 5, 1: 2}),
          LaurentSeries.from_terms(F1, {-1: 3})]
    L = CanonicalOperator(F1, us).matrix()
    for method in ("elimination", "recursive"):
        res = gauge_fix(L, method)
        assert matrix_agrees(res.gauge, LoopMatrix.identity(F1, 3))
        assert res.canonical.agrees_with(CanonicalOperator(F1, us))


def test_constant_two_by_two_example():
    L = consts([[-1, -1], [0, -1]])
    res = gauge_fix_elimination(L)
    assert matrix_agrees(res.gauge, consts([[1, 0], [1, 1]]))
    assert res.canonical.us[0].coeff(0) == -2
    res2 = gauge_fix_recursive(L)
    assert matrix_agrees(res2.gauge, res.gauge)
    assert res2.canonical.agrees_with(res.canonical)


def test_gauge_property():
    rng = random.Random(10)
    for n in (2, 3, 4):
        L = random_mcell(F1, n, rng)
        res = gauge_fix_elimination(L)
        out = qgauge(res.gauge, L)
        assert matrix_agrees(out, res.canonical.matrix(), require_overlap=True)


def test_two_algorithms_agree():
    rng = random.Random(11)
    for n in (2, 3, 4):
        for _ in range(4):
            L = random_mcell(F1, n, rng)
            a = gauge_fix_elimination(L)
            b = gauge_fix_recursive(L)
            assert matrix_agrees(a.gauge, b.gauge)
            assert a.canonical.agrees_with(b.canonical)


def test_orbit_invariance():
    rng = random.Random(12)
    for n in (2, 3):
        L = random_mcell(F1, n, rng)
        base = gauge_fix_elimination(L).canonical
        for _ in range(3):
            w = random_unipotent(F1, n, rng)
            moved = gauge_fix_elimination(qgauge(w, L)).canonical
            assert base.agrees_with(moved)


def test_gauge_of_pregauged_composes():
    # the gauge of w.L is n w^(-1) when n is the gauge of L
    rng = random.Random(13)
    n_size = 3
    L = random_mcell(F1, n_size, rng)
    w = random_unipotent(F1, n_size, rng)
    n_of_l = gauge_fix_elimination(L).gauge
    n_moved = gauge_fix_elimination(qgauge(w, L)).gauge
    assert matrix_agrees(n_moved, n_of_l @ w.inverse())


def test_freeness_stabilizer_kernel():
    # within window-supported gauges, only the identity stabilizes L
    rng = random.Random(14)
    span = 1
    for n in (2, 3):
        L = random_mcell(F1, n, rng, lo=-1, hi=1)
        unknowns = [(i, j, m) for i in range(n) for j in range(i)
                    for m in range(-span, span + 1)]
        rows = []
        modes = range(-span - 2, span + 3)
        for a in range(n):
            for b in range(n):
                for t in modes:
                    row = []
                    for (i, j, m) in unknowns:
                        # coefficient of w_{ij,m} in (w^tau L - L w)[a][b] at mode t
                        acc = QRat.zero(F1)
                        if i == a:
                            c = L.rows[j][b].coeffs.get(t - m)
                            if c is not None:
                                acc = acc + c * QRat.q_power(F1, m)
                        if j == b:
                            c = L.rows[a][i].coeffs.get(t - m)
                            if c is not None:
                                acc = acc - c
                        row.append(acc)
                    rows.append(row)
        null = kernel(rows, QRat.zero(F1), QRat.one(F1))
        assert null == []


def test_non_cell_input_rejected():
    bad = consts([[1, 2], [3, 4]])
    with pytest.raises(ShapeError):
        gauge_fix_elimination(bad)


def test_non_unimodular_rejected():
    # companion-cell shape but det = 3: rejected, never silently adjusted
    bad = consts([[1, -1], [1, 2]])
    with pytest.raises(ShapeError):
        gauge_fix_elimination(bad)


def test_truncated_input_windows():
    # the Miura-shaped input [[L1(z), -1], [0, L2(qz)]] with L1 L2(q.) = 1:
    # gauge is [[1,0],[-L1,1]] and u_1(z) = L1(qz) + L2(qz)
    rng = random.Random(15)
    lam1 = random_polynomial_series(F1, rng, 0, 2, unit_lowest=True)
    lam2_at_qz = lam1.inverse(top=12)
    one = LaurentSeries.constant(F1, 1)
    L = LoopMatrix(F1, [[lam1, -one], [LaurentSeries.zero(F1), lam2_at_qz]])
    res = gauge_fix_elimination(L)
    assert res.gauge.rows[1][0].agrees_with(-lam1)
    u1 = res.canonical.us[0]
    assert not u1.window_empty()
    assert u1.agrees_with(lam1.tau(1) + lam2_at_qz)
