import random
from fractions import Fraction

import pytest

from qws.cyclotomic import CycloField
from qws.errors import ShapeError
from qws.loop import (
    CanonicalOperator,
    LoopMatrix,
    companion_from_matrix,
    companion_from_scalar,
    coxeter_rep,
    det_is_one,
    is_in_Bbar,
    is_in_Mcell,
    is_in_N,
    is_in_Nprime,
    matrix_agrees,
    qgauge,
    scalar_operator,
)
from qws.sampling import random_mcell, random_unipotent
from qws.series import LaurentSeries

F1 = CycloField(1)


def consts(rows):
    return LoopMatrix.from_scalars(F1, rows)


def test_coxeter_rep_small():
    assert coxeter_rep(2).rows[0][1].coeff(0) == -1
    assert coxeter_rep(2).rows[1][0].coeff(0) == 1
    m3 = coxeter_rep(3)
    expected = [[0, -1, 0], [0, 0, -1], [1, 0, 0]]
    assert matrix_agrees(m3, consts(expected))


def test_coxeter_rep_power_is_sign():
    for n in (2, 3, 4, 5):
        m = coxeter_rep(n)
        p = m
        for _ in range(n - 1):
            p = p @ m
        sign = (-1) ** (n - 1)
        assert matrix_agrees(p, consts([[sign if i == j else 0 for j in range(n)]
                                        for i in range(n)]))


def test_coxeter_rep_diagonal_conjugation():
    # rep^(-1) . diag(a,b,c) . rep cycles the entries downward
    rep = coxeter_rep(3)
    d = consts([[5, 0, 0], [0, 7, 0], [0, 0, 11]])
    conj = rep.inverse() @ d @ rep
    assert matrix_agrees(conj, consts([[11, 0, 0], [0, 5, 0], [0, 0, 7]]))


def test_qgauge_identity():
    rng = random.Random(5)
    L = random_mcell(F1, 3, rng)
    assert matrix_agrees(qgauge(LoopMatrix.identity(F1, 3), L), L)


def test_qgauge_inverse_action():
    rng = random.Random(6)
    L = random_mcell(F1, 2, rng)
    v = random_unipotent(F1, 2, rng)
    back = qgauge(v.inverse(), qgauge(v, L))
    assert matrix_agrees(back, L)


def test_qgauge_constant_example():
    # v = [[1,0],[1,1]], L = [[-1,-1],[0,-1]]: v^tau L v^(-1) lands on the
    # companion matrix with u_1 = -2 (matches the gauge-fixing example)
    v = consts([[1, 0], [1, 1]])
    L = consts([[-1, -1], [0, -1]])
    out = qgauge(v, L)
    assert matrix_agrees(out, consts([[0, -1], [1, -2]]))


def test_qgauge_preserves_cell_and_det():
    rng = random.Random(7)
    for n in (2, 3):
        L = random_mcell(F1, n, rng)
        v = random_unipotent(F1, n, rng)
        out = qgauge(v, L)
        assert det_is_one(out)
        assert det_is_one(L)
        # value-level cell shape: superdiagonal -1, zero above
        for i in range(n):
            for j in range(i + 2, n):
                assert not out.rows[i][j].coeffs
            if i + 1 < n:
                e = out.rows[i][i + 1]
                assert e.coeff(0) == -1
                assert all(e.coeff(m).is_zero() for m in range(e.lo, e.hi + 1)
                           if m != 0)


def test_membership():
    assert is_in_N(LoopMatrix.identity(F1, 3))
    assert is_in_Nprime(LoopMatrix.identity(F1, 3))
    u = consts([[1, 0, 0], [0, 1, 0], [4, 5, 1]])
    assert is_in_Nprime(u) and is_in_N(u)
    full = consts([[1, 0, 0], [2, 1, 0], [4, 5, 1]])
    assert is_in_N(full) and not is_in_Nprime(full)
    bad = consts([[0, -1, 3], [0, 0, -1], [1, 2, 3]])
    assert not is_in_Mcell(bad)
    good = consts([[7, -1, 0], [3, 2, -1], [1, 2, 3]])
    assert is_in_Mcell(good)
    upper = consts([[2, 5, 1], [0, 1, 3], [0, 0, 4]])
    assert is_in_Bbar(upper) and not is_in_Bbar(full)


def test_canonical_operator_round_trip():
    us = [LaurentSeries.from_terms(F1, {0: 3, 1: -1}),
          LaurentSeries.from_terms(F1, {-1: Fraction(1, 2)})]
    c = CanonicalOperator(F1, us)
    assert is_in_Mcell(c.matrix())
    coeffs = scalar_operator(c)
    back = companion_from_scalar(F1, coeffs)
    assert back.agrees_with(c)
    again = companion_from_matrix(c.matrix())
    assert again.agrees_with(c)


def test_companion_from_matrix_rejects_bad_corner():
    m = coxeter_rep(3)
    rows = [list(r) for r in m.rows]
    rows[2][0] = LaurentSeries.constant(F1, 2)
    with pytest.raises(ShapeError):
        companion_from_matrix(LoopMatrix(F1, rows))


def test_scalar_recursion_psi():
    # for tau psi + L psi = 0 with companion L, psi_k = tau^(k-1) psi_1
    rng = random.Random(8)
    us = [LaurentSeries.from_terms(F1, {m: rng.randint(-2, 2) for m in (-1, 0, 1)})
          for _ in range(2)]
    L = CanonicalOperator(F1, us).matrix()
    phi = LaurentSeries.from_terms(F1, {m: rng.randint(-2, 2) for m in (-2, 0, 2)})
    psi = [phi, phi.tau(1), phi.tau(2)]
    # rows 0..n-2 of tau psi + L psi = 0 hold identically
    for i in range(2):
        lhs = psi[i].tau(1)
        acc = None
        for k in range(3):
            if L.rows[i][k].is_zero_exact():
                continue
            t = L.rows[i][k] * psi[k]
            acc = t if acc is None else acc + t
        total = lhs + acc
        assert not total.coeffs  # identically zero on the certified window
