import random
from fractions import Fraction

import pytest

from qws.cyclotomic import CycloField
from qws.errors import WindowError
from qws.qfield import QRat
from qws.series import LaurentSeries

F1 = CycloField(1)


def poly(terms):
    return LaurentSeries.from_terms(F1, terms)


def test_tau_single_mode():
    x = poly({2: 5})
    t = x.tau()
    assert t.coeff(2) == QRat.q_power(F1, 2) * 5


def test_tau_delta():
    d = LaurentSeries.delta(F1, -2, 2)
    t = d.tau()
    for m in range(-2, 3):
        assert t.coeff(m) == QRat.q_power(F1, m)
    assert not t.exact_below and not t.exact_above


def test_tau_inverse_round_trip():
    x = poly({-2: 3, 0: Fraction(1, 2), 1: -1})
    assert x.tau(1).tau(-1) == x


def test_product_of_polynomials():
    x = poly({0: 1, 1: 1})
    y = poly({0: 1, 1: -1})
    p = x * y
    assert p.is_exact()
    assert p.coeff(0) == 1 and p.coeff(2) == -1 and p.coeff(1).is_zero()


def test_product_window_delta_times_poly():
    # delta on [-3,3] times (z + z^-1): certified window shrinks by the spread
    d = LaurentSeries.delta(F1, -3, 3)
    p = poly({-1: 1, 1: 1})
    prod = d * p
    assert (prod.lo, prod.hi) == (-2, 2)
    for m in range(-2, 3):
        assert prod.coeff(m) == 2


def test_truncated_product_certification():
    # exact-below truncations multiply with the classical certified top
    x = LaurentSeries(F1, 0, 4, {0: QRat.one(F1), 3: QRat.one(F1)}, True, False)
    y = LaurentSeries(F1, 1, 3, {1: QRat.one(F1)}, True, False)
    p = x * y
    assert p.exact_below and not p.exact_above
    assert (p.lo, p.hi) == (1, 3)  # top = min(4+1, 3+0)
    assert p.coeff(1) == 1


def test_sum_certification():
    x = LaurentSeries(F1, -1, 5, {0: QRat.one(F1)}, False, False)
    y = poly({-3: 2, 2: 7})
    s = x + y
    assert (s.lo, s.hi) == (-1, 5)
    assert s.coeff(2) == 7 and s.coeff(0) == 1
    with pytest.raises(WindowError):
        s.coeff(-3)


def test_unknown_modes_raise():
    d = LaurentSeries.delta(F1, -1, 1)
    with pytest.raises(WindowError):
        d.coeff(2)


def test_inverse_of_unit_polynomial():
    x = poly({0: 1, 1: 1})
    inv = x.inverse(top=6)
    prod = x * inv
    for m in range(0, 6):
        assert prod.coeff(m) == (1 if m == 0 else 0)
    assert inv.coeff(3) == -1


def test_inverse_with_valuation():
    x = poly({-2: 2, -1: 1})
    inv = x.inverse(top=5)
    assert inv.valuation() == 2
    prod = x * inv
    assert prod.coeff(0) == 1
    for m in range(1, 3):
        assert prod.coeff(m).is_zero()


def test_inverse_of_monomial_is_exact():
    x = poly({3: Fraction(2, 5)})
    inv = x.inverse()
    assert inv.is_exact()
    assert inv.coeff(-3) == Fraction(5, 2)


def test_inverse_of_truncated():
    exact = poly({0: 1, 1: -1})
    full = exact.inverse(top=10)
    trunc = LaurentSeries(F1, 0, 4, dict(exact.coeffs), True, False)
    inv = trunc.inverse()
    assert inv.hi == 4
    assert full.agrees_with(inv)


def test_res_pairing_exact():
    x = poly({1: 2})
    y = poly({-1: 3})
    assert x.res_pair(y) == 6
    assert y.res_pair(x) == 6


def test_res_pairing_uncertified():
    d = LaurentSeries.delta(F1, -2, 2)
    with pytest.raises(WindowError):
        d.res_pair(d)


def test_res_pairing_tau_invariance():
    rng = random.Random(4)
    for _ in range(10):
        x = poly({m: rng.randint(-3, 3) for m in range(-3, 4)})
        y = poly({m: rng.randint(-3, 3) for m in range(-3, 4)})
        assert x.tau().res_pair(y.tau()) == x.res_pair(y)


def test_json_round_trip():
    f = CycloField(4)
    w = QRat.from_cyclo(f.zeta(1))
    x = LaurentSeries(
        f, -2, 3,
        {-1: w / (QRat.one(f) + QRat.q_power(f, 1)), 2: QRat.from_rational(f, 7)},
        True, False,
    )
    data = x.to_json()
    back = LaurentSeries.from_json(data)
    assert back == x
    assert back.to_json() == data


def test_scale_by_zero_is_exact():
    d = LaurentSeries.delta(F1, -1, 1)
    z = d.scale(0)
    assert z.is_zero_exact()
