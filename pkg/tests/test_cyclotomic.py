import random
from fractions import Fraction

import pytest

from qws.cyclotomic import (
    Cyclo,
    CycloField,
    cyclotomic_polynomial,
    embed,
    euler_phi,
    rational_sqrt,
)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_euler_phi():
    assert [euler_phi(h) for h in (1, 2, 3, 4, 5, 6, 8, 12, 30)] == [
        1, 1, 2, 2, 4, 2, 4, 4, 8,
    ]


def test_zeta4_squared_is_minus_one():
    f = CycloField(4)
    i = f.zeta(1)
    assert i * i == f.from_rational(-1)


def test_zeta_order():
    for H in (3, 5, 6, 8, 12):
        f = CycloField(H)
        z = f.zeta(1)
        p = f.one
        for k in range(1, H):
            p = p * z
            assert (p == f.one) == (k % H == 0)
        assert p * z == f.one


def test_root_of_unity_sum():
    # sum of all H-th roots of unity vanishes for H > 1
    for H in (3, 4, 5, 6, 12):
        f = CycloField(H)
        total = f.zero
        for k in range(H):
            total = total + f.zeta(k)
        assert total.is_zero()


def test_average_of_one_minus_roots():
    # (1/n) * sum_{k=1}^{n-1} (1 - w^k) = 1 at n = 3
    n = 3
    f = CycloField(n)
    acc = f.zero
    for k in range(1, n):
        acc = acc + (f.one - f.zeta(k))
    assert acc * Fraction(1, n) == f.one


def test_inverse_random():
    rng = random.Random(1)
    for H in (1, 3, 4, 5, 8, 12):
        f = CycloField(H)
        for _ in range(15):
            c = Cyclo(f, tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                               for _ in range(f.degree)))
            if c.is_zero():
                continue
            assert c * c.inverse() == f.one


def test_field_axioms_random():
    rng = random.Random(2)
    f = CycloField(12)

    def rand():
        return Cyclo(f, tuple(Fraction(rng.randint(-3, 3)) for _ in range(f.degree)))

    for _ in range(25):
        a, b, c = rand(), rand(), rand()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_embedding():
    f3, f12 = CycloField(3), CycloField(12)
    w = f3.zeta(1)
    lifted = embed(w, f12)
    assert lifted == f12.zeta(4)
    assert embed(w + f3.one, f12) == f12.zeta(4) + f12.one
    with pytest.raises(ValueError):
        embed(f12.zeta(1), f3)


def test_mixed_conductor_arithmetic():
    a = CycloField(4).zeta(1)
    b = CycloField(3).zeta(1)
    prod = a * b
    assert prod.field.H == 12
    assert prod == CycloField(12).zeta(3 + 4)


def test_rational_sqrt():
    for r in (2, 3, 5, -1, -3, 6, Fraction(9, 4), Fraction(-2, 3), 49, 7):
        f, s = rational_sqrt(r)
        assert s * s == f.from_rational(r)


def test_division_by_zero():
    f = CycloField(5)
    with pytest.raises(ZeroDivisionError):
        f.zero.inverse()
