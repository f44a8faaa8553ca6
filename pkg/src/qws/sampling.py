"""Seeded random generators for property tests and the verification CLI.

Everything is driven by an explicit random.Random instance so runs are
reproducible from a single printed seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .cyclotomic import CycloField
from .loop import LoopMatrix, coxeter_rep
from .series import LaurentSeries


def random_fraction(rng: random.Random, span: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 2))


def random_polynomial_series(
    field: CycloField,
    rng: random.Random,
    lo: int = -2,
    hi: int = 2,
    max_terms: int = 3,
    unit_lowest: bool = False,
) -> LaurentSeries:
    """Random exact Laurent polynomial supported inside [lo, hi]."""
    modes = rng.sample(range(lo, hi + 1), k=rng.randint(1, max_terms))
    terms = {}
    for m in modes:
        c = random_fraction(rng)
        if c:
            terms[m] = c
    if unit_lowest:
        m0 = min(modes)
        c = random_fraction(rng)
        terms[m0] = c if c else Fraction(1)
    if not terms:
        terms[rng.randint(lo, hi)] = Fraction(1)
    return LaurentSeries.from_terms(field, terms)


def random_unipotent(
    field: CycloField, n: int, rng: random.Random, lo: int = -2, hi: int = 2,
    sparse: bool = True,
) -> LoopMatrix:
    m = LoopMatrix.identity(field, n)
    for i in range(n):
        for j in range(i):
            if sparse and rng.random() < 0.35:
                continue
            m.rows[i][j] = random_polynomial_series(field, rng, lo, hi)
    return m


def random_nprime(
    field: CycloField, n: int, rng: random.Random, lo: int = -2, hi: int = 2
) -> LoopMatrix:
    m = LoopMatrix.identity(field, n)
    for j in range(n - 1):
        m.rows[n - 1][j] = random_polynomial_series(field, rng, lo, hi)
    return m


def random_mcell(
    field: CycloField, n: int, rng: random.Random, lo: int = -2, hi: int = 2
) -> LoopMatrix:
    """Random element of the cell, built as v . s^(-1) . u (so det = 1)."""
    v = random_nprime(field, n, rng, lo, hi)
    u = random_unipotent(field, n, rng, lo, hi)
    return v @ coxeter_rep(n, field) @ u


def random_miura_lambdas(
    field: CycloField, n: int, rng: random.Random,
    lo: int = -2, hi: int = 2, top_extra: int = 10,
) -> list[LaurentSeries]:
    """Lambda_1..Lambda_n with the product constraint solved for the last one.

    The first n-1 are random Laurent polynomials with invertible lowest
    term; Lambda_n is the truncated series forced by
    Lambda_1(z) Lambda_2(qz) ... Lambda_n(q^(n-1) z) = 1.
    """
    lams = [
        random_polynomial_series(field, rng, lo, hi, unit_lowest=True)
        for _ in range(n - 1)
    ]
    prod = None
    for i, lam in enumerate(lams):
        t = lam.tau(i)
        prod = t if prod is None else prod * t
    if prod is None:
        lam_n = LaurentSeries.constant(field, 1)
    else:
        v = prod.valuation()
        inv = prod.inverse(top=-v + top_extra + 2 * (hi - lo) * n)
        lam_n = inv.tau(-(n - 1))
    return lams + [lam_n]
