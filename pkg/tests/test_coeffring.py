import random
from fractions import Fraction

import mpmath
import pytest

from bocrs.algebra import SparsePoly
from bocrs.coeffring import (
    HB_VARS,
    PROVENANCE,
    InvalidConstants,
    c_n_numeric,
    c_n_symbolic,
    check_divisibility,
    cross_check_substitution,
)

P = SparsePoly.var(HB_VARS, "pi2")
C = SparsePoly.var(HB_VARS, "C")
L = SparsePoly.var(HB_VARS, "L")


def test_low_orders():
    assert c_n_symbolic(0) == 1
    assert c_n_symbolic(1) == 4 * C * L
    assert c_n_symbolic(2) == 2 * C ** 2 * P + 24 * C ** 2 * L ** 2 + 96 * C ** 3 * L


def test_divisibility():
    for n in range(61):
        h = c_n_symbolic(n)
        assert check_divisibility(h, n).ok
        assert all(e[0] <= n // 2 for e in h.terms)


def test_divisibility_injected_witness():
    h = c_n_symbolic(2) + P
    chk = check_divisibility(h, 2)
    assert not chk.ok and chk.witness["monomial"] == [1, 0, 0]


def test_cross_check_examples():
    assert cross_check_substitution(2, [(1, 1, 0)]).ok
    assert c_n_symbolic(2).evaluate((1, 1, 0)) == 2
    assert c_n_symbolic(1).evaluate((Fraction(3, 7), 1, Fraction(-5, 2))) == -10
    assert cross_check_substitution(0, [(9, 2, 4)]).ok


def test_cross_check_random():
    rng = random.Random(1)
    pts = [(Fraction(rng.randint(-99, 99), rng.randint(1, 20)), Fraction(rng.randint(1, 50), rng.randint(1, 9)),
            Fraction(rng.randint(-99, 99), rng.randint(1, 20))) for _ in range(10)]
    for n in range(16):
        assert cross_check_substitution(n, pts).ok


def test_cross_check_rejects_zero_C():
    with pytest.raises(InvalidConstants):
        cross_check_substitution(1, [(1, 0, 1)])


def test_numeric():
    v = c_n_numeric(1, "1", "1")
    assert abs(v.mid - 4) <= v.radius + mpmath.mpf(2) ** -120
    v = c_n_numeric(2, "1", "0", pi2="1")
    assert v.mid == 2
    assert c_n_numeric(0, "0.3", "7").mid == 1
    out = c_n_numeric(3, "0.5", "0.25").to_json()
    assert out["provenance"] == PROVENANCE


def test_numeric_uses_pi_squared():
    v = c_n_numeric(2, "1", "0", prec=200)
    with mpmath.workprec(200):
        assert abs(v.mid - 2 * mpmath.pi ** 2) <= v.radius + mpmath.mpf(2) ** -190


def test_numeric_rejects_zero_C():
    with pytest.raises(InvalidConstants):
        c_n_numeric(1, "0", "1")
