import math
import random
from fractions import Fraction

import pytest
import sympy

from bocrs.algebra import SparsePoly, random_rational
from bocrs.recurrence import (
    XL,
    central_binomial,
    check_bounds,
    u_hat_eval,
    u_tilde,
    u_tilde_fresh,
    u_tilde_seq,
    v_eval,
)

x = SparsePoly.var(XL, "x")
lam = SparsePoly.var(XL, "lambda")


def test_printed_terms():
    assert u_tilde(0) == 1
    assert u_tilde(1) == -2 * lam
    assert u_tilde(2) == 6 * lam ** 2 - 12 * lam + 2 * x
    assert u_tilde(3) == -20 * lam ** 3 + 160 * lam ** 2 - 12 * lam * x - 240 * lam + 40 * x


def test_against_sympy_rational_recurrence():
    # the recurrence run over Q(x, lambda) with sympy, no integer division tricks
    X, L = sympy.symbols("x lambda")
    prev, cur = sympy.Integer(0), sympy.Integer(1)
    for n in range(12):
        assert sympy.Poly(cur, X, L).as_dict() == u_tilde(n).terms
        prev, cur = cur, sympy.expand(((4 * n + 2) * (n * (n + 1) - L) * cur + 4 * n * X * prev) / (n + 1))


def test_central_binomial():
    assert [central_binomial(n) for n in (0, 1, 5)] == [1, 2, 252]
    assert all(central_binomial(n) == math.comb(2 * n, n) for n in range(200))
    with pytest.raises(ValueError):
        central_binomial(-1)


def test_v_eval_examples():
    assert v_eval(Fraction(7), Fraction(5), 1)[1] == -5
    assert v_eval(3, 1, 2)[2] == 0


def test_u_hat_examples():
    for a2, l in [(0, 3), (Fraction(-2, 7), Fraction(1, 9))]:
        assert u_hat_eval(a2, l, 1)[1] == -2 * Fraction(l)
    assert u_hat_eval(3, 1, 2)[2] == 0
    assert all(u == 0 for u in u_hat_eval(0, 0, 30)[1:])


def test_bridges_at_random_points():
    rng = random.Random(11)
    seq = u_tilde_seq(60)
    for _ in range(50):
        a, b = random_rational(rng), random_rational(rng)
        vs = v_eval(a, b, 60)
        us = u_hat_eval(a, b, 60)
        for n in range(61):
            direct = seq[n].evaluate((a, b))
            assert central_binomial(n) * vs[n] == direct
            assert us[n] == direct


def test_fresh_matches_cache():
    assert u_tilde_fresh(40) == u_tilde_seq(40)


def test_check_bounds_pass():
    rep = check_bounds(u_tilde_seq(80))
    assert rep.ok and rep.checked == 81 and rep.violations == []
    assert check_bounds([u_tilde(0)]).ok


def test_check_bounds_injected_witness():
    seq = u_tilde_seq(3)
    seq[3] = seq[3] + x ** 2 * lam ** 2
    rep = check_bounds(seq)
    assert not rep.ok
    assert rep.violations == [{"n": 3, "r": 2, "s": 2, "rules": ["weight", "deg_x"]}]
    assert rep.to_json()["ok"] is False


def test_negative_index():
    with pytest.raises(ValueError):
        u_tilde(-1)
