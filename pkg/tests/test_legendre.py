from fractions import Fraction

import pytest
import sympy

from bocrs.algebra import SparsePoly, poly_substitute_neg_square
from bocrs.legendre import (
    BL,
    T,
    build_M,
    d_continuant,
    default_grid,
    det_fraction_free,
    det_laplace,
    legendre_op,
    operator_on_monomial,
    q_poly,
    q_poly_recurrence,
    verify_backends_agree,
    verify_basis_comparison,
    verify_detM_identity,
)
from bocrs.recurrence import u_tilde

t = SparsePoly.var(T, "t")
beta = SparsePoly.var(BL, "beta")
lam = SparsePoly.var(BL, "lambda")


def _sym(p: SparsePoly, syms):
    return sum(c * sympy.prod(s ** k for s, k in zip(syms, e)) for e, c in p.terms.items())


def test_q_examples():
    assert q_poly(0) == 1
    assert q_poly(2) == 6 * t ** 2 - 2
    assert q_poly(5) == 252 * t ** 5 - 280 * t ** 3 + 60 * t


def test_q_against_sympy_legendre():
    ts = sympy.Symbol("t")
    for n in range(25):
        assert sympy.expand(_sym(q_poly(n), (ts,)) - 2 ** n * sympy.legendre(n, ts)) == 0


def test_explicit_matches_recurrence():
    assert q_poly_recurrence(60) == [q_poly(n) for n in range(61)]


def test_eigen_relation():
    for n in range(41):
        q = q_poly(n)
        assert legendre_op(q) == n * (n + 1) * q


def test_multiplication_identity():
    # 2(2n+1) t Q_n = (n+1) Q_{n+1} + 4n Q_{n-1}, integer-scaled
    qs = q_poly_recurrence(41)
    for n in range(1, 41):
        assert 2 * (2 * n + 1) * t * qs[n] == (n + 1) * qs[n + 1] + 4 * n * qs[n - 1]


def test_parity():
    for n in range(40):
        assert all((e[0] - n) % 2 == 0 for e in q_poly(n).terms)


def test_operator_on_monomial_examples():
    assert operator_on_monomial(0) == [-lam, beta]
    assert operator_on_monomial(1) == [SparsePoly.zero(BL), 2 - lam, beta]
    assert operator_on_monomial(2) == [SparsePoly.const(BL, -2), SparsePoly.zero(BL), 6 - lam, beta]


def test_operator_on_monomial_differentiation_oracle():
    ts, b, l = sympy.symbols("t beta lambda")
    for m in range(8):
        f = ts ** m
        image = sympy.expand(-sympy.diff((1 - ts ** 2) * sympy.diff(f, ts), ts) + b * ts * f - l * f)
        col = operator_on_monomial(m)
        built = sum(_sym(c, (b, l)) * ts ** i for i, c in enumerate(col))
        assert sympy.expand(built - image) == 0


def test_build_M1():
    M = build_M(1)
    assert M == [[-lam, SparsePoly.zero(BL)], [beta, SparsePoly.const(BL, -2)]]
    assert det_fraction_free(M) == 2 * lam


def test_small_dets():
    neg = lambda n: -poly_substitute_neg_square(u_tilde(n))
    assert det_fraction_free(build_M(2)) == -(6 * lam ** 2 - 12 * lam - 2 * beta ** 2)
    d3 = 20 * lam ** 3 - 160 * lam ** 2 - 12 * lam * beta ** 2 + 240 * lam + 40 * beta ** 2
    assert det_fraction_free(build_M(3)) == d3 == neg(3)
    assert det_laplace(build_M(3)) == d3


def test_dets_against_sympy():
    b, l = sympy.symbols("beta lambda")
    for n in range(1, 6):
        M = sympy.Matrix([[_sym(p, (b, l)) for p in row] for row in build_M(n)])
        assert sympy.expand(M.det(method="berkowitz") - _sym(det_fraction_free(build_M(n)), (b, l))) == 0


def test_det_backends_on_simple_matrices():
    one, z = SparsePoly.const(BL, 1), SparsePoly.zero(BL)
    ident = [[one if i == j else z for j in range(3)] for i in range(3)]
    assert det_fraction_free(ident) == 1 and det_laplace(ident) == 1
    diag = [[beta, z, z], [z, lam, z], [z, z, SparsePoly.const(BL, 2)]]
    assert det_fraction_free(diag) == 2 * beta * lam == det_laplace(diag)


def test_d_continuant_examples():
    assert d_continuant(1, 0, 5) == -5
    assert d_continuant(2, 0, 1) == -1
    assert d_continuant(2, 1, 0) == Fraction(-1, 3)


def test_basis_example_point():
    M = build_M(2)
    val = det_fraction_free(M).evaluate((1, 1))
    assert val == 8
    assert d_continuant(2, 1, 1) == Fraction(-4, 3)
    assert verify_basis_comparison(2, [(1, 1)]).ok


def test_detM_identity_and_backends():
    for n in range(1, 9):
        assert verify_detM_identity(n).ok
        assert verify_detM_identity(n, backend="cofactor").ok
    for n in range(1, 7):
        assert verify_backends_agree(n).ok


def test_default_grid_exceeds_degrees():
    for n in (1, 4, 9):
        g = default_grid(n)
        assert len({b for b, _ in g}) == n + 1 and len({l for _, l in g}) == n + 1


def test_basis_comparison_small():
    for n in range(1, 9):
        assert verify_basis_comparison(n).ok


def test_build_M_rejects_zero():
    with pytest.raises(ValueError):
        build_M(0)
