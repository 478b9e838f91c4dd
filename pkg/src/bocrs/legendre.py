"""Scaled Legendre polynomials and the two compressions of L + beta*t - lambda.

``Q_n = 2^n P_n`` lives in Z[t].  The operator

    L f = -d/dt ((1 - t^2) f'),

perturbed by multiplication with ``beta*t - lambda``, is written two ways:

* in the monomial basis, giving the integral matrix ``M_n`` over Z[beta, lambda]
  (:func:`build_M`);
* in the Q-basis, where its leading block is tridiagonal with determinant
  ``D_n`` given by a continuant recurrence (:func:`d_continuant`).

The checks here compare ``det M_n`` against ``-u~_n(-beta^2, lambda)`` both
symbolically and on evaluation grids.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from .algebra import SparsePoly, poly_substitute_neg_square, rational_str
from .checks import Check
from .determinant import det_bareiss, det_cofactor, det_rational
from .recurrence import central_binomial, u_tilde, v_eval

T = ("t",)
BL = ("beta", "lambda")

PolyMatrix = list[list[SparsePoly]]


def q_poly(n: int) -> SparsePoly:
    """Q_n from the explicit alternating binomial sum."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return SparsePoly(T, {(n - 2 * k,): (-1) ** k * comb(n, k) * comb(2 * n - 2 * k, n)
                          for k in range(n // 2 + 1)})


def q_poly_recurrence(n_max: int) -> list[SparsePoly]:
    """Q_0..Q_{n_max} from (n+1) Q_{n+1} = 2(2n+1) t Q_n - 4n Q_{n-1}."""
    qs = [SparsePoly.const(T, 1)]
    if n_max >= 1:
        qs.append(SparsePoly.var(T, "t") * 2)
    for n in range(1, n_max):
        numer = qs[n].shift(0) * (2 * (2 * n + 1)) - qs[n - 1] * (4 * n)
        qs.append(numer.exact_div_int(n + 1))
    return qs


def legendre_op(p: SparsePoly) -> SparsePoly:
    """-d/dt((1 - t^2) dp/dt) for p in Z[t]."""
    dp = p.derivative(0)
    return (dp.shift(0, 2) - dp).derivative(0)


def operator_on_monomial(m: int, n: int | None = None) -> list[SparsePoly]:
    """Column of (L + beta*t - lambda) t^m in the basis 1, t, ..., t^n.

    ``n`` defaults to ``m + 1`` (the shortest column holding the image).
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if n is None:
        n = m + 1
    beta = SparsePoly.var(BL, "beta")
    lam = SparsePoly.var(BL, "lambda")
    col = [SparsePoly.zero(BL) for _ in range(n + 1)]
    if m + 1 <= n:
        col[m + 1] = beta
    col[m] = SparsePoly.const(BL, m * (m + 1)) - lam
    if m >= 2:
        col[m - 2] = SparsePoly.const(BL, -m * (m - 1))
    return col


def build_M(n: int) -> PolyMatrix:
    """Matrix of (f, mu) -> (L + beta*t - lambda) f - mu Q_n in monomial bases."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cols = [operator_on_monomial(m, n) for m in range(n)]
    qn = q_poly(n)
    cols.append([SparsePoly.const(BL, -qn.coeff((i,))) for i in range(n + 1)])
    return [[cols[j][i] for j in range(n + 1)] for i in range(n + 1)]


def eval_matrix(M: PolyMatrix, point: Sequence) -> list[list[Fraction]]:
    out = []
    for row in M:
        out.append([p.evaluate(point) if p else Fraction(0) for p in row])
    return out


def det_fraction_free(M: PolyMatrix) -> SparsePoly:
    return det_bareiss(M)


def det_laplace(M: PolyMatrix) -> SparsePoly:
    return det_cofactor(M)


def d_continuant(n: int, beta, lam) -> Fraction:
    """D_n: determinant of the n x n tridiagonal Legendre-basis block."""
    return d_continuant_seq(n, beta, lam)[n]


def d_continuant_seq(n_max: int, beta, lam) -> list[Fraction]:
    beta, lam = Fraction(beta), Fraction(lam)
    b2 = beta * beta
    out = [Fraction(1)]
    if n_max >= 1:
        out.append(-lam)
    for n in range(1, n_max):
        out.append((n * (n + 1) - lam) * out[n]
                   - Fraction(n * n, (2 * n - 1) * (2 * n + 1)) * b2 * out[n - 1])
    return out


def verify_detM_identity(n: int, backend: str = "bareiss") -> Check:
    M = build_M(n)
    det = det_fraction_free(M) if backend == "bareiss" else det_laplace(M)
    expected = -poly_substitute_neg_square(u_tilde(n))
    ok = det == expected
    w = {"n": n, "backend": backend}
    if not ok:
        w.update(det=det.to_json(), expected=expected.to_json())
    return Check("detM", ok, w)


def verify_backends_agree(n: int) -> Check:
    M = build_M(n)
    a, b = det_fraction_free(M), det_laplace(M)
    return Check("det-backends", a == b, {"n": n})


def default_grid(n: int) -> list[tuple[Fraction, Fraction]]:
    """(n+1) x (n+1) grid of distinct rational coordinates.

    det M_n and C_n D_n have degree at most n in each of beta and lambda, so
    agreement on this grid certifies the polynomial identity.
    """
    betas = [Fraction(2 * i - n, 3) for i in range(n + 1)]
    lams = [Fraction(i - n // 2, 2) + Fraction(1, 7) for i in range(n + 1)]
    return [(b, l) for b in betas for l in lams]


def verify_basis_comparison(n: int, samples: Sequence | None = None) -> Check:
    """det M_n = C_n (-D_n) and D_n = v_n(-beta^2, lambda) at every sample."""
    if samples is None:
        samples = default_grid(n)
    M = build_M(n)
    cn = central_binomial(n)
    for beta, lam in sorted(samples):
        beta, lam = Fraction(beta), Fraction(lam)
        det = det_rational(eval_matrix(M, (beta, lam)))
        dn = d_continuant(n, beta, lam)
        vn = v_eval(-beta * beta, lam, n)[n]
        if det != -cn * dn or dn != vn:
            return Check("basis", False, {"n": n, "beta": rational_str(beta), "lambda": rational_str(lam),
                                          "detM": rational_str(det), "D_n": rational_str(dn), "v_n": rational_str(vn)})
    return Check("basis", True, {"n": n, "points": len(samples)})
