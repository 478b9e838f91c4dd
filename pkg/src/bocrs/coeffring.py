"""Taylor coefficients c_n of the extremal function as elements of Z[pi^2, C, L].

With x* = pi^2/(16 C^2) and lambda* = -L/(2C), c_n = (2C)^{2n} u~_n(x*, lambda*).
:func:`c_n_symbolic` builds this term by term from u~_n: the monomial
x^r lambda^s contributes

    a_{r,s} (-1)^s 2^{2n-4r-s} P^r C^{2n-2r-s} L^s,   P = pi^2.

Both exponents are asserted non-negative (and the C-exponent >= n) rather
than produced by clearing denominators.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .algebra import SparsePoly, rational_str
from .checks import Check
from .recurrence import u_tilde

HB_VARS = ("pi2", "C", "L")
PROVENANCE = "constants C and L were supplied by the caller; this tool does not compute or vouch for them"


class ExponentViolation(ArithmeticError):
    pass


class InvalidConstants(ValueError):
    pass


def c_n_symbolic(n: int) -> SparsePoly:
    if n < 0:
        raise ValueError("n must be >= 0")
    out = {}
    for (r, s), a in u_tilde(n).terms.items():
        two = 2 * n - 4 * r - s
        ce = 2 * n - 2 * r - s
        if two < 0 or ce < n:
            raise ExponentViolation(f"monomial x^{r} lambda^{s} of u~_{n} maps outside C^n Z[pi^2, C, L]")
        out[(r, ce, s)] = (-a if s & 1 else a) << two
    return SparsePoly(HB_VARS, out)


def check_divisibility(h: SparsePoly, n: int) -> Check:
    """Every monomial of ``h`` carries C to a power >= n."""
    ci = h.vars.index("C")
    for e in sorted(h.terms):
        if e[ci] < n or min(e) < 0:
            return Check("divisibility", False, {"n": n, "monomial": list(e), "coeff": str(h.terms[e])})
    return Check("divisibility", True, {"n": n, "terms": len(h.terms)})


def cross_check_substitution(n: int, samples: Sequence[tuple]) -> Check:
    """c_n_symbolic(n)(P, C, L) == (2C)^{2n} u~_n(P/(16C^2), -L/(2C)) at each sample."""
    h = c_n_symbolic(n)
    u = u_tilde(n)
    for P, C, L in samples:
        P, C, L = Fraction(P), Fraction(C), Fraction(L)
        if C == 0:
            raise InvalidConstants("C must be nonzero")
        lhs = h.evaluate((P, C, L))
        rhs = (2 * C) ** (2 * n) * u.evaluate((P / (16 * C * C), -L / (2 * C)))
        if lhs != rhs:
            return Check("cross-substitution", False,
                         {"n": n, "point": [rational_str(P), rational_str(C), rational_str(L)], "symbolic": rational_str(lhs), "direct": rational_str(rhs)})
    return Check("cross-substitution", True, {"n": n, "points": len(samples)})


@dataclass
class NumericValue:
    mid: mpmath.mpf
    radius: mpmath.mpf
    prec: int

    def to_json(self) -> dict:
        digits = max(5, int(self.prec * 0.30103))
        return {
            "value": mpmath.nstr(self.mid, digits),
            "error_bound": mpmath.nstr(self.radius, 5),
            "prec_bits": self.prec,
            "provenance": PROVENANCE,
        }


def c_n_numeric(n: int, c_value: str, l_value: str, prec: int = 128, pi2: str | None = None) -> NumericValue:
    """Evaluate c_n in interval arithmetic at (pi^2, C, L).

    Inputs are decimal strings; ``pi2`` overrides pi^2 (for testing).  The
    returned radius bounds all rounding, including that of the inputs.
    """
    ctx = mpmath.iv
    old = ctx.prec
    ctx.prec = prec
    try:
        C = ctx.mpf(c_value)
        L = ctx.mpf(l_value)
        if C.a <= 0 <= C.b:
            raise InvalidConstants("C must be nonzero")
        P = ctx.pi ** 2 if pi2 is None else ctx.mpf(pi2)
        h = c_n_symbolic(n)
        total = ctx.mpf(0)
        for (r, ce, s), coeff in h.sorted_terms():
            total += ctx.mpf(coeff) * P ** r * C ** ce * L ** s
        with mpmath.workprec(prec):
            mid = mpmath.mpf(total.mid)
            radius = mpmath.mpf(total.delta) / 2
    finally:
        ctx.prec = old
    return NumericValue(mid, radius, prec)
