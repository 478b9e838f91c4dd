"""The universal sequence u~_n(x, lambda) and its pointwise specializations.

The recurrence

    u~_{n+1} = ((4n+2)/(n+1)) (n(n+1) - lambda) u~_n + (4n/(n+1)) x u~_{n-1}

is run over Z: the numerator is formed with integer coefficients and then
divided exactly by n+1.  A non-divisible coefficient raises
:class:`~bocrs.algebra.NotDivisible`, so integrality is asserted at runtime
rather than assumed.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import NotDivisible, SparsePoly, degree_in_var, weighted_degree

XL = ("x", "lambda")
X, LAM = 0, 1


class IntegralityViolation(NotDivisible):
    """Raised when the step producing u~_n leaves a non-integral coefficient."""

    def __init__(self, n: int, err: NotDivisible):
        self.n = n
        super().__init__(err.exponent, err.coeff, err.divisor)
        self.args = (f"u~_{n}: {err}",)


def _step(n: int, u_n: SparsePoly, u_prev: SparsePoly) -> SparsePoly:
    """u~_{n+1} from u~_n and u~_{n-1}."""
    # numerator (4n+2)(n(n+1) - lambda) u_n + 4n x u_{n-1}, built in one pass
    a = 4 * n + 2
    d = a * n * (n + 1)
    numer: dict = {}
    get = numer.get
    for (r, s), c in u_n.terms.items():
        numer[(r, s)] = get((r, s), 0) + d * c
        numer[(r, s + 1)] = get((r, s + 1), 0) - a * c
    if n:
        b = 4 * n
        for (r, s), c in u_prev.terms.items():
            numer[(r + 1, s)] = get((r + 1, s), 0) + b * c
    try:
        return SparsePoly._raw(XL, {e: c for e, c in numer.items() if c}).exact_div_int(n + 1)
    except NotDivisible as err:
        raise IntegralityViolation(n + 1, err) from None


class _Cache:
    def __init__(self) -> None:
        self.entries = [SparsePoly.const(XL, 1)]
        self.lock = threading.Lock()

    def extend(self, n: int) -> list[SparsePoly]:
        if n < len(self.entries):
            return self.entries
        with self.lock:
            e = self.entries
            prev = e[-2] if len(e) > 1 else SparsePoly.zero(XL)
            while len(e) <= n:
                k = len(e) - 1
                nxt = _step(k, e[k], prev)
                prev = e[k]
                # readers only see the list grow; existing entries never change
                e.append(nxt)
        return self.entries


_CACHE = _Cache()


def u_tilde(n: int) -> SparsePoly:
    """u~_n as a polynomial in Z[x, lambda]."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _CACHE.extend(n)[n]


def u_tilde_seq(n_max: int) -> list[SparsePoly]:
    """[u~_0, ..., u~_{n_max}]."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return list(_CACHE.extend(n_max)[: n_max + 1])


def u_tilde_fresh(n_max: int) -> list[SparsePoly]:
    """Same as :func:`u_tilde_seq` but computed without the shared cache."""
    seq = [SparsePoly.const(XL, 1)]
    prev = SparsePoly.zero(XL)
    for k in range(n_max):
        seq.append(_step(k, seq[k], prev))
        prev = seq[k]
    return seq


def central_binomial(n: int) -> int:
    """binom(2n, n) via C_{k+1} = C_k * 2(2k+1)/(k+1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 1)
    return c


def v_eval(x, lam, n_max: int) -> list[Fraction]:
    """v_0..v_{n_max} with v_n = u~_n / binom(2n, n), at a rational point."""
    x, lam = Fraction(x), Fraction(lam)
    out = [Fraction(1)]
    if n_max >= 1:
        out.append(-lam)
    for n in range(1, n_max):
        out.append((n * (n + 1) - lam) * out[n]
                   + Fraction(n * n, (2 * n - 1) * (2 * n + 1)) * x * out[n - 1])
    return out


def u_hat_eval(a2, lam, n_max: int) -> list[Fraction]:
    """u^_0..u^_{n_max}: the recurrence streamed at x = a2 in exact rationals."""
    a2, lam = Fraction(a2), Fraction(lam)
    out = [Fraction(1)]
    prev = Fraction(0)
    for n in range(n_max):
        nxt = ((4 * n + 2) * (n * (n + 1) - lam) * out[n] + 4 * n * a2 * prev) / (n + 1)
        prev = out[n]
        out.append(nxt)
    return out


@dataclass
class BoundsReport:
    ok: bool
    checked: int
    violations: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "violations": self.violations}


def check_bounds(seq: list[SparsePoly]) -> BoundsReport:
    """Check 2r + s <= n, deg_x <= n // 2 and deg_lambda <= n for every entry.

    Violations are collected with the offending monomial as witness.
    """
    violations = []
    for n, p in enumerate(seq):
        w = weighted_degree(p)
        dx = degree_in_var(p, X)
        dl = degree_in_var(p, LAM)
        if w <= n and dx <= n // 2 and dl <= n:
            continue
        for (r, s) in sorted(p.terms):
            bad = []
            if 2 * r + s > n:
                bad.append("weight")
            if r > n // 2:
                bad.append("deg_x")
            if s > n:
                bad.append("deg_lambda")
            if bad:
                violations.append({"n": n, "r": r, "s": s, "rules": bad})
    return BoundsReport(ok=not violations, checked=len(seq), violations=violations)
