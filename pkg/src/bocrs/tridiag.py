"""Tridiagonal truncations T_N(a, lambda), their trailing minors and truncants.

Everything is parameterized by ``a2 = a^2`` (any rational, negatives
included).  The one place the matrix entries themselves are needed, the
independent trailing-minor evaluation, works in Q[a]/(a^2 - a2) through
:class:`RootExt`, so no square root is ever taken.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import rational_str
from .checks import Check
from .determinant import det_cofactor
from .recurrence import central_binomial, u_hat_eval


def beta_coeff(n: int, a2) -> Fraction:
    """a^2 (n+1)^2 / ((2n+1)(2n+3))."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Fraction(a2) * Fraction((n + 1) ** 2, (2 * n + 1) * (2 * n + 3))


@dataclass(frozen=True)
class TruncationState:
    """Backward truncants of depth N at the point (a2, lam).

    ``K[n]`` holds K_n^(N) for 1 <= n <= N+1; ``K[0]`` is None.
    ``q1`` is None exactly when K_2 = 0.
    """

    N: int
    a2: Fraction
    lam: Fraction
    K: tuple
    detT: Fraction
    q1: Optional[Fraction]

    @property
    def degenerate(self) -> bool:
        return self.q1 is None

    def q(self, n: int) -> Fraction:
        """Truncant q_n^(N) = K_n / K_{n+1}; ZeroDivisionError off its domain."""
        if not 1 <= n <= self.N:
            raise ValueError(f"truncants are indexed 1..{self.N}")
        return self.K[n] / self.K[n + 1]

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "a2": rational_str(self.a2),
            "lambda": rational_str(self.lam),
            "K": {str(n): rational_str(self.K[n]) for n in range(1, self.N + 2)},
            "detT": rational_str(self.detT),
            "q1": None if self.q1 is None else rational_str(self.q1),
            "degenerate": self.degenerate,
        }


def trunc_K(N: int, a2, lam) -> TruncationState:
    if N < 1:
        raise ValueError("N must be >= 1")
    a2, lam = Fraction(a2), Fraction(lam)
    K: list = [None] * (N + 2)
    K[N + 1] = Fraction(1)
    K[N] = N * (N + 1) - lam
    for n in range(N - 1, 0, -1):
        K[n] = (n * (n + 1) - lam) * K[n + 1] + beta_coeff(n, a2) * K[n + 2]
    detT = -lam * K[1] + a2 / 3 * K[2]
    q1 = K[1] / K[2] if K[2] else None
    return TruncationState(N, a2, lam, tuple(K), detT, q1)


def det_T_seq(n_max: int, a2, lam) -> list[Fraction]:
    """det T_0 .. det T_{n_max} by the forward continuant recurrence."""
    a2, lam = Fraction(a2), Fraction(lam)
    prev, cur = Fraction(1), -lam
    out = [cur]
    for N in range(1, n_max + 1):
        prev, cur = cur, (N * (N + 1) - lam) * cur + Fraction(N * N, (2 * N - 1) * (2 * N + 1)) * a2 * prev
        out.append(cur)
    return out


def det_T(N: int, a2, lam) -> Fraction:
    if N < 0:
        raise ValueError("N must be >= 0")
    return det_T_seq(N, a2, lam)[N]


def verify_compression(N: int, a2, lam) -> Check:
    """u^_{N+1}(a, lam) = binom(2N+2, N+1) det T_N(a, lam)."""
    u = u_hat_eval(a2, lam, N + 1)[N + 1]
    rhs = central_binomial(N + 1) * det_T(N, a2, lam)
    return Check("compression", u == rhs, _point(N, a2, lam) if u == rhs else
                 {**_point(N, a2, lam), "u_hat": rational_str(u), "C_detT": rational_str(rhs)})


def compression_checks(n_max: int, a2, lam) -> list[Check]:
    """:func:`verify_compression` for N = 0..n_max sharing one pass of each sequence."""
    us = u_hat_eval(a2, lam, n_max + 1)
    dets = det_T_seq(n_max, a2, lam)
    out = []
    c = 1
    for N in range(n_max + 1):
        c = c * 2 * (2 * N + 1) // (N + 1)
        ok = us[N + 1] == c * dets[N]
        w = _point(N, a2, lam)
        if not ok:
            w.update(u_hat=rational_str(us[N + 1]), C_detT=rational_str(c * dets[N]))
        out.append(Check("compression", ok, w))
    return out


def _point(N, a2, lam) -> dict:
    return {"N": N, "a2": rational_str(Fraction(a2)), "lambda": rational_str(Fraction(lam))}


class RootExt:
    """p + q*a with a^2 = d, exact; enough ring structure for cofactor expansion."""

    __slots__ = ("p", "q", "d")

    def __init__(self, p, q, d):
        self.p, self.q, self.d = Fraction(p), Fraction(q), Fraction(d)

    def __add__(self, o: RootExt) -> RootExt:
        return RootExt(self.p + o.p, self.q + o.q, self.d)

    def __sub__(self, o: RootExt) -> RootExt:
        return RootExt(self.p - o.p, self.q - o.q, self.d)

    def __neg__(self) -> RootExt:
        return RootExt(-self.p, -self.q, self.d)

    def __mul__(self, o) -> RootExt:
        if isinstance(o, (int, Fraction)):
            return RootExt(self.p * o, self.q * o, self.d)
        return RootExt(self.p * o.p + self.q * o.q * self.d, self.p * o.q + self.q * o.p, self.d)

    def __bool__(self) -> bool:
        return bool(self.p) or bool(self.q)

    def __repr__(self) -> str:
        return f"RootExt({self.p} + {self.q}*a, a^2={self.d})"


def t_matrix(N: int, a2, lam) -> list[list[RootExt]]:
    """T_N(a, lam) with entries in Q[a]/(a^2 - a2)."""
    lam = Fraction(lam)
    z = RootExt(0, 0, a2)
    m = [[z] * (N + 1) for _ in range(N + 1)]
    for i in range(N + 1):
        m[i][i] = RootExt(i * (i + 1) - lam, 0, a2)
        if i < N:
            m[i][i + 1] = RootExt(0, Fraction(i + 1, 2 * i + 3), a2)
            m[i + 1][i] = RootExt(0, Fraction(-(i + 1), 2 * i + 1), a2)
    return m


def trailing_minors(N: int, a2, lam) -> list[Fraction]:
    """Delta_0 .. Delta_{N+1}: cofactor determinants of the trailing blocks of T_N."""
    m = t_matrix(N, a2, lam)
    out = []
    for n in range(N + 1):
        d = det_cofactor([row[n:] for row in m[n:]])
        if d.q:
            raise ArithmeticError(f"trailing minor {n} of T_{N} has an odd a-component")
        out.append(d.p)
    out.append(Fraction(1))
    return out


def verify_minor_identities(N: int, a2, lam) -> Check:
    if N < 1:
        raise ValueError("N must be >= 1")
    a2, lam = Fraction(a2), Fraction(lam)
    st = trunc_K(N, a2, lam)
    deltas = trailing_minors(N, a2, lam)
    w = _point(N, a2, lam)
    for n in range(1, N + 2):
        if deltas[n] != st.K[n]:
            return Check("minors", False, {**w, "n": n, "Delta": rational_str(deltas[n]), "K": rational_str(st.K[n])})
    if deltas[0] != st.detT or st.detT != det_T(N, a2, lam):
        return Check("minors", False, {**w, "rule": "detT-K", "Delta0": rational_str(deltas[0]), "detT": rational_str(st.detT)})
    if st.K[2] and lam * st.q1 - a2 / 3 != -st.detT / st.K[2]:
        return Check("minors", False, {**w, "rule": "truncant"})
    if st.degenerate:
        w["degenerate"] = True
    return Check("minors", True, w)
