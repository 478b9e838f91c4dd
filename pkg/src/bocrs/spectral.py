"""Decaying-branch eigenvalue solver and rational-slice diagnostics.

The branch value lambda_N(a) is taken to be the smallest positive root of
det T_N(a, .).  It is located by scanning for a sign change of the exact
rational determinant and bisecting.  :func:`lambda_fixed_point` iterates the
truncated continued-fraction map instead, and the two must agree.

Nothing here is compared against reference values: none are published, so
every number produced is implementer-derived.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import rational_str, round_dyadic
from .tridiag import det_T, trunc_K
from .recurrence import u_hat_eval

DEFAULT_STEP = Fraction(1, 4)
NO_REFERENCE = "no published reference value exists; all values are implementer-derived"


class SolverError(RuntimeError):
    pass


class InvalidInput(ValueError):
    pass


class NoSignChange(SolverError):
    def __init__(self, msg: str, cap: Fraction):
        super().__init__(msg)
        self.cap = cap


class TangencyCandidate(NoSignChange):
    """No sign change, but |det T_N| dipped below tol^2 at a scan point."""

    def __init__(self, msg: str, cap: Fraction, location: Fraction, value: Fraction):
        super().__init__(msg, cap)
        self.location = location
        self.value = value


class DegenerateTruncation(SolverError):
    pass


class NotConverged(SolverError):
    pass


class NonInteger(ArithmeticError):
    pass


def _bits_for(tol: Fraction) -> int:
    # smallest b with 2^-b <= tol
    b = 0
    while Fraction(1, 1 << b) > tol:
        b += 1
    return b


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass
class BranchRoot:
    a2: Fraction
    N: int
    lam: Fraction
    lo: Fraction
    hi: Fraction
    residual: Fraction
    tol: Fraction
    steps: int
    exact: bool = False

    def to_json(self, digits: int = 40) -> dict:
        return {
            "a2": rational_str(self.a2),
            "N": self.N,
            "lambda": rational_str(self.lam),
            "lambda_decimal": to_decimal(self.lam, digits),
            "bracket": [rational_str(self.lo), rational_str(self.hi)],
            "residual": to_decimal(self.residual, 6, sci=True),
            "tol": rational_str(self.tol),
            "bisection_steps": self.steps,
            "exact_root": self.exact,
        }


def lambda_branch(a2, N: int, tol, root_index: int = 1,
                  step: Fraction = DEFAULT_STEP, cap: Optional[Fraction] = None) -> BranchRoot:
    """``root_index``-th positive root of det T_N(a, .) to within ``tol``.

    The default scan runs over lambda = 0, step, 2*step, ... up to
    4 * max(1, a2).  Raises NoSignChange when the scan is exhausted, or
    TangencyCandidate when it only touched zero.
    """
    a2, tol = Fraction(a2), Fraction(tol)
    if a2 <= 0:
        raise InvalidInput("a2 must be > 0")
    if N < 1 or tol <= 0 or root_index < 1:
        raise InvalidInput("need N >= 1, tol > 0 and root_index >= 1")
    if cap is None:
        cap = 4 * max(Fraction(1), a2)
    bits = 4 * _bits_for(tol)

    lo, f_lo = Fraction(0), det_T(N, a2, 0)
    found = 0
    near: Optional[tuple[Fraction, Fraction]] = None
    k = 1
    while True:
        lam = k * step
        if lam > cap:
            break
        f = det_T(N, a2, lam)
        if f == 0:
            f_next = det_T(N, a2, lam + step)
            if _sign(f_next) != _sign(f_lo):
                found += 1
                if found == root_index:
                    return BranchRoot(a2, N, lam, lam - step, lam + step, Fraction(0), tol, 0, exact=True)
                lo, f_lo = lam + step, f_next
                k += 2
                continue
            if near is None or near[1] != 0:
                near = (lam, f)
        elif _sign(f) != _sign(f_lo):
            found += 1
            if found == root_index:
                return _bisect(a2, N, lo, lam, f_lo, tol, bits)
            lo, f_lo = lam, f
        else:
            if abs(f) < tol * tol and (near is None or abs(f) < abs(near[1])):
                near = (lam, f)
            lo, f_lo = lam, f
        k += 1
    if near is not None:
        raise TangencyCandidate(f"det T_{N} touches zero near lambda={near[0]} without a sign change",
                                cap, near[0], near[1])
    raise NoSignChange(f"no sign change of det T_{N} for lambda in (0, {cap}]", cap)


def _bisect(a2, N, lo, hi, f_lo, tol, bits) -> BranchRoot:
    steps = 0
    s_lo = _sign(f_lo)
    while hi - lo >= tol:
        mid = round_dyadic((lo + hi) / 2, bits)
        if not lo < mid < hi:
            mid = (lo + hi) / 2
        f = det_T(N, a2, mid)
        steps += 1
        if f == 0:
            return BranchRoot(a2, N, mid, lo, hi, Fraction(0), tol, steps, exact=True)
        if _sign(f) == s_lo:
            lo = mid
        else:
            hi = mid
    lam = (lo + hi) / 2
    return BranchRoot(a2, N, lam, lo, hi, abs(det_T(N, a2, lam)), tol, steps)


@dataclass
class FixedPointResult:
    lam: Fraction
    iterations: int
    trace: list = field(default_factory=list)


def lambda_fixed_point(a2, N: int, tol, max_iter: int = 500) -> FixedPointResult:
    """Iterate lambda <- a2 / (3 q_1^(N)(lambda)) from lambda = a2/6."""
    a2, tol = Fraction(a2), Fraction(tol)
    if a2 < 0 or tol <= 0:
        raise InvalidInput("need a2 >= 0 and tol > 0")
    if a2 == 0:
        return FixedPointResult(Fraction(0), 0, [Fraction(0)])
    bits = 4 * _bits_for(tol)
    lam = a2 / 6
    trace = [lam]
    for it in range(1, max_iter + 1):
        st = trunc_K(N, a2, lam)
        if st.q1 is None:
            raise DegenerateTruncation(f"K_2 = 0 at lambda={lam} (N={N})")
        if st.q1 == 0:
            raise NotConverged(f"q_1 vanished at lambda={lam}")
        new = round_dyadic(a2 / (3 * st.q1), bits)
        trace.append(new)
        if abs(new - lam) < tol / 16:
            return FixedPointResult(new, it, trace)
        lam = new
    raise NotConverged(f"no convergence within {max_iter} iterations")


@dataclass
class BranchSolveReport:
    a2: Fraction
    tol: Fraction
    depths: list
    roots: list
    diffs: list
    converged: bool

    @property
    def lambdas(self) -> list[Fraction]:
        return [r.lam for r in self.roots]

    def brackets_valid(self) -> bool:
        for r in self.roots:
            if not r.lo < r.lam < r.hi:
                return False
            flo, fhi = det_T(r.N, r.a2, r.lo), det_T(r.N, r.a2, r.hi)
            if _sign(flo) * _sign(fhi) >= 0 and not r.exact:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "a2": rational_str(self.a2),
            "tol": rational_str(self.tol),
            "rows": [
                {**r.to_json(), "diff_prev": None if d is None else to_decimal(d, 6, sci=True)}
                for r, d in zip(self.roots, self.diffs)
            ],
            "converged": self.converged,
            "brackets_valid": self.brackets_valid(),
            "note": NO_REFERENCE,
        }


def convergence_table(a2, depths: Sequence[int], tol) -> BranchSolveReport:
    depths = list(depths)
    if any(b <= a for a, b in zip(depths, depths[1:])):
        raise InvalidInput("depths must be strictly increasing")
    roots = [lambda_branch(a2, N, tol) for N in depths]
    diffs = [None] + [abs(b.lam - a.lam) for a, b in zip(roots, roots[1:])]
    converged = len(roots) > 1 and diffs[-1] < Fraction(tol)
    return BranchSolveReport(Fraction(a2), Fraction(tol), depths, roots, diffs, converged)


@dataclass
class CertificateSeq:
    a2: Fraction
    lam: Fraction
    entries: list

    def to_json(self) -> dict:
        return {
            "a2": rational_str(self.a2),
            "lambda": rational_str(self.lam),
            "scale": str(self.a2.denominator * self.lam.denominator),
            "entries": [str(v) for v in self.entries],
        }


def integer_certificate(a2, lam, n_max: int) -> CertificateSeq:
    """The integers (s q)^n u^_n for a2 = r/s, lam = p/q in lowest terms."""
    a2, lam = Fraction(a2), Fraction(lam)
    sq = a2.denominator * lam.denominator
    out = []
    scale = 1
    for n, u in enumerate(u_hat_eval(a2, lam, n_max)):
        v = u * scale
        if v.denominator != 1:
            raise NonInteger(f"(sq)^{n} u^_{n} = {v} at a2={a2}, lambda={lam}")
        out.append(v.numerator)
        scale *= sq
    return CertificateSeq(a2, lam, out)


@dataclass
class DecayRow:
    n: int
    abs_u: Fraction
    s: float

    def to_json(self) -> dict:
        return {"n": self.n, "abs_u": to_decimal(self.abs_u, 12, sci=True), "s_n": f"{self.s:.12g}"}


def _log_abs(x: Fraction) -> float:
    return math.log(abs(x.numerator)) - math.log(x.denominator)


def decay_diagnostic(a2, lam, n_max: int) -> list[DecayRow]:
    """Rows (n, |u^_n|, n |u^_n|^(1/(2n))) for n = 1..n_max."""
    rows = []
    for n, u in enumerate(u_hat_eval(a2, lam, n_max)):
        if n == 0:
            continue
        s = 0.0 if u == 0 else n * math.exp(_log_abs(u) / (2 * n))
        rows.append(DecayRow(n, abs(u), s))
    return rows


def decreasing_runs(rows: Sequence[DecayRow]) -> list[tuple[int, int]]:
    """Maximal index ranges (n0, n1), n1 > n0, over which |u^_n| strictly decreases."""
    runs = []
    start = None
    for prev, cur in zip(rows, rows[1:]):
        if cur.abs_u < prev.abs_u:
            if start is None:
                start = prev.n
        elif start is not None:
            runs.append((start, prev.n))
            start = None
    if start is not None:
        runs.append((start, rows[-1].n))
    return runs


def to_decimal(x, digits: int, sci: bool = False) -> str:
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits + 5
        d = Decimal(x.numerator) / Decimal(x.denominator)
        if sci:
            return f"{d:.{digits}e}"
        return f"{d:.{digits}f}"
