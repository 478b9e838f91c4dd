"""Named verification suites; each returns a flat list of :class:`Check`.

Sampling is a seeded ``random.Random`` drawing rationals with numerator and
denominator bounded by 10^4, so a suite run is fully determined by its
parameters.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .algebra import SparsePoly, degree_in_var, random_rational, rational_str, weighted_degree
from .checks import Check
from .coeffring import c_n_symbolic, check_divisibility, cross_check_substitution
from .legendre import verify_backends_agree, verify_basis_comparison, verify_detM_identity
from .recurrence import XL, IntegralityViolation, u_tilde_seq
from .tridiag import compression_checks, det_T, trunc_K, verify_compression, verify_minor_identities

PRINTED_U = {
    1: {(0, 1): -2},
    2: {(0, 2): 6, (0, 1): -12, (1, 0): 2},
    3: {(0, 3): -20, (0, 2): 160, (1, 1): -12, (0, 1): -240, (1, 0): 40},
}

CROSS_CHECK_MAX_N = 40


def sample_points(rng: random.Random, k: int, dim: int = 2, nonzero: tuple[int, ...] = ()) -> list[tuple]:
    pts = []
    for _ in range(k):
        pt = []
        for i in range(dim):
            v = random_rational(rng)
            while i in nonzero and v == 0:
                v = random_rational(rng)
            pt.append(v)
        pts.append(tuple(pt))
    return pts


def integrality(n_max: int, **_) -> list[Check]:
    try:
        seq = u_tilde_seq(n_max)
    except IntegralityViolation as err:
        return [Check("integrality", False, {"n": err.n, "monomial": list(err.exponent),
                                             "numerator": str(err.coeff), "divisor": err.divisor})]
    checks = [Check("integrality", True, {"n": n, "terms": len(p.terms)}) for n, p in enumerate(seq)]
    for n, terms in PRINTED_U.items():
        if n <= n_max:
            ok = seq[n] == SparsePoly(XL, terms)
            checks.append(Check("printed-u", ok, {"n": n, "poly": str(seq[n])}))
    return checks


def bounds(n_max: int, **_) -> list[Check]:
    checks = []
    for n, p in enumerate(u_tilde_seq(n_max)):
        w, dx, dl = weighted_degree(p), degree_in_var(p, 0), degree_in_var(p, 1)
        ok = w <= n and dx <= n // 2 and dl <= n
        checks.append(Check("bounds", ok, {"n": n, "weighted_degree": _deg(w), "deg_x": _deg(dx), "deg_lambda": _deg(dl)}))
    return checks


def _deg(d) -> int | str:
    return d if isinstance(d, int) else "-inf"


def det_m(n_max: int, **_) -> list[Check]:
    checks = [verify_detM_identity(n) for n in range(1, n_max + 1)]
    checks += [verify_backends_agree(n) for n in range(1, min(n_max, 8) + 1)]
    return checks


def basis(n_max: int, **_) -> list[Check]:
    return [verify_basis_comparison(n) for n in range(1, n_max + 1)]


def compression(n_max: int, samples: int, seed: int, **_) -> list[Check]:
    pts = sample_points(random.Random(seed), samples)
    per_point = [compression_checks(n_max, a2, lam) for a2, lam in pts]
    return [per_point[i][N] for N in range(n_max + 1) for i in range(len(pts))]


def minors(n_max: int, samples: int, seed: int, **_) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    for N in range(1, n_max + 1):
        for a2, lam in sample_points(rng, samples):
            checks.append(verify_minor_identities(N, a2, lam))
    return checks


def degenerate(**_) -> list[Check]:
    """The point N = 3, lambda = 0, a^2 = -280 where K_2 vanishes."""
    N, a2, lam = 3, Fraction(-280), Fraction(0)
    st = trunc_K(N, a2, lam)
    w = {"N": N, "a2": "-280", "lambda": "0"}
    return [
        Check("degenerate-K2", st.K[2] == 0, {**w, "K2": rational_str(st.K[2])}),
        Check("degenerate-K1", st.K[1] == -896, {**w, "K1": rational_str(st.K[1])}),
        Check("degenerate-detT", st.detT == 0 and det_T(N, a2, lam) == 0, {**w, "detT": rational_str(st.detT)}),
        Check("degenerate-q1-undefined", st.q1 is None, w),
        verify_compression(N, a2, lam),
        verify_minor_identities(N, a2, lam),
    ]


def coeffring(n_max: int, samples: int, seed: int, **_) -> list[Check]:
    checks = [check_divisibility(c_n_symbolic(n), n) for n in range(n_max + 1)]
    rng = random.Random(seed)
    for n in range(min(n_max, CROSS_CHECK_MAX_N) + 1):
        checks.append(cross_check_substitution(n, sample_points(rng, samples, dim=3, nonzero=(1,))))
    return checks


SUITES: dict[str, Callable[..., list[Check]]] = {
    "integrality": integrality,
    "bounds": bounds,
    "detM": det_m,
    "basis": basis,
    "compression": compression,
    "minors": minors,
    "degenerate": degenerate,
    "coeffring": coeffring,
}


def run_suite(name: str, n_max: int = 20, samples: int = 20, seed: int = 0) -> list[Check]:
    return SUITES[name](n_max=n_max, samples=samples, seed=seed)
