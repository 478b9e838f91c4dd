"""Exact integers, rationals and sparse multivariate polynomials over Z.

Integers are plain Python ``int`` and rationals are ``fractions.Fraction``;
both are exact and canonical by construction.  :class:`SparsePoly` is the
one ring type the rest of the package builds on.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

NEG_INF = -math.inf

Exponent = tuple[int, ...]


class ArityMismatch(ValueError):
    """Operands live in polynomial rings with different variables."""


class NotDivisible(ArithmeticError):
    """A coefficient is not divisible by the requested integer."""

    def __init__(self, exponent: Exponent, coeff: int, divisor: int):
        self.exponent = exponent
        self.coeff = coeff
        self.divisor = divisor
        super().__init__(f"coefficient {coeff} of monomial {exponent} is not divisible by {divisor}")


class ExactDivisionFailure(ArithmeticError):
    """Polynomial division that should have been exact left a remainder."""


def _grlex_key(e: Exponent) -> tuple[int, Exponent]:
    return (sum(e), e)


class SparsePoly:
    """Polynomial with integer coefficients stored as ``{exponents: coeff}``.

    Instances are treated as immutable.  Zero coefficients are never stored,
    so two polynomials are equal iff their term maps are equal.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exponent, int] | None = None):
        self.vars = tuple(vars)
        clean: dict[Exponent, int] = {}
        if terms:
            k = len(self.vars)
            for e, c in terms.items():
                e = tuple(int(v) for v in e)
                if len(e) != k:
                    raise ArityMismatch(f"exponent {e} does not match variables {self.vars}")
                if any(v < 0 for v in e):
                    raise ValueError(f"negative exponent in {e}")
                c = int(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def _raw(cls, vars: tuple[str, ...], terms: dict[Exponent, int]) -> SparsePoly:
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    @classmethod
    def const(cls, vars: Sequence[str], c: int) -> SparsePoly:
        vars = tuple(vars)
        return cls._raw(vars, {(0,) * len(vars): int(c)} if c else {})

    @classmethod
    def var(cls, vars: Sequence[str], name: str, power: int = 1) -> SparsePoly:
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = power
        return cls._raw(vars, {tuple(e): 1})

    @classmethod
    def zero(cls, vars: Sequence[str]) -> SparsePoly:
        return cls._raw(tuple(vars), {})

    # -- basic protocol ---------------------------------------------------
    @property
    def arity(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == SparsePoly.const(self.vars, other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in graded-lex descending order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def __repr__(self) -> str:
        return f"SparsePoly({self.vars}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def _check(self, other: SparsePoly) -> None:
        if self.vars != other.vars:
            raise ArityMismatch(f"{self.vars} vs {other.vars}")

    def _coerce(self, other) -> SparsePoly:
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return SparsePoly.const(self.vars, other)
        return NotImplemented

    # -- ring operations --------------------------------------------------
    def __add__(self, other) -> SparsePoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SparsePoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> SparsePoly:
        return SparsePoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> SparsePoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> SparsePoly:
        return (-self) + other

    def __mul__(self, other) -> SparsePoly:
        if isinstance(other, int):
            if not other:
                return SparsePoly.zero(self.vars)
            return SparsePoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        # iterate over the shorter operand in the outer loop
        a, b = (self.terms, other.terms) if len(self.terms) <= len(other.terms) else (other.terms, self.terms)
        out: dict[Exponent, int] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return SparsePoly._raw(self.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SparsePoly:
        if k < 0:
            raise ValueError("negative power")
        result = SparsePoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, var_index: int, k: int = 1) -> SparsePoly:
        """Multiply by ``vars[var_index] ** k``."""
        out = {}
        for e, c in self.terms.items():
            e2 = list(e)
            e2[var_index] += k
            out[tuple(e2)] = c
        return SparsePoly._raw(self.vars, out)

    def exact_div_int(self, d: int) -> SparsePoly:
        if d == 0:
            raise ZeroDivisionError("division of a polynomial by 0")
        out = {}
        for e, c in self.terms.items():
            q, r = divmod(c, d)
            if r:
                raise NotDivisible(e, c, d)
            out[e] = q
        return SparsePoly._raw(self.vars, out)

    def content(self) -> int:
        """gcd of all coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
        return g

    # -- structure --------------------------------------------------------
    def degree_in(self, var_index: int) -> float | int:
        if not self.terms:
            return NEG_INF
        return max(e[var_index] for e in self.terms)

    def total_degree(self) -> float | int:
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def coeff(self, e: Iterable[int]) -> int:
        return self.terms.get(tuple(e), 0)

    def derivative(self, var_index: int) -> SparsePoly:
        out = {}
        for e, c in self.terms.items():
            k = e[var_index]
            if k:
                e2 = list(e)
                e2[var_index] = k - 1
                out[tuple(e2)] = c * k
        return SparsePoly._raw(self.vars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        return poly_eval(self, point)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"e": list(e), "c": str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> SparsePoly:
        return cls(obj["vars"], {tuple(t["e"]): int(t["c"]) for t in obj["terms"]})


# -- module-level operations ------------------------------------------------

def poly_add(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    p._check(q)
    return p + q


def poly_mul(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    p._check(q)
    return p * q


def poly_exact_div_int(p: SparsePoly, d: int) -> SparsePoly:
    return p.exact_div_int(d)


def poly_exact_div(p: SparsePoly, d: SparsePoly) -> SparsePoly:
    """Quotient ``p / d`` in Z[vars]; raises ExactDivisionFailure on a remainder.

    Repeatedly cancels the lex-leading term of the dividend.  When ``d``
    divides ``p`` exactly the leading term of the running dividend is
    always a multiple of the leading term of ``d``.
    """
    p._check(d)
    if not d.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if len(d.terms) == 1:
        (ed, cd), = d.terms.items()
        out = {}
        for e, c in p.terms.items():
            q, r = divmod(c, cd)
            e2 = tuple(x - y for x, y in zip(e, ed))
            if r or min(e2, default=0) < 0:
                raise ExactDivisionFailure(f"{p} is not divisible by {d}")
            out[e2] = q
        return SparsePoly._raw(p.vars, out)
    lead_d = max(d.terms)
    cd = d.terms[lead_d]
    rem = dict(p.terms)
    quot: dict[Exponent, int] = {}
    while rem:
        lead = max(rem)
        c = rem[lead]
        e = tuple(x - y for x, y in zip(lead, lead_d))
        qc, r = divmod(c, cd)
        if r or min(e) < 0:
            raise ExactDivisionFailure(f"{p} is not divisible by {d}")
        quot[e] = qc
        for ed2, c2 in d.terms.items():
            m = tuple(x + y for x, y in zip(e, ed2))
            v = rem.get(m, 0) - qc * c2
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    return SparsePoly._raw(p.vars, quot)


def poly_eval(p: SparsePoly, point: Sequence) -> Fraction:
    """Exact value of ``p`` at a rational point.

    Denominators are cleared once per variable so the inner loop runs on
    integers only.
    """
    if len(point) != p.arity:
        raise ArityMismatch(f"point of length {len(point)} for variables {p.vars}")
    if not p.terms:
        return Fraction(0)
    pts = [Fraction(v) for v in point]
    k = p.arity
    maxdeg = [max(e[i] for e in p.terms) for i in range(k)]
    num_pows = []
    den_pows = []
    for i in range(k):
        n, d = pts[i].numerator, pts[i].denominator
        npw = [1] * (maxdeg[i] + 1)
        dpw = [1] * (maxdeg[i] + 1)
        for j in range(1, maxdeg[i] + 1):
            npw[j] = npw[j - 1] * n
            dpw[j] = dpw[j - 1] * d
        num_pows.append(npw)
        den_pows.append(dpw)
    total = 0
    for e, c in p.terms.items():
        t = c
        for i in range(k):
            t *= num_pows[i][e[i]] * den_pows[i][maxdeg[i] - e[i]]
        total += t
    den = 1
    for i in range(k):
        den *= den_pows[i][maxdeg[i]]
    return Fraction(total, den)


def poly_substitute_neg_square(p: SparsePoly, new_vars: Sequence[str] = ("beta", "lambda")) -> SparsePoly:
    """Map ``p(x, lam)`` to ``p(-beta^2, lam)``."""
    if p.arity != 2:
        raise ArityMismatch(f"expected a polynomial in two variables, got {p.vars}")
    out = {}
    for (r, s), c in p.terms.items():
        out[(2 * r, s)] = -c if r & 1 else c
    return SparsePoly._raw(tuple(new_vars), out)


def weighted_degree(p: SparsePoly) -> float | int:
    """max of 2r + s over the monomials x^r lam^s of ``p``; -inf for 0."""
    if p.arity != 2:
        raise ArityMismatch(f"expected a polynomial in (x, lambda), got {p.vars}")
    if not p.terms:
        return NEG_INF
    return max(2 * r + s for r, s in p.terms)


def degree_in_var(p: SparsePoly, var_index: int) -> float | int:
    return p.degree_in(var_index)


# -- rationals --------------------------------------------------------------

def round_dyadic(x: Fraction, bits: int) -> Fraction:
    """Nearest multiple of ``2**-bits`` to ``x``, ties to even."""
    scale = 1 << bits
    # round() on a Fraction is round-half-even
    return Fraction(round(Fraction(x) * scale), scale)


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, an integer, a decimal literal, or ``2^-b`` / ``2^b``."""
    s = text.strip().replace(" ", "")
    if s.startswith("2^") or s.startswith("2**"):
        exp = int(s.split("^", 1)[1] if "^" in s else s[3:])
        return Fraction(2) ** exp
    return Fraction(s)


def rational_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def random_rational(rng: random.Random, bound: int = 10**4) -> Fraction:
    """Rational with |numerator| <= bound and 1 <= denominator <= bound."""
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
