"""Terminating hypergeometric series and the identities behind the
combinatorial identity: Chu-Vandermonde, Gauss, the shift reduction, the
three-term ``3F2`` transformation and Whipple/Raynal two-term relations.

Everything here is exact. Values are :class:`Fraction` or
:class:`~pfmodes.exact.GaussianRational`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import (
    GammaPole,
    GaussianRational,
    SqrtPiScaled,
    as_fraction,
    comb,
    gamma_exact,
    gamma_quotient,
    is_nonpositive_integer,
    pochhammer,
    rgamma_exact,
)


class HypergeometricError(ValueError):
    """Parameters do not define a terminating series."""


@dataclass(frozen=True)
class TerminatingPFQ:
    upper: tuple
    lower: tuple
    argument: GaussianRational = field(default_factory=lambda: GaussianRational(1))

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(as_fraction(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(as_fraction(b) for b in self.lower))
        object.__setattr__(self, "argument", GaussianRational.of(self.argument))

    @property
    def order(self) -> int:
        """Index of the last non-vanishing term."""
        stops = [-int(a) for a in self.upper if is_nonpositive_integer(a)]
        if not stops:
            raise HypergeometricError(
                f"no non-positive integer upper parameter in {self.upper}"
            )
        return min(stops)

    def terms(self) -> list:
        """Term ratios accumulated as exact rationals (argument excluded)."""
        n = self.order
        coeffs = [Fraction(1)]
        c = Fraction(1)
        for k in range(n):
            den = Fraction(k + 1)
            for b in self.lower:
                den *= b + k
            if den == 0:
                raise HypergeometricError(
                    f"lower parameter hits zero at term {k + 1} before termination"
                )
            num = Fraction(1)
            for a in self.upper:
                num *= a + k
            c = c * num / den
            coeffs.append(c)
        return coeffs


def pfq(upper: Sequence, lower: Sequence, z=1) -> TerminatingPFQ:
    return TerminatingPFQ(tuple(upper), tuple(lower), GaussianRational.of(z))


def eval_terminating(series: TerminatingPFQ):
    """Exact value of a terminating ``pFq``.

    Returns a Fraction when the argument is real, otherwise a
    GaussianRational.
    """
    coeffs = series.terms()
    z = series.argument
    if z.im == 0:
        x = z.re
        total = Fraction(0)
        for c in reversed(coeffs):
            total = total * x + c
        return total
    total = GaussianRational(0)
    for c in reversed(coeffs):
        total = total * z + c
    return total


def hyp(upper: Sequence, lower: Sequence, z=1):
    """Shorthand for ``eval_terminating(pfq(upper, lower, z))``."""
    return eval_terminating(pfq(upper, lower, z))


# ---------------------------------------------------------------------------
# classical summation and transformation identities


def chu_vandermonde_check(k: int, b, c) -> bool:
    """2F1(-k, b; c; 1) == (c-b)_k / (c)_k."""
    b, c = as_fraction(b), as_fraction(c)
    lhs = hyp([-k, b], [c])
    den = pochhammer(c, k)
    if den == 0:
        raise HypergeometricError("(c)_k vanishes")
    return lhs == pochhammer(c - b, k) / den


def gauss_sum_check(a_neg, b, c) -> bool:
    """2F1(a, b; c; 1) equals Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b))."""
    a, b, c = as_fraction(a_neg), as_fraction(b), as_fraction(c)
    if not is_nonpositive_integer(a):
        raise HypergeometricError("first parameter must be a non-positive integer")
    lhs = hyp([a, b], [c])
    try:
        rhs = gamma_quotient([c, c - a - b], [c - a, c - b])
    except GammaPole as exc:
        raise HypergeometricError(str(exc)) from exc
    return rhs.is_rational and rhs.rational() == lhs


def shift_reduce_check(series: TerminatingPFQ, shift: int) -> bool:
    """Check the reduction of a parameter pair ``c + shift`` over ``c``.

    The last upper parameter must equal the last lower parameter plus
    ``shift``; the others are the ``a_i`` and ``b_j`` of the reduced series.
    """
    if not series.upper or not series.lower:
        raise HypergeometricError("need at least one upper and one lower parameter")
    *a_rest, top = series.upper
    *b_rest, c = series.lower
    if top - c != shift or shift < 0:
        raise HypergeometricError(f"upper {top} is not lower {c} shifted by {shift}")
    lhs = eval_terminating(series)
    z = series.argument
    rhs = Fraction(0) if z.im == 0 else GaussianRational(0)
    for j in range(shift + 1):
        num = Fraction(comb(shift, j))
        for a in a_rest:
            num *= pochhammer(a, j)
        den = pochhammer(c, j)
        for b in b_rest:
            den *= pochhammer(b, j)
        if num == 0:
            continue
        if den == 0:
            raise HypergeometricError("shifted series has a vanishing lower parameter")
        inner = pfq([a + j for a in a_rest], [b + j for b in b_rest], z)
        if not any(is_nonpositive_integer(a) for a in inner.upper):
            raise HypergeometricError("shifted series does not terminate")
        term = eval_terminating(inner) * (num / den)
        rhs = rhs + term * (z.re**j if z.im == 0 else z**j)
    return lhs == rhs


def cor335_check(a, b, c, e, f) -> bool:
    """Check the two-term 3F2 transformation

    3F2(a,b,c; e,f; 1) = G(f)G(e+f-a-b-c) / (G(f-a)G(e+f-b-c))
                         * 3F2(a, e-b, e-c; e, e+f-b-c; 1)

    for ``a`` a non-positive integer. When ``f`` is itself a non-positive
    integer both sides are compared after dividing by Gamma(f).
    """
    a, b, c, e, f = map(as_fraction, (a, b, c, e, f))
    if not is_nonpositive_integer(a):
        raise HypergeometricError("a must be a non-positive integer")
    k = -int(a)
    x = e + f - b - c
    rhs_series = hyp([a, e - b, e - c], [e, x])
    if not is_nonpositive_integer(f):
        den = pochhammer(f, k)
        if den == 0:
            raise HypergeometricError("Gamma(f-a) has an uncancelled pole")
        lhs = hyp([a, b, c], [e, f])
        return lhs == pochhammer(x, k) / den * rhs_series
    # regularized: sum_k (a)_k (b)_k (c)_k / ((e)_k k!) / Gamma(f + k)
    if is_nonpositive_integer(e):
        raise HypergeometricError("both lower parameters are poles")
    lhs = Fraction(0)
    term = Fraction(1)
    for j in range(k + 1):
        if j:
            term = term * (a + j - 1) * (b + j - 1) * (c + j - 1) / ((e + j - 1) * j)
        lhs += term * rgamma_exact(f + j).rational()
    rhs = rgamma_exact(f - a).rational() * pochhammer(x, k) * rhs_series
    return lhs == rhs


# ---------------------------------------------------------------------------
# Whipple parametrisation


@dataclass(frozen=True)
class WhippleParams:
    """Six parameters ``r_0..r_5`` with zero sum."""

    r: tuple

    def __post_init__(self):
        r = tuple(as_fraction(x) for x in self.r)
        if len(r) != 6:
            raise ValueError("need exactly six r parameters")
        if sum(r) != 0:
            raise ValueError("r parameters must sum to zero")
        object.__setattr__(self, "r", r)

    def alpha(self, l: int, m: int, n: int) -> Fraction:
        if len({l, m, n}) != 3:
            raise ValueError("alpha indices must be distinct")
        return Fraction(1, 2) + self.r[l] + self.r[m] + self.r[n]

    def beta(self, m: int, n: int) -> Fraction:
        return 1 + self.r[m] - self.r[n]

    def fp_series(self, u: int, v: int, w: int) -> TerminatingPFQ:
        x, y, z = sorted(set(range(6)) - {u, v, w})
        upper = (self.alpha(v, w, x), self.alpha(v, w, y), self.alpha(v, w, z))
        lower = (self.beta(v, u), self.beta(w, u))
        return pfq(upper, lower)

    def fp(self, u: int, v: int, w: int) -> SqrtPiScaled:
        """Normalized function ``Fp(u; v, w)`` (reciprocal Gammas included)."""
        x, y, z = sorted(set(range(6)) - {u, v, w})
        pref = (
            rgamma_exact(self.alpha(x, y, z))
            * rgamma_exact(self.beta(v, u))
            * rgamma_exact(self.beta(w, u))
        )
        if pref.coeff == 0:
            return pref
        return pref * eval_terminating(self.fp_series(u, v, w))

    def rp_squared(self, u: int) -> SqrtPiScaled:
        """Product of Gamma(alpha) over triples avoiding ``u``; a pole at
        alpha is replaced by 1/Gamma(1 - alpha)."""
        out = SqrtPiScaled(Fraction(1))
        for t in combinations([i for i in range(6) if i != u], 3):
            al = self.alpha(*t)
            if is_nonpositive_integer(al):
                out = out / gamma_exact(1 - al)
            else:
                out = out * gamma_exact(al)
        return out


def whipple_solve(a, b, c, e, f) -> WhippleParams:
    """The r-parameters with alpha_145=a, alpha_245=b, alpha_345=c,
    beta_40=e, beta_50=f."""
    a, b, c, e, f = map(as_fraction, (a, b, c, e, f))
    half = Fraction(1, 2)
    r0 = (a + b + c - 2 * e - 2 * f + Fraction(5, 2)) / 3
    r4 = e - 1 + r0
    r5 = f - 1 + r0
    s45 = r4 + r5
    r1 = a - half - s45
    r2 = b - half - s45
    r3 = c - half - s45
    return WhippleParams((r0, r1, r2, r3, r4, r5))


def raynal_params(m: int, n: int, d: int, s: int) -> WhippleParams:
    if not (s >= 0 and d >= 0 and m >= n >= d + s):
        raise ValueError(f"need m >= n >= d + s, d, s >= 0; got {(m, n, d, s)}")
    return whipple_solve(-s, -d - m + n, -d, 1 - d + m - s, 1 - d + n - s)


def raynal_ratio(w: WhippleParams) -> SqrtPiScaled:
    """Signed square root of Rp(5)^2 / Rp(0)^2.

    The common factors cancel and what is left is the square of
    G(a012)G(a013)G(a023) / (G(a125)G(a135)G(a235)); that quotient is used
    directly, with the same pole replacement as in ``rp_squared``.
    """

    def g(*t):
        al = w.alpha(*t)
        if is_nonpositive_integer(al):
            return 1 / gamma_exact(1 - al)
        return gamma_exact(al)

    return g(0, 1, 2) * g(0, 1, 3) * g(0, 2, 3) / (g(1, 2, 5) * g(1, 3, 5) * g(2, 3, 5))


def raynal_check(m: int, n: int, d: int, s: int) -> bool:
    """Fp(0;4,5) = (-1)^(beta_05 - 1) Rp(5)/Rp(0) Fp(5;3,4) on the integer
    family, in both ratio and squared form."""
    w = raynal_params(m, n, d, s)
    lhs = w.fp(0, 4, 5)
    rhs5 = w.fp(5, 3, 4)
    sign_exp = w.beta(0, 5) - 1
    if sign_exp.denominator != 1:
        raise ValueError("beta_05 is not an integer")
    sign = -1 if int(sign_exp) % 2 else 1
    ratio = raynal_ratio(w)
    ratio_ok = lhs == sign * ratio * rhs5
    squared_ok = lhs * lhs * w.rp_squared(0) == rhs5 * rhs5 * w.rp_squared(5)
    sq_ratio_ok = ratio * ratio == w.rp_squared(5) / w.rp_squared(0)
    return ratio_ok and squared_ok and sq_ratio_ok


# ---------------------------------------------------------------------------
# the t-sum identity


def t_sum(m: int, n: int, d: int, s: int) -> int:
    """sum_t (-1)^t C(s,t) C(m-s, d-t+m-n) C(m-s, d-t)."""
    return sum(
        (-1) ** t * comb(s, t) * comb(m - s, d - t + m - n) * comb(m - s, d - t)
        for t in range(d + 1)
    )


def l1_rhs(m: int, n: int, d: int, s: int) -> Fraction:
    from math import factorial

    sign = (-1) ** ((d - n + s) % 2)
    pref = Fraction(
        comb(m - s, n - s) * comb(n, d) * factorial(s) * factorial(2 * m - s + 1),
        factorial(n) * factorial(2 * m - n + 1),
    )
    series = hyp([s - n, 2 * m - n - s + 1, m - d + 1], [2 * m - n + 2, m - n + 1])
    return sign * pref * series


def t1_rhs(m: int, n: int, d: int, s: int) -> Fraction:
    if n < d + s:
        raise ValueError("T1 form needs n >= d + s")
    pref = comb(m - s, n - d - s) * comb(m - s, d)
    return pref * hyp([-s, -d - m + n, -d], [m - s - d + 1, n - d - s + 1])


def t2_rhs(m: int, n: int, d: int, s: int) -> Fraction:
    if n > d + s:
        raise ValueError("T2 form needs n <= d + s")
    sign = (-1) ** ((d + s - n) % 2)
    pref = comb(s, n - d) * comb(m - s, n - s)
    return sign * pref * hyp([s - n, d - n, s - m], [d + s - n + 1, m - n + 1])


def verify_L1(m: int, n: int, d: int, s: int) -> bool:
    if not (m >= n >= d >= 0 and n >= s >= 0):
        raise ValueError(f"need m >= n >= d, s >= 0; got {(m, n, d, s)}")
    return t_sum(m, n, d, s) == l1_rhs(m, n, d, s)


def l1_tuples(m_max: int):
    for m in range(m_max + 1):
        for n in range(m + 1):
            for d in range(n + 1):
                for s in range(n + 1):
                    yield m, n, d, s
