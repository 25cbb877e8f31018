"""Jacobi polynomials with exact monomial coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

import numpy as np

from .exact import (
    SqrtPiScaled,
    as_fraction,
    comb,
    gamma_quotient,
    pochhammer,
)


@dataclass(frozen=True)
class JacobiPoly:
    k: int
    alpha: Fraction
    beta: Fraction
    coeffs: tuple  # coeffs[i] multiplies x**i

    def __call__(self, x):
        """Horner evaluation; accepts floats, complex numbers and arrays."""
        cs = [float(c) for c in self.coeffs]
        out = np.zeros_like(np.asarray(x, dtype=complex if np.iscomplexobj(x) else float))
        out = out + cs[-1]
        for c in reversed(cs[:-1]):
            out = out * x + c
        return out[()] if np.ndim(out) == 0 else out

    def exact(self, x) -> Fraction:
        x = as_fraction(x)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total


def poly_mul(a: Sequence, b: Sequence) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_pow(a: Sequence, n: int) -> list:
    out = [Fraction(1)]
    for _ in range(n):
        out = poly_mul(out, a)
    return out


def _trim(c: list) -> list:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


@lru_cache(maxsize=None)
def _jacobi_coeffs(k: int, alpha: Fraction, beta: Fraction) -> tuple:
    # binom(alpha+k, k) 2F1(-k, k+alpha+beta+1; alpha+1; (1-x)/2), with
    # (alpha+1)_k / (alpha+1)_j folded into (alpha+j+1)_(k-j)
    c = k + alpha + beta + 1
    half_one_minus_x = [Fraction(1, 2), Fraction(-1, 2)]
    out = [Fraction(0)] * (k + 1)
    power = [Fraction(1)]
    for j in range(k + 1):
        w = pochhammer(-k, j) * pochhammer(c, j) * pochhammer(alpha + j + 1, k - j)
        w /= factorial(j) * factorial(k)
        if w:
            for i, p in enumerate(power):
                out[i] += w * p
        power = poly_mul(power, half_one_minus_x)
    return tuple(out)


def jacobi_poly(k: int, alpha=0, beta=0) -> JacobiPoly:
    """Jacobi polynomial P_k^(alpha, beta) as exact monomial coefficients.

    Negative integer ``alpha`` is allowed: the vanishing prefactor is
    cancelled term by term against the ``(alpha+1)_j`` denominators.
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"degree must be a non-negative integer, got {k!r}")
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    return JacobiPoly(k, alpha, beta, _jacobi_coeffs(k, alpha, beta))


def jacobi_by_recurrence(k: int, alpha=0, beta=0) -> JacobiPoly:
    """Same polynomial from the three-term recurrence (generic parameters)."""
    a, b = as_fraction(alpha), as_fraction(beta)
    p_prev = [Fraction(1)]
    if k == 0:
        return JacobiPoly(0, a, b, tuple(p_prev))
    p = [(a - b) / 2, (a + b + 2) / 2]
    for n in range(2, k + 1):
        ab = a + b
        a1 = 2 * n * (n + ab) * (2 * n + ab - 2)
        a2 = (2 * n + ab - 1) * (a * a - b * b)
        a3 = (2 * n + ab - 2) * (2 * n + ab - 1) * (2 * n + ab)
        a4 = 2 * (n + a - 1) * (n + b - 1) * (2 * n + ab)
        if a1 == 0:
            raise ZeroDivisionError("recurrence breaks down for these parameters")
        nxt = [Fraction(0)] * (n + 1)
        for i, c in enumerate(p):
            nxt[i] += a2 * c / a1
            nxt[i + 1] += a3 * c / a1
        for i, c in enumerate(p_prev):
            nxt[i] -= a4 * c / a1
        p_prev, p = p, nxt
    return JacobiPoly(k, a, b, tuple(p))


def orthogonality_constant(alpha, beta, k: int):
    """Exact norm ``A_{alpha,beta,k}`` of P_k^(alpha,beta).

    Returns a Fraction when the value is rational, otherwise a
    :class:`SqrtPiScaled`. ``alpha + beta`` must be an integer so the
    power of two stays rational.
    """
    a, b = as_fraction(alpha), as_fraction(beta)
    if a <= -1 or b <= -1:
        raise ValueError("need alpha, beta > -1")
    if (2 * a).denominator != 1 or (2 * b).denominator != 1:
        raise ValueError("alpha and beta must be integers or half-integers")
    ab = a + b
    if ab.denominator != 1:
        raise ValueError("alpha + beta must be an integer for an exact value")
    p2 = int(ab) + 1
    two_pow = Fraction(2) ** p2
    if k == 0:
        # (alpha+beta+1) Gamma(alpha+beta+1) = Gamma(alpha+beta+2)
        val = gamma_quotient([a + 1, b + 1], [ab + 2]) * two_pow
    else:
        val = gamma_quotient([k + a + 1, k + b + 1], [k + ab + 1]) * (
            two_pow / (factorial(k) * (2 * k + ab + 1))
        )
    return val.rational() if val.is_rational else val


def weighted_inner(p: JacobiPoly, q: JacobiPoly, alpha: int, beta: int) -> Fraction:
    """Exact integral of (1-x)^alpha (1+x)^beta p(x) q(x) over [-1, 1]
    for integers alpha, beta >= 0."""
    if alpha < 0 or beta < 0 or int(alpha) != alpha or int(beta) != beta:
        raise ValueError("exact weighted integral needs integer alpha, beta >= 0")
    w = poly_mul(poly_pow([Fraction(1), Fraction(-1)], int(alpha)),
                 poly_pow([Fraction(1), Fraction(1)], int(beta)))
    integrand = poly_mul(poly_mul(list(p.coeffs), list(q.coeffs)), w)
    return sum(
        (c * Fraction(2, i + 1) for i, c in enumerate(integrand) if i % 2 == 0),
        Fraction(0),
    )


def symmetry_check(k: int, alpha=0, beta=0) -> bool:
    """P_k^(a,b)(x) == (-1)^k P_k^(b,a)(-x), coefficientwise."""
    p = jacobi_poly(k, alpha, beta).coeffs
    q = jacobi_poly(k, beta, alpha).coeffs
    sign = -1 if k % 2 else 1
    return all(pc == sign * (-1) ** i * qc for i, (pc, qc) in enumerate(zip(p, q)))


def bound(k: int, alpha) -> Fraction:
    """(alpha+1)_k / k!, the sup-norm bound for alpha >= beta >= -1/2."""
    return pochhammer(as_fraction(alpha) + 1, k) / factorial(k)


def bound_check(k: int, alpha, beta, samples) -> bool:
    a, b = as_fraction(alpha), as_fraction(beta)
    if not (a >= b >= Fraction(-1, 2)):
        raise ValueError("bound needs alpha >= beta >= -1/2")
    xs = np.asarray(samples, dtype=float)
    if np.any(np.abs(xs) > 1):
        raise ValueError("samples must lie in [-1, 1]")
    vals = np.abs(jacobi_poly(k, a, b)(xs))
    lim = float(bound(k, a))
    return bool(np.all(vals <= lim * (1 + 1e-12)))


def index_lowering_check(k: int, l: int, beta) -> bool:
    """C(k,l) P_k^(-l,beta) == C(k+beta,l) ((x-1)/2)^l P_{k-l}^(l,beta)."""
    from .exact import binomial

    beta = as_fraction(beta)
    lhs = [comb(k, l) * c for c in jacobi_poly(k, -l, beta).coeffs]
    fac = binomial(k + beta, l)
    rhs = poly_mul(
        poly_pow([Fraction(-1, 2), Fraction(1, 2)], l),
        list(jacobi_poly(k - l, l, beta).coeffs),
    )
    rhs = [fac * c for c in rhs]
    return _trim(list(lhs)) == _trim(rhs)


def parity_coefficients(k: int, alpha) -> list:
    """c_j with P_k^(alpha,alpha)(x) = sum_j c_j x^(k-2j)."""
    coeffs = jacobi_poly(k, alpha, alpha).coeffs
    if any(c for i, c in enumerate(coeffs) if (k - i) % 2):
        raise ArithmeticError("parity violated")
    return [coeffs[k - 2 * j] for j in range(k // 2 + 1)]
