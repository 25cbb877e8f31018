"""Poisson Fourier modes and the old basis functions f_{p,q} on Omega.

Omega is the set of pairs (z, w) on the Riemann sphere with z*w != 1,
where infinity times zero counts as 1. Numeric kernels take finite
numpy arrays; the ``*_eval`` entry points accept :class:`OmegaPoint`
values and route points with an infinite coordinate through the
inversion (z, w) -> (1/w, 1/z), which maps them to finite points.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import comb, sqrt
from typing import Callable, Iterable, Union

import numpy as np

from .jacobi import jacobi_poly

OMEGA_TOL = 1e-12


class OutsideDomain(ValueError):
    """A point is not in Omega (or not in the region an operation needs)."""


@dataclass(frozen=True)
class ExtendedComplex:
    """A point of the Riemann sphere: a finite complex number or infinity."""

    value: complex = 0j
    infinite: bool = False

    @classmethod
    def of(cls, x) -> "ExtendedComplex":
        if isinstance(x, ExtendedComplex):
            return x
        if isinstance(x, str) and x.strip().lower() in {"inf", "infinity", "oo"}:
            return INF
        c = complex(x)
        if cmath.isinf(c):
            return INF
        if cmath.isnan(c):
            raise ValueError("NaN is not a point of the Riemann sphere")
        return cls(c, False)

    def reciprocal(self) -> "ExtendedComplex":
        if self.infinite:
            return ZERO
        if self.value == 0:
            return INF
        return ExtendedComplex(1 / self.value)

    def times(self, other: "ExtendedComplex") -> "ExtendedComplex":
        """Product with the convention inf*0 = 0*inf = 1."""
        if self.infinite or other.infinite:
            finite = other if self.infinite else self
            if not finite.infinite and finite.value == 0:
                return ExtendedComplex(1 + 0j)
            return INF
        return ExtendedComplex(self.value * other.value)

    def __complex__(self):
        if self.infinite:
            raise OverflowError("point at infinity has no finite value")
        return self.value

    def __str__(self):
        return "inf" if self.infinite else str(self.value)


INF = ExtendedComplex(0j, True)
ZERO = ExtendedComplex(0j, False)

PointLike = Union["OmegaPoint", tuple]


@dataclass(frozen=True)
class OmegaPoint:
    z: ExtendedComplex
    w: ExtendedComplex

    def __post_init__(self):
        object.__setattr__(self, "z", ExtendedComplex.of(self.z))
        object.__setattr__(self, "w", ExtendedComplex.of(self.w))
        prod = self.z.times(self.w)
        if not prod.infinite and abs(prod.value - 1) < OMEGA_TOL:
            raise OutsideDomain(f"({self.z}, {self.w}) is not in Omega: z*w = 1")

    @classmethod
    def of(cls, p) -> "OmegaPoint":
        if isinstance(p, OmegaPoint):
            return p
        z, w = p
        return cls(ExtendedComplex.of(z), ExtendedComplex.of(w))

    @property
    def is_finite(self) -> bool:
        return not (self.z.infinite or self.w.infinite)

    def inverted(self) -> "OmegaPoint":
        """(1/w, 1/z); always finite when one coordinate is infinite."""
        return OmegaPoint(self.w.reciprocal(), self.z.reciprocal())

    def swapped(self) -> "OmegaPoint":
        return OmegaPoint(self.w, self.z)

    def finite(self) -> tuple[complex, complex]:
        return complex(self.z), complex(self.w)


@dataclass(frozen=True)
class PFMIndex:
    m: int
    n: int

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 0:
            raise ValueError(f"m must be a non-negative integer, got {self.m!r}")
        if int(self.n) != self.n:
            raise ValueError(f"n must be an integer, got {self.n!r}")

    @property
    def eigenvalue(self) -> int:
        return 4 * self.m * (self.m + 1)

    @property
    def is_zero(self) -> bool:
        return abs(self.n) > self.m


def _index(idx) -> PFMIndex:
    return idx if isinstance(idx, PFMIndex) else PFMIndex(*idx)


# ---------------------------------------------------------------------------
# numeric kernels on finite arrays


def pfm(m: int, n: int, z, w):
    """P_n^{-m}(z, w) for finite complex scalars or arrays.

    Written in the variables zw/(1-zw), 1/(1-zw) and w/(1-zw) so that no
    large power of 1/(1-zw) is formed separately from the numerator.
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if n < 0:
        z, w, n = w, z, -n
    if n > m:
        return np.zeros(np.broadcast(z, w).shape, dtype=complex)[()]
    inv = 1 / (1 - z * w)
    a = z * w * inv
    c = w * inv
    total = sum(
        comb(m, k + n) * comb(m, k) * a**k * inv ** (m - n - k) for k in range(m - n + 1)
    )
    out = (-1) ** n * c**n * total
    return np.asarray(out)[()]


def f_pq(p: int, q: int, z, w):
    """f_{p,q}(z, w) = z^p w^q / (1 - zw)^max(p, q) for finite arguments."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if p < q:
        return f_pq(q, p, w, z)
    inv = 1 / (1 - z * w)
    return np.asarray((z * inv) ** (p - q) * (z * w * inv) ** q)[()]


def _f_pq_at_infinity(p: int, q: int, pt: OmegaPoint) -> complex:
    # with (z', w') = (1/w, 1/z) the formula becomes
    # (-1)^M z'^(M-q) w'^(M-p) / (1 - z'w')^M, which is finite everywhere
    zi, wi = pt.inverted().finite()
    mx = max(p, q)
    return complex((-1) ** mx * zi ** (mx - q) * wi ** (mx - p) / (1 - zi * wi) ** mx)


# ---------------------------------------------------------------------------
# point evaluators


def pfm_eval(idx, p) -> complex:
    """P_n^{-m} at any point of Omega."""
    idx = _index(idx)
    p = OmegaPoint.of(p)
    if idx.is_zero:
        return 0j
    if p.is_finite:
        return complex(pfm(idx.m, idx.n, *p.finite()))
    z, w = p.inverted().finite()
    return (-1) ** idx.m * complex(pfm(idx.m, idx.n, z, w))


def pfm_eval_jacobi(idx, p) -> complex:
    """P_n^{-m} through the Jacobi polynomial of parameters (|n|, |n|)."""
    idx = _index(idx)
    p = OmegaPoint.of(p)
    if not p.is_finite:
        raise OutsideDomain("Jacobi form needs finite coordinates")
    if idx.is_zero:
        raise ValueError("Jacobi form needs |n| <= m")
    z, w = p.finite()
    k = abs(idx.n)
    zw = z * w
    poly = jacobi_poly(idx.m - k, k, k)
    x = (zw + 1) / (zw - 1)
    power = w**k if idx.n >= 0 else z**k
    return complex((-1) ** idx.m * power / (1 - zw) ** k * poly(x))


def pfm_fourier_integral(idx, z: complex, w: complex, nodes: int = 256) -> complex:
    """Trapezoid rule for the Fourier coefficient of the Poisson kernel power.

    For integer m the integrand is a trigonometric polynomial of degree m,
    so any ``nodes > 2m`` gives the exact value up to rounding.
    """
    idx = _index(idx)
    z, w = complex(z), complex(w)
    if abs(z) >= 1 or abs(w) >= 1:
        raise OutsideDomain("Fourier form needs z and w in the unit disk")
    if nodes < 1:
        raise ValueError("need at least one node")
    t = 2 * np.pi * np.arange(nodes) / nodes
    e = np.exp(1j * t)
    kernel = (1 - z / e) * (1 - w * e) / (1 - z * w)
    vals = kernel**idx.m * np.exp(-1j * idx.n * t)
    return complex(vals.mean())


def f_pq_eval(p_idx: int, q_idx: int, pt) -> complex:
    if p_idx < 0 or q_idx < 0:
        raise ValueError("f_{p,q} needs p, q >= 0")
    pt = OmegaPoint.of(pt)
    if pt.is_finite:
        return complex(f_pq(p_idx, q_idx, *pt.finite()))
    return _f_pq_at_infinity(p_idx, q_idx, pt)


def y_factor(m: int, n: int) -> complex:
    """sqrt(2m+1) * i^|n| * sqrt(C(m+|n|,|n|) / C(m,|n|)); zero when |n| > m."""
    k = abs(n)
    if k > m:
        return 0j
    return sqrt(2 * m + 1) * 1j**k * sqrt(comb(m + k, k) / comb(m, k))


def y_eval(idx, pt) -> complex:
    """Orthonormalised mode Y_n^{-m}."""
    idx = _index(idx)
    return y_factor(idx.m, idx.n) * pfm_eval(idx, pt)


# ---------------------------------------------------------------------------
# differential checks

# sixth-order central difference: f'(x) ~ sum_k c_k (f(x+kh) - f(x-kh)) / h
_STENCIL = ((1, 3 / 4), (2, -3 / 20), (3, 1 / 60))


def laplacian_zw(F: Callable, pt, h: float = 1e-3) -> complex:
    """4 (1-zw)^2 d_z d_w F at a finite point, by a 6th-order stencil.

    ``F`` is called as ``F(z, w)`` with finite complex arguments. The step
    is scaled by |1 - zw| so the stencil stays clear of the singular set.
    Differences are taken in antisymmetric pairs, so functions of z or w
    alone give exactly zero.
    """
    z, w = OmegaPoint.of(pt).finite()
    one_minus = 1 - z * w
    step = h * min(1.0, abs(one_minus))
    reach = len(_STENCIL) * step
    if abs(z) * reach + abs(w) * reach + reach * reach >= abs(one_minus) - OMEGA_TOL:
        raise OutsideDomain("stencil touches z*w = 1")

    def d_w(zz: complex) -> complex:
        return sum(
            c * (complex(F(zz, w + k * step)) - complex(F(zz, w - k * step))) for k, c in _STENCIL
        )

    mixed = sum(c * (d_w(z + k * step) - d_w(z - k * step)) for k, c in _STENCIL)
    return 4 * one_minus**2 * mixed / step**2


def eigen_residual(idx, sample_points: Iterable) -> float:
    """max |Delta P - 4m(m+1) P| / (1 + |P|) over the samples."""
    idx = _index(idx)
    lam = idx.eigenvalue

    def F(z, w):
        return pfm(idx.m, idx.n, z, w)

    worst = 0.0
    for pt in sample_points:
        val = pfm_eval(idx, pt)
        res = abs(laplacian_zw(F, pt) - lam * val) / (1 + abs(val))
        worst = max(worst, res)
    return worst


def homogeneity_check(idx, pt, xi: complex, tol: float = 1e-12) -> bool:
    """P(xi z, w/xi) == xi^(-n) P(z, w) for unit-modulus xi."""
    idx = _index(idx)
    xi = complex(xi)
    if abs(abs(xi) - 1) > 1e-12:
        raise ValueError("xi must have modulus 1")
    z, w = OmegaPoint.of(pt).finite()
    lhs = pfm_eval(idx, (xi * z, w / xi))
    rhs = xi ** (-idx.n) * pfm_eval(idx, (z, w))
    return abs(lhs - rhs) <= tol * max(1.0, abs(rhs))
