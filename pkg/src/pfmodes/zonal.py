"""Complex zonal harmonics and their restrictions to the sphere and the disk."""

from __future__ import annotations

import math

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .exact import comb, gauss_mul as _gmul, gauss_pow as _gpow, gauss_quotient
from .jacobi import jacobi_poly
from .moebius import MoebiusMap, apply, compose, rho, t_tilde, t_zw
from .pfm import ExtendedComplex, OmegaPoint, OutsideDomain, pfm, pfm_eval, y_factor
from .quadrature import SphereQuadrature
from .sphere import stereo

REAL_TOL = 1e-11


def _scaled_chart(p: OmegaPoint, shift: int) -> tuple[tuple[int, int], tuple[int, int]]:
    z, w = p.finite()
    return tuple(
        (int(Fraction(x.real) * 2**shift), int(Fraction(x.imag) * 2**shift)) for x in (z, w)
    )


def _binary_shift(*values: complex) -> int:
    """Smallest e with every coordinate an integer multiple of 2^-e."""
    e = 0
    for v in values:
        for x in (v.real, v.imag):
            e = max(e, Fraction(x).denominator.bit_length() - 1)
    return e


def _pfm_numerators(m: int, Z, W, D: int) -> list[tuple[int, int]]:
    """Gaussian integers N_n with P_n^{-m}(Z/D, W/D) = N_n / (D^2 - ZW)^m, n = -m..m."""
    ZW = _gmul(Z, W)
    out = []
    for n in range(-m, m + 1):
        k0 = abs(n)
        lead = _gpow(W if n >= 0 else Z, k0)
        acc = (0, 0)
        for k in range(m - k0 + 1):
            c = comb(m, k + k0) * comb(m, k) * D ** (2 * m - k0 - 2 * k)
            t = _gmul(lead, _gpow(ZW, k))
            acc = (acc[0] + c * t[0], acc[1] + c * t[1])
        sign = -1 if k0 % 2 else 1
        out.append((sign * acc[0], sign * acc[1]))
    return out


@dataclass(frozen=True)
class ZonalEvaluator:
    """Z_m as a sum over the orthonormal modes Y_j^{-m}.

    Y_j Y_{-j} = (2m+1) (-1)^j C(m+|j|,|j|) / C(m,|j|) is rational, so with
    ``exact`` (the default) the sum is formed in Gaussian integers from the
    binary values of the coordinates and rounded once. The float sum cancels badly near
    the singular set, where single terms can exceed the result by ten
    orders of magnitude.
    """

    m: int
    exact: bool = True
    factors: tuple = field(init=False)

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("degree must be >= 0")
        object.__setattr__(
            self, "factors", tuple(y_factor(self.m, n) for n in range(-self.m, self.m + 1))
        )

    def factor(self, n: int) -> complex:
        return self.factors[n + self.m]

    def __call__(self, p1, p2) -> complex:
        p1, p2 = OmegaPoint.of(p1), OmegaPoint.of(p2)
        if self.exact:
            return self._rational_sum(p1, p2)
        total = 0j
        for j in range(-self.m, self.m + 1):
            total += (
                self.factor(j) * pfm_eval((self.m, j), p1)
                * self.factor(-j) * pfm_eval((self.m, -j), p2)
            )
        return total

    def _rational_sum(self, p1: OmegaPoint, p2: OmegaPoint) -> complex:
        m = self.m
        flips = [not p.is_finite for p in (p1, p2)]
        pts = [p.inverted() if f else p for p, f in zip((p1, p2), flips)]
        shift = _binary_shift(*pts[0].finite(), *pts[1].finite())
        D = 2**shift
        (Z1, W1), (Z2, W2) = (_scaled_chart(p, shift) for p in pts)
        N1 = _pfm_numerators(m, Z1, W1, D)
        N2 = _pfm_numerators(m, Z2, W2, D)
        weights = [
            Fraction((2 * m + 1) * (-1) ** abs(j) * comb(m + abs(j), abs(j)), comb(m, abs(j)))
            for j in range(-m, m + 1)
        ]
        scale = math.lcm(*(wt.denominator for wt in weights))
        num = (0, 0)
        for i, wt in enumerate(weights):
            c = int(wt * scale)
            t = _gmul(N1[i], N2[2 * m - i])
            num = (num[0] + c * t[0], num[1] + c * t[1])
        one = (D * D, 0)
        den = _gmul(
            _gpow((one[0] - _gmul(Z1, W1)[0], -_gmul(Z1, W1)[1]), m),
            _gpow((one[0] - _gmul(Z2, W2)[0], -_gmul(Z2, W2)[1]), m),
        )
        den = (den[0] * scale, den[1] * scale)
        return (-1) ** (m * sum(flips)) * gauss_quotient(num, den)

    def kernel(self, p1, z, w) -> np.ndarray:
        """Z_m(p1, (z, w)) for finite arrays z, w."""
        p1 = OmegaPoint.of(p1)
        out = np.zeros(np.broadcast(z, w).shape, dtype=complex)
        for j in range(-self.m, self.m + 1):
            coeff = self.factor(j) * self.factor(-j) * pfm_eval((self.m, j), p1)
            out += coeff * pfm(self.m, -j, z, w)
        return out


def zonal_sum(m: int, p1, p2) -> complex:
    return ZonalEvaluator(m)(p1, p2)


def _finite_pair(p: OmegaPoint) -> bool:
    return p.is_finite


def _nonzero_pair(p: OmegaPoint) -> bool:
    return all(x.infinite or x.value != 0 for x in (p.z, p.w))


def zonal_pullback(m: int, p1, p2, check_overlap: bool = False) -> complex:
    """(2m+1) P_0^{-m}(C(p1)), where C exchanges p2 and (0, 0).

    C is t_zw when p2 is finite and t_tilde otherwise. With
    ``check_overlap`` both branches are evaluated where both exist and
    must agree.
    """
    p1, p2 = OmegaPoint.of(p1), OmegaPoint.of(p2)
    values = []
    if _finite_pair(p2):
        values.append(pfm_eval((m, 0), apply(t_zw(*p2.finite()), p1)))
    if _nonzero_pair(p2) and (check_overlap or not values):
        values.append(pfm_eval((m, 0), apply(t_tilde(p2.z, p2.w), p1)))
    if not values:
        raise OutsideDomain("no centring map for this point")
    if len(values) == 2:
        a, b = values
        if abs(a - b) > 1e-9 * max(1.0, abs(a)):
            raise ArithmeticError(f"pullback branches disagree: {a} vs {b}")
    return (2 * m + 1) * values[0]


def zonal_invariance_residual(
    m: int, T: MoebiusMap, pairs: Iterable, relative: bool = False
) -> float:
    """max |Z_m(T p1, T p2) - Z_m(p1, p2)|.

    With ``relative`` each difference is divided by max(1, |Z_m(p1, p2)|);
    Z_m grows quickly away from the diagonal, so this is the meaningful
    measure for maps that send samples far out.
    """
    Z = ZonalEvaluator(m)
    worst = 0.0
    for p1, p2 in pairs:
        ref = Z(p1, p2)
        diff = abs(Z(apply(T, p1), apply(T, p2)) - ref)
        worst = max(worst, diff / max(1.0, abs(ref)) if relative else diff)
    return worst


def _default_samples(count: int = 20, seed: int = 11) -> list[tuple[complex, complex]]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        z, w = (complex(*rng.uniform(-0.7, 0.7, 2)) for _ in range(2))
        if abs(1 - z * w) > 0.1:
            out.append((z, w))
    return out


def fixed_point_invariance(m: int, uv, gamma: complex, samples=None) -> float:
    """Invariance of Z_m(., (u, v)) under t_zw(u,v) o rho(gamma) o t_zw(u,v)."""
    uv = OmegaPoint.of(uv)
    if not uv.is_finite:
        raise ValueError("fixed point must be finite")
    c = t_zw(*uv.finite())
    T = compose(c, compose(rho(gamma), c))
    Z = ZonalEvaluator(m)
    worst = 0.0
    for p in samples if samples is not None else _default_samples():
        img = apply(T, p)
        worst = max(worst, abs(Z(img, uv) - Z(p, uv)))
    return worst


def reproducing_residual(m: int, F: Callable, pt, q: SphereQuadrature | None = None) -> float:
    """|integral of F(eta, -conj eta) Z_m(pt, (eta, -conj eta)) - F(pt)|."""
    from .quadrature import _fsum, _values

    q = q or SphereQuadrature()
    z, w, weight = q.grid()
    integral = _fsum(weight * _values(F, z, w) * ZonalEvaluator(m).kernel(pt, z, w))
    p = OmegaPoint.of(pt)
    target = complex(F(*p.finite())) if p.is_finite else None
    if target is None:
        raise ValueError("reproducing check needs a finite point")
    return abs(integral - target)


def _real(value: complex, m: int) -> float:
    # disk values are unbounded, so the tolerance follows the magnitude
    if abs(value.imag) > REAL_TOL * (2 * m + 1) * max(1.0, abs(value.real)):
        raise ArithmeticError(f"expected a real value, imaginary part {value.imag}")
    return value.real


def sphere_point(z) -> OmegaPoint:
    """(z, -conj z) on the rotated diagonal; infinity maps to (inf, inf)."""
    z = ExtendedComplex.of(z)
    if z.infinite:
        return OmegaPoint(z, z)
    return OmegaPoint(z, -z.value.conjugate())


def disk_point(z) -> OmegaPoint:
    z = complex(z)
    if abs(z) >= 1:
        raise OutsideDomain("disk point must satisfy |z| < 1")
    return OmegaPoint(z, z.conjugate())


def legendre(m: int, x):
    return jacobi_poly(m, 0, 0)(x)


def _bilinear(p1: OmegaPoint, p2: OmegaPoint) -> complex:
    x, y = stereo(p1).as_tuple(), stereo(p2).as_tuple()
    return sum(a * b for a, b in zip(x, y))


def zonal_sphere(m: int, z, u) -> float:
    """(2m+1) P_m(<x, y>) for x, y the sphere points of z and u."""
    t = _bilinear(sphere_point(z), sphere_point(u))
    t = _real(t, 0)
    return _real(complex((2 * m + 1) * legendre(m, t)), m)


def zonal_disk(m: int, z, u) -> float:
    """(2m+1) P_0^{-m} o t_zw(u, conj u) at (z, conj z)."""
    p, c = disk_point(z), disk_point(u)
    return _real((2 * m + 1) * pfm_eval((m, 0), apply(t_zw(*c.finite()), p)), m)


def zonal_disk_legendre(m: int, z, u) -> float:
    """Same value through the hyperboloid points of z and u."""
    t = _real(_bilinear(disk_point(z), disk_point(u)), 0)
    return float((2 * m + 1) * legendre(m, t))
