"""The complex two-sphere: stereographic maps, spherical modes and harmonic polynomials."""

from __future__ import annotations

import cmath
import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .exact import GaussianRational, I
from .jacobi import jacobi_poly, parity_coefficients
from .pfm import INF, ExtendedComplex, OmegaPoint, OutsideDomain, _index, pfm_eval

SPHERE_TOL = 1e-12


@dataclass(frozen=True)
class SpherePointC:
    z1: complex
    z2: complex
    z3: complex

    def __post_init__(self):
        vals = [complex(v) for v in (self.z1, self.z2, self.z3)]
        for name, v in zip(("z1", "z2", "z3"), vals):
            object.__setattr__(self, name, v)
        scale = max(1.0, *(abs(v) ** 2 for v in vals))
        if abs(sum(v * v for v in vals) - 1) > SPHERE_TOL * scale:
            raise OutsideDomain(f"{tuple(vals)} is not on the complex sphere")

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return self.z1, self.z2, self.z3


def stereo(p) -> SpherePointC:
    """The biholomorphic map from Omega onto the complex sphere."""
    p = OmegaPoint.of(p)
    if p.is_finite:
        z, w = p.finite()
        d = 1 - z * w
        return SpherePointC((z - w) / d, -1j * (z + w) / d, -(1 + z * w) / d)
    if p.w.infinite:
        inv = 0j if p.z.infinite else 1 / p.z.value
        return SpherePointC(inv, 1j * inv, 1)
    inv = 1 / p.w.value
    return SpherePointC(-inv, 1j * inv, 1)


def stereo_inv(s) -> OmegaPoint:
    """Complex stereographic projection back onto Omega."""
    if not isinstance(s, SpherePointC):
        s = SpherePointC(*s)
    z1, z2, z3 = s.as_tuple()
    if abs(1 - z3) > SPHERE_TOL:
        d = 1 - z3
        return OmegaPoint((z1 + 1j * z2) / d, -(z1 - 1j * z2) / d)
    if abs(z1) <= SPHERE_TOL:
        return OmegaPoint(INF, INF)
    if abs(z2 - 1j * z1) <= SPHERE_TOL * max(1.0, abs(z1)):
        return OmegaPoint(1 / z1, INF)
    return OmegaPoint(INF, -1 / z1)


def complex_norm(v: Iterable) -> complex:
    """Principal square root of z1^2 + z2^2 + z3^2."""
    total = sum(complex(x) ** 2 for x in v)
    if total.imag == 0 and total.real <= 0:
        raise ValueError(f"sum of squares {total} lies on the branch cut")
    return cmath.sqrt(total)


def spfm_eval(idx, s) -> complex:
    """The spherical mode Q_n^{-m} = P_n^{-m} composed with the inverse projection."""
    return pfm_eval(idx, stereo_inv(s))


def csh_closed_form(idx, s):
    """(-1)^m ((-+z1 + i z2)/2)^|n| P_{m-|n|}^{(|n|,|n|)}(z3).

    The upper sign belongs to n >= 0. Accepts a :class:`SpherePointC`
    or a triple of (possibly array valued) coordinates.
    """
    idx = _index(idx)
    if idx.is_zero:
        raise ValueError("need |n| <= m")
    z1, z2, z3 = s.as_tuple() if isinstance(s, SpherePointC) else s
    z1, z2, z3 = (np.asarray(v, dtype=complex) for v in (z1, z2, z3))
    k = abs(idx.n)
    sign = -1 if idx.n >= 0 else 1
    base = (sign * z1 + 1j * z2) / 2
    out = (-1) ** idx.m * base**k * jacobi_poly(idx.m - k, k, k)(z3)
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# exact trivariate polynomials


def _gauss(x) -> GaussianRational:
    return GaussianRational.of(x)


class TrivariatePoly:
    """Finitely supported map (i, j, k) -> coefficient of z1^i z2^j z3^k."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for key, c in (terms or {}).items():
            c = _gauss(c)
            if c:
                clean[tuple(int(e) for e in key)] = c
        self._terms = clean

    @classmethod
    def variable(cls, index: int) -> "TrivariatePoly":
        key = [0, 0, 0]
        key[index] = 1
        return cls({tuple(key): 1})

    @classmethod
    def constant(cls, c) -> "TrivariatePoly":
        return cls({(0, 0, 0): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def degree(self) -> int:
        return max((sum(k) for k in self._terms), default=0)

    def is_homogeneous(self, m: int) -> bool:
        return all(sum(k) == m for k in self._terms)

    def __eq__(self, other):
        if isinstance(other, TrivariatePoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "TrivariatePoly") -> "TrivariatePoly":
        out = defaultdict(GaussianRational, self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c
        return TrivariatePoly(out)

    def __sub__(self, other: "TrivariatePoly") -> "TrivariatePoly":
        return self + other.scale(-1)

    def scale(self, c) -> "TrivariatePoly":
        c = _gauss(c)
        return TrivariatePoly({k: v * c for k, v in self._terms.items()})

    def __mul__(self, other: "TrivariatePoly") -> "TrivariatePoly":
        out: dict = defaultdict(GaussianRational)
        for ka, ca in self._terms.items():
            for kb, cb in other._terms.items():
                key = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
                out[key] = out[key] + ca * cb
        return TrivariatePoly(out)

    def __pow__(self, n: int) -> "TrivariatePoly":
        out = TrivariatePoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self, var: int) -> "TrivariatePoly":
        out = {}
        for key, c in self._terms.items():
            if key[var]:
                new = list(key)
                new[var] -= 1
                out[tuple(new)] = c * key[var]
        return TrivariatePoly(out)

    def __call__(self, z1, z2, z3):
        """Numeric evaluation (floats, complex numbers or arrays)."""
        total = 0j
        for (i, j, k), c in self._terms.items():
            total = total + complex(c) * z1**i * z2**j * z3**k
        return total

    def exact(self, z1, z2, z3) -> GaussianRational:
        z1, z2, z3 = _gauss(z1), _gauss(z2), _gauss(z3)
        total = GaussianRational()
        for (i, j, k), c in self._terms.items():
            total = total + c * z1**i * z2**j * z3**k
        return total

    def to_json(self) -> str:
        return json.dumps(
            [
                {"i": i, "j": j, "k": k, "re": str(c.re), "im": str(c.im)}
                for (i, j, k), c in sorted(self._terms.items())
            ]
        )

    def __repr__(self):
        return f"TrivariatePoly({self._terms!r})"


Z1, Z2, Z3 = (TrivariatePoly.variable(i) for i in range(3))


def laplacian_C3(poly: TrivariatePoly) -> TrivariatePoly:
    out = TrivariatePoly()
    for var in range(3):
        out = out + poly.derivative(var).derivative(var)
    return out


def harmonic_polynomial(m: int, n: int) -> TrivariatePoly:
    """The m-homogeneous harmonic polynomial restricting to csh_closed_form.

    Every z3^(k-2j) in the parity expansion of the Jacobi polynomial is
    padded with (z1^2 + z2^2 + z3^2)^j to reach total degree m.
    """
    k = abs(n)
    if k > m:
        raise ValueError("need |n| <= m")
    sign = -1 if n >= 0 else 1
    base = (Z1.scale(sign) + Z2.scale(I)).scale(Fraction(1, 2))
    r2 = Z1 * Z1 + Z2 * Z2 + Z3 * Z3
    radial = TrivariatePoly()
    for j, c in enumerate(parity_coefficients(m - k, k)):
        radial = radial + (Z3 ** (m - k - 2 * j) * r2**j).scale(c)
    return (base**k * radial).scale((-1) ** m)


# ---------------------------------------------------------------------------
# integral and hyperboloid checks


def sphere_gram_check(m_max: int, q=None) -> float:
    """Orthogonality of the spherical modes over the real unit sphere.

    The quadrature grid on the rotated diagonal is pushed to the real
    sphere by ``stereo`` (x3 = 2u - 1, so the measure is the normalised
    area measure) and the modes are evaluated through the closed form.
    """
    from .quadrature import SphereQuadrature, gram_closed_form, mode_indices

    q = q or SphereQuadrature()
    z, w, weight = q.grid()
    d = 1 - z * w
    x = ((z - w) / d, -1j * (z + w) / d, -(1 + z * w) / d)
    idx = list(mode_indices(m_max))
    vals = np.stack([np.ravel(csh_closed_form(i, x)) for i in idx])
    gram = (vals * weight.ravel()) @ vals.conj().T
    return max(
        abs(gram[a, b] - gram_closed_form(*ia, *ib))
        for a, ia in enumerate(idx)
        for b, ib in enumerate(idx)
    )


def hyperboloid_point(r: float, phi: float, sheet: str = "lower") -> tuple[float, float, float]:
    """A real point on -x1^2 - x2^2 + x3^2 = 1."""
    x3 = np.sqrt(1 + r * r)
    return r * np.cos(phi), r * np.sin(phi), -x3 if sheet == "lower" else x3


def hyperboloid_image(x) -> OmegaPoint:
    x1, x2, x3 = (float(v) for v in x)
    if abs(-x1 * x1 - x2 * x2 + x3 * x3 - 1) > 1e-10 * max(1.0, x3 * x3):
        raise OutsideDomain(f"{x} is not on the hyperboloid")
    return stereo_inv(SpherePointC(1j * x1, 1j * x2, x3))


def hyperboloid_check(samples: Iterable, sheet: str = "lower", tol: float = 1e-12) -> bool:
    """Each sample maps to (z, conj z), inside the unit disk for the lower
    sheet and outside it for the upper sheet."""
    if sheet not in ("lower", "upper"):
        raise ValueError("sheet must be 'lower' or 'upper'")
    for x in samples:
        if (x[2] <= -1) != (sheet == "lower"):
            raise OutsideDomain(f"{x} is not on the {sheet} sheet")
        p = hyperboloid_image(x)
        if p.z.infinite or p.w.infinite:
            if sheet == "lower" or not (p.z.infinite and p.w.infinite):
                return False
            continue
        z, w = p.finite()
        if abs(w - z.conjugate()) > tol * max(1.0, abs(z)):
            return False
        if (abs(z) < 1) != (sheet == "lower"):
            return False
    return True
