"""The Moebius group of Omega.

Every automorphism is stored as a Moebius transformation psi of the
Riemann sphere plus a family flag:

* direct:  (z, w) -> (psi(z), 1/psi(1/w))
* swapped: (z, w) -> (psi(w), 1/psi(1/z))

The map zeta -> 1/psi(1/zeta) has matrix [[d, c], [b, a]] when psi has
matrix [[a, b], [c, d]], which makes composition and inversion pure 2x2
matrix algebra.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

import math
from fractions import Fraction

from .exact import comb, gauss_mul, gauss_pow, gauss_quotient, pochhammer_signed
from .pfm import (
    INF,
    ExtendedComplex,
    OmegaPoint,
    OutsideDomain,
    laplacian_zw,
    pfm,
    pfm_eval,
)


class IndeterminateCrossRatio(ValueError):
    """The cross ratio has no limit for this configuration."""


def _ext(x) -> ExtendedComplex:
    return ExtendedComplex.of(x)


@dataclass(frozen=True)
class SphereMoebius:
    """zeta -> (a zeta + b)/(c zeta + d), stored with determinant 1."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = (complex(v) for v in (self.a, self.b, self.c, self.d))
        det = a * d - b * c
        if det == 0:
            raise ValueError("Moebius matrix must be invertible")
        s = cmath.sqrt(det)
        for name, v in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, v / s)

    @classmethod
    def identity(cls) -> "SphereMoebius":
        return cls(1, 0, 0, 1)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def __call__(self, zeta) -> ExtendedComplex:
        zeta = _ext(zeta)
        if zeta.infinite:
            return INF if self.c == 0 else ExtendedComplex(self.a / self.c)
        den = self.c * zeta.value + self.d
        if den == 0:
            return INF
        return ExtendedComplex((self.a * zeta.value + self.b) / den)

    def __matmul__(self, other: "SphereMoebius") -> "SphereMoebius":
        m = self.matrix @ other.matrix
        return SphereMoebius(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def inverse(self) -> "SphereMoebius":
        return SphereMoebius(self.d, -self.b, -self.c, self.a)

    def conjugated(self) -> "SphereMoebius":
        """zeta -> 1/psi(1/zeta)."""
        return SphereMoebius(self.d, self.c, self.b, self.a)


@dataclass(frozen=True)
class MoebiusMap:
    psi: SphereMoebius
    swapped: bool = False

    def __call__(self, p) -> OmegaPoint:
        return apply(self, p)

    @property
    def family(self) -> str:
        return "swapped" if self.swapped else "direct"


def apply(T: MoebiusMap, p) -> OmegaPoint:
    p = OmegaPoint.of(p)
    first, second = (p.w, p.z) if T.swapped else (p.z, p.w)
    return OmegaPoint(T.psi(first), T.psi.conjugated()(second))


def compose(T1: MoebiusMap, T2: MoebiusMap) -> MoebiusMap:
    """T1 after T2."""
    inner = T2.psi.conjugated() if T1.swapped else T2.psi
    return MoebiusMap(T1.psi @ inner, T1.swapped != T2.swapped)


def inverse(T: MoebiusMap) -> MoebiusMap:
    if T.swapped:
        return MoebiusMap(T.psi.inverse().conjugated(), True)
    return MoebiusMap(T.psi.inverse(), False)


def identity() -> MoebiusMap:
    return MoebiusMap(SphereMoebius.identity())


def rho(gamma: complex) -> MoebiusMap:
    """(u, v) -> (gamma u, v / gamma)."""
    if gamma == 0:
        raise ValueError("gamma must be nonzero")
    return MoebiusMap(SphereMoebius(gamma, 0, 0, 1))


def flip() -> MoebiusMap:
    """(u, v) -> (1/v, 1/u)."""
    return MoebiusMap(SphereMoebius(0, 1, 1, 0), True)


def swap() -> MoebiusMap:
    """(u, v) -> (v, u)."""
    return MoebiusMap(SphereMoebius.identity(), True)


def t_zw(z: complex, w: complex) -> MoebiusMap:
    """The involution exchanging (z, w) and (0, 0)."""
    z, w = complex(z), complex(w)
    if abs(1 - z * w) < 1e-12:
        raise OutsideDomain("t_zw needs z*w != 1")
    return MoebiusMap(SphereMoebius(-1, z, -w, 1))


def t_tilde(z, w) -> MoebiusMap:
    """t_zw(1/w, 1/z) after the flip; defined for nonzero z, w (infinity allowed)."""
    z, w = _ext(z), _ext(w)
    if (not z.infinite and z.value == 0) or (not w.infinite and w.value == 0):
        raise OutsideDomain("t_tilde needs nonzero coordinates")
    return compose(t_zw(complex(w.reciprocal()), complex(z.reciprocal())), flip())


@dataclass(frozen=True)
class NormalForm:
    """T = rho(kappa) o t_zw(alpha, beta) o flip^sigma."""

    kappa: complex
    alpha: complex
    beta: complex
    sigma: int

    def as_map(self) -> MoebiusMap:
        out = compose(rho(self.kappa), t_zw(self.alpha, self.beta))
        return compose(out, flip()) if self.sigma else out


def normal_form(T: MoebiusMap) -> NormalForm:
    """Decompose T; alpha = psi^{-1}(0) and beta = 1/psi^{-1}(inf).

    Raises ``ValueError`` when no such form exists (for example the swap,
    or any direct map with psi^{-1}(0) or psi^{-1}(inf) equal to 0 or inf).
    """
    sigma = 1 if T.swapped else 0
    direct = compose(T, flip()) if sigma else T
    a, b, c, d = direct.psi.a, direct.psi.b, direct.psi.c, direct.psi.d
    if a == 0 or d == 0:
        raise ValueError("map has no decomposition rho o T_{z,w} o flip^sigma")
    # psi is proportional to [[-kappa, kappa alpha], [-beta, 1]]
    return NormalForm(kappa=-a / d, alpha=-b / a, beta=-c / d, sigma=sigma)


# ---------------------------------------------------------------------------
# cross ratio and two-point transitivity

_COINCIDENCE = {
    (0, 1): ExtendedComplex(1),
    (0, 2): ExtendedComplex(0),
    (0, 3): INF,
    (1, 2): INF,
    (1, 3): ExtendedComplex(0),
    (2, 3): ExtendedComplex(1),
}


def _same(x: ExtendedComplex, y: ExtendedComplex) -> bool:
    if x.infinite or y.infinite:
        return x.infinite and y.infinite
    return x.value == y.value


def cross_ratio(u1, u2, u3, u4) -> ExtendedComplex:
    """(u1-u3)(u2-u4) / ((u1-u4)(u2-u3)), with limits at infinity and
    at a single coincidence."""
    u = [_ext(x) for x in (u1, u2, u3, u4)]
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4) if _same(u[i], u[j])]
    if len(pairs) > 1:
        raise IndeterminateCrossRatio("more than one pair of coincident points")
    if pairs:
        return _COINCIDENCE[pairs[0]]
    factors = {(0, 2): None, (1, 3): None, (0, 3): None, (1, 2): None}
    for i, j in factors:
        if u[i].infinite or u[j].infinite:
            factors[(i, j)] = 1  # cancels against the other factor holding infinity
        else:
            factors[(i, j)] = u[i].value - u[j].value
    num = factors[(0, 2)] * factors[(1, 3)]
    den = factors[(0, 3)] * factors[(1, 2)]
    return ExtendedComplex(num / den)


def _point_ratio(p1: OmegaPoint, p2: OmegaPoint) -> ExtendedComplex:
    return cross_ratio(p1.z, p1.w.reciprocal(), p2.z, p2.w.reciprocal())


def _ext_close(x: ExtendedComplex, y: ExtendedComplex, tol: float) -> bool:
    if x.infinite or y.infinite:
        return x.infinite and y.infinite
    return abs(x.value - y.value) <= tol * max(1.0, abs(x.value), abs(y.value))


def two_point_transitive(p1, p2, q1, q2, tol: float = 1e-10) -> bool:
    """Whether some T in the group maps p1 -> q1 and p2 -> q2."""
    p1, p2, q1, q2 = (OmegaPoint.of(p) for p in (p1, p2, q1, q2))
    try:
        left = _point_ratio(p1, p2)
    except IndeterminateCrossRatio:
        left = None
    try:
        right = _point_ratio(q1, q2)
    except IndeterminateCrossRatio:
        right = None
    if left is None or right is None:
        # only p2 = p1 or p2 = flip(p1) make both coincidences happen
        def kind(a: OmegaPoint, b: OmegaPoint) -> str:
            if _same(a.z, b.z) and _same(a.w, b.w):
                return "equal"
            return "antipodal"

        if left is None and right is None:
            return kind(p1, p2) == kind(q1, q2)
        return False
    return _ext_close(left, right, tol)


# ---------------------------------------------------------------------------
# invariance and pullback


def laplace_invariance_residual(
    T: MoebiusMap, F: Callable, samples: Iterable, h: float = 1e-3, relative: bool = False
) -> float:
    """max |Delta(F o T) - (Delta F) o T| over finite sample points.

    ``h`` is the stencil step of ``laplacian_zw``. The stencil's rounding
    error grows like |F| / h^2, so with ``relative`` each difference is
    divided by 1 + |F(T p)|, the normalisation of ``eigen_residual``.
    """

    def pulled(z, w):
        img = apply(T, (z, w))
        if not img.is_finite:
            raise OutsideDomain("T maps a stencil point to infinity")
        return F(*img.finite())

    worst = 0.0
    for pt in samples:
        img = apply(T, pt)
        if not img.is_finite:
            raise OutsideDomain("T maps a sample to infinity")
        diff = abs(laplacian_zw(pulled, pt, h) - laplacian_zw(F, img, h))
        if relative:
            diff /= 1 + abs(complex(F(*img.finite())))
        worst = max(worst, diff)
    return worst


@dataclass(frozen=True)
class PullbackExpansion:
    m: int
    coefficients: tuple  # coefficient of P_j^{-m}, j = -m..m
    residual: float

    def coefficient(self, j: int) -> complex:
        return self.coefficients[j + self.m]


def _sample_points(count: int, seed: int = 7) -> list[tuple[complex, complex]]:
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < count:
        z, w = (complex(*rng.uniform(-0.8, 0.8, 2)) for _ in range(2))
        if abs(1 - z * w) > 0.1:
            pts.append((z, w))
    return pts


def pullback_coefficients(m: int, T: MoebiusMap) -> list[complex]:
    psi_inv = T.psi.inverse()
    base = OmegaPoint(psi_inv(0), psi_inv(INF).reciprocal())
    coeffs = []
    for j in range(-m, m + 1):
        ratio = pochhammer_signed(-m - j, j) / pochhammer_signed(m - j + 1, j)
        coeffs.append(complex(float(ratio) * pfm_eval((m, -j), base)))
    # composing with the swap exchanges the roles of P_j and P_{-j}
    return coeffs[::-1] if T.swapped else coeffs


Gauss = tuple[int, int]


def _gadd(*terms: Gauss) -> Gauss:
    return sum(t[0] for t in terms), sum(t[1] for t in terms)


def _gscale(c: int, a: Gauss) -> Gauss:
    return c * a[0], c * a[1]


def _pfm_projective(m: int, n: int, A: Gauss, B: Gauss, C: Gauss, E: Gauss) -> Gauss:
    """Numerator N with P_n^{-m}(A/B, C/E) = N / (BE - AC)^m."""
    if n < 0:
        A, B, C, E, n = C, E, A, B, -n
    if n > m:
        return 0, 0
    AC, BE = gauss_mul(A, C), gauss_mul(B, E)
    acc = _gadd(*(
        _gscale(comb(m, k + n) * comb(m, k), gauss_mul(gauss_pow(AC, k), gauss_pow(BE, m - n - k)))
        for k in range(m - n + 1)
    ))
    lead = gauss_mul(gauss_pow(C, n), gauss_pow(B, n))
    return _gscale((-1) ** n, gauss_mul(lead, acc))


def _exact_pullback_residual(m: int, T: MoebiusMap, pt) -> float | None:
    """Residual of the expansion evaluated exactly on the binary values of
    the matrix entries and the sample, or None where a denominator vanishes.

    The terms of the expansion can exceed their sum by many orders of
    magnitude, so a float evaluation mostly measures cancellation.
    """
    values = (T.psi.a, T.psi.b, T.psi.c, T.psi.d, *OmegaPoint.of(pt).finite())
    parts = [Fraction(x) for v in values for x in (v.real, v.imag)]
    D = math.lcm(*(f.denominator for f in parts))
    ints = [int(f * D) for f in parts]
    a, b, c, d, z, w = (tuple(ints[i : i + 2]) for i in range(0, 12, 2))
    if T.swapped:
        z, w = w, z
    Dg = (D, 0)
    # T(pt) = (A/B, C/E), the base point is (-b/a, -c/d), the sample (z/D, w/D)
    A, B = _gadd(gauss_mul(a, z), gauss_mul(b, Dg)), _gadd(gauss_mul(c, z), gauss_mul(d, Dg))
    C, E = _gadd(gauss_mul(d, w), gauss_mul(c, Dg)), _gadd(gauss_mul(b, w), gauss_mul(a, Dg))
    if T.swapped:
        z, w = w, z
    base = (_gscale(-1, b), a, _gscale(-1, c), d)
    sample = (z, Dg, w, Dg)
    dens = [
        _gadd(gauss_mul(q[1], q[3]), _gscale(-1, gauss_mul(q[0], q[2])))
        for q in ((A, B, C, E), base, sample)
    ]
    if not all(any(x) for x in (a, d, B, E, *dens)):
        return None
    lhs = _pfm_projective(m, 0, A, B, C, E)
    ratios = [
        pochhammer_signed(-m - j, j) / pochhammer_signed(m - j + 1, j) for j in range(-m, m + 1)
    ]
    scale = math.lcm(*(r.denominator for r in ratios))
    rhs = (0, 0)
    for j, r in zip(range(-m, m + 1), ratios):
        k = -j if T.swapped else j
        term = gauss_mul(_pfm_projective(m, -k, *base), _pfm_projective(m, j, *sample))
        rhs = _gadd(rhs, _gscale(int(r * scale), term))
    # lhs / L^m - rhs / (scale (Db Ds)^m), over a common denominator
    Lm = gauss_pow(dens[0], m)
    R = _gscale(scale, gauss_pow(gauss_mul(dens[1], dens[2]), m))
    diff = _gadd(gauss_mul(lhs, R), _gscale(-1, gauss_mul(rhs, Lm)))
    err = abs(gauss_quotient(diff, gauss_mul(Lm, R)))
    return err / (1 + abs(gauss_quotient(lhs, Lm)))


def pullback_expand(m: int, T: MoebiusMap, samples=None) -> PullbackExpansion:
    """P_0^{-m} o T as a combination of P_j^{-m}, with a sampled residual.

    The residual is computed exactly where possible and in floating point
    at the few samples where an exact denominator vanishes.
    """
    coeffs = pullback_coefficients(m, T)
    worst = 0.0
    for pt in samples if samples is not None else _sample_points(50):
        res = _exact_pullback_residual(m, T, pt)
        if res is None:
            lhs = pfm_eval((m, 0), apply(T, pt))
            z, w = OmegaPoint.of(pt).finite()
            rhs = sum(c * complex(pfm(m, j, z, w)) for j, c in zip(range(-m, m + 1), coeffs))
            res = abs(lhs - rhs) / (1 + abs(lhs))
        worst = max(worst, res)
    return PullbackExpansion(m, tuple(coeffs), worst)


def _is_finite_pair(p: OmegaPoint) -> bool:
    return p.is_finite


def _is_punctured_pair(p: OmegaPoint) -> bool:
    return all(x.infinite or x.value != 0 for x in (p.z, p.w))


def _centering(p: OmegaPoint, tilde: bool) -> MoebiusMap:
    if tilde:
        return t_tilde(p.z, p.w)
    return t_zw(*p.finite())


def invariance_case(T: MoebiusMap, p_uv) -> str:
    p = OmegaPoint.of(p_uv)
    q = apply(T, p)
    if _is_finite_pair(p) and _is_finite_pair(q):
        return "a"
    if _is_punctured_pair(p) and _is_punctured_pair(q):
        return "b"
    if _is_finite_pair(p) and _is_punctured_pair(q):
        return "c"
    raise ValueError("no centring case applies to this point")


def invariance_scalars(T: MoebiusMap, p_uv) -> tuple[complex, int]:
    """gamma, tau with rho(gamma) o swap^tau o C = C' o T.

    C centres (u, v) and C' centres T(u, v); both are t_zw in case "a",
    t_tilde in case "b", and t_zw resp. t_tilde in case "c". In case "a"
    with a normal form available the closed formulas are used; otherwise
    gamma is read off C' o T o C^{-1}, which fixes (0, 0).
    """
    p = OmegaPoint.of(p_uv)
    case = invariance_case(T, p)
    q = apply(T, p)
    if case == "a":
        try:
            nf = normal_form(T)
        except ValueError:
            nf = None
        if nf is not None:
            u, v = p.finite()
            if nf.sigma == 0 and u * nf.beta != 1 and v * nf.alpha != 1:
                return nf.kappa * (nf.alpha * v - 1) / (1 - nf.beta * u), 0
            if nf.sigma == 1 and u != nf.alpha and v != nf.beta:
                return nf.kappa * (nf.alpha - u) / (v - nf.beta), 1
    c_src = _centering(p, tilde=case == "b")
    c_dst = _centering(q, tilde=case in ("b", "c"))
    fixed = compose(compose(c_dst, T), inverse(c_src))
    psi = fixed.psi
    return psi.a / psi.d, int(fixed.swapped)


def invariance_residual(T: MoebiusMap, p_uv, gamma: complex, tau: int, samples) -> float:
    p = OmegaPoint.of(p_uv)
    case = invariance_case(T, p)
    q = apply(T, p)
    c_src = _centering(p, tilde=case == "b")
    c_dst = _centering(q, tilde=case in ("b", "c"))
    lhs_map = compose(rho(gamma), compose(swap(), c_src) if tau else c_src)
    worst = 0.0
    for pt in samples:
        a = apply(lhs_map, pt)
        b = apply(c_dst, apply(T, pt))
        if not (a.is_finite and b.is_finite):
            continue
        (a1, a2), (b1, b2) = a.finite(), b.finite()
        worst = max(worst, abs(a1 - b1) + abs(a2 - b2))
    return worst


def random_moebius(rng: np.random.Generator, swapped: bool | None = None) -> MoebiusMap:
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    flag = bool(rng.integers(2)) if swapped is None else swapped
    return MoebiusMap(SphereMoebius(m[0, 0], m[0, 1], m[1, 0], m[1, 1]), flag)
