import cmath

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from pfmodes.pfm import (
    INF,
    ExtendedComplex,
    OmegaPoint,
    OutsideDomain,
    PFMIndex,
    eigen_residual,
    f_pq,
    f_pq_eval,
    homogeneity_check,
    laplacian_zw,
    pfm,
    pfm_eval,
    pfm_eval_jacobi,
    pfm_fourier_integral,
    y_eval,
)

from .conftest import interior_points

coord = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
disk = st.complex_numbers(max_magnitude=0.95, allow_nan=False, allow_infinity=False)
modes = st.integers(0, 8).flatmap(lambda m: st.tuples(st.just(m), st.integers(-m, m)))


def test_domain_guards():
    with pytest.raises(OutsideDomain):
        OmegaPoint(1, 1)
    with pytest.raises(OutsideDomain):
        OmegaPoint(2, 0.5)
    # infinity times zero counts as 1
    with pytest.raises(OutsideDomain):
        OmegaPoint(INF, 0)
    assert OmegaPoint.of(("inf", 3)).z.infinite
    with pytest.raises(ValueError):
        PFMIndex(-1, 0)
    assert PFMIndex(3, 1).eigenvalue == 48


def test_pfm_examples():
    assert pfm_eval((0, 0), (0.3, INF)) == 1
    assert pfm_eval((1, 0), (0, 0)) == 1
    z, w = 0.3 - 0.1j, 0.7j
    assert pfm_eval((1, 0), (z, w)) == pytest.approx((1 + z * w) / (1 - z * w))
    assert pfm_eval((1, 1), (0.5, 0.5)) == pytest.approx(-2 / 3)
    assert pfm_eval((1, 2), (0.1, 0.2)) == 0


def test_jacobi_and_fourier_forms():
    assert pfm_eval_jacobi((2, 1), (0.3, 0.2)) == pytest.approx(pfm_eval((2, 1), (0.3, 0.2)), abs=1e-14)
    assert abs(pfm_fourier_integral((0, 0), 0.2, 0.1) - 1) < 1e-15
    assert abs(pfm_fourier_integral((1, 0), 0.5, 0.25) - 1.125 / 0.875) < 1e-12
    assert abs(pfm_fourier_integral((3, -2), 0.4j, 0.3) - pfm_eval((3, -2), (0.4j, 0.3))) < 1e-10


def test_f_pq_examples():
    assert f_pq_eval(0, 0, (0.4, 2)) == 1
    assert f_pq_eval(1, 1, (0.5, 0.5)) == pytest.approx(1 / 3)
    assert f_pq_eval(1, 2, (0.2, 0.5)) == pytest.approx(0.2 * 0.25 / 0.81, rel=1e-15)


def test_infinity_charts_are_continuous():
    big = 1e7
    for (m, n) in [(2, 1), (3, -2), (4, 0)]:
        assert pfm_eval((m, n), (INF, 0.3)) == pytest.approx(pfm_eval((m, n), (big, 0.3)), rel=1e-5, abs=1e-6)
        assert pfm_eval((m, n), (0.2j, INF)) == pytest.approx(pfm_eval((m, n), (0.2j, big)), rel=1e-5, abs=1e-6)
    assert f_pq_eval(2, 1, (INF, 0.5)) == pytest.approx(f_pq_eval(2, 1, (big, 0.5)), rel=1e-5)


def test_laplacian_examples():
    pt = (0.2, 0.3)
    assert laplacian_zw(lambda z, w: 1, pt) == 0
    assert laplacian_zw(lambda z, w: z, pt) == 0
    lap = laplacian_zw(lambda z, w: pfm(1, 1, z, w), pt)
    assert lap == pytest.approx(8 * pfm_eval((1, 1), pt), rel=1e-6)


def test_eigen_residual_examples(rng):
    pts = interior_points(rng, 100)
    assert eigen_residual((0, 0), pts) < 1e-9
    assert eigen_residual((1, 1), pts) < 1e-6
    assert eigen_residual((4, -3), pts) < 1e-5


def test_homogeneity_examples():
    assert homogeneity_check((2, 1), (0.3, 0.4), 1j)
    assert homogeneity_check((3, -2), (0.3 - 0.2j, 0.4), cmath.exp(1j * cmath.pi / 3))
    with pytest.raises(ValueError):
        homogeneity_check((1, 0), (0.1, 0.1), 2)


def test_y_normalisation():
    assert y_eval((0, 0), (0.5, 1.5)) == 1
    assert y_eval((1, 0), (0, 0)) == pytest.approx(3**0.5)


def test_vectorised_kernel_matches_point_evaluator(rng):
    z = rng.uniform(-0.8, 0.8, 20) + 1j * rng.uniform(-0.8, 0.8, 20)
    w = rng.uniform(-0.8, 0.8, 20) + 1j * rng.uniform(-0.8, 0.8, 20)
    vals = pfm(3, -1, z, w)
    assert np.allclose(vals, [pfm_eval((3, -1), (a, b)) for a, b in zip(z, w)], rtol=1e-14)


@given(modes, coord, coord)
def test_symmetry(idx, z, w):
    assume(abs(1 - z * w) > 1e-3)
    m, n = idx
    a, b = pfm_eval((m, n), (z, w)), pfm_eval((m, -n), (w, z))
    assert abs(a - b) <= 1e-13 * max(1.0, abs(a))


@given(modes, coord, coord)
def test_inversion(idx, z, w):
    assume(abs(z) > 0.1 and abs(w) > 0.1 and abs(1 - z * w) > 0.05)
    m, _ = idx
    lhs = pfm_eval(idx, (z, w))
    rhs = (-1) ** m * pfm_eval(idx, (1 / w, 1 / z))
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


@given(st.integers(0, 6), st.integers(0, 6), coord, coord)
def test_f_symmetry(p, q, z, w):
    assume(abs(1 - z * w) > 1e-3)
    a, b = f_pq(p, q, z, w), f_pq(q, p, w, z)
    assert abs(a - b) <= 1e-14 * max(1.0, abs(a))


@given(modes, disk, disk)
def test_three_forms_agree(idx, z, w):
    assume(abs(1 - z * w) > 0.05)
    ref = pfm_eval(idx, (z, w))
    scale = max(1.0, abs(ref))
    assert abs(pfm_eval_jacobi(idx, (z, w)) - ref) <= 1e-10 * scale
    assert abs(pfm_fourier_integral(idx, z, w, nodes=64) - ref) <= 1e-10 * scale


@given(st.integers(0, 8), coord, coord, st.floats(0.2, 5))
def test_zero_mode_depends_on_product(m, z, w, t):
    assume(abs(1 - z * w) > 1e-2 and abs(w) > 1e-3)
    a = pfm_eval((m, 0), (z, w))
    b = pfm_eval((m, 0), (z * t, w / t))
    assert abs(a - b) <= 1e-9 * max(1.0, abs(a))


@given(modes, disk, disk, st.floats(0, 2 * np.pi))
def test_homogeneity_property(idx, z, w, theta):
    assume(abs(1 - z * w) > 0.05)
    assert homogeneity_check(idx, (z, w), cmath.exp(1j * theta), tol=1e-10)


def test_extended_complex_helpers():
    assert ExtendedComplex.of("inf").reciprocal() == ExtendedComplex(0j)
    assert ExtendedComplex.of(0).reciprocal().infinite
    assert INF.times(ExtendedComplex(0j)).value == 1
    with pytest.raises(ValueError):
        ExtendedComplex.of(complex("nan"))
