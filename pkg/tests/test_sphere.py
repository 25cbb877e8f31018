import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from pfmodes.exact import GaussianRational
from pfmodes.jacobi import jacobi_poly
from pfmodes.pfm import INF, OmegaPoint, OutsideDomain
from pfmodes.sphere import (
    Z1,
    Z2,
    Z3,
    SpherePointC,
    TrivariatePoly,
    complex_norm,
    csh_closed_form,
    harmonic_polynomial,
    hyperboloid_check,
    hyperboloid_image,
    hyperboloid_point,
    laplacian_C3,
    sphere_gram_check,
    spfm_eval,
    stereo,
    stereo_inv,
)

coord = st.complex_numbers(max_magnitude=4, allow_nan=False, allow_infinity=False)
modes = st.integers(0, 6).flatmap(lambda m: st.tuples(st.just(m), st.integers(-m, m)))


def close(a, b, tol=1e-12):
    return all(abs(x - y) <= tol * max(1.0, abs(x)) for x, y in zip(a, b))


def same_point(p: OmegaPoint, q: OmegaPoint, tol=1e-12) -> bool:
    for x, y in ((p.z, q.z), (p.w, q.w)):
        if x.infinite or y.infinite:
            if not (x.infinite and y.infinite):
                return False
        elif abs(x.value - y.value) > tol * max(1.0, abs(x.value)):
            return False
    return True


def test_stereo_examples():
    assert stereo((0, 0)).as_tuple() == (0, 0, -1)
    assert close(stereo((2, INF)).as_tuple(), (0.5, 0.5j, 1))
    assert stereo((INF, INF)).as_tuple() == (0, 0, 1)
    assert same_point(stereo_inv((0, 0, -1)), OmegaPoint(0, 0))
    assert same_point(stereo_inv((0.5, 0.5j, 1)), OmegaPoint(2, INF))
    with pytest.raises(OutsideDomain):
        SpherePointC(1, 1, 1)


def test_complex_norm_examples():
    assert complex_norm((1, 0, 0)) == 1
    assert complex_norm((3, 4, 0)) == 5
    with pytest.raises(ValueError):
        complex_norm((0, 0, 2j))


def test_spherical_mode_examples():
    s = SpherePointC(0, 0, -1)
    assert spfm_eval((0, 0), SpherePointC(0.6, 0.8, 0)) == 1
    assert spfm_eval((1, 0), s) == pytest.approx(1)
    assert csh_closed_form((1, 0), s) == pytest.approx(1)
    assert csh_closed_form((1, 1), SpherePointC(1, 0, 0)) == pytest.approx(0.5)


def test_harmonic_polynomial_examples():
    assert harmonic_polynomial(0, 0) == TrivariatePoly.constant(1)
    assert harmonic_polynomial(1, 0) == Z3.scale(-1)
    p = harmonic_polynomial(2, 0)
    assert p.is_homogeneous(2)
    assert p.exact(0, 0, 1) == jacobi_poly(2).exact(1)


def test_laplacian_examples():
    assert laplacian_C3(Z1 * Z1 - Z2 * Z2) == TrivariatePoly()
    assert laplacian_C3(Z1 * Z1 + Z2 * Z2 + Z3 * Z3) == TrivariatePoly.constant(6)


@pytest.mark.parametrize("m", range(11))
def test_harmonic_and_homogeneous(m):
    for n in range(-m, m + 1):
        p = harmonic_polynomial(m, n)
        assert laplacian_C3(p) == TrivariatePoly()
        assert p.is_homogeneous(m) and p.degree == m


@given(modes, st.fractions(min_value=-3, max_value=3, max_denominator=9))
def test_homogeneity_scaling(idx, t):
    p = harmonic_polynomial(*idx)
    x = (GaussianRational(Fraction(1, 3), 1), GaussianRational(-2), GaussianRational(0, Fraction(1, 2)))
    scaled = p.exact(*(t * c for c in x))
    assert scaled == p.exact(*x) * GaussianRational(t) ** idx[0]


def test_sphere_gram():
    assert sphere_gram_check(5) < 1e-10


@given(coord, coord)
def test_round_trip_finite(z, w):
    assume(abs(1 - z * w) > 1e-2)
    p = OmegaPoint(z, w)
    s = stereo(p)
    assert abs(sum(v * v for v in s.as_tuple()) - 1) < 1e-13 * max(1.0, *(abs(v) ** 2 for v in s.as_tuple()))
    assert same_point(stereo_inv(s), p, tol=1e-9)


@given(coord)
def test_round_trip_infinite_charts(u):
    assume(abs(u) > 1e-3)
    for p in (OmegaPoint(u, INF), OmegaPoint(INF, u), OmegaPoint(INF, INF)):
        assert same_point(stereo_inv(stereo(p)), p)


@given(modes, coord, coord)
def test_three_oracles_agree(idx, z, w):
    assume(abs(1 - z * w) > 0.1)
    s = stereo((z, w))
    ref = spfm_eval(idx, s)
    scale = max(1.0, abs(ref))
    assert abs(complex(csh_closed_form(idx, s)) - ref) <= 1e-10 * scale
    assert abs(harmonic_polynomial(*idx)(*s.as_tuple()) - ref) <= 1e-10 * scale


def test_hyperboloid_examples():
    p = hyperboloid_image((0, 0, -1))
    assert p.finite() == (0, 0)
    lower = [hyperboloid_point(r, phi, "lower") for r in (0.5, np.sqrt(3)) for phi in (0, 1, 4)]
    upper = [hyperboloid_point(r, phi, "upper") for r in (0.5, np.sqrt(3)) for phi in (0, 1, 4)]
    assert hyperboloid_check(lower, "lower")
    assert hyperboloid_check(upper, "upper")
    z, w = hyperboloid_image(hyperboloid_point(np.sqrt(3), 0.3, "lower")).finite()
    assert abs(w - z.conjugate()) < 1e-12 and abs(z) < 1
    with pytest.raises(OutsideDomain):
        hyperboloid_check(lower, "upper")


def test_polynomial_json():
    import json

    data = json.loads(harmonic_polynomial(1, 1).to_json())
    assert {"i", "j", "k", "re", "im"} == set(data[0])
