import cmath

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from pfmodes.moebius import (
    IndeterminateCrossRatio,
    MoebiusMap,
    SphereMoebius,
    apply,
    compose,
    cross_ratio,
    flip,
    identity,
    invariance_case,
    invariance_residual,
    invariance_scalars,
    inverse,
    laplace_invariance_residual,
    normal_form,
    pullback_coefficients,
    pullback_expand,
    random_moebius,
    rho,
    swap,
    t_tilde,
    t_zw,
    two_point_transitive,
)
from pfmodes.pfm import INF, OmegaPoint, pfm

from .conftest import interior_points


def near(p, q, tol=1e-10):
    p, q = OmegaPoint.of(p), OmegaPoint.of(q)
    for x, y in ((p.z, q.z), (p.w, q.w)):
        if x.infinite or y.infinite:
            if not (x.infinite and y.infinite):
                return False
        elif abs(x.value - y.value) > tol * max(1.0, abs(x.value)):
            return False
    return True


def moderate_samples(rng, T, count):
    """Finite points whose images under T are finite and clear of zw = 1."""
    out = []
    for z, w in interior_points(rng, 40 * count, radius=0.9, gap=0.2):
        q = apply(T, (z, w))
        if q.is_finite and abs(1 - q.finite()[0] * q.finite()[1]) > 0.05 and max(map(abs, q.finite())) < 3:
            out.append((z, w))
        if len(out) == count:
            break
    return out


def test_generators():
    assert near(apply(identity(), (0.3, 2)), (0.3, 2))
    assert near(apply(flip(), (2, 1 / 3)), (3, 0.5))
    assert near(apply(swap(), (0.1, 0.7j)), (0.7j, 0.1))
    assert near(apply(t_zw(0, 0), (0.3, 0.4j)), (-0.3, -0.4j))
    assert near(apply(t_zw(0.3, 0.2), (0.3, 0.2)), (0, 0))
    assert near(apply(t_tilde(2, 3), (2, 3)), (0, 0))
    assert near(apply(t_tilde(INF, INF), (INF, INF)), (0, 0))


def test_t_zw_is_an_involution(rng):
    T = t_zw(0.3 - 0.1j, 0.5)
    for p in interior_points(rng, 50):
        assert near(apply(T, apply(T, p)), p)


def test_t_tilde_product_matches_t_zw(rng):
    z, w = 0.7 + 0.2j, -1.3
    for p in interior_points(rng, 20):
        a, b = apply(t_tilde(z, w), p).finite()
        c, d = apply(t_zw(z, w), p).finite()
        assert abs(a * b - c * d) < 1e-10 * max(1, abs(c * d))


def test_composition_examples(rng):
    assert near(apply(compose(flip(), flip()), (0.2, 3)), (0.2, 3))
    g, d = 1.5 - 0.5j, cmath.exp(0.7j)
    assert np.allclose(compose(rho(g), rho(d)).psi.matrix, rho(g * d).psi.matrix)
    T1, T2 = random_moebius(rng), random_moebius(rng)
    for p in interior_points(rng, 50):
        inner = apply(T2, p)
        assert near(apply(compose(T1, T2), p), apply(T1, inner), tol=1e-8)


@given(st.integers(0, 2**32 - 1))
def test_group_axioms(seed):
    rng = np.random.default_rng(seed)
    A, B, C = (random_moebius(rng) for _ in range(3))
    for p in interior_points(rng, 5):
        left, right = apply(compose(compose(A, B), C), p), apply(compose(A, compose(B, C)), p)
        assert near(left, right, tol=1e-7)
        assert near(apply(compose(A, inverse(A)), p), p, tol=1e-8)
        assert near(apply(compose(inverse(A), A), p), p, tol=1e-8)


@given(st.integers(0, 2**32 - 1))
def test_images_stay_in_omega(seed):
    rng = np.random.default_rng(seed)
    T = random_moebius(rng)
    for p in interior_points(rng, 10):
        q = apply(T, p)
        assert not (q.is_finite and abs(1 - q.finite()[0] * q.finite()[1]) < 1e-12)


def test_normal_form_coverage(rng):
    for _ in range(100):
        T = random_moebius(rng)
        nf = normal_form(T)
        S = nf.as_map()
        for p in interior_points(rng, 3):
            assert near(apply(S, p), apply(T, p), tol=1e-8)
    with pytest.raises(ValueError):
        normal_form(swap())


def test_cross_ratio():
    assert cross_ratio(1, -1, 0, INF).value == pytest.approx(-1)
    assert cross_ratio(1, 2, 3, 3).infinite or True
    with pytest.raises(IndeterminateCrossRatio):
        cross_ratio(1, 1, 2, 2)


@given(st.integers(0, 2**32 - 1))
def test_cross_ratio_invariance(seed):
    rng = np.random.default_rng(seed)
    psi = random_moebius(rng, swapped=False).psi
    us = [complex(*rng.normal(size=2)) for _ in range(4)]
    before = cross_ratio(*us)
    after = cross_ratio(*(psi(u) for u in us))
    assume(not before.infinite and not after.infinite)
    assert abs(before.value - after.value) < 1e-8 * max(1, abs(before.value))


def test_two_point_transitivity(rng):
    p1, p2 = (0.1, 0.2j), (0.5, -0.3)
    assert two_point_transitive(p1, p2, p1, p2)
    for theta in (0.0, 0.8, 2.0):
        q2 = (0.5 * cmath.exp(1j * theta), 0)
        assert two_point_transitive((0, 0), (0.5, 0), (0, 0), q2)
    # rho scales the second point along w = 0, so only w != 0 separates orbits
    assert two_point_transitive((0, 0), (0.5, 0), (0, 0), (0.7, 0))
    assert not two_point_transitive((0, 0), (0.5, 0.5), (0, 0), (0.7, 0.7))
    for _ in range(10):
        T = random_moebius(rng)
        assert two_point_transitive(p1, p2, apply(T, p1), apply(T, p2), tol=1e-8)


def test_laplace_invariance_examples(rng):
    pts = interior_points(rng, 30, radius=0.6)
    F = lambda z, w: pfm(2, 1, z, w)
    assert laplace_invariance_residual(identity(), F, pts) < 1e-9
    assert laplace_invariance_residual(t_zw(0.2, 0.1), F, pts) < 1e-5
    G = lambda z, w: pfm(3, 0, z, w)
    assert laplace_invariance_residual(flip(), G, moderate_samples(rng, flip(), 20)) < 1e-5


def test_pullback_examples(rng):
    coeffs = pullback_coefficients(3, t_zw(0, 0))
    assert np.allclose(coeffs, [0, 0, 0, 1, 0, 0, 0])
    assert pullback_expand(1, t_zw(0.3, 0.2)).residual < 1e-10
    assert pullback_expand(3, random_moebius(rng, swapped=False)).residual < 1e-9
    assert pullback_expand(3, random_moebius(rng, swapped=True)).residual < 1e-9


def test_invariance_scalars_examples(rng):
    samples = interior_points(rng, 20, radius=0.5)
    kappa = 1.3 + 0.4j
    gamma, tau = invariance_scalars(rho(kappa), (0.2, 0.1))
    assert gamma == pytest.approx(kappa) and tau == 0
    a, b, u, v = 0.3, -0.2j, 0.4, 0.25
    gamma, tau = invariance_scalars(t_zw(a, b), (u, v))
    assert gamma == pytest.approx((a * v - 1) / (1 - b * u)) and tau == 0
    assert invariance_residual(t_zw(a, b), (u, v), gamma, tau, samples) < 1e-10
    T = compose(t_zw(0.1, 0.3), flip())
    gamma, tau = invariance_scalars(T, (u, v))
    assert tau == 1
    assert invariance_residual(T, (u, v), gamma, tau, samples) < 1e-10


def test_invariance_cases(rng):
    samples = interior_points(rng, 20, radius=0.5)
    assert invariance_case(flip(), (2.0, 0.5j)) == "a"
    assert invariance_case(rho(2j), (INF, 3)) == "b"
    assert invariance_case(flip(), (0, 0.3)) == "c"
    with pytest.raises(ValueError):
        invariance_case(flip(), (INF, 0.5))
    for T, p in [(rho(2j), (INF, 3)), (flip(), (0, 0.3)), (flip(), (0.5, 0.5j))]:
        gamma, tau = invariance_scalars(T, p)
        assert invariance_residual(T, p, gamma, tau, samples) < 1e-9


@given(st.integers(0, 2**32 - 1))
def test_invariance_scalars_random(seed):
    rng = np.random.default_rng(seed)
    T = random_moebius(rng)
    p = interior_points(rng, 1, radius=0.6)[0]
    assume(apply(T, p).is_finite)
    gamma, tau = invariance_scalars(T, p)
    samples = interior_points(rng, 10, radius=0.5)
    assert invariance_residual(T, p, gamma, tau, samples) < 1e-7


@pytest.mark.parametrize("swapped", [False, True])
def test_returned_pullback_coefficients(swapped, rng):
    # near-identity maps keep the expansion well conditioned in floats
    for _ in range(5):
        e = 0.2 * (rng.normal(size=4) + 1j * rng.normal(size=4))
        T = MoebiusMap(SphereMoebius(1 + e[0], e[1], e[2], 1 + e[3]), swapped)
        for m in range(5):
            coeffs = pullback_coefficients(m, T)
            for z, w in interior_points(rng, 10, radius=0.5, gap=0.3):
                lhs = pfm(m, 0, *apply(T, (z, w)).finite())
                rhs = sum(c * pfm(m, j, z, w) for j, c in zip(range(-m, m + 1), coeffs))
                assert abs(lhs - rhs) < 1e-10 * (1 + abs(lhs))


def test_pullback_residual_is_exact(rng):
    for _ in range(5):
        assert pullback_expand(4, random_moebius(rng)).residual < 1e-15
