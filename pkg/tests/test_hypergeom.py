import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from pfmodes.exact import GaussianRational
from pfmodes.hypergeom import (
    HypergeometricError,
    chu_vandermonde_check,
    cor335_check,
    gauss_sum_check,
    hyp,
    l1_tuples,
    pfq,
    raynal_check,
    raynal_params,
    shift_reduce_check,
    t1_rhs,
    t2_rhs,
    t_sum,
    verify_L1,
    whipple_solve,
)

fractions = st.fractions(min_value=-6, max_value=6, max_denominator=5)


def test_eval_examples():
    z = GaussianRational(Fraction(1, 3), Fraction(1, 5))
    assert hyp([0, Fraction(3, 2)], [Fraction(7, 2)], z) == 1
    assert hyp([-1, 1], [1], z) == 1 - z
    assert hyp([-2, 1], [2]) == Fraction(1, 3)


def test_non_terminating_rejected():
    with pytest.raises(HypergeometricError):
        hyp([1, 2], [3])


def test_chu_vandermonde_examples():
    assert chu_vandermonde_check(0, Fraction(3, 7), Fraction(5, 2))
    assert chu_vandermonde_check(2, 1, 2)
    m, n, ell = 3, 1, 2
    assert chu_vandermonde_check(ell, m + n + 1, n + 1)


def test_gauss_sum_examples():
    assert gauss_sum_check(0, Fraction(1, 3), Fraction(5, 2))
    assert gauss_sum_check(-1, 1, 3)
    assert hyp([-1, 1], [3]) == Fraction(2, 3)
    m, n, s, k = 4, 2, 1, 0
    assert gauss_sum_check(s - n + k, 2 * m - n - s + 1 + k, 2 * m - n + 2 + k)


def test_shift_reduce_examples():
    assert shift_reduce_check(pfq([-3, 2, 5], [4, 5]), 0)
    assert shift_reduce_check(pfq([-1, 2, 6], [3, 5]), 1)
    m, n, d, s = 5, 3, 1, 1
    series = pfq([s - n, 2 * m - n - s + 1, (m - n + 1) + (n - d)], [2 * m - n + 2, m - n + 1])
    assert shift_reduce_check(series, n - d)


def test_whipple_solve_round_trip():
    w = whipple_solve(0, 0, 0, Fraction(1, 2), Fraction(1, 2))
    assert w.alpha(1, 4, 5) == 0
    a, b, c, e, f = 0 - 1, -1 - 4 + 3, -1, 1 - 1 + 4 - 1, 1 - 1 + 3 - 1
    w = raynal_params(4, 3, 1, 1)
    assert (w.alpha(1, 4, 5), w.alpha(2, 4, 5), w.alpha(3, 4, 5)) == (a, b, c)
    assert (w.beta(4, 0), w.beta(5, 0)) == (e, f)
    assert w.alpha(1, 2, 3) == e + f - a - b - c


@given(fractions, fractions, fractions, fractions, fractions)
def test_whipple_solve_reproduces_inputs(a, b, c, e, f):
    w = whipple_solve(a, b, c, e, f)
    assert (w.alpha(1, 4, 5), w.alpha(2, 4, 5), w.alpha(3, 4, 5)) == (a, b, c)
    assert (w.beta(4, 0), w.beta(5, 0)) == (e, f)


def test_cor335_examples():
    assert cor335_check(0, Fraction(1, 3), 2, Fraction(5, 2), Fraction(7, 3))
    m, n, d, s = 5, 4, 2, 1
    assert cor335_check(s - n, s - m, d - n, m - n + 1, d + s - n + 1)


@given(
    st.integers(-5, 0),
    st.integers(-6, 6),
    st.integers(-6, 6),
    st.integers(1, 8),
    st.integers(1, 8),
)
def test_cor335_random_integer_tuples(a, b, c, e, f):
    assume(e + f - b - c > 0)
    assert cor335_check(a, b, c, e, f)


@pytest.mark.parametrize("tup", [(2, 2, 0, 0), (4, 3, 1, 1)])
def test_raynal_examples(tup):
    assert raynal_check(*tup)


def test_l1_examples():
    assert verify_L1(3, 2, 1, 1)
    for m in range(6):
        for n in range(m + 1):
            assert verify_L1(m, n, 0, 0)


def test_t1_t2_overlap():
    for m, n, d, s in l1_tuples(8):
        if n == d + s:
            assert t1_rhs(m, n, d, s) == t2_rhs(m, n, d, s) == t_sum(m, n, d, s)


@given(
    st.lists(fractions, min_size=2, max_size=2),
    st.lists(st.fractions(min_value=1, max_value=6, max_denominator=4), min_size=2, max_size=2),
    st.integers(0, 6),
)
def test_parameter_permutations(upper_rest, lower, k):
    upper = [-k, *upper_rest]
    ref = hyp(upper, lower)
    for up in itertools.permutations(upper):
        for lo in itertools.permutations(lower):
            assert hyp(up, lo) == ref


@given(
    st.integers(0, 6),
    fractions,
    st.fractions(min_value=1, max_value=6, max_denominator=4),
    st.fractions(min_value=Fraction(1, 2), max_value=6, max_denominator=4),
)
def test_duplicate_parameter_cancels(k, b, c, dup):
    assert hyp([-k, b, dup], [c, dup]) == hyp([-k, b], [c])
