from fractions import Fraction

import pytest

from jetframe import series as S
from jetframe.errors import NonInvertibleCurve


def test_mul_and_pow():
    a = S.series([1, 1], 4)
    assert S.s_pow(a, 3) == S.series([1, 3, 3, 1, 0], 4)


def test_inverse():
    a = S.series([2, 1, 5], 4)
    assert S.s_mul(a, S.s_inverse(a)) == S.s_const(1, 4)


def test_revert_round_trip():
    f = S.series([0, 2, -1, Fraction(1, 3), 4], 4)
    g = S.s_revert(f)
    assert S.s_compose(f, g) == S.series([0, 1], 4)
    assert S.s_compose(g, f) == S.series([0, 1], 4)


def test_revert_needs_nonzero_derivative():
    with pytest.raises(NonInvertibleCurve):
        S.s_revert(S.series([0, 0, 1], 3))


def test_compose_requires_vanishing_inner():
    with pytest.raises(ValueError):
        S.s_compose(S.series([1, 1], 2), S.series([1, 1], 2))


def test_log_of_exp_like_series():
    # log(1 + t) = t - t^2/2 + t^3/3 - ...
    assert S.s_log(S.series([1, 1], 4)) == [0, 1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4)]
    # the constant of the logarithm is dropped
    assert S.s_log(S.series([3], 2)) == [0, 0, 0]


def test_derivative():
    assert S.s_derivative(S.series([5, 1, 2, 3], 3)) == [1, 4, 9, 0]
