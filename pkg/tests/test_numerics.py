import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from holocurve.numerics import (
    I,
    ONE,
    ZERO,
    Tolerance,
    approx_eq,
    as_tol,
    cs,
    root_of_unity_order,
)

small = st.fractions(min_value=-50, max_value=50, max_denominator=30)
exact_scalars = st.builds(lambda a, b: cs(a, b), small, small)


def test_modes():
    assert cs(3).exact and cs("1/2", 1).exact and cs(Fraction(1, 3)).exact
    assert not cs(0.5).exact and not cs(1j).exact
    assert (cs(1, 2) + 0.5).mode == "approx"
    assert cs("0.25") == cs(1, 0) / 4


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(0)
    assert as_tol(None).eps == 1e-9
    assert as_tol(1e-6).eps == 1e-6


@pytest.mark.parametrize("bad", ["abc", "1/0x", None, True])
def test_cs_rejects(bad):
    with pytest.raises((ValueError, TypeError)):
        cs(bad)


@given(exact_scalars, exact_scalars)
def test_field_axioms_exact(a, b):
    assert (a + b) - b == a
    assert a * b == b * a
    if not b.is_zero_exactly():
        assert (a / b) * b == a


@given(exact_scalars)
def test_exact_sqrt_of_square(a):
    r = (a * a).sqrt()
    assert r.exact and r * r == a * a


def test_exact_sqrt_principal_branch():
    assert cs(-4).sqrt() == cs(0, 2)
    assert cs(0, 2).sqrt() == cs(1, 1)
    assert not cs(2).sqrt().exact


def test_exp_log_roundtrip():
    z = cs(0.3, 1.2)
    assert approx_eq(z.exp().log(), z, 1e-12)
    assert cs(0).exp() == ONE and ONE.log() == ZERO


def test_power():
    assert I ** 4 == ONE and I ** -1 == cs(0, -1)
    assert cs(2) ** 10 == cs(1024)


@pytest.mark.parametrize("z,order", [(ONE, 1), (cs(-1), 2), (I, 4),
                                     (cs(cmath.exp(2j * cmath.pi / 6)), 6), (cs(2), None)])
def test_root_of_unity_order(z, order):
    assert root_of_unity_order(z, 50) == order


def test_approx_eq_exact_vs_float():
    assert approx_eq(cs("1/3"), cs(1 / 3))
    assert not approx_eq(cs("1/3"), cs(1, 0))
