import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from awfrac.context import QContext, real_if_close
from awfrac.qseries import (
    basic_hyper_sum,
    h_product,
    h_product_z,
    phi_basis_eval,
    phi_basis_z,
    q_binomial,
    qpoch,
    qpoch_inf_array,
    rho_basis_eval,
)

CTX = QContext(0.5)


def test_context_validation():
    with pytest.raises(ValueError):
        QContext(0.0)
    with pytest.raises(ValueError):
        QContext(1.0)
    with pytest.raises(ValueError):
        QContext(-0.2)
    with pytest.raises(ValueError):
        QContext(0.5, eps_product=0.0)


def test_real_if_close_guard():
    assert real_if_close(3.0 + 1e-14j) == 3.0
    with pytest.raises(ValueError):
        real_if_close(1.0 + 1e-3j)


def test_qpoch_empty_product():
    assert qpoch(0.7 + 0.2j, CTX, 0) == 1.0 + 0.0j


def test_qpoch_finite_direct():
    # (0.5; 0.5)_2 = (1 - 0.5)(1 - 0.25)
    assert qpoch(0.5, CTX, 2).real == pytest.approx(0.375, abs=0)


def test_qpoch_zero_argument_infinite():
    for q in (0.3, 0.5, 0.8):
        assert qpoch(0.0, QContext(q)) == 1.0 + 0.0j


def test_qpoch_infinite_vs_mpmath():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 40
    for q in (0.3, 0.5, 0.8):
        ctx = QContext(q)
        for a in (0.25, -0.7, 0.3 + 0.4j):
            ours = qpoch(a, ctx)
            ref = complex(mp.qp(a, q))
            assert abs(ours - ref) <= 1e-13 * max(1.0, abs(ref))


@settings(max_examples=60, deadline=None)
@given(
    a=st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
    q=st.floats(min_value=0.05, max_value=0.95, allow_nan=False),
    n=st.integers(min_value=0, max_value=20),
)
def test_qpoch_recurrence_property(a, q, n):
    ctx = QContext(q)
    lhs = qpoch(a, ctx, n + 1)
    rhs = qpoch(a, ctx, n) * (1.0 - a * q ** n)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


@settings(max_examples=60, deadline=None)
@given(
    a=st.floats(min_value=-0.95, max_value=0.95, allow_nan=False),
    q=st.floats(min_value=0.05, max_value=0.9, allow_nan=False),
    n=st.integers(min_value=0, max_value=20),
)
def test_qpoch_splitting_property(a, q, n):
    ctx = QContext(q)
    whole = qpoch(a, ctx)
    split = qpoch(a, ctx, n) * qpoch(a * q ** n, ctx)
    assert abs(whole - split) <= 1e-12 * max(1.0, abs(whole))


def test_qpoch_inf_array_matches_scalar():
    args = np.array([0.2 + 0.1j, -0.5, 0.9j, 0.0])
    vec = qpoch_inf_array(args, CTX.q, CTX.eps_product)
    for v, a in zip(vec, args):
        assert abs(v - qpoch(a, CTX)) < 1e-14


def test_h_product_empty():
    assert h_product(0.3, [], CTX) == 1.0 + 0.0j


def test_h_product_theta_zero_merges_factors():
    # at x = 1 the paired factors coincide: h(1; a) = ((a; q)_inf)^2
    a = 0.4
    got = h_product(1.0, [a], CTX)
    single = qpoch(a, CTX)
    assert abs(got - single ** 2) < 1e-13


def test_h_product_against_highprecision_product():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 40
    x, a, q = 0.3, 0.4, 0.5
    th = mp.acos(x)
    ref = mp.qp(a * mp.exp(1j * th), q) * mp.qp(a * mp.exp(-1j * th), q)
    got = h_product(x, [a], QContext(q))
    assert abs(got - complex(ref)) < 1e-13


def test_h_product_conjugate_closed_is_real():
    params = [0.3 + 0.2j, 0.3 - 0.2j, -0.5]
    val = h_product(0.45, params, CTX)
    assert abs(val.imag) < 1e-12 * abs(val)


def test_h_product_z_symmetry():
    z = 1.1 * cmath.exp(0.6j)
    a = h_product_z(z, [0.3, -0.2], CTX)
    b = h_product_z(1.0 / z, [0.3, -0.2], CTX)
    assert abs(a - b) < 1e-12 * abs(a)


def test_basic_hyper_single_term():
    # numerator containing q^0 = 1 = q^{-0} terminates immediately
    assert basic_hyper_sum([1.0, 0.5], [0.25], CTX, 0.7) == 1.0 + 0.0j


def test_basic_hyper_two_term_hand_expansion():
    q = CTX.q
    z = 0.3
    got = basic_hyper_sum([q ** -1], [], CTX, z)
    want = 1.0 + z * (1.0 - q ** -1) / (1.0 - q)
    assert abs(got - want) < 1e-14


def test_basic_hyper_z_zero():
    got = basic_hyper_sum([CTX.q ** -4, 0.3], [0.2, 0.1], CTX, 0.0)
    assert got == 1.0 + 0.0j


def test_basic_hyper_nonterminating_rejected():
    with pytest.raises(ValueError):
        basic_hyper_sum([0.3, 0.2], [0.5], CTX, 0.1)


def test_basic_hyper_three_term_oracle():
    # 2phi1(q^{-2}, b; c; q, z) expanded by hand from the term ratio
    q, b, c, z = CTX.q, 0.3, 0.2, 0.6
    a = q ** -2
    t1 = (1 - a) * (1 - b) / ((1 - q) * (1 - c)) * z
    t2 = t1 * (1 - a * q) * (1 - b * q) / ((1 - q * q) * (1 - c * q)) * z
    want = 1.0 + t1 + t2
    got = basic_hyper_sum([a, b], [c], CTX, z)
    assert abs(got - want) < 1e-13


def test_q_binomial_values():
    q = CTX.q
    assert q_binomial(3, 1, CTX) == pytest.approx(1 + q + q * q, rel=1e-14)
    assert q_binomial(4, 2, CTX) == pytest.approx(
        (1 - q ** 3) * (1 - q ** 4) / ((1 - q) * (1 - q ** 2)), rel=1e-13
    )


def test_phi_order_zero_is_one():
    for variant in ("plus", "minus"):
        assert phi_basis_eval(0, 0.37, variant, CTX) == 1.0


def test_phi_order_one_plus_variant():
    q = CTX.q
    x = 0.37
    want = 1.0 - 2.0 * x * q ** 0.25 + q ** 0.5
    assert phi_basis_eval(1, x, "plus", CTX) == pytest.approx(want, rel=1e-14)


def test_phi_order_one_minus_variant_flips_sign():
    q = CTX.q
    x = 0.37
    want = 1.0 + 2.0 * x * q ** 0.25 + q ** 0.5
    assert phi_basis_eval(1, x, "minus", CTX) == pytest.approx(want, rel=1e-14)


@pytest.mark.parametrize("variant", ["plus", "minus"])
def test_phi_integer_order_finite_vs_ratio(variant):
    # the finite product and the infinite-product ratio must agree on a grid
    ctx = QContext(0.25)
    grid = np.linspace(-1.0, 1.0, 33)
    for beta in (1, 2, 5):
        for x in grid:
            fin = phi_basis_eval(beta, float(x), variant, ctx)
            z = cmath.exp(1j * math.acos(x))
            ratio = phi_basis_z(float(beta), z, variant, ctx)
            assert abs(fin - ratio.real) <= 1e-12 * max(1.0, abs(fin))
            assert abs(ratio.imag) <= 1e-12 * max(1.0, abs(fin))


def test_phi_rejects_bad_input():
    with pytest.raises(ValueError):
        phi_basis_eval(-1.0, 0.2, "plus", CTX)
    with pytest.raises(ValueError):
        phi_basis_eval(1.0, 0.2, "sideways", CTX)


def test_rho_zero_and_one():
    assert rho_basis_eval(0, 0.3, CTX) == 1.0 + 0.0j
    for x in (-0.7, 0.0, 0.42):
        got = rho_basis_eval(1, x, CTX)
        assert abs(got - 2.0 * x) < 1e-14


def test_rho_at_endpoint():
    # theta = 0 collapses the phases: rho_n(1) = 2 (-q^{2-n}; q^2)_{n-1}
    for n in (1, 2, 3, 5):
        got = rho_basis_eval(n, 1.0, CTX)
        want = 2.0 * qpoch(-(CTX.q ** (2 - n)), CTX, n - 1, base=CTX.q ** 2)
        assert abs(got - want) < 1e-12 * max(1.0, abs(want))


def test_rho_two_is_four_x_squared():
    for x in (-0.8, -0.1, 0.55):
        got = rho_basis_eval(2, x, CTX)
        assert abs(got - 4.0 * x * x) < 1e-13
