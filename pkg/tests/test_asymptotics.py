"""Asymptotic constants against closed forms, plus trend checks.

Frozen digits below were computed independently with bare mpmath at 50
decimal digits from the defining expressions (see the module docstring
for which expression each constant satisfies); the suite only demands
float-level agreement since the module returns budgeted log-space values.
"""

import math

import pytest

from exlab.asymptotics import (
    WrightConstants,
    alpha_approx,
    alpha_total_asymptotic,
    c_bcm,
    dominance_ratio,
    lemma2_rhs,
    rho,
    v_expected,
    wright_w,
)
from exlab.errors import UsageError
from exlab.exact_enum import ConnectedCountTable, alpha_total_exact, connected_count
from exlab.logreal import LogReal

# 0.5*sqrt(3/pi)*(e/12l)^{l/2} at l = 1, 2
RHO1_LEADING = 0.232547841775658214667031155908
RHO2_LEADING = 0.0553399720602146490858982411909
# pi/sqrt(6) and the l = 1 closed form of the w recurrence
W0 = 1.28254983016186409554403635967
W1 = 1.02659484093664959953775355041
# (rho_l/2) 2^{(3l+3)/2} 3^{(l-1)/2} Gamma((l+1)/2) at l = 1, 2
A1 = 0.930191367102632858668124623633
A2 = 0.961057757039779206215917909357


def test_rho_leading_frozen():
    assert rho(1).value.to_float() == pytest.approx(RHO1_LEADING, rel=1e-13)
    assert rho(2).value.to_float() == pytest.approx(RHO2_LEADING, rel=1e-13)


def test_wright_w_frozen_and_limit():
    assert wright_w(0).value.to_float() == pytest.approx(W0, rel=1e-13)
    assert wright_w(1).value.to_float() == pytest.approx(W1, rel=1e-13)
    assert abs(wright_w(1000).value.to_float() - 1.0) < 0.01


def test_wright_w_decreasing_toward_one():
    gaps = [abs(wright_w(l).value.to_float() - 1.0) for l in (1, 10, 100, 1000)]
    assert gaps == sorted(gaps, reverse=True)


def test_rho_via_w_is_w_times_leading():
    for l in (1, 2, 5, 20):
        r = rho(l, mode="via_w").value.ratio_to(rho(l, mode="leading").value)
        assert r == pytest.approx(wright_w(l).value.to_float(), rel=1e-12)


def test_rho_mode_gap_closes():
    gaps = [
        abs(rho(l, mode="via_w").value.ratio_to(rho(l, mode="leading").value) - 1.0)
        for l in (10, 100, 1000)
    ]
    assert gaps == sorted(gaps, reverse=True)


def test_alpha_total_asymptotic_frozen():
    assert alpha_total_asymptotic(1).value.to_float() == pytest.approx(A1, rel=1e-13)
    assert alpha_total_asymptotic(2).value.to_float() == pytest.approx(A2, rel=1e-13)


def test_alpha_total_asymptotic_tends_to_one():
    gaps = [abs(alpha_total_asymptotic(l).value.to_float() - 1.0) for l in (10, 100, 1000)]
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 0.01


def test_lemma2_rhs_closed_form_l1():
    # at l = 1 the prefactor collapses to Gamma(3) 2^{a+1} / 2 with a = 2: 8 n^2
    for n in (10, 1000, 10**6):
        want = LogReal.from_number(8 * n * n)
        assert lemma2_rhs(1, n).value.ratio_to(want) == pytest.approx(1.0, rel=1e-12)


def test_lemma2_rhs_n_scaling():
    # fixed l: the value scales as n^{2(a+1)/3}
    l = 7
    a = (3 * l + 1) / 2
    r = lemma2_rhs(l, 10**9).value.ratio_to(lemma2_rhs(l, 10**6).value)
    assert math.log10(r) == pytest.approx(3 * 2 * (a + 1) / 3, rel=1e-9)


def test_alpha_approx_positive_and_peaked():
    n, l = 10**6, 9
    kstar = round(2 * (3 * l / 2 + 3 / 2 + 1) ** (1 / 3) * n ** (2 / 3))
    lo, hi = kstar // 2, 2 * kstar
    vals = {k: alpha_approx(n, l, k).value for k in (lo, kstar, hi)}
    for v in vals.values():
        assert v > LogReal.zero()
    assert vals[kstar] > vals[lo]
    assert vals[kstar] > vals[hi]


def test_alpha_approx_sum_approaches_exact():
    # at fixed l the summed approximation should close in on the exact value;
    # the error is O(n^{-1/3})-flavored, so doublings of n shave it slowly
    l = 1
    t = ConnectedCountTable(max_k=800)
    t.ensure_band(800, 1)
    gaps = []
    for n in (100, 200, 400, 800):
        s = LogReal.zero()
        for k in range(1, n + 1):
            if k + l > k * (k - 1) // 2:
                continue
            s = s + alpha_approx(n, l, k).value
        exact = LogReal.from_number(alpha_total_exact(n, l, table=t))
        gaps.append(abs(s.ratio_to(exact) - 1.0))
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 0.25


def test_v_expected_closed_form():
    # (12 l)^{1/3} n^{2/3}
    assert v_expected(1, 10**6).value.to_float() == pytest.approx(
        22894.284851066637356, rel=1e-12
    )
    r8l = v_expected(8, 10**6).value.ratio_to(v_expected(1, 10**6).value)
    assert r8l == pytest.approx(2.0, rel=1e-12)
    r8n = v_expected(1, 8 * 10**6).value.ratio_to(v_expected(1, 10**6).value)
    assert r8n == pytest.approx(4.0, rel=1e-12)


def test_c_bcm_log_scale():
    # log c(k, k+l) is dominated by (k+l) log k at this size
    got = float(c_bcm(100, 1, 3).value.log_mag)
    assert got == pytest.approx(101 * math.log(100), rel=0.01)


def test_c_bcm_more_terms_help_at_large_l():
    exact = LogReal.from_number(connected_count(100, 108))
    g2 = abs(c_bcm(100, 8, 2).value.ratio_to(exact) - 1.0)
    g3 = abs(c_bcm(100, 8, 3).value.ratio_to(exact) - 1.0)
    assert g3 < g2


def test_c_bcm_converges_in_k():
    t = ConnectedCountTable(max_k=256)
    g32 = abs(c_bcm(32, 1, 3).value.ratio_to(LogReal.from_number(t.connected_count(32, 33))) - 1.0)
    g256 = abs(
        c_bcm(256, 1, 3).value.ratio_to(LogReal.from_number(t.connected_count(256, 257))) - 1.0
    )
    assert g256 < g32


def test_wright_constants_resolve_to_rationals():
    from fractions import Fraction

    w = WrightConstants()
    assert w.r[0] == Fraction(-1, 2)
    assert all(isinstance(x, Fraction) for x in w.r)
    assert len(w.r) >= 3


def test_dominance_ratio_frozen_and_threshold():
    assert dominance_ratio(2, 10**9) == pytest.approx(0.13471281589449510636, rel=1e-12)
    # small l against n^{1/4}: correction negligible; at l ~ n^{1/4} it is not
    assert dominance_ratio(3, 10**8) < 1.0
    assert dominance_ratio(100, 10**8) >= 1.0


def test_precision_request_shrinks_budget():
    lo = wright_w(5, precision_bits=256).value.error_budget
    hi = wright_w(5, precision_bits=512).value.error_budget
    assert hi < lo


def test_claimed_error_orders_present():
    assert rho(3).claimed_error_order == "O(1/l)"
    assert "n" in lemma2_rhs(3, 100).claimed_error_order


def test_guards():
    with pytest.raises(UsageError):
        rho(0)
    with pytest.raises(UsageError):
        rho(2, mode="exact")
    with pytest.raises(UsageError):
        c_bcm(100, 1, 1)
    with pytest.raises(UsageError):
        lemma2_rhs(-1, 100)
    with pytest.raises(UsageError):
        v_expected(1, 0)
