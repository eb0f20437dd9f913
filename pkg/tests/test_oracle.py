import pytest

from quadperiod.arith import QuadPoly
from quadperiod.distance import NotEventuallyPeriodic
from quadperiod.oracle import (
    asymptotic_slope,
    default_start,
    empirical_period_details,
    empirical_smallest_period,
    g_eval,
    g_p_eval,
    gcd_divides_Bk_check,
    h_p_i,
    hua_check,
    oracle_report,
    predicted_slope,
    unboundedness_witness,
)
from quadperiod.period import compute_Bk


def test_g_eval_examples():
    f = QuadPoly(1, 0, 1)
    assert g_eval(f, 1, 1) == 1
    assert g_eval(f, 1, 2) == 5
    assert g_eval(QuadPoly(1, 3, 0), 1, 1) == 2


def test_g_eval_hand_formula():
    f = QuadPoly(1, 0, 1)
    for n in range(1, 200):
        assert g_eval(f, 1, n) == (5 if n % 5 == 2 else 1)


def test_g_eval_extension_across_zero():
    f = QuadPoly(1, 3, 0)  # zeros at 0 and -3
    B = compute_Bk(f, 2)
    assert g_eval(f, 2, -1) == g_eval(f, 2, -1 + B)
    with pytest.raises(NotEventuallyPeriodic, match="undefined"):
        g_eval(f, 3, -1)


def test_g_p_eval():
    f = QuadPoly(1, 0, 1)
    assert g_p_eval(f, 1, 2, 5) == 1
    assert g_p_eval(f, 1, 1, 5) == 0
    g = g_eval(f, 2, 2)
    v = 0
    while g % 2 == 0:
        g //= 2
        v += 1
    assert g_p_eval(f, 2, 2, 2) == v


def test_h_p_i():
    f = QuadPoly(1, 0, 1)
    # f(2) = 5, f(3) = 10: both divisible by 5
    assert h_p_i(f, 1, 2, 5, 1) == 1
    assert h_p_i(f, 1, 2, 5, 2) == 0


def test_empirical_examples():
    assert empirical_smallest_period(QuadPoly(1, 0, 1), 1) == 5
    assert empirical_smallest_period(QuadPoly(4, 0, 1), 1) == 1


def test_empirical_divides_Bk():
    for f, k in [(QuadPoly(1, 0, 1), 3), (QuadPoly(2, -3, 7), 2), (QuadPoly(5, 1, -1), 2)]:
        det = empirical_period_details(f, k)
        assert det.B_k % det.period == 0
        assert det.divisor_checks[det.B_k]


def test_empirical_rejects_bad_input():
    with pytest.raises(ValueError):
        empirical_smallest_period(QuadPoly(1, 0, 1), 1, horizon=1)
    with pytest.raises(NotEventuallyPeriodic):
        empirical_smallest_period(QuadPoly(1, 1, 0), 1)


def test_default_start():
    assert default_start(QuadPoly(1, 0, 1)) == 1
    assert default_start(QuadPoly(1, -5, 6)) == 4
    assert default_start(QuadPoly(1, 3, 0)) == 1


def test_hua():
    assert hua_check(QuadPoly(1, 0, 1), 3, 2)
    assert hua_check(QuadPoly(1, 3, 0), 2, 5)
    for n in range(1, 30):
        assert hua_check(QuadPoly(2, 1, 3), 1, n)
    with pytest.raises(ValueError):
        hua_check(QuadPoly(1, 0, 1), 13, 1)


def test_gcd_divides_Bk():
    assert gcd_divides_Bk_check(QuadPoly(1, 0, 1), 2, 7)
    assert gcd_divides_Bk_check(QuadPoly(1, 0, 1), 1, 2)
    assert gcd_divides_Bk_check(QuadPoly(1, 3, 0), 2, 3)


def test_slopes():
    assert predicted_slope(QuadPoly(1, 0, 1), 1) == 4
    assert predicted_slope(QuadPoly(1, 2, 0), 2) == 5
    rep = asymptotic_slope(QuadPoly(1, 0, 1), 1, [10**4])
    assert abs(rep.points[0][2] - 4) / 4 < 0.10


def test_unboundedness():
    pts = unboundedness_witness(QuadPoly(1, 1, 0), 1, 10)
    assert all(g >= n + 1 for n, g in pts)
    assert [g for _, g in pts] == sorted({g for _, g in pts})
    pts = unboundedness_witness(QuadPoly(1, 2, 0), 2, 10)
    assert all(g >= n + 2 for n, g in pts)
    with pytest.raises(ValueError):
        unboundedness_witness(QuadPoly(1, 0, 1), 1, 5)


def test_oracle_report():
    rep = oracle_report(QuadPoly(1, 0, 1), 2)
    assert rep.empirical_period == 10
    assert rep.hua_consistent and rep.gcd_checks
    assert all(g >= 1 for _, g in rep.samples)
    assert "falsifier" in rep.note
