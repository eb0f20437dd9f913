import pytest
from hypothesis import given, settings, strategies as st

from quadperiod.arith import NotPrimitive, QuadPoly, WrongCase
from quadperiod.congruence import (
    solve,
    solve_brute,
    solve_odd_a_mod_2,
    solve_odd_p,
    solve_p_divides_a,
)

coef = st.integers(-9, 9)


def poly_strategy():
    return st.tuples(coef.filter(bool), coef, coef).map(lambda t: QuadPoly(*t)).filter(lambda f: f.primitive)


class TestCaseSolvers:
    def test_p_divides_a(self):
        assert solve_p_divides_a(QuadPoly(2, 2, 1), 2, 3).residues == ()
        assert solve_p_divides_a(QuadPoly(2, 1, 1), 2, 1).residues == (1,)
        # exhaustive scan mod 16 gives 13: f(13) = 352 = 2^5 * 11
        assert solve_p_divides_a(QuadPoly(2, 1, 1), 2, 4).residues == (13,)
        assert solve_brute(QuadPoly(2, 1, 1), 2, 4).residues == (13,)

    def test_p_divides_a_wrong_case(self):
        with pytest.raises(WrongCase, match="wrong case"):
            solve_p_divides_a(QuadPoly(1, 1, 1), 2, 2)

    def test_odd_a_mod_2(self):
        assert solve_odd_a_mod_2(QuadPoly(1, 1, 1), 1).residues == ()
        # x(x+1) = 0 mod 8 forces 8 | x or 8 | x+1; exhaustive scan agrees
        assert solve_odd_a_mod_2(QuadPoly(1, 1, 0), 3).residues == (0, 7)
        assert solve_brute(QuadPoly(1, 1, 0), 2, 3).residues == (0, 7)
        assert solve_odd_a_mod_2(QuadPoly(1, 0, -4), 3).residues == (2, 6)
        with pytest.raises(WrongCase):
            solve_odd_a_mod_2(QuadPoly(2, 1, 1), 3)

    def test_odd_p(self):
        assert solve_odd_p(QuadPoly(1, 0, 1), 5, 1).residues == (2, 3)
        assert solve_odd_p(QuadPoly(1, 0, 1), 3, 1).residues == ()
        assert solve_odd_p(QuadPoly(1, 0, -9), 3, 2).residues == (0, 3, 6)
        with pytest.raises(WrongCase):
            solve_odd_p(QuadPoly(3, 1, 1), 3, 2)
        with pytest.raises(WrongCase):
            solve_odd_p(QuadPoly(1, 1, 1), 2, 2)


class TestDispatch:
    def test_examples(self):
        assert solve(QuadPoly(1, 0, 1), 7, 0).residues == (0,)
        assert solve(QuadPoly(1, 0, 1), 2, 1).residues == (1,)
        assert solve(QuadPoly(3, 1, 1), 3, 2).residues == (5,)

    def test_non_primitive(self):
        with pytest.raises(NotPrimitive, match="reduce by content first"):
            solve(QuadPoly(2, 2, 2), 3, 1)

    def test_degenerate_discriminant(self):
        f = QuadPoly(1, 2, 1)  # (x+1)^2
        for p in (2, 3, 5):
            for e in range(1, 7):
                assert solve(f, p, e) == solve_brute(f, p, e)


class TestBrute:
    def test_examples(self):
        assert solve_brute(QuadPoly(1, 0, 1), 5, 2).residues == (7, 18)
        assert solve_brute(QuadPoly(1, 1, 1), 2, 5).residues == ()
        assert solve_brute(QuadPoly(5, -3, 7), 11, 0).residues == (0,)

    def test_cap(self):
        with pytest.raises(ValueError, match="modulus exceeds oracle cap"):
            solve_brute(QuadPoly(1, 0, 1), 7, 5, cap=1000)

    def test_big_coefficients(self):
        f = QuadPoly(10**20 + 1, -(10**19), 7)
        assert solve_brute(f, 3, 5) == solve(f, 3, 5)


@settings(max_examples=300)
@given(poly_strategy(), st.sampled_from([2, 3, 5, 7, 11, 13]), st.integers(0, 8))
def test_solution_set_invariants(f, p, e):
    if p**e > 10**5:
        e = 2
    s = solve(f, p, e)
    m = p**e
    assert list(s.residues) == sorted(set(s.residues))
    assert all(f(r) % m == 0 for r in s.residues)
    lifted = solve(f, p, e + 1)
    assert all(r % m in s for r in lifted.residues)


@settings(max_examples=200)
@given(poly_strategy(), st.sampled_from([3, 5, 7, 11, 13]), st.integers(1, 6))
def test_root_branches_symmetric(f, p, e):
    if f.a % p == 0:
        return
    s = solve(f, p, e)
    m = p**e
    # (2ar + b)^2 = D mod p^e for every root, from 4a f(x) = (2ax + b)^2 - D
    assert all(((2 * f.a * r + f.b) ** 2 - f.D) % m == 0 for r in s.residues)


def test_case_cardinalities():
    # x^2 + 1 mod 5^e: two roots for every e; x^2 - 2*25 ... coset families
    for e in range(1, 6):
        assert len(solve(QuadPoly(1, 0, 1), 5, e)) == 2
    f = QuadPoly(1, 0, -36)  # nu_3(D) = 2, (D_3 / 3) = (16/3) = 1
    for e in range(3, 7):
        assert len(solve(f, 3, e)) == 2 * 3
    for e in range(1, 3):
        assert len(solve(f, 3, e)) == 3 ** (e // 2)
