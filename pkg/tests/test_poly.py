import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critpop.errors import NotDivisible
from critpop.poly import (
    ONE,
    X,
    Poly,
    divided_wronskian,
    from_roots,
    gcd,
    identity_suite,
    is_squarefree,
    poly_sqrt,
    solve_linear,
    wronskian,
)

coeffs = st.lists(st.integers(-6, 6), min_size=0, max_size=5)


def poly_of(cs):
    return Poly(cs)


class TestArithmetic:
    def test_basic_ring_ops(self):
        p = Poly([1, 2])
        q = Poly([0, 0, 3])
        assert p + q == Poly([1, 2, 3])
        assert p * q == Poly([0, 0, 3, 6])
        assert (p - p).is_zero()
        assert p**3 == p * p * p

    def test_divmod_exact(self):
        p = Poly([-1, 0, 1])  # x^2 - 1
        q, r = divmod(p, Poly([-1, 1]))
        assert q == Poly([1, 1]) and r.is_zero()
        assert p.exact_div(Poly([1, 1])) == Poly([-1, 1])
        with pytest.raises(NotDivisible):
            Poly([1, 1]).exact_div(X)

    def test_eval_and_shift(self):
        p = Poly([1, 2, 1])
        assert p.eval(Fraction(2)) == 9
        assert p.shift(Fraction(-1)) == Poly([0, 0, 1])
        assert p.valuation_at(Fraction(-1)) == 2

    def test_text_round_trip(self):
        p = Poly([Fraction(1, 2), -3, 0, 1])
        assert Poly.from_text(p.to_text()) == p
        assert Poly.from_text("0").is_zero()
        assert Poly().to_text() == "0"

    def test_degree_sentinel(self):
        assert Poly().degree == float("-inf")
        assert ONE.degree == 0

    def test_gcd_and_squarefree(self):
        p = Poly([-1, 1]) ** 2 * Poly([2, 1])
        assert gcd(p, p.deriv()) == Poly([-1, 1])
        assert not is_squarefree(p)
        assert is_squarefree(Poly([-2, 0, 1]))


class TestWronskian:
    def test_spec_examples(self):
        assert wronskian([ONE, X]) == ONE
        # W(x+a, x^2/2 + cx + ac - b) = x^2/2 + ax + b at a=1, b=0, c=2
        a, b, c = 1, 0, 2
        lhs = wronskian([Poly([a, 1]), Poly([a * c - b, c, Fraction(1, 2)])])
        assert lhs == Poly([b, a, Fraction(1, 2)])
        assert wronskian([Poly([-1, 1]), Poly([0, 0, 1])]) == Poly([0, -2, 1])

    def test_empty_convention(self):
        assert wronskian([]) == ONE

    @settings(max_examples=40, deadline=None)
    @given(coeffs, coeffs, coeffs)
    def test_alternating_and_linear(self, a, b, c):
        f, g, h = Poly(a), Poly(b), Poly(c)
        assert wronskian([f, g]) == -wronskian([g, f])
        assert wronskian([f + h, g]) == wronskian([f, g]) + wronskian([h, g])
        assert wronskian([f, f]).is_zero()

    @settings(max_examples=25, deadline=None)
    @given(coeffs, coeffs, coeffs)
    def test_common_factor_identity(self, a, b, c):
        f, g, h = Poly(a), Poly(b), Poly(c)
        assert wronskian([f * g, f * h]) == f**2 * wronskian([g, h])


class TestDividedWronskian:
    def test_spec_examples(self):
        assert divided_wronskian([Poly([-1, 1]), Poly([0, 0, 1])], [Poly([0, -2, 1])]) == ONE
        assert divided_wronskian([Poly([5, 1])], []) == Poly([5, 1])
        assert divided_wronskian([ONE, X, Poly([0, 0, 1])], [ONE, ONE]) == Poly([2])

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            divided_wronskian([ONE, X], [Poly([0, 1])])

    def test_product_recovers_wronskian(self, rng):
        for _ in range(20):
            us = [Poly([rng.randint(-4, 4) for _ in range(rng.randint(1, 4))] + [1])
                  for _ in range(3)]
            ts = [from_roots([rng.randint(-2, 2)]), ONE]
            try:
                dw = divided_wronskian(us, ts)
            except NotDivisible:
                continue
            assert dw * ts[0] ** 2 * ts[1] == wronskian(us)


class TestSqrt:
    def test_spec_examples(self):
        assert poly_sqrt(Poly([1, 2, 1])) == Poly([1, 1])
        assert poly_sqrt(Poly([1, 0, 1])) is None
        assert poly_sqrt(Poly([1, 0, -4, 0, 4])) == Poly([-1, 0, 2])

    def test_round_trip_100(self):
        rng = random.Random(3)
        for _ in range(100):
            q = Poly([Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                      for _ in range(rng.randint(0, 4))] + [rng.choice([1, -1, 2])])
            r = poly_sqrt(q * q)
            assert r is not None
            assert r == q or r == -q
            assert r.leading() > 0


class TestLinearSolve:
    def test_unique(self):
        sol, ker = solve_linear([[Fraction(2), Fraction(0)], [Fraction(0), Fraction(3)]],
                                [Fraction(4), Fraction(9)])
        assert sol == [2, 3] and ker == []

    def test_inconsistent(self):
        assert solve_linear([[Fraction(1)], [Fraction(1)]], [Fraction(0), Fraction(1)]) is None

    def test_kernel(self):
        sol, ker = solve_linear([[Fraction(1), Fraction(1)]], [Fraction(2)])
        assert len(ker) == 1
        v = ker[0]
        assert v[0] + v[1] == 0


class TestIdentitySuite:
    def test_fg_example(self):
        # W(x^2, x^3, x^4) = 1! 2! W(x, x^2)^3 = 2 x^6
        lhs = wronskian([Poly([0, 0, 1]), Poly([0, 0, 0, 1]), Poly([0, 0, 0, 0, 1])])
        assert lhs == Poly([0] * 6 + [2])

    def test_one_in_front_s1(self):
        g = Poly([0, 0, 0, 1])
        assert wronskian([ONE, g]) == g.deriv()

    def test_runs_clean(self):
        rep = identity_suite(seed=1, trials=25)
        assert rep.passed
        assert all(v == 25 for v in rep.checks.values())

    def test_rejects_bad_trials(self):
        with pytest.raises(ValueError):
            identity_suite(seed=1, trials=0)
