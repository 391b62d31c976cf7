"""Gamma-quotient canonicalization, rationality decisions, power weights."""

import random
from fractions import Fraction

import pytest
from mpmath import mp

from bergshift.exact_algebra import (
    PoleError,
    Polynomial,
    RationalFunction,
    rf_normalize,
)
from bergshift.gamma_ratio import (
    GammaRatioExpr,
    WeightExpr,
    canonicalize,
    eval_ball,
    is_rational_divisibility,
    power_weight,
    rationality_oracle,
)


def rf(num, den=(1,)):
    return rf_normalize(Polynomial.from_coeffs(num), Polynomial.from_coeffs(den))


class TestCanonicalize:
    def test_functional_equation_extraction(self):
        # one step: offset two_delta above the base class
        for p in (1, 2, 3):
            g = GammaRatioExpr.of(2 * p, [2 * p], [0])
            cofactor, reduced = canonicalize(g)
            assert reduced.is_one
            assert cofactor == rf((0, Fraction(1, 2 * p)))

    def test_distinct_residues_irreducible(self):
        g = GammaRatioExpr.of(4, [2], [3])
        cofactor, reduced = canonicalize(g)
        assert cofactor == RationalFunction.one()
        assert reduced == g

    def test_identical_atoms_cancel(self):
        g = GammaRatioExpr.of(6, [5], [5])
        assert g.is_one

    def test_idempotent(self):
        g = GammaRatioExpr.of(4, [9, 6], [1, 2])
        _, reduced = canonicalize(g)
        cofactor2, reduced2 = canonicalize(reduced)
        assert cofactor2 == RationalFunction.one()
        assert reduced2 == reduced

    def test_value_preserving_randomized(self):
        """cofactor * reduced == original, numerically, random expressions."""
        rng = random.Random(2718)
        old = mp.prec
        mp.prec = 250
        try:
            for _ in range(60):
                two_delta = 2 * rng.randint(1, 4)
                num = [rng.randint(0, 20) for _ in range(rng.randint(0, 3))]
                den = [rng.randint(0, 20) for _ in range(rng.randint(0, 3))]
                g = GammaRatioExpr.of(two_delta, num, den)
                w = WeightExpr.build([(RationalFunction.one(), g)])
                for _ in range(5):
                    z = Fraction(rng.randint(1, 40))
                    raw = mp.mpf(1)
                    for td, off in g.num:
                        raw *= mp.gamma(mp.mpf(int(z) + off) / td)
                    for td, off in g.den:
                        raw /= mp.gamma(mp.mpf(int(z) + off) / td)
                    ball = eval_ball(w, z, 250)
                    assert abs(ball.mid - raw) <= ball.rad + mp.mpf(2) ** -180
        finally:
            mp.prec = old


class TestRationalityDecision:
    def test_known_rational_instance(self):
        # offsets from m=1, p=1, n=3: full cancellation
        assert is_rational_divisibility(2, 4, 0, 6, 1) is True
        assert rationality_oracle(GammaRatioExpr.of(2, [2, 4], [0, 6])) is True

    def test_known_irrational_instance(self):
        assert is_rational_divisibility(2, 3, 0, 5, 2) is False
        assert rationality_oracle(GammaRatioExpr.of(4, [2, 3], [0, 5])) is False

    def test_trivial_equality(self):
        for delta in (1, 2, 3):
            assert is_rational_divisibility(7, 9, 7, 9, delta) is True

    def test_empty_expression_is_rational(self):
        assert rationality_oracle(GammaRatioExpr.one()) is True

    def test_exhaustive_agreement_small_range(self):
        # full exhaustive range runs in the acceptance suite
        for delta in (1, 2):
            td = 2 * delta
            for a in range(7):
                for b in range(7):
                    for c in range(7):
                        for d in range(7):
                            expr = GammaRatioExpr.of(td, [a, b], [c, d])
                            assert (is_rational_divisibility(a, b, c, d, delta)
                                    == rationality_oracle(expr)), (a, b, c, d, delta)


class TestPowerWeight:
    def test_zeroth_power_is_one(self):
        assert power_weight(0, 3, 5) == WeightExpr.one()

    def test_pth_power_matches_monomial_weight(self):
        for p in range(1, 5):
            for n in range(1, 9):
                assert power_weight(p, p, n).as_rational() == rf((2 * p, 1), (p + n, 1))

    def test_unit_root(self):
        assert power_weight(1, 1, 1) == WeightExpr.one()

    def test_double_shift_root_is_pure(self):
        assert power_weight(1, 2, 2) == WeightExpr.one()

    def test_genuine_gamma_content(self):
        pw = power_weight(1, 2, 3)
        assert not pw.is_rational

    def test_multiplicativity(self):
        for p, n in ((1, 2), (2, 3), (3, 4)):
            for m1 in range(0, 4):
                for m2 in range(0, 7 - m1):
                    lhs = power_weight(m1 + m2, p, n)
                    rhs = power_weight(m1, p, n).shift(2 * m2) * power_weight(m2, p, n)
                    assert lhs == rhs, (p, n, m1, m2)


class TestEvalBall:
    def test_identically_one_expression(self):
        ball = eval_ball(power_weight(1, 1, 1), Fraction(6), 200)
        assert ball.lower <= 1 <= ball.upper
        assert ball.rad < mp.mpf(10) ** -30

    def test_exact_rational_value(self):
        w = WeightExpr.from_rational(rf((2, 1), (3, 1)))
        ball = eval_ball(w, Fraction(2), 200)
        assert ball.lower <= mp.mpf(4) / 5 <= ball.upper
        assert ball.rad < mp.mpf(10) ** -50

    def test_root_square_relation(self):
        # weight of the half shift at z and z+2 must multiply to the full weight
        w = power_weight(1, 2, 3)
        b1 = eval_ball(w, Fraction(2), 200)
        b2 = eval_ball(w, Fraction(4), 200)
        full = power_weight(2, 2, 3).as_rational()
        target = Fraction(full.num.eval(Fraction(2))) / full.den.eval(Fraction(2))
        target_mp = mp.mpf(target.numerator) / target.denominator
        prod_lo = b1.lower * b2.lower
        prod_hi = b1.upper * b2.upper
        assert prod_lo <= target_mp <= prod_hi

    def test_monotone_refinement(self):
        w = power_weight(1, 2, 3)
        r_low = eval_ball(w, Fraction(2), 80).rad
        r_high = eval_ball(w, Fraction(2), 320).rad
        assert r_high < r_low

    def test_pole_detection(self):
        w = WeightExpr.from_rational(rf((1,), (0, 1)))
        with pytest.raises(PoleError):
            eval_ball(w, Fraction(0), 100)
        gamma_pole = WeightExpr.build(
            [(RationalFunction.one(), GammaRatioExpr.of(2, [0], []))])
        assert gamma_pole.poles_at(Fraction(-2))
        with pytest.raises(PoleError):
            eval_ball(gamma_pole, Fraction(-2), 100)


def test_mixed_scale_products_stay_closed():
    # atoms from different root scales coexist and cancel per scale
    a = GammaRatioExpr.of(2, [1], [0])
    b = GammaRatioExpr.of(4, [3], [2])
    prod = a * b
    assert set(prod.num) == {(2, 1), (4, 3)}
    assert (a * a.inverse()).is_one
