"""Pointwise verification of the closed-form weight identities.

Three scenarios, each producing a left and a right weight expression whose
proportionality (equality up to one constant across all sample points) is
then decided:

* ``commutator`` - the bracket of the m-th root power against the second
  operator versus the bracket of the first operator against the l-th root
  power; proportional exactly in the matching-order regime, with the
  constant equal to the ratio of the two normalizing constants.
* ``factored`` - the same relation rearranged as rational cofactors times
  irreducible Gamma quotients (one quotient on the left, a difference of
  two on the right).
* ``functional`` - the single-function form H(z) F(z + 2 alpha) = F(z)
  with alpha = s - p, valid under the degree balance l + p = m + s.

Verdicts are exact whenever both sides reduce to rational functions;
otherwise certified ball evaluation decides, with the working precision
doubled up to four times before giving up as inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exact_algebra import (
    Polynomial,
    RationalFunction,
    as_rational,
    rf_normalize,
)
from .gamma_ratio import BallValue, GammaRatioExpr, WeightExpr, power_weight
from .mellin import RadialSymbol
from .shift_algebra import ShiftSum, commutator, quasihomogeneous_operator

SCENARIOS = ("commutator", "factored", "functional")


@dataclass(frozen=True)
class SampleRow:
    z: Fraction
    left: Union[Fraction, BallValue]
    right: Union[Fraction, BallValue]
    ratio: Union[Fraction, BallValue, None]


@dataclass(frozen=True)
class IdentityReport:
    scenario: str
    params: dict
    verdict: str  # proportional | not_proportional | inconclusive
    constant: Union[Fraction, BallValue, None]
    exact: bool
    both_sides_zero: bool
    samples: tuple[SampleRow, ...]
    witnesses: tuple[tuple[Fraction, Fraction], ...]
    skipped_poles: tuple[Fraction, ...]
    precision_bits: int
    note: str = ""


def _lin(*roots: int) -> Polynomial:
    """Product of the monic linear factors (z + r)."""
    out = Polynomial.one()
    for r in roots:
        out = out * Polynomial.z_plus(r)
    return out


def _rf(num: Polynomial, den: Polynomial) -> RationalFunction:
    return rf_normalize(num, den)


def build_sides(scenario: str, p: int, s: int, n: int, d: int, m: int, l: int) -> tuple[WeightExpr, WeightExpr]:
    """Left and right weight expressions for one scenario instance."""
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")
    if min(p, s, n, d, m, l) <= 0:
        raise ValueError("all parameters must be positive")

    if scenario == "commutator":
        t_first = quasihomogeneous_operator(p, RadialSymbol.monomial(n))
        t_second = quasihomogeneous_operator(s, RadialSymbol.monomial(d))
        root_m = ShiftSum.single(m, power_weight(m, p, n))
        root_l = ShiftSum.single(l, power_weight(l, s, d))
        left = commutator(root_m, t_second).weight_at(m + s)
        right = commutator(t_first, root_l).weight_at(l + p)
        return left, right

    if scenario == "factored":
        # The rational cofactors below come from reducing the bracket form
        # by two functional-equation steps of size 2p, which is the s = 2p
        # regime; outside it the factored presentation does not apply.
        if s != 2 * p:
            raise ValueError("factored form is derived for s = 2p only")
        r1 = _rf(_lin(2 * m + 2 * p, p + n, 3 * p + n),
                 _lin(s + d, 2 * p, 2 * m + p + n, 2 * m + 3 * p + n)) - _rf(
            Polynomial.one(), _lin(2 * m + s + d))
        gq_left = GammaRatioExpr.of(2 * p, [2 * m, p + n], [0, 2 * m + p + n])
        r2 = _rf(_lin(2 * l), _lin(2 * m, 2 * l + p + n))
        gq_r1 = GammaRatioExpr.of(2 * s, [2 * l, s + d], [0, 2 * l + s + d])
        r3 = _rf(_lin(0), _lin(p + n, 2 * m + s + d))
        gq_r2 = GammaRatioExpr.of(2 * s, [2 * m, 2 * p + s + d], [2 * p, 2 * m + s + d])
        left = WeightExpr.build([(r1, gq_left)])
        right = WeightExpr.build([(r2, gq_r1), (r3.scale(-1), gq_r2)])
        return left, right

    # functional form: requires the degree balance and alpha = s - p
    if l + p != m + s:
        raise ValueError("functional form needs l + p = m + s")
    alpha = s - p
    if alpha <= 0:
        raise ValueError("functional form needs p < s")
    f_expr = WeightExpr.build([
        (_rf(_lin(2 * m), _lin(0)),
         GammaRatioExpr.of(2 * p, [2 * m, p + n], [0, 2 * m + p + n])),
        (_rf(_lin(2 * m), _lin(p + n)).scale(-1),
         GammaRatioExpr.of(2 * s, [2 * m, 2 * p + s + d], [2 * p, 2 * m + s + d])),
    ])
    h_expr = WeightExpr.from_rational(
        _rf(_lin(2 * alpha + p + n, 2 * m + s + d), _lin(2 * l + p + n, s + d)))
    left = h_expr * f_expr.shift(2 * alpha)
    right = f_expr
    return left, right


def default_samples(count: int = 50) -> list[Fraction]:
    return [Fraction(2 * k + 2) for k in range(count)]


def _exact_proportionality(
    left_rf: RationalFunction,
    right_rf: RationalFunction,
    sample_zs: Sequence[Fraction],
) -> tuple[str, Optional[Fraction], bool, list[SampleRow], list[tuple[Fraction, Fraction]], str]:
    rows: list[SampleRow] = []

    def value(rf: RationalFunction, z: Fraction) -> Optional[Fraction]:
        return None if rf.den.eval(z) == 0 else rf.num.eval(z) / rf.den.eval(z)

    if left_rf.is_zero and right_rf.is_zero:
        for z in sample_zs:
            rows.append(SampleRow(z, Fraction(0), Fraction(0), None))
        return ("proportional", Fraction(1), True, rows, [],
                "both sides reduce to the zero function exactly")
    if right_rf.is_zero or left_rf.is_zero:
        # One side vanishes identically, the other does not.
        verdict = "proportional" if left_rf.is_zero else "not_proportional"
        const = Fraction(0) if left_rf.is_zero else None
        note = ("left side vanishes identically" if left_rf.is_zero
                else "right side vanishes identically while the left does not")
        for z in sample_zs:
            lv, rv = value(left_rf, z), value(right_rf, z)
            rows.append(SampleRow(z, lv, rv, None))
        return verdict, const, False, rows, [], note

    quotient = left_rf / right_rf
    witnesses: list[tuple[Fraction, Fraction]] = []
    ratios: list[tuple[Fraction, Fraction]] = []
    for z in sample_zs:
        lv, rv = value(left_rf, z), value(right_rf, z)
        ratio = None if (lv is None or rv is None or rv == 0) else lv / rv
        rows.append(SampleRow(z, lv, rv, ratio))
        if ratio is not None:
            ratios.append((z, ratio))
    if quotient.is_constant:
        return "proportional", quotient.constant_value(), False, rows, [], ""
    for (z1, r1), (z2, r2) in zip(ratios, ratios[1:]):
        if r1 != r2:
            witnesses.append((z1, z2))
            if len(witnesses) >= 3:
                break
    return ("not_proportional", None, False, rows, witnesses,
            "exact quotient of the two sides is not constant")


def _ball_proportionality(
    left: WeightExpr,
    right: WeightExpr,
    sample_zs: Sequence[Fraction],
    precision_bits: int,
) -> tuple[str, Optional[BallValue], list[SampleRow], list[tuple[Fraction, Fraction]], list[Fraction], int]:
    from mpmath import iv, mp

    bits = precision_bits
    for _attempt in range(5):  # initial try plus four doublings
        old_iv, old_mp = iv.prec, mp.prec
        try:
            iv.prec = bits
            mp.prec = bits
            rows: list[SampleRow] = []
            skipped: list[Fraction] = []
            ratio_ivs: list[tuple[Fraction, object]] = []
            unresolved = False
            witness: Optional[tuple[Fraction, Fraction]] = None
            from .gamma_ratio import _ball_from_interval, _iv_weight

            quality = mp.mpf(2) ** (-max(16, bits // 4))
            for z in sample_zs:
                if left.poles_at(z) or right.poles_at(z):
                    skipped.append(z)
                    continue
                liv = _iv_weight(left, z)
                riv = _iv_weight(right, z)
                lball = _ball_from_interval(liv)
                rball = _ball_from_interval(riv)
                if 0 in riv:
                    # cannot divide; consistent only if the left is tiny too
                    rows.append(SampleRow(z, lball, rball, None))
                    if lball.excludes_zero():
                        unresolved = True
                    continue
                q = liv / riv
                qball = _ball_from_interval(q)
                rows.append(SampleRow(z, lball, rball, qball))
                if qball.rad > quality * max(abs(qball.mid), mp.mpf(1)):
                    unresolved = True
                ratio_ivs.append((z, q))
            for i in range(len(ratio_ivs)):
                for j in range(i + 1, len(ratio_ivs)):
                    if 0 not in (ratio_ivs[i][1] - ratio_ivs[j][1]):
                        witness = (ratio_ivs[i][0], ratio_ivs[j][0])
                        break
                if witness:
                    break
            if witness is not None:
                return "not_proportional", None, rows, [witness], skipped, bits
            if not unresolved:
                if ratio_ivs:
                    const = _ball_from_interval(ratio_ivs[0][1])
                    return "proportional", const, rows, [], skipped, bits
                # every sample had both sides indistinguishable from zero
                return "proportional", None, rows, [], skipped, bits
        finally:
            iv.prec, mp.prec = old_iv, old_mp
        bits *= 2
    return "inconclusive", None, rows, [], skipped, bits // 2


def verify_identity(
    scenario: str,
    p: int,
    s: int,
    n: int,
    d: int,
    m: int,
    l: int,
    sample_zs: Optional[Sequence[Fraction]] = None,
    precision_bits: int = 200,
) -> IdentityReport:
    """Check left = constant * right pointwise for one scenario instance."""
    left, right = build_sides(scenario, p, s, n, d, m, l)
    samples = [as_rational(z) for z in (sample_zs if sample_zs is not None else default_samples())]
    params = {"p": p, "s": s, "n": n, "d": d, "m": m, "l": l}

    left_rf, right_rf = left.as_rational(), right.as_rational()
    if left_rf is not None and right_rf is not None:
        verdict, const, both_zero, rows, witnesses, note = _exact_proportionality(
            left_rf, right_rf, samples)
        return IdentityReport(
            scenario=scenario, params=params, verdict=verdict, constant=const,
            exact=True, both_sides_zero=both_zero, samples=tuple(rows),
            witnesses=tuple(witnesses), skipped_poles=(),
            precision_bits=precision_bits, note=note)

    verdict, const, rows, witnesses, skipped, bits = _ball_proportionality(
        left, right, samples, precision_bits)
    note = ""
    if verdict == "proportional" and const is None:
        note = "both sides indistinguishable from zero at every sample"
    elif verdict == "inconclusive":
        note = "ball radii too large after four precision doublings"
    return IdentityReport(
        scenario=scenario, params=params, verdict=verdict, constant=const,
        exact=False, both_sides_zero=False, samples=tuple(rows),
        witnesses=tuple(witnesses), skipped_poles=tuple(skipped),
        precision_bits=bits, note=note)
