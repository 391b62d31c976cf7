"""Symbolic Gamma quotients with affine arguments, and weight expressions.

A Gamma-ratio expression is a quotient of products of atoms
Gamma((z + offset)/two_delta) with nonnegative integer offsets.  The
functional equation Gamma(x + 1) = x * Gamma(x) lets any offset be lowered
by two_delta at the cost of a linear factor (z + offset - two_delta) /
two_delta; applying it until every offset sits in [0, two_delta) and then
cancelling identical atoms yields a confluent canonical form.  An
expression is a rational function exactly when nothing survives that
reduction, which turns rationality into a decidable syntactic check and
powers the exact zero-testing of shift weights.

A weight expression is a finite sum of (rational function) x (Gamma ratio)
terms in the global variable z = 2k + 2.  Certified numeric evaluation
returns balls (midpoint, radius) backed by mpmath interval arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import mpmath
from mpmath import iv, mp

from .exact_algebra import (
    Polynomial,
    PoleError,
    RationalFunction,
    RationalLike,
    as_rational,
    format_rational_function,
    rf_eval,
    rf_normalize,
    rf_shift,
)

# An atom Gamma((z + offset)/two_delta), stored as (two_delta, offset).
# Keeping the denominator per atom closes products over operators built at
# different root scales; an expression whose atoms share one two_delta is
# exactly the single-denominator quotient shape.
GammaAtom = tuple[int, int]


def _sorted_atoms(atoms: Iterable[GammaAtom]) -> tuple[GammaAtom, ...]:
    return tuple(sorted(atoms))


def _cancel_common(num: list[GammaAtom], den: list[GammaAtom]) -> tuple[tuple[GammaAtom, ...], tuple[GammaAtom, ...]]:
    den_left = list(den)
    num_left: list[GammaAtom] = []
    for a in num:
        if a in den_left:
            den_left.remove(a)
        else:
            num_left.append(a)
    return _sorted_atoms(num_left), _sorted_atoms(den_left)


@dataclass(frozen=True)
class GammaRatioExpr:
    """Product of Gamma atoms over a product of Gamma atoms."""

    num: tuple[GammaAtom, ...]
    den: tuple[GammaAtom, ...]

    @staticmethod
    def of(two_delta: int, num_offsets: Iterable[int], den_offsets: Iterable[int]) -> "GammaRatioExpr":
        """The single-denominator shape: all atoms share ``two_delta``."""
        if two_delta <= 0:
            raise ValueError("two_delta must be a positive integer")
        num = [(two_delta, int(a)) for a in num_offsets]
        den = [(two_delta, int(c)) for c in den_offsets]
        for _, off in num + den:
            if off < 0:
                raise ValueError("offsets must be nonnegative")
        n, d = _cancel_common(num, den)
        return GammaRatioExpr(n, d)

    @staticmethod
    def one() -> "GammaRatioExpr":
        return GammaRatioExpr((), ())

    @property
    def is_one(self) -> bool:
        return not self.num and not self.den

    def __mul__(self, other: "GammaRatioExpr") -> "GammaRatioExpr":
        n, d = _cancel_common(list(self.num) + list(other.num), list(self.den) + list(other.den))
        return GammaRatioExpr(n, d)

    def inverse(self) -> "GammaRatioExpr":
        return GammaRatioExpr(self.den, self.num)

    def shift(self, h: int) -> "GammaRatioExpr":
        """Substitute z -> z + h; h must be a nonnegative integer."""
        if h < 0:
            raise ValueError("gamma atoms only shift by nonnegative integers")
        if h == 0:
            return self
        return GammaRatioExpr(
            _sorted_atoms((td, off + h) for td, off in self.num),
            _sorted_atoms((td, off + h) for td, off in self.den),
        )

    def __str__(self) -> str:
        def fmt(atoms: tuple[GammaAtom, ...]) -> str:
            return "*".join(f"gamma((z+{off})/{td})" for td, off in atoms) or "1"

        if self.is_one:
            return "1"
        if not self.den:
            return fmt(self.num)
        return f"{fmt(self.num)}/({fmt(self.den)})"


def _reduce_atoms(atoms: Iterable[GammaAtom]) -> tuple[list[GammaAtom], Polynomial, Fraction]:
    """Lower every offset into [0, two_delta); return (atoms, factor poly, scalar).

    Each single application of the functional equation on an atom with
    offset a >= two_delta contributes the linear factor (z + a - two_delta)
    and the scalar 1/two_delta.
    """
    reduced: list[GammaAtom] = []
    factor = Polynomial.one()
    scalar = Fraction(1)
    for td, off in atoms:
        q, r = divmod(off, td)
        for t in range(q):
            factor = factor * Polynomial.z_plus(r + td * t)
            scalar /= td
        reduced.append((td, r))
    return reduced, factor, scalar


def canonicalize(g: GammaRatioExpr) -> tuple[RationalFunction, GammaRatioExpr]:
    """Split g into (rational cofactor, fully reduced Gamma part).

    Value preserving: cofactor * reduced equals g as a function.  In the
    reduced part every offset lies in [0, two_delta) and no atom appears in
    both numerator and denominator, so no further functional-equation or
    cancellation step applies.
    """
    num, nf, ns = _reduce_atoms(g.num)
    den, df, ds = _reduce_atoms(g.den)
    cofactor = rf_normalize(nf.scale(ns), df.scale(ds))
    n, d = _cancel_common(num, den)
    return cofactor, GammaRatioExpr(n, d)


def rationality_oracle(g: GammaRatioExpr) -> bool:
    """Brute-force rationality check: reduce, then ask if any atom survives."""
    _, reduced = canonicalize(g)
    return reduced.is_one


def is_rational_divisibility(a: int, b: int, c: int, d: int, delta: int) -> bool:
    """Divisibility criterion for the 2-over-2 quotient
    Gamma((z+a)/2delta) Gamma((z+b)/2delta) / (Gamma((z+c)/2delta) Gamma((z+d)/2delta)):
    rational iff 2*delta divides a+b-c-d and one of a-c, a-d.
    """
    if min(a, b, c, d) < 0 or delta <= 0:
        raise ValueError("offsets must be nonnegative and delta positive")
    two_delta = 2 * delta
    lam = a + b - c - d
    return lam % two_delta == 0 and (
        (a - c) % two_delta == 0 or (a - d) % two_delta == 0
    )


# ---------------------------------------------------------------------------
# weight expressions


@dataclass(frozen=True)
class WeightExpr:
    """Finite sum of (rational function) x (canonical Gamma ratio) terms.

    Terms are normalized at construction: every Gamma part is reduced with
    its cofactor folded into the coefficient, equal Gamma parts are merged,
    zero coefficients dropped, and the result deterministically ordered.
    Two expressions whose Gamma content cancels entirely therefore compare
    equal exactly when they are equal as functions of z.
    """

    terms: tuple[tuple[RationalFunction, GammaRatioExpr], ...]

    @staticmethod
    def build(terms: Iterable[tuple[RationalFunction, GammaRatioExpr]]) -> "WeightExpr":
        merged: dict[GammaRatioExpr, RationalFunction] = {}
        for coeff, gamma in terms:
            cofactor, reduced = canonicalize(gamma)
            coeff = coeff * cofactor
            if coeff.is_zero:
                continue
            prev = merged.get(reduced)
            merged[reduced] = coeff if prev is None else prev + coeff
        cleaned = [(c, g) for g, c in merged.items() if not c.is_zero]
        cleaned.sort(key=lambda t: (len(t[1].num) + len(t[1].den), t[1].num, t[1].den))
        return WeightExpr(tuple(cleaned))

    @staticmethod
    def from_rational(rf: RationalFunction) -> "WeightExpr":
        return WeightExpr.build([(rf, GammaRatioExpr.one())])

    @staticmethod
    def zero() -> "WeightExpr":
        return WeightExpr(())

    @staticmethod
    def one() -> "WeightExpr":
        return WeightExpr.from_rational(RationalFunction.one())

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_rational(self) -> bool:
        """True when no Gamma atom survives normalization."""
        return all(g.is_one for _, g in self.terms)

    def as_rational(self) -> Optional[RationalFunction]:
        if self.is_zero:
            return RationalFunction.zero()
        if len(self.terms) == 1 and self.terms[0][1].is_one:
            return self.terms[0][0]
        return None

    def __add__(self, other: "WeightExpr") -> "WeightExpr":
        return WeightExpr.build(list(self.terms) + list(other.terms))

    def __neg__(self) -> "WeightExpr":
        return WeightExpr(tuple((-c, g) for c, g in self.terms))

    def __sub__(self, other: "WeightExpr") -> "WeightExpr":
        return self + (-other)

    def __mul__(self, other: "WeightExpr") -> "WeightExpr":
        out = []
        for c1, g1 in self.terms:
            for c2, g2 in other.terms:
                out.append((c1 * c2, g1 * g2))
        return WeightExpr.build(out)

    def scale(self, c: RationalLike) -> "WeightExpr":
        c = as_rational(c)
        if c == 0:
            return WeightExpr.zero()
        return WeightExpr(tuple((rf.scale(c), g) for rf, g in self.terms))

    def shift(self, h: int) -> "WeightExpr":
        """Substitute z -> z + h (h a nonnegative even integer in all uses)."""
        return WeightExpr.build(
            [(rf_shift(c, h), g.shift(h)) for c, g in self.terms]
        )

    def eval_exact(self, z0: RationalLike) -> Fraction:
        """Exact value at z0; only defined for purely rational weights."""
        if not self.is_rational:
            raise ValueError("weight has Gamma content; use eval_ball")
        z0 = as_rational(z0)
        total = Fraction(0)
        for c, _ in self.terms:
            total += rf_eval(c, z0)
        return total

    def poles_at(self, z0: RationalLike) -> bool:
        """True when some term of the normalized form is singular at z0.

        Numerator Gamma atoms at nonpositive integer arguments are poles;
        denominator atoms there only make the term vanish.
        """
        z0 = as_rational(z0)
        for c, g in self.terms:
            if c.den.eval(z0) == 0:
                return True
            for td, off in g.num:
                arg = (z0 + off) / td
                if arg <= 0 and arg.denominator == 1:
                    return True
        return False

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for c, g in self.terms:
            cs = format_rational_function(c)
            parts.append(cs if g.is_one else f"({cs})*{g}")
        return " + ".join(parts)


def power_weight(m: int, p: int, n: int) -> WeightExpr:
    """Weight of the m-th power of the canonical degree-1 root whose p-th
    power is the quasihomogeneous operator of degree p with radial part r^n.

    Closed form before reduction:
        (z+2m)/z * G((z+2m)/2p) G((z+p+n)/2p) / (G(z/2p) G((z+2m+p+n)/2p)).
    Reduction makes power_weight(0,...) = 1 and power_weight(p,p,n) the
    plain rational weight (z+2p)/(z+p+n).
    """
    if m < 0:
        raise ValueError("power must be nonnegative")
    if p <= 0 or n <= 0:
        raise ValueError("p and n must be positive")
    if m == 0:
        return WeightExpr.one()
    coeff = rf_normalize(Polynomial.z_plus(2 * m), Polynomial.z_plus(0))
    gamma = GammaRatioExpr.of(2 * p, [2 * m, p + n], [0, 2 * m + p + n])
    return WeightExpr.build([(coeff, gamma)])


# ---------------------------------------------------------------------------
# certified evaluation


@dataclass(frozen=True)
class BallValue:
    """Certified real enclosure [mid - rad, mid + rad]."""

    mid: mpmath.mpf
    rad: mpmath.mpf

    @property
    def lower(self) -> mpmath.mpf:
        return mp.fsub(self.mid, self.rad, rounding="d")

    @property
    def upper(self) -> mpmath.mpf:
        return mp.fadd(self.mid, self.rad, rounding="u")

    def contains_zero(self) -> bool:
        return self.lower <= 0 <= self.upper

    def excludes_zero(self) -> bool:
        return not self.contains_zero()

    def __str__(self) -> str:
        return f"[{mpmath.nstr(self.mid, 20)} +/- {mpmath.nstr(self.rad, 5)}]"


def _ball_from_interval(x) -> BallValue:
    a = mp.convert(x.a)
    b = mp.convert(x.b)
    mid = (a + b) / 2
    rad = max(mp.fsub(b, mid, rounding="u"), mp.fsub(mid, a, rounding="u"))
    return BallValue(mid, max(rad, mp.mpf(0)))


def _iv_rational(q: Fraction):
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def _is_gamma_pole(arg: Fraction) -> bool:
    return arg <= 0 and arg.denominator == 1


def _iv_weight(w: WeightExpr, z0: Fraction):
    """Interval enclosure of w(z0); assumes pole-freedom was checked."""
    total = iv.mpf(0)
    for c, g in w.terms:
        num = c.num.eval(z0)
        den = c.den.eval(z0)
        if den == 0:
            raise PoleError(z0)
        if any(_is_gamma_pole((z0 + off) / td) for td, off in g.den):
            continue  # reciprocal Gamma vanishes: the term contributes 0
        term = _iv_rational(num) / _iv_rational(den)
        for td, off in g.num:
            term *= iv.gamma(_iv_rational((z0 + off) / td))
        for td, off in g.den:
            term /= iv.gamma(_iv_rational((z0 + off) / td))
        total += term
    return total


def eval_ball(w: WeightExpr, z0: RationalLike, precision_bits: int = 200) -> BallValue:
    """Certified enclosure of w(z0) at the requested working precision.

    Radius shrinks as precision grows; raises :class:`PoleError` when z0
    hits a pole of any normalized term.  Precision is set on the
    process-wide mpmath contexts for the duration of the call (and
    restored), which is the one piece of shared state in the package.
    """
    if precision_bits <= 0:
        raise ValueError("precision_bits must be positive")
    z0 = as_rational(z0)
    if w.poles_at(z0):
        raise PoleError(z0)
    old_iv, old_mp = iv.prec, mp.prec
    try:
        iv.prec = precision_bits
        mp.prec = precision_bits
        return _ball_from_interval(_iv_weight(w, z0))
    finally:
        iv.prec, mp.prec = old_iv, old_mp
