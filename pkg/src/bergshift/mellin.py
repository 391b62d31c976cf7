"""Radial symbols, their Mellin transforms, and quasihomogeneous shift weights.

A radial symbol here is a finite combination sum c_a * r^a with exact
rational coefficients and nonnegative rational exponents.  Its Mellin
transform (convention: integral over [0,1] of phi(r) r^(z-1) dr) is the
rational function sum c_a / (z + a), and the degree-p quasihomogeneous
Toeplitz operator with radial part phi acts on the monomial basis as a
shift by p whose weight, in the global variable z = 2k + 2, is
(z + 2p) * phi_hat(z + p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import mpmath
from mpmath import mp

from .exact_algebra import (
    ExprSyntaxError,
    Polynomial,
    RationalFunction,
    RationalLike,
    as_rational,
    format_rational,
    rf_normalize,
)
from .gamma_ratio import WeightExpr
from .quadrature import integrate_adaptive


@dataclass(frozen=True)
class RadialSymbol:
    """Finite monomial combination sum c_a * r^a, exponents distinct and ascending."""

    terms: tuple[tuple[Fraction, Fraction], ...]  # (coefficient, exponent)

    @staticmethod
    def build(terms: Iterable[tuple[RationalLike, RationalLike]]) -> "RadialSymbol":
        by_exp: dict[Fraction, Fraction] = {}
        for coeff, exp in terms:
            coeff, exp = as_rational(coeff), as_rational(exp)
            if exp < 0:
                raise ValueError("negative exponents are not in the symbol class")
            by_exp[exp] = by_exp.get(exp, Fraction(0)) + coeff
        cleaned = [(c, e) for e, c in sorted(by_exp.items()) if c != 0]
        return RadialSymbol(tuple(cleaned))

    @staticmethod
    def monomial(exponent: RationalLike, coeff: RationalLike = 1) -> "RadialSymbol":
        return RadialSymbol.build([(coeff, exponent)])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        return format_symbol(self)


@dataclass(frozen=True)
class MellinImage:
    """Mellin transform of a radial symbol: sum c_a / (z + a)."""

    value: RationalFunction


def format_symbol(phi: RadialSymbol) -> str:
    if phi.is_zero:
        return "0"
    parts: list[str] = []
    for coeff, exp in phi.terms:
        sign = "-" if coeff < 0 else ("+" if parts else "")
        mag = abs(coeff)
        if exp == 0:
            body = format_rational(mag)
        else:
            rpow = "r" if exp == 1 else f"r^{format_rational(exp)}"
            body = rpow if mag == 1 else f"{format_rational(mag)}*{rpow}"
        parts.append(sign + body)
    return "".join(parts)


def _tokenize_symbol(text: str) -> list[tuple[str, object, int]]:
    tokens: list[tuple[str, object, int]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch == "r":
            tokens.append(("r", "r", i))
            i += 1
        elif ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ExprSyntaxError(text, i, f"unexpected character {ch!r}")
    return tokens


def parse_symbol(text: str) -> RadialSymbol:
    """Parse the symbol grammar: term (("+"|"-") term)*, where a term is
    `[coeff "*"] "r" ["^" exponent]` or a bare rational constant, with
    rational coeff/exponent written as `int` or `int/int`.
    """
    tokens = _tokenize_symbol(text)
    pos = 0

    def peek() -> str | None:
        return tokens[pos][0] if pos < len(tokens) else None

    def take() -> tuple[str, object, int]:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_ratio(what: str, allow_sign: bool = False) -> Fraction:
        sign = 1
        if allow_sign and peek() in ("+", "-"):
            op, _, _ = take()
            sign = -1 if op == "-" else 1
        kind, val, at = take() if pos < len(tokens) else ("eof", None, len(text))
        if kind == "(":
            inner = parse_ratio(what, allow_sign=True)
            if peek() != ")":
                raise ExprSyntaxError(text, at, "unbalanced parenthesis")
            take()
            return sign * inner
        if kind != "int":
            raise ExprSyntaxError(text, at, f"expected {what}")
        value = Fraction(int(val))
        if peek() == "/":
            take()
            kind2, val2, at2 = take() if pos < len(tokens) else ("eof", None, len(text))
            if kind2 != "int":
                raise ExprSyntaxError(text, at2, f"expected denominator of {what}")
            if val2 == 0:
                raise ExprSyntaxError(text, at2, "zero denominator")
            value /= int(val2)
        return sign * value

    def parse_term(sign: int) -> tuple[Fraction, Fraction]:
        if peek() == "r":
            _, _, at = take()
        else:
            coeff = parse_ratio("a rational coefficient")
            if peek() == "*":
                take()
                kind, _, at = take() if pos < len(tokens) else ("eof", None, len(text))
                if kind != "r":
                    raise ExprSyntaxError(text, at, "expected r after *")
            else:
                return sign * coeff, Fraction(0)  # bare constant
            return sign * coeff, parse_exponent()
        return sign * Fraction(1), parse_exponent()

    def parse_exponent() -> Fraction:
        if peek() != "^":
            return Fraction(1)
        _, _, at = take()
        exp = parse_ratio("a rational exponent", allow_sign=True)
        if exp < 0:
            raise ExprSyntaxError(text, at, "negative exponent rejected")
        return exp

    if not tokens:
        raise ExprSyntaxError(text, 0, "empty symbol")
    terms: list[tuple[Fraction, Fraction]] = []
    sign = 1
    if peek() in ("+", "-"):
        op, _, _ = take()
        sign = -1 if op == "-" else 1
    terms.append(parse_term(sign))
    while pos < len(tokens):
        kind, _, at = take()
        if kind not in ("+", "-"):
            raise ExprSyntaxError(text, at, "expected + or - between terms")
        terms.append(parse_term(-1 if kind == "-" else 1))
    return RadialSymbol.build(terms)


def mellin_transform(phi: RadialSymbol) -> MellinImage:
    """Exact Mellin image: r^a contributes 1/(z + a); linear in phi."""
    total = RationalFunction.zero()
    for coeff, exp in phi.terms:
        total = total + rf_normalize(
            Polynomial.constant(coeff), Polynomial.z_plus(exp)
        )
    return MellinImage(total)


def toeplitz_weight(p: int, phi: RadialSymbol) -> WeightExpr:
    """Shift weight of the degree-p quasihomogeneous operator with radial
    part phi: (z + 2p) * phi_hat(z + p), purely rational.

    With p = 0 and phi = 1 this is identically 1 (the identity operator),
    which pins the Mellin convention used by the whole package.
    """
    if p < 0:
        raise ValueError("quasihomogeneous degree must be nonnegative")
    total = RationalFunction.zero()
    zp = Polynomial.z_plus(2 * p)
    for coeff, exp in phi.terms:
        total = total + rf_normalize(
            zp.scale(coeff), Polynomial.z_plus(p + exp)
        )
    return WeightExpr.from_rational(total)


@dataclass(frozen=True)
class QuadratureResult:
    value: mpmath.mpf
    error_estimate: mpmath.mpf


def bergman_quadrature_oracle(
    p: int, phi: RadialSymbol, k: int, digits: int = 25
) -> QuadratureResult:
    """Numerical shift weight straight from the inner-product definition:

        weight(k) = 2 (k + p + 1) * integral_0^1 phi(r) r^(2k + p + 1) dr,

    computed by adaptive quadrature, independent of the Mellin route.  The
    result carries the quadrature error estimate scaled by the same factor.
    """
    if p < 0 or k < 0:
        raise ValueError("p and k must be nonnegative")
    if digits <= 0:
        raise ValueError("digits must be positive")
    old = mp.prec
    try:
        mp.dps = digits + 15
        exps = [(mp.mpf(c.numerator) / c.denominator, 2 * k + p + 1 + mp.mpf(e.numerator) / e.denominator)
                for c, e in phi.terms]

        def integrand(r):
            total = mp.mpf(0)
            for c, e in exps:
                total += c * r**e
            return total

        factor = 2 * (k + p + 1)
        value, err = integrate_adaptive(integrand, 0, 1, mp.mpf(10) ** (-digits))
        return QuadratureResult(factor * value, factor * err)
    finally:
        mp.prec = old
