"""Exact scalar, polynomial and rational-function arithmetic.

Everything in this module is computed over arbitrary-precision rationals
(`fractions.Fraction`); no floating point enters anywhere.  Rational
functions are kept in a canonical form (gcd-reduced, monic denominator),
so equality of canonical forms is equality as functions.  That syntactic
equality is what the rest of the package relies on for exact zero and
identity testing of shift weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Sequence, Union

#: Scalar type used everywhere: reduced fraction, positive denominator,
#: sign carried by the numerator.  `fractions.Fraction` guarantees both.
Rational = Fraction

RationalLike = Union[int, Fraction]


class ZeroDenominatorError(ValueError):
    """A rational function was built with (or divided by) a zero denominator."""


class PoleError(ValueError):
    """Evaluation was attempted at a pole.  Carries the offending point."""

    def __init__(self, point: Fraction, message: str | None = None):
        self.point = point
        super().__init__(message or f"evaluation at pole z = {point}")


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial; ``coeffs[i]`` multiplies z**i, no trailing zeros."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def from_coeffs(cs: Iterable[RationalLike]) -> "Polynomial":
        coeffs = [as_rational(c) for c in cs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return Polynomial(tuple(coeffs))

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial(())

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial((Fraction(1),))

    @staticmethod
    def constant(c: RationalLike) -> "Polynomial":
        return Polynomial.from_coeffs([c])

    @staticmethod
    def z_plus(c: RationalLike = 0) -> "Polynomial":
        """The monic linear polynomial z + c."""
        return Polynomial.from_coeffs([c, 1])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial.from_coeffs(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return Polynomial.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial.from_coeffs(out)

    def scale(self, c: RationalLike) -> "Polynomial":
        c = as_rational(c)
        if c == 0:
            return Polynomial.zero()
        return Polynomial(tuple(a * c for a in self.coeffs))

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Exact field division with remainder; ``other`` must be nonzero."""
        if other.is_zero:
            raise ZeroDenominatorError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d, lc = other.degree, other.leading
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            f = rem[i] / lc
            q[i - d] = f
            for j, c in enumerate(other.coeffs):
                rem[i - d + j] -= f * c
        return Polynomial.from_coeffs(q), Polynomial.from_coeffs(rem)

    def eval(self, point: RationalLike) -> Fraction:
        point = as_rational(point)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def shift(self, h: RationalLike) -> "Polynomial":
        """Return p(z + h)."""
        h = as_rational(h)
        if h == 0 or self.is_zero:
            return self
        # Horner over the polynomial ring: p(z+h) built from highest coeff down.
        acc = Polynomial.zero()
        zh = Polynomial.z_plus(h)
        for c in reversed(self.coeffs):
            acc = acc * zh + Polynomial.constant(c)
        return acc

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)


def _int_content(cs: Sequence[int]) -> int:
    g = 0
    for c in cs:
        g = _int_gcd(g, abs(c))
        if g == 1:
            break
    return g


def _to_int_primitive(p: Polynomial) -> list[int]:
    """Integer coefficient list of the primitive part (content stripped)."""
    if p.is_zero:
        return []
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // _int_gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in p.coeffs]
    g = _int_content(ints)
    return [c // g for c in ints]


def _int_prem(u: list[int], v: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (lists low-to-high degree)."""
    r = list(u)
    dv, lv = len(v) - 1, v[-1]
    while len(r) - 1 >= dv and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dv:
            break
        lr, dr = r[-1], len(r) - 1
        r = [c * lv for c in r]
        for j in range(len(v)):
            r[dr - dv + j] -= lr * v[j]
        while r and r[-1] == 0:
            r.pop()
    return r


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd via the primitive (fraction-free) Euclidean algorithm.

    Working on integer primitive parts keeps intermediate coefficients from
    blowing up, with no floating error anywhere.
    """
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    u, v = _to_int_primitive(a), _to_int_primitive(b)
    if len(u) < len(v):
        u, v = v, u
    while v:
        r = _int_prem(u, v)
        if r:
            g = _int_content(r)
            r = [c // g for c in r]
        u, v = v, r
    return Polynomial.from_coeffs(u).monic()


# ---------------------------------------------------------------------------
# rational functions


@dataclass(frozen=True)
class RationalFunction:
    """Canonical quotient of polynomials: gcd(num, den) = 1, den monic.

    Construct through :func:`rf_normalize`; the raw constructor trusts its
    inputs to already be canonical.
    """

    num: Polynomial
    den: Polynomial

    @staticmethod
    def zero() -> "RationalFunction":
        return RationalFunction(Polynomial.zero(), Polynomial.one())

    @staticmethod
    def one() -> "RationalFunction":
        return RationalFunction(Polynomial.one(), Polynomial.one())

    @staticmethod
    def constant(c: RationalLike) -> "RationalFunction":
        return rf_normalize(Polynomial.constant(c), Polynomial.one())

    @staticmethod
    def z_plus(c: RationalLike = 0) -> "RationalFunction":
        return RationalFunction(Polynomial.z_plus(c), Polynomial.one())

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        if self.is_zero:
            return Fraction(0)
        return self.num.coeffs[0] / self.den.coeffs[0]

    # operator sugar mirrors rf_arith
    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return rf_arith(self, other, "add")

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return rf_arith(self, other, "sub")

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return rf_arith(self, other, "mul")

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        return rf_arith(self, other, "div")

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def scale(self, c: RationalLike) -> "RationalFunction":
        return rf_normalize(self.num.scale(c), self.den)

    def __str__(self) -> str:
        return format_rational_function(self)


def rf_normalize(num: Polynomial, den: Polynomial) -> "RationalFunction":
    """Reduce num/den to the canonical form.  Idempotent."""
    if den.is_zero:
        raise ZeroDenominatorError("zero denominator")
    if num.is_zero:
        return RationalFunction.zero()
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, _ = num.divmod(g)
        den, _ = den.divmod(g)
    lc = den.leading
    if lc != 1:
        num = num.scale(1 / lc)
        den = den.scale(1 / lc)
    return RationalFunction(num, den)


def rf_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    """Exact field arithmetic on canonical rational functions."""
    if op == "add":
        return rf_normalize(a.num * b.den + b.num * a.den, a.den * b.den)
    if op == "sub":
        return rf_normalize(a.num * b.den - b.num * a.den, a.den * b.den)
    if op == "mul":
        return rf_normalize(a.num * b.num, a.den * b.den)
    if op == "div":
        if b.is_zero:
            raise ZeroDenominatorError("division by the zero rational function")
        return rf_normalize(a.num * b.den, a.den * b.num)
    raise ValueError(f"unknown op {op!r}")


def rf_eval(a: RationalFunction, point: RationalLike) -> Fraction:
    """Exact value a(point); raises :class:`PoleError` at a pole."""
    point = as_rational(point)
    d = a.den.eval(point)
    if d == 0:
        raise PoleError(point)
    return a.num.eval(point) / d


def rf_shift(a: RationalFunction, h: RationalLike) -> RationalFunction:
    """Return a(z + h) in canonical form."""
    h = as_rational(h)
    if h == 0:
        return a
    return rf_normalize(a.num.shift(h), a.den.shift(h))


# ---------------------------------------------------------------------------
# text form: formatting and parsing (round-trip safe)


def format_rational(c: Fraction) -> str:
    """Serialize an exact scalar as "num/den" (bare integer when den = 1)."""
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if i == 0:
            body = format_rational(mag)
        else:
            zpow = "z" if i == 1 else f"z^{i}"
            body = zpow if mag == 1 else f"{format_rational(mag)}*{zpow}"
        parts.append(sign + body)
    return "".join(parts)


def format_rational_function(a: RationalFunction) -> str:
    num = format_polynomial(a.num)
    if a.den.degree == 0:
        return num
    return f"({num})/({format_polynomial(a.den)})"


class ExprSyntaxError(ValueError):
    """Syntax error in a serialized expression; carries the position."""

    def __init__(self, text: str, pos: int, message: str):
        self.position = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


def _tokenize_expr(text: str) -> list[tuple[str, object, int]]:
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
        elif ch == "z":
            tokens.append(("z", "z", i))
            i += 1
        elif ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ExprSyntaxError(text, i, f"unexpected character {ch!r}")
    return tokens


def parse_rational_function(text: str) -> RationalFunction:
    """Parse the textual form emitted by :func:`format_rational_function`.

    Accepts general +,-,*,/,^ expressions in z with integer literals, so any
    serialized weight or scalar parses back to an equal value.
    """
    tokens = _tokenize_expr(text)
    pos = 0

    def peek() -> str | None:
        return tokens[pos][0] if pos < len(tokens) else None

    def take() -> tuple[str, object, int]:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_sum() -> RationalFunction:
        left = parse_product()
        while peek() in ("+", "-"):
            op, _, _ = take()
            right = parse_product()
            left = left + right if op == "+" else left - right
        return left

    def parse_product() -> RationalFunction:
        left = parse_power()
        while peek() in ("*", "/"):
            op, _, _ = take()
            right = parse_power()
            left = left * right if op == "*" else left / right
        return left

    def parse_power() -> RationalFunction:
        base = parse_atom()
        if peek() == "^":
            take()
            kind, val, at = take()
            if kind != "int":
                raise ExprSyntaxError(text, at, "exponent must be an integer")
            out = RationalFunction.one()
            for _ in range(int(val)):  # small exponents only
                out = out * base
            return out
        return base

    def parse_atom() -> RationalFunction:
        kind, val, at = take() if pos < len(tokens) else ("eof", None, len(text))
        if kind == "int":
            return RationalFunction.constant(int(val))
        if kind == "z":
            return RationalFunction.z_plus(0)
        if kind == "-":
            return -parse_power()  # binds below ^: -z^4 is -(z^4)
        if kind == "+":
            return parse_power()
        if kind == "(":
            inner = parse_sum()
            if peek() != ")":
                raise ExprSyntaxError(text, at, "unbalanced parenthesis")
            take()
            return inner
        raise ExprSyntaxError(text, at, "expected a term")

    if not tokens:
        raise ExprSyntaxError(text, 0, "empty expression")
    out = parse_sum()
    if pos != len(tokens):
        raise ExprSyntaxError(text, tokens[pos][2], "trailing input")
    return out


def parse_rational(text: str) -> Fraction:
    """Parse "num/den" or a bare integer back to an exact scalar."""
    value = parse_rational_function(text)
    if not value.is_constant:
        raise ValueError(f"not a scalar: {text!r}")
    return value.constant_value()
