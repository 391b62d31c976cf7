"""Adaptive high-precision quadrature on a real interval.

Panels are estimated with a fixed-order Gauss-Legendre rule and accepted
when the whole-panel estimate agrees with the sum of its two halves;
otherwise the panel is split and both halves are integrated to half the
tolerance.  All arithmetic runs in the mpmath real context at the caller's
working precision, so the error estimate is a genuine interval-halving
convergence check rather than a fixed-grid guess.
"""

from __future__ import annotations

from typing import Callable

import mpmath
from mpmath import mp


class QuadratureError(ArithmeticError):
    """Adaptive refinement hit the depth limit; carries the achieved error."""

    def __init__(self, achieved: mpmath.mpf, requested: mpmath.mpf):
        self.achieved = achieved
        self.requested = requested
        super().__init__(
            f"quadrature did not converge: achieved error estimate {achieved} "
            f"exceeds requested {requested}"
        )


_RULE_CACHE: dict[tuple[int, int], tuple[list, list]] = {}


def gauss_legendre_rule(order: int, prec: int) -> tuple[list, list]:
    """Nodes and weights of the `order`-point rule on [-1, 1] at `prec` bits."""
    key = (order, prec)
    if key in _RULE_CACHE:
        return _RULE_CACHE[key]
    old = mp.prec
    try:
        mp.prec = prec + 32
        nodes, weights = [], []
        for i in range(1, order + 1):
            # Chebyshev initializer, then Newton on the Legendre recurrence.
            x = mp.cos(mp.pi * (i - mp.mpf(1) / 4) / (order + mp.mpf(1) / 2))
            for _ in range(60):
                p0, p1 = mp.mpf(1), x
                for j in range(2, order + 1):
                    p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
                dp = order * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mp.mpf(2) ** (-prec - 16):
                    break
            p0, p1 = mp.mpf(1), x
            for j in range(2, order + 1):
                p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
            dp = order * (x * p1 - p0) / (x * x - 1)
            nodes.append(+x)
            weights.append(2 / ((1 - x * x) * dp * dp))
    finally:
        mp.prec = old
    _RULE_CACHE[key] = (nodes, weights)
    return _RULE_CACHE[key]


def _panel(f: Callable, a, b, nodes, weights):
    half = (b - a) / 2
    mid = (a + b) / 2
    total = mp.mpf(0)
    for x, w in zip(nodes, weights):
        total += w * f(mid + half * x)
    return half * total


def integrate_adaptive(
    f: Callable,
    a,
    b,
    tol,
    order: int = 12,
    max_depth: int = 48,
) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Integrate f over [a, b]; returns (value, error_estimate).

    Raises :class:`QuadratureError` when halving cannot reach `tol` within
    `max_depth` levels (the estimate achieved so far is attached).
    """
    nodes, weights = gauss_legendre_rule(order, mp.prec)
    a, b, tol = mp.mpf(a), mp.mpf(b), mp.mpf(tol)

    def recurse(a, b, tol, whole, depth):
        mid = (a + b) / 2
        left = _panel(f, a, mid, nodes, weights)
        right = _panel(f, mid, b, nodes, weights)
        err = abs(whole - (left + right))
        if err <= tol or depth >= max_depth:
            return left + right, err
        lv, le = recurse(a, mid, tol / 2, left, depth + 1)
        rv, re = recurse(mid, b, tol / 2, right, depth + 1)
        return lv + rv, le + re

    value, err = recurse(a, b, tol, _panel(f, a, b, nodes, weights), 0)
    if err > tol:
        raise QuadratureError(err, tol)
    return value, err
