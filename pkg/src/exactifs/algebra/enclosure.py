"""Rigorous interval evaluation and exact sign decisions.

Irrational coordinates are enclosed in dyadic fixed-point intervals and the
polynomial is evaluated with outward rounding, so every returned interval
contains the true value.  Rational coordinates are substituted exactly
before any interval work happens.
"""

from __future__ import annotations

from enum import IntEnum
from fractions import Fraction

from .polynomial import IntPolynomial
from .separation import SeparationContext, separation_bound

__all__ = ["Sign", "certify_sign", "eval_enclosure", "RationalTermsEvaluator"]


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, x) -> "Sign":
        return cls((x > 0) - (x < 0))


def _ceil_shift(x: int, k: int) -> int:
    return -((-x) >> k)


def _width_bits(width: Fraction) -> int:
    return max(0, width.denominator.bit_length() - width.numerator.bit_length() + 2)


class RationalTermsEvaluator:
    """Encloses ``sum c_beta * x**beta`` for Fraction ``c`` and algebraic ``x``."""

    def __init__(self, terms: dict, scalars):
        self.terms = {b: Fraction(c) for b, c in terms.items() if c}
        self.scalars = list(scalars)

    def constant(self):
        """The exact value when no symbolic monomial remains, else ``None``."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (beta, c), = self.terms.items()
            if not any(beta):
                return c
        return None

    def _scaled(self, prec: int):
        S = 1 << prec
        ivs = []
        for x in self.scalars:
            lo, hi = x.enclosure(Fraction(1, S))
            ivs.append(((lo.numerator * S) // lo.denominator,
                        -((-hi.numerator * S) // hi.denominator)))
        cache = {}

        def mul(a, b):
            p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
            return (min(p) >> prec, _ceil_shift(max(p), prec))

        def power(v, k):
            key = (v, k)
            if key not in cache:
                if k == 1:
                    cache[key] = ivs[v]
                else:
                    half = power(v, k // 2)
                    sq = mul(half, half)
                    sq = (max(sq[0], 0), sq[1])
                    cache[key] = mul(sq, ivs[v]) if k % 2 else sq
            return cache[key]

        tot_lo = tot_hi = 0
        for beta, c in self.terms.items():
            iv = None
            for v, k in enumerate(beta):
                if k:
                    iv = power(v, k) if iv is None else mul(iv, power(v, k))
            if iv is None:
                iv = (S, S)
            u, w = c.numerator, c.denominator
            if u >= 0:
                lo, hi = (u * iv[0]) // w, -((-u * iv[1]) // w)
            else:
                lo, hi = (u * iv[1]) // w, -((-u * iv[0]) // w)
            tot_lo += lo
            tot_hi += hi
        return tot_lo, tot_hi, S

    def enclose(self, width: Fraction):
        c = self.constant()
        if c is not None:
            return c, c
        prec = max(64, _width_bits(width) + 8)
        while True:
            lo, hi, S = self._scaled(prec)
            if Fraction(hi - lo, S) <= width:
                return Fraction(lo, S), Fraction(hi, S)
            prec += prec // 2 + 16


def _evaluator(P: IntPolynomial, lams) -> RationalTermsEvaluator:
    if len(lams) != P.nvars:
        raise ValueError(f"point has {len(lams)} coordinates, polynomial has {P.nvars} variables")
    values = [x.rational if x.is_rational else None for x in lams]
    kept = [x for x in lams if not x.is_rational]
    return RationalTermsEvaluator(P.partial_rational(values), kept)


def eval_enclosure(P: IntPolynomial, lams, width) -> tuple:
    """Rational interval of width <= ``width`` containing ``P(lams)``.

    The interval is a point whenever the value is computable exactly, in
    particular when every coordinate is rational.
    """
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    return _evaluator(P, lams).enclose(width)


def certify_sign(P: IntPolynomial, lams, ctx: SeparationContext | None = None) -> Sign:
    """Exact sign of ``P(lams)``.

    Enclosures are refined until they exclude zero, or until they are
    narrower than the separation bound for ``P(linf, deg + 1)`` while still
    containing zero, which certifies ``P(lams) == 0``.
    """
    ev = _evaluator(P, lams)
    c = ev.constant()
    if c is not None:
        return Sign.of(c)
    if ctx is None:
        ctx = SeparationContext.for_scalars(lams)
    bound = separation_bound(ctx, P.linf, int(P.deg) + 1)
    return _refine_sign(ev, bound)


def _refine_sign(ev: RationalTermsEvaluator, bound: Fraction) -> Sign:
    floor_width = bound / 2
    step = 32
    width = max(Fraction(1, 1 << step), floor_width)
    while True:
        lo, hi = ev.enclose(width)
        if lo > 0:
            return Sign.POSITIVE
        if hi < 0:
            return Sign.NEGATIVE
        if hi - lo < bound:
            return Sign.ZERO
        step *= 2
        width = max(width / (1 << step), floor_width)
