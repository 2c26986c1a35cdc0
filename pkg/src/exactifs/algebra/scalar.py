"""Exact real algebraic numbers.

A scalar is either a reduced rational or a real root of an irreducible
integer polynomial, pinned down by an isolating interval with rational
endpoints.  Refinement is plain bisection on the sign of the minimal
polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from ..errors import InvalidInput

__all__ = [
    "AlgebraicScalar",
    "as_fraction",
    "height",
    "parse_scalar_literal",
    "scalar_to_literal",
    "sturm_count",
]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational literal: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"malformed rational literal {value!r}") from exc
    raise InvalidInput(f"not a rational literal: {value!r}")


# -- univariate helpers (coefficients ascending) ------------------------------

def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _sign_at(coeffs, x: Fraction) -> int:
    """Sign of an integer polynomial at a rational point, integer-only."""
    p, q = x.numerator, x.denominator
    d = len(coeffs) - 1
    acc = 0
    qpow = 1
    ppow = [1]
    for _ in range(d):
        ppow.append(ppow[-1] * p)
    for i in range(d, -1, -1):
        acc += coeffs[i] * ppow[i] * qpow
        qpow *= q
    return (acc > 0) - (acc < 0)


def _eval_frac(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_rem(a, b):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while len(a) >= len(b) and a:
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a = _trim(a)
    return a


def _sturm_sequence(coeffs):
    p0 = [Fraction(c) for c in coeffs]
    p1 = [i * c for i, c in enumerate(p0)][1:]
    seq = [p0, _trim(p1)]
    while seq[-1] and len(seq[-1]) > 1:
        r = _poly_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _variations(seq, x: Fraction) -> int:
    signs = []
    for s in seq:
        v = _eval_frac(s, x)
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(coeffs, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in ``(lo, hi]``."""
    seq = _sturm_sequence(coeffs)
    return _variations(seq, lo) - _variations(seq, hi)


def _is_irreducible(coeffs) -> bool:
    import sympy

    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(coeffs)), x, domain="ZZ").is_irreducible


# -- the scalar type ------------------------------------------------------------

class AlgebraicScalar:
    """A real algebraic number with exact identity.

    ``AlgebraicScalar("1/2")`` builds a rational; ``AlgebraicScalar(minpoly=
    [-1, 1, 1], interval=("1/2", "1"))`` builds the root of ``X^2 + X - 1``
    in ``[1/2, 1]``.  Minimal polynomial coefficients are in ascending degree
    order and are normalised to be primitive with positive leading term.
    """

    __slots__ = ("_q", "_f", "_lo", "_hi", "_memo")

    def __init__(self, value=None, *, minpoly=None, interval=None, _checked=False):
        self._memo = None
        if value is not None:
            if minpoly is not None:
                raise InvalidInput("give either a rational value or minpoly, not both")
            if isinstance(value, AlgebraicScalar):
                self._q, self._f = value._q, value._f
                self._lo, self._hi = value._lo, value._hi
                self._memo = value._memo
                return
            q = as_fraction(value)
            self._set_rational(q)
            return
        if minpoly is None or interval is None:
            raise InvalidInput("algebraic scalar needs minpoly and interval")
        try:
            coeffs = _trim(int(c) for c in minpoly)
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"minpoly coefficients must be integers: {minpoly!r}") from exc
        if len(coeffs) < 2:
            raise InvalidInput("minimal polynomial must have degree >= 1")
        lo, hi = (as_fraction(v) for v in interval)
        if lo > hi:
            raise InvalidInput(f"empty isolating interval [{lo}, {hi}]")
        content = reduce(math.gcd, coeffs)
        if coeffs[-1] < 0:
            content = -content
        coeffs = [c // content for c in coeffs]
        if len(coeffs) == 2:
            root = Fraction(-coeffs[0], coeffs[1])
            if not lo <= root <= hi:
                raise InvalidInput(f"root {root} not in [{lo}, {hi}]")
            self._set_rational(root)
            return
        if not _checked:
            if not _is_irreducible(coeffs):
                raise InvalidInput(f"polynomial {coeffs} is not irreducible over Q")
            if lo == hi or sturm_count(coeffs, lo, hi) != 1:
                raise InvalidInput(
                    f"interval [{lo}, {hi}] does not isolate exactly one root of {coeffs}")
        self._q = None
        self._f = tuple(coeffs)
        self._lo, self._hi = lo, hi

    def _set_rational(self, q: Fraction):
        self._q = q
        self._f = (-q.numerator, q.denominator)
        self._lo = self._hi = q

    # -- basic queries -----------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self._q is not None

    @property
    def rational(self) -> Fraction:
        if self._q is None:
            raise ValueError("scalar is irrational")
        return self._q

    @property
    def minpoly(self) -> tuple:
        """Primitive integer minimal polynomial, ascending coefficients."""
        return self._f

    @property
    def degree(self) -> int:
        return len(self._f) - 1

    @property
    def interval(self) -> tuple:
        return (self._lo, self._hi)

    def height(self) -> int:
        """Largest absolute coefficient of the minimal polynomial."""
        return max(abs(c) for c in self._f)

    def weil_height_bound(self) -> int:
        """Integer upper bound on the absolute multiplicative height.

        Exact for rationals (``max(|p|, |q|)``).  For degree ``d >= 2`` the
        height is ``M(f)**(1/d)`` and Landau gives ``M(f) <= ||f||_2``, so the
        smallest integer ``h`` with ``h**(2d) >= sum(c**2)`` is returned.
        """
        if self._q is not None:
            return max(abs(self._q.numerator), self._q.denominator)
        s = sum(c * c for c in self._f)
        d = self.degree
        h = 1
        while h ** (2 * d) < s:
            h += 1
        return h

    def sign(self) -> int:
        if self._q is not None:
            return (self._q > 0) - (self._q < 0)
        lo, hi = self._lo, self._hi
        while lo <= 0 <= hi:
            lo, hi = self._tightest(max((hi - lo) / 4, Fraction(1, 2**400)))
        return 1 if lo > 0 else -1

    # -- refinement ----------------------------------------------------------------

    def _tightest(self, width: Fraction):
        """Isolating interval of width <= ``width``; memoised, value unchanged."""
        if self._q is not None:
            return (self._q, self._q)
        lo, hi = self._memo if self._memo is not None else (self._lo, self._hi)
        if hi - lo <= width:
            return lo, hi
        f = self._f
        s_lo = _sign_at(f, lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            s_mid = _sign_at(f, mid)
            if s_mid == 0:
                # a rational root would contradict irreducibility
                raise AssertionError("rational root of an irreducible polynomial")
            if s_mid == s_lo:
                lo = mid
            else:
                hi = mid
        self._memo = (lo, hi)
        return lo, hi

    def enclosure(self, width) -> tuple:
        """Rational interval of width <= ``width`` containing the value."""
        width = as_fraction(width)
        if width <= 0:
            raise ValueError("width must be positive")
        return self._tightest(width)

    def refine(self, width) -> "AlgebraicScalar":
        """Equal scalar whose stored isolating interval has width <= ``width``."""
        if self._q is not None:
            return self
        lo, hi = self.enclosure(width)
        return AlgebraicScalar(minpoly=self._f, interval=(lo, hi), _checked=True)

    def __float__(self) -> float:
        if self._q is not None:
            return float(self._q)
        lo, hi = self._tightest(Fraction(1, 2**60))
        return float((lo + hi) / 2)

    # -- identity ---------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._q is not None and self._q == other
        if not isinstance(other, AlgebraicScalar):
            return NotImplemented
        if self._q is not None or other._q is not None:
            return self._q == other._q
        if self._f != other._f:
            return False
        lo = max(self._lo, other._lo)
        hi = min(self._hi, other._hi)
        if lo > hi:
            return False
        if lo == hi:
            return _sign_at(self._f, lo) == 0
        return sturm_count(self._f, lo, hi) == 1

    def __hash__(self):
        if self._q is not None:
            return hash(self._q)
        return hash(self._f)

    def __neg__(self):
        if self._q is not None:
            return AlgebraicScalar(-self._q)
        f = [c if i % 2 == 0 else -c for i, c in enumerate(self._f)]
        return AlgebraicScalar(minpoly=f, interval=(-self._hi, -self._lo), _checked=True)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        if self._q is not None:
            return f"AlgebraicScalar({str(self._q)!r})"
        return (f"AlgebraicScalar(minpoly={list(self._f)}, "
                f"interval=({str(self._lo)!r}, {str(self._hi)!r}))")


def height(x: AlgebraicScalar) -> int:
    """Naive height: max absolute coefficient of the primitive minimal polynomial."""
    return x.height()


def parse_scalar_literal(obj) -> AlgebraicScalar:
    """Parse ``"p/q"`` or ``{"minpoly": [...], "interval": [a, b]}``."""
    if isinstance(obj, AlgebraicScalar):
        return obj
    if isinstance(obj, dict):
        if set(obj) != {"minpoly", "interval"}:
            raise InvalidInput(f"algebraic literal needs exactly minpoly/interval keys: {obj!r}")
        interval = obj["interval"]
        if not isinstance(interval, (list, tuple)) or len(interval) != 2:
            raise InvalidInput(f"interval must be a pair: {interval!r}")
        if not isinstance(obj["minpoly"], (list, tuple)):
            raise InvalidInput(f"minpoly must be a list: {obj['minpoly']!r}")
        for c in obj["minpoly"]:
            if isinstance(c, bool) or not isinstance(c, int):
                raise InvalidInput(f"minpoly coefficients must be integers: {obj['minpoly']!r}")
        return AlgebraicScalar(minpoly=obj["minpoly"], interval=tuple(interval))
    return AlgebraicScalar(as_fraction(obj))


def scalar_to_literal(x: AlgebraicScalar):
    if x.is_rational:
        return str(x.rational)
    lo, hi = x.interval
    return {"minpoly": list(x.minpoly), "interval": [str(lo), str(hi)]}
