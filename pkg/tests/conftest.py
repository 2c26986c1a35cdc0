"""Shared models and independent oracles.

The oracles here deliberately avoid the package's own arithmetic: words
are composed with plain Fractions, and Q(rho) with rho**2 = 1 - rho is
modelled as pairs ``a + b*rho``.
"""

import random
from fractions import Fraction
from itertools import product

import pytest

from exactifs import AlgebraicScalar, IFSModel

RHO_LIT = {"minpoly": [-1, 1, 1], "interval": ["1/2", "1"]}
SQRT2_LIT = {"minpoly": [-2, 0, 1], "interval": ["1", "2"]}

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {text}")


@pytest.fixture
def rho():
    return AlgebraicScalar(minpoly=[-1, 1, 1], interval=("1/2", "1"))


@pytest.fixture
def doubling():
    return IFSModel(["1/2", "1/2"], [0, 1])


@pytest.fixture
def golden():
    return IFSModel([RHO_LIT, RHO_LIT], [0, 1])


@pytest.fixture
def halves():
    return IFSModel(["1/2"] * 3, [0, 1, "1/2"])


@pytest.fixture
def gasket():
    return IFSModel(["1/3"] * 3, [0, 1, 2])


# -- plain-fraction word oracle ---------------------------------------------------------

def oracle_compose(lams, ts, w):
    """``(lambda_w, phi_w(0))`` with Fractions only; ``ts`` are tuples."""
    d = len(ts[0])
    scale = Fraction(1)
    pos = [Fraction(0)] * d
    for q in w:
        pos = [p + scale * Fraction(t) for p, t in zip(pos, ts[q])]
        scale *= Fraction(lams[q])
    return scale, tuple(pos)


def oracle_delta(lams, ts, n):
    """Brute force over all ordered pairs; None when no eligible pair exists."""
    maps = [oracle_compose(lams, ts, w) for w in product(range(len(lams)), repeat=n)]
    best = None
    for i, (s1, p1) in enumerate(maps):
        for j, (s2, p2) in enumerate(maps):
            if i != j and s1 == s2:
                g = max(abs(a - b) for a, b in zip(p1, p2))
                best = g if best is None or g < best else best
    return best


# -- Q(rho) oracle ------------------------------------------------------------------------

class QRho:
    """``a + b*rho`` with ``rho**2 = 1 - rho``."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a, self.b = Fraction(a), Fraction(b)

    def __add__(self, o):
        o = o if isinstance(o, QRho) else QRho(o)
        return QRho(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = o if isinstance(o, QRho) else QRho(o)
        return QRho(self.a - o.a, self.b - o.b)

    def __mul__(self, o):
        o = o if isinstance(o, QRho) else QRho(o)
        # (a + b r)(c + e r) = ac + (ae + bc) r + be (1 - r)
        return QRho(self.a * o.a + self.b * o.b, self.a * o.b + self.b * o.a - self.b * o.b)

    __rmul__ = __mul__

    def __eq__(self, o):
        o = o if isinstance(o, QRho) else QRho(o)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * 0.6180339887498949


RHO = QRho(0, 1)


# -- random rational models ------------------------------------------------------------------

SMALL_LAMBDAS = ["1/2", "-1/2", "1/3", "-1/3", "2/3", "1/4", "2/5", "-3/5", "1/5"]


def random_rational_model(rng: random.Random, d=None, m=None):
    m = rng.choice([1, 2]) if m is None else m
    d = rng.choice([1, 1, 1, 2]) if d is None else d
    homogeneous = rng.random() < 0.4
    lam0 = rng.choice(SMALL_LAMBDAS)
    lams = [lam0 if homogeneous else rng.choice(SMALL_LAMBDAS) for _ in range(m + 1)]
    ts = [tuple(Fraction(rng.randint(-4, 4), rng.choice([1, 2, 3, 4])) for _ in range(d))
          for _ in range(m + 1)]
    weights = [rng.randint(1, 4) for _ in range(m + 1)]
    p = [Fraction(w, sum(weights)) for w in weights]
    return IFSModel(lams, [list(t) for t in ts], p)


def random_words(rng, m, n):
    return tuple(rng.randrange(m + 1) for _ in range(n))
