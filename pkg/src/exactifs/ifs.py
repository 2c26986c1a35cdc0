"""Self-similar iterated function systems with exact data.

A model is ``phi_j(x) = lambda_j x + t_j`` for ``j = 0..m`` on R^d, with a
probability vector ``p``.  Contractions are real algebraic numbers,
translations live in the :class:`ScalarField` they generate (plus optional
extra constants), and probabilities are rationals.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

from .algebra.field import FieldElement, ScalarField
from .algebra.linalg import row_reduction_rank
from .algebra.scalar import AlgebraicScalar, as_fraction, parse_scalar_literal
from .errors import BudgetExceeded, InvalidInput

__all__ = [
    "DEFAULT_BUDGET",
    "Box",
    "IFSModel",
    "SimilarityMap",
    "attractor_hull",
    "check_budget",
    "coefficient_polynomials",
    "compose",
    "iter_words",
    "multi_index",
    "normalize",
    "rate_stats",
    "similarity_dimension",
    "span_check",
]

DEFAULT_BUDGET = 2**22


def check_budget(count: int, budget=None, what="words"):
    budget = DEFAULT_BUDGET if budget is None else budget
    if count > budget:
        raise BudgetExceeded(count, budget, what)


def multi_index(w, m: int) -> tuple:
    """Occurrence counts of the symbols ``0..m`` in ``w``."""
    alpha = [0] * (m + 1)
    for q in w:
        if not 0 <= q <= m:
            raise InvalidInput(f"symbol {q} out of range 0..{m}")
        alpha[q] += 1
    return tuple(alpha)


def iter_words(m: int, n: int, budget=None):
    """All words of length ``n`` over ``0..m`` in lexicographic order."""
    check_budget((m + 1) ** n, budget)
    return product(range(m + 1), repeat=n)


class SimilarityMap:
    """``x -> scale * x + translation`` with exact scalars."""

    __slots__ = ("field", "scale", "translation")

    def __init__(self, field: ScalarField, scale, translation):
        self.field = field
        self.scale = scale
        self.translation = tuple(translation)
        if field.sign(scale) == 0:
            raise InvalidInput("similarity scale must be nonzero")

    @classmethod
    def identity(cls, field, d: int) -> "SimilarityMap":
        return cls(field, Fraction(1), (Fraction(0),) * d)

    @property
    def dimension(self) -> int:
        return len(self.translation)

    def __call__(self, x):
        return tuple(self.scale * a + b for a, b in zip(x, self.translation))

    def then(self, other: "SimilarityMap") -> "SimilarityMap":
        """``self o other`` (apply ``other`` first)."""
        if other.dimension != self.dimension:
            raise InvalidInput("dimension mismatch in composition")
        s = self.scale
        return SimilarityMap(self.field, s * other.scale,
                             (s * b + a for a, b in zip(self.translation, other.translation)))

    __matmul__ = then

    @property
    def key(self):
        k = self.field.key
        return (k(self.scale),) + tuple(k(c) for c in self.translation)

    def equals(self, other: "SimilarityMap") -> bool:
        f = self.field
        return (self.dimension == other.dimension and f.eq(self.scale, other.scale)
                and all(f.eq(a, b) for a, b in zip(self.translation, other.translation)))

    def __eq__(self, other):
        if not isinstance(other, SimilarityMap):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        if not self.field.canonical:
            raise TypeError("maps over a non-canonical field are unhashable")
        return hash(self.key)

    def __repr__(self):
        f = self.field.format
        t = ", ".join(f(c) for c in self.translation)
        return f"SimilarityMap(scale={f(self.scale)}, translation=({t}))"


class IFSModel:
    """Contractions ``lambdas``, translation vectors and probabilities.

    ``translations`` is a list of ``m + 1`` vectors (plain scalars are read
    as 1-dimensional vectors).  Entries may be ints, Fractions, ``"p/q"``
    strings, field elements, or literals understood by
    :meth:`ScalarField.from_literal`.  ``constants`` lists extra algebraic
    generators that translation literals may refer to.
    """

    def __init__(self, lambdas, translations, probabilities=None, *, constants=(), field=None):
        lams = [x if isinstance(x, AlgebraicScalar) else parse_scalar_literal(x) for x in lambdas]
        if not lams:
            raise InvalidInput("an IFS needs at least one map")
        self.m = len(lams) - 1
        if field is None:
            field = ScalarField(tuple(lams) + tuple(constants))
        elif any(not a == b for a, b in zip(field.generators, lams)) or len(field) < len(lams):
            raise InvalidInput("field generators must start with the contractions")
        self.field = field
        self.lambda_scalars = tuple(lams)
        self.lam = tuple(field.gen(i) for i in range(len(lams)))
        for j, x in enumerate(self.lam):
            s = field.sign(x)
            if s == 0:
                raise InvalidInput(f"lambda_{j} is zero")
            if field.sign(1 - abs(x)) <= 0:
                raise InvalidInput(f"|lambda_{j}| >= 1 (not a contraction)")

        if len(translations) != len(lams):
            raise InvalidInput(f"expected {len(lams)} translation vectors, got {len(translations)}")
        vecs = []
        for t in translations:
            if not isinstance(t, (list, tuple)):
                t = (t,)
            vecs.append(tuple(self._scalar(c) for c in t))
        dims = {len(v) for v in vecs}
        if len(dims) != 1 or 0 in dims:
            raise InvalidInput("translation vectors must share a positive dimension")
        self.d = dims.pop()
        self.t = tuple(vecs)

        if probabilities is None:
            probabilities = [Fraction(1, len(lams))] * len(lams)
        p = tuple(as_fraction(x) for x in probabilities)
        if len(p) != len(lams):
            raise InvalidInput("probability vector has the wrong length")
        if any(x <= 0 for x in p):
            raise InvalidInput("probabilities must be positive")
        if sum(p) != 1:
            raise InvalidInput(f"probabilities sum to {sum(p)}, not 1")
        self.p = p
        self._scale_cache = {}
        self._mass_cache = {}

    def _scalar(self, c):
        if isinstance(c, FieldElement):
            return self.field.coerce(c)
        if isinstance(c, float):
            raise InvalidInput("floating point translations are not exact; use 'p/q'")
        try:
            return self.field.from_literal(c)
        except ValueError as exc:
            raise InvalidInput(str(exc)) from exc

    # -- derived data ------------------------------------------------------------------

    @property
    def size(self) -> int:
        return self.m + 1

    @property
    def maps(self):
        return [SimilarityMap(self.field, self.lam[j], self.t[j]) for j in range(self.size)]

    @property
    def is_normalized(self) -> bool:
        return all(self.field.sign(c) == 0 for c in self.t[0])

    @property
    def is_homogeneous(self) -> bool:
        return all(self.field.eq(x, self.lam[0]) for x in self.lam)

    def scale_of(self, alpha):
        """``lambda ** alpha`` (cached)."""
        v = self._scale_cache.get(alpha)
        if v is None:
            v = Fraction(1)
            for x, k in zip(self.lam, alpha):
                if k:
                    v = v * x**k
            self._scale_cache[alpha] = v
        return v

    def mass_of(self, alpha) -> Fraction:
        v = self._mass_cache.get(alpha)
        if v is None:
            v = Fraction(1)
            for x, k in zip(self.p, alpha):
                v *= x**k
            self._mass_cache[alpha] = v
        return v

    def translation_of(self, w):
        """``phi_w(0)`` computed by the prefix sum."""
        pos = [Fraction(0)] * self.d
        scale = Fraction(1)
        for q in w:
            if not 0 <= q <= self.m:
                raise InvalidInput(f"symbol {q} out of range 0..{self.m}")
            pos = [a + scale * b for a, b in zip(pos, self.t[q])]
            scale = scale * self.lam[q]
        return tuple(pos)

    def enumerate(self, n: int, budget=None):
        """List ``(word, alpha, phi_w(0))`` for all words of length ``n``, lexicographic."""
        check_budget(self.size**n, budget)
        level = [((), (0,) * self.size, (Fraction(0),) * self.d)]
        for _ in range(n):
            nxt = []
            for w, alpha, pos in level:
                scale = self.scale_of(alpha)
                for j in range(self.size):
                    a = list(alpha)
                    a[j] += 1
                    tj = self.t[j]
                    nxt.append((w + (j,), tuple(a), tuple(x + scale * y for x, y in zip(pos, tj))))
            level = nxt
        return level

    def with_translations(self, translations) -> "IFSModel":
        return IFSModel(self.lambda_scalars, translations, self.p, field=self.field)

    def equals(self, other: "IFSModel") -> bool:
        f = self.field
        if self.size != other.size or self.d != other.d or self.p != other.p:
            return False
        if not all(a == b for a, b in zip(self.lambda_scalars, other.lambda_scalars)):
            return False
        if not f.same_as(other.field):
            return False
        for u, v in zip(self.t, other.t):
            for a, b in zip(u, v):
                if not f.eq(a, f.coerce(b)):
                    return False
        return True

    def __repr__(self):
        f = self.field.format
        lams = ", ".join(f(x) for x in self.lam)
        ts = ", ".join("(" + ", ".join(f(c) for c in v) + ")" for v in self.t)
        ps = ", ".join(str(x) for x in self.p)
        return f"IFSModel(lambdas=[{lams}], translations=[{ts}], p=[{ps}])"


def compose(model: IFSModel, w) -> SimilarityMap:
    """``phi_w = phi_{w_1} o ... o phi_{w_n}``; the empty word gives the identity."""
    alpha = multi_index(w, model.m)
    return SimilarityMap(model.field, model.scale_of(alpha), model.translation_of(w))


def normalize(model: IFSModel) -> IFSModel:
    """Conjugate by ``x -> x - c`` where ``c`` is the fixed point of ``phi_0``.

    Afterwards ``t_0 = 0``.  Word-pair equalities are unchanged because
    conjugation is a group isomorphism.
    """
    if model.is_normalized:
        return model
    lam0 = model.lam[0]
    inv = 1 / (1 - lam0)
    c = tuple(x * inv for x in model.t[0])
    new_t = [tuple(lam * ci + ti - ci for ci, ti in zip(c, tj))
             for lam, tj in zip(model.lam, model.t)]
    new_t[0] = (Fraction(0),) * model.d
    out = IFSModel(model.lambda_scalars, new_t, model.p, field=model.field)
    out.shift = c
    return out


def _log2_fraction(x: Fraction) -> float:
    return math.log2(x.numerator) - math.log2(x.denominator)


def log2_abs(field: ScalarField, x) -> float:
    """``log2 |x|`` from a rational enclosure of relative width below 2**-60."""
    if isinstance(x, (int, Fraction)):
        return _log2_fraction(abs(Fraction(x)))
    ax = abs(x)
    w = Fraction(1, 2**64)
    while True:
        lo, hi = field.enclosure(ax, w)
        if lo > 0 and hi - lo <= lo / 2**60:
            return (_log2_fraction(lo) + _log2_fraction(hi)) / 2
        w /= 2**64


def entropy_of(weights) -> float:
    """Shannon entropy (base 2) of exact rational weights summing to 1."""
    return math.fsum(-float(q) * _log2_fraction(q) for q in weights if q)


def rate_stats(model: IFSModel):
    """``(H(p), chi, beta)`` as floats, logs base 2."""
    H = abs(entropy_of(model.p))
    chi = -math.fsum(float(p) * log2_abs(model.field, x) for p, x in zip(model.p, model.lam))
    beta = min(1.0, H / chi)
    return H, chi, beta


def similarity_dimension(lams, tol=2.0**-40) -> float:
    """The ``s >= 0`` with ``sum |lambda_j|**s == 1``, by bisection."""
    if isinstance(lams, IFSModel):
        field, vals = lams.field, lams.lam
        logs = [log2_abs(field, x) for x in vals]
    else:
        logs = []
        for x in lams:
            x = x if isinstance(x, AlgebraicScalar) else parse_scalar_literal(x)
            if x.is_rational:
                logs.append(_log2_fraction(abs(x.rational)))
            else:
                f = ScalarField([x])
                logs.append(log2_abs(f, f.gen(0)))
    if any(v >= 0 for v in logs):
        raise InvalidInput("similarity dimension needs all |lambda_j| in (0, 1)")

    def g(s):
        return math.fsum(2.0 ** (s * v) for v in logs) - 1.0

    if g(0.0) <= 0:
        return 0.0
    lo, hi = 0.0, 1.0
    while g(hi) > 0:
        lo, hi = hi, 2 * hi
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def span_check(model: IFSModel) -> bool:
    """Whether ``t_1, ..., t_m`` span R^d (exact rank)."""
    return row_reduction_rank(model.t[1:], model.field) == model.d


class Box:
    """Closed cube ``center + [-radius, radius]^d``."""

    def __init__(self, field, center, radius):
        self.field = field
        self.center = tuple(center)
        self.radius = radius

    def contains(self, x) -> bool:
        f = self.field
        return all(f.le_abs(a - c, self.radius) for a, c in zip(x, self.center))

    def bounds(self):
        return [(c - self.radius, c + self.radius) for c in self.center]

    def __repr__(self):
        f = self.field.format
        return f"Box(center=({', '.join(f(c) for c in self.center)}), radius={f(self.radius)})"


def attractor_hull(model: IFSModel) -> Box:
    """Centred box of radius ``max||t_j||_inf / (1 - max|lambda_j|)``.

    Every ``phi_j`` maps it into itself, so it contains the attractor.
    """
    f = model.field
    norms = [abs(c) for v in model.t for c in v]
    tmax = f.min_value([-x for x in norms])
    tmax = -tmax if norms else Fraction(0)
    lmax = -f.min_value([-abs(x) for x in model.lam])
    radius = tmax / (1 - lmax)
    return Box(f, (Fraction(0),) * model.d, radius)


def coefficient_polynomials(w1, w2, m: int):
    """``[P^0, ..., P^m]`` with ``phi_w1(0) - phi_w2(0) = sum_j P^j(lambda) t_j``.

    ``P^j = sum_k X^alpha(w1[:k]) [w1[k] = j] - X^alpha(w2[:k]) [w2[k] = j]``.
    """
    from .algebra.polynomial import IntPolynomial

    if len(w1) != len(w2):
        raise InvalidInput("words must have equal length")
    terms = [dict() for _ in range(m + 1)]
    for w, sgn in ((w1, 1), (w2, -1)):
        alpha = [0] * (m + 1)
        for q in w:
            if not 0 <= q <= m:
                raise InvalidInput(f"symbol {q} out of range 0..{m}")
            key = tuple(alpha)
            tj = terms[q]
            v = tj.get(key, 0) + sgn
            if v:
                tj[key] = v
            else:
                del tj[key]
            alpha[q] += 1
    return [IntPolynomial(m + 1, t) for t in terms]
