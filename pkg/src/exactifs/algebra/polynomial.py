"""Sparse multivariate integer polynomials in X_0, ..., X_m."""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "NEG_INF",
    "IntPolynomial",
    "determinant",
    "poly_norms",
    "poly_product",
]

#: Degree of the zero polynomial; compares below every integer.
NEG_INF = float("-inf")


class IntPolynomial:
    """Immutable sparse polynomial with integer coefficients.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero ints.
    """

    __slots__ = ("nvars", "_terms", "_norms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for alpha, c in terms.items():
                alpha = tuple(alpha)
                if len(alpha) != nvars:
                    raise ValueError(f"exponent {alpha} has wrong length for {nvars} variables")
                c = int(c)
                if c:
                    clean[alpha] = clean.get(alpha, 0) + c
                    if not clean[alpha]:
                        del clean[alpha]
        self._terms = clean
        self._norms = None

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._norms = None
        return p

    @classmethod
    def constant(cls, c: int, nvars: int) -> "IntPolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "IntPolynomial":
        alpha = [0] * nvars
        alpha[i] = 1
        return cls(nvars, {tuple(alpha): 1})

    @classmethod
    def monomial(cls, alpha, c: int = 1) -> "IntPolynomial":
        alpha = tuple(alpha)
        return cls(len(alpha), {alpha: c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # -- norms -------------------------------------------------------------------------

    def _compute_norms(self):
        if self._norms is None:
            if not self._terms:
                self._norms = (NEG_INF, 0, 0)
            else:
                self._norms = (
                    max(sum(a) for a in self._terms),
                    max(abs(c) for c in self._terms.values()),
                    sum(abs(c) for c in self._terms.values()),
                )
        return self._norms

    @property
    def deg(self):
        return self._compute_norms()[0]

    @property
    def linf(self) -> int:
        return self._compute_norms()[1]

    @property
    def l1(self) -> int:
        return self._compute_norms()[2]

    def in_class(self, l: int, n: int) -> bool:
        """Membership in P(l, n): sup-norm <= l and total degree < n."""
        return self.linf <= l and self.deg < n

    # -- ring operations ---------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, IntPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable counts")
            return other
        if isinstance(other, int):
            return IntPolynomial.constant(other, self.nvars)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for a, c in other._terms.items():
            v = out.get(a, 0) + c
            if v:
                out[a] = v
            else:
                out.pop(a, None)
        return IntPolynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial._raw(self.nvars, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for a, c in self._terms.items():
            for b, e in other._terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                v = out.get(k, 0) + c * e
                if v:
                    out[k] = v
                else:
                    del out[k]
        return IntPolynomial._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = IntPolynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other, self.nvars)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    # -- evaluation ------------------------------------------------------------------------

    def evaluate(self, values, one=1):
        """Evaluate at ``values`` using only ``+`` and ``*`` of the value type."""
        if len(values) != self.nvars:
            raise ValueError("dimension of evaluation point does not match variable count")
        powers = [dict() for _ in range(self.nvars)]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                if k == 0:
                    cache[k] = one
                elif k == 1:
                    cache[k] = values[i]
                else:
                    half = pw(i, k // 2)
                    sq = half * half
                    cache[k] = sq * values[i] if k % 2 else sq
            return cache[k]

        total = None
        for alpha, c in self._terms.items():
            term = c
            for i, k in enumerate(alpha):
                if k:
                    term = term * pw(i, k)
            total = term if total is None else total + term
        return 0 * one if total is None else total

    def partial_rational(self, values):
        """Substitute rationals for some variables.

        ``values[i]`` is a Fraction or ``None`` (kept symbolic).  Returns a dict
        from exponent tuples over the kept variables to Fraction coefficients.
        """
        keep = [i for i, v in enumerate(values) if v is None]
        cache = {}
        out = {}
        for alpha, c in self._terms.items():
            coef = Fraction(c)
            for i, k in enumerate(alpha):
                v = values[i]
                if v is not None and k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = v ** k
                    coef *= cache[key]
            if coef:
                beta = tuple(alpha[i] for i in keep)
                s = out.get(beta, 0) + coef
                if s:
                    out[beta] = s
                else:
                    out.pop(beta, None)
        return out

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for alpha in sorted(self._terms, key=lambda a: (sum(a), a)):
            c = self._terms[alpha]
            mono = "*".join(
                f"X{i}" if k == 1 else f"X{i}^{k}" for i, k in enumerate(alpha) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        return [[list(a), str(c)] for a, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, nvars, data):
        return cls(nvars, {tuple(a): int(c) for a, c in data})


def poly_norms(P: IntPolynomial):
    """``(deg, l_inf, l_1)``; the zero polynomial has degree ``NEG_INF``."""
    return P._compute_norms()


def poly_product(Ps) -> IntPolynomial:
    Ps = list(Ps)
    if not Ps:
        raise ValueError("poly_product needs at least one factor")
    out = Ps[0]
    for P in Ps[1:]:
        out = out * P
    return out


def determinant(matrix, zero=0):
    """Division-free determinant of a square matrix over any commutative ring.

    Dynamic programme over the set of columns used by the leading rows, so
    the cost is ``O(k^2 2^k)`` ring operations for a ``k x k`` matrix.
    """
    k = len(matrix)
    if k == 0:
        return zero + 1
    if any(len(row) != k for row in matrix):
        raise ValueError("determinant needs a square matrix")
    layer = {0: None}
    for i in range(k):
        nxt = {}
        row = matrix[i]
        for used, acc in layer.items():
            for c in range(k):
                bit = 1 << c
                if used & bit:
                    continue
                entry = row[c]
                if _is_zero_entry(entry):
                    continue
                higher = bin(used >> (c + 1)).count("1")
                term = entry if acc is None else acc * entry
                if higher % 2:
                    term = -term
                key = used | bit
                nxt[key] = term if key not in nxt else nxt[key] + term
        layer = nxt
        if not layer:
            return zero
    return layer.get((1 << k) - 1, zero)


def _is_zero_entry(x):
    if isinstance(x, IntPolynomial):
        return x.is_zero()
    try:
        return x == 0 and isinstance(x, (int, Fraction))
    except TypeError:
        return False
