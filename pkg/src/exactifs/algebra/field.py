"""Exact arithmetic in Q[g_0, ..., g_k] for real algebraic generators.

Values are Fractions whenever they are rational by construction, and
:class:`FieldElement` otherwise.  A FieldElement is a polynomial in the
distinct irrational generators, with every variable reduced modulo its own
minimal polynomial, optionally over a denominator of the same form.

With at most one distinct irrational generator the reduced form is
canonical (distinct forms are distinct reals).  With several, generators may
satisfy relations the reduction cannot see, so equality and sign always
fall back to :func:`certify_sign` and the separation bound.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cmp_to_key

from .enclosure import RationalTermsEvaluator, Sign, certify_sign
from .polynomial import IntPolynomial
from .scalar import AlgebraicScalar, as_fraction, parse_scalar_literal
from .separation import SeparationContext

__all__ = ["FieldElement", "ScalarField", "is_exact_scalar"]

_RATIONAL = (int, Fraction)


def is_exact_scalar(x) -> bool:
    return isinstance(x, (Fraction, FieldElement)) or (isinstance(x, int) and not isinstance(x, bool))


def _padd(a: dict, b: dict, sign=1) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pscale(a: dict, c: Fraction) -> dict:
    if not c:
        return {}
    return {e: v * c for e, v in a.items()}


def _pmul_raw(a: dict, b: dict) -> dict:
    out = {}
    for e, c in a.items():
        for f, d in b.items():
            k = tuple(x + y for x, y in zip(e, f))
            v = out.get(k, 0) + c * d
            if v:
                out[k] = v
            else:
                del out[k]
    return out


class ScalarField:
    """The ring generated over Q by a list of real algebraic numbers.

    ``gen(i)`` returns the exact scalar for the i-th generator.  Rational
    generators are folded into coefficients and generators equal to an
    earlier one share its variable.
    """

    def __init__(self, generators=()):
        self.generators = tuple(parse_scalar_literal(g) if not isinstance(g, AlgebraicScalar) else g
                                for g in generators)
        self._vars = []
        self._gen_var = []
        for g in self.generators:
            if g.is_rational:
                self._gen_var.append(None)
                continue
            for v, h in enumerate(self._vars):
                if g == h:
                    self._gen_var.append(v)
                    break
            else:
                self._gen_var.append(len(self._vars))
                self._vars.append(g)
        self.nvars = len(self._vars)
        self._deg = [x.degree for x in self._vars]
        self._tables = [None] * self.nvars
        self._var_gen = [self._gen_var.index(v) for v in range(self.nvars)]
        self.ctx = SeparationContext.for_scalars(self._vars) if self._vars else None
        self._zero = (0,) * self.nvars
        self._sign_cache = {}
        self._gens = []
        for g, v in zip(self.generators, self._gen_var):
            if v is None:
                self._gens.append(g.rational)
            else:
                e = [0] * self.nvars
                e[v] = 1
                self._gens.append(FieldElement._make(self, {tuple(e): Fraction(1)}, None))

    @property
    def canonical(self) -> bool:
        """True when structurally distinct elements are certainly distinct reals."""
        return self.nvars <= 1

    @property
    def variables(self):
        return tuple(self._vars)

    def gen(self, i: int):
        return self._gens[i]

    def __len__(self):
        return len(self.generators)

    def same_as(self, other: "ScalarField") -> bool:
        return other is self or (
            len(other.generators) == len(self.generators)
            and all(a == b for a, b in zip(self.generators, other.generators)))

    def extended(self, extra) -> "ScalarField":
        return ScalarField(self.generators + tuple(extra))

    # -- construction & normalisation ---------------------------------------------

    def coerce(self, x):
        if isinstance(x, FieldElement):
            if x.field is not self and not x.field.same_as(self):
                raise ValueError("element belongs to a different field")
            return x
        if isinstance(x, AlgebraicScalar):
            if x.is_rational:
                return x.rational
            for i, g in enumerate(self.generators):
                if g == x:
                    return self._gens[i]
            raise ValueError(f"{x!r} is not a generator of this field")
        return as_fraction(x)

    def _table(self, v: int, k: int) -> dict:
        """Reduced form of ``X_v**k`` as a univariate dict (exponent -> coeff)."""
        d = self._deg[v]
        if k < d:
            return {k: Fraction(1)}
        tab = self._tables[v]
        if tab is None:
            f = self._vars[v].minpoly
            lead = Fraction(f[-1])
            tab = [{i: -Fraction(f[i]) / lead for i in range(d) if f[i]}]
            self._tables[v] = tab
        while len(tab) <= k - d:
            prev = tab[-1]
            nxt = {}
            for i, c in prev.items():
                if i + 1 < d:
                    nxt[i + 1] = nxt.get(i + 1, 0) + c
                else:
                    for j, r in tab[0].items():
                        nxt[j] = nxt.get(j, 0) + c * r
            tab.append({i: c for i, c in nxt.items() if c})
        return tab[k - d]

    def _reduce(self, poly: dict) -> dict:
        deg = self._deg
        out = {}
        for e, c in poly.items():
            if all(k < deg[v] for v, k in enumerate(e)):
                s = out.get(e, 0) + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
                continue
            partial = {(): c}
            for v, k in enumerate(e):
                opts = self._table(v, k)
                partial = {p + (j,): pc * jc for p, pc in partial.items() for j, jc in opts.items()}
            for f, pc in partial.items():
                s = out.get(f, 0) + pc
                if s:
                    out[f] = s
                else:
                    out.pop(f, None)
        return out

    def _var_of(self, poly: dict):
        """The single variable a polynomial depends on, ``-1`` if constant, else None."""
        used = set()
        for e in poly:
            for v, k in enumerate(e):
                if k:
                    used.add(v)
                    if len(used) > 1:
                        return None
        return used.pop() if used else -1

    def _inverse(self, poly: dict, v: int) -> dict:
        """Inverse modulo the minimal polynomial of variable ``v`` (extended Euclid)."""
        d = self._deg[v]
        g = [Fraction(0)] * d
        for e, c in poly.items():
            g[e[v]] = c
        f = [Fraction(c) for c in self._vars[v].minpoly]

        def trim(p):
            while p and p[-1] == 0:
                p.pop()
            return p

        def divmod_(a, b):
            a = list(a)
            q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
            while len(a) >= len(b) and trim(a):
                if len(a) < len(b):
                    break
                factor = a[-1] / b[-1]
                shift = len(a) - len(b)
                q[shift] += factor
                for i, c in enumerate(b):
                    a[i + shift] -= factor * c
                trim(a)
            return trim(q), a

        def sub_mul(a, q, b):
            prod = [Fraction(0)] * (len(q) + len(b))
            for i, x in enumerate(q):
                for j, y in enumerate(b):
                    prod[i + j] += x * y
            n = max(len(a), len(prod))
            out = [(a[i] if i < len(a) else 0) - (prod[i] if i < len(prod) else 0) for i in range(n)]
            return trim(out)

        r0, r1 = f, trim(g)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = divmod_(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, sub_mul(s0, q, s1)
        if not r1:
            raise ZeroDivisionError("element is zero")
        c = r1[0]
        out = {}
        for i, x in enumerate(s1):
            if x:
                e = [0] * self.nvars
                e[v] = i
                out[tuple(e)] = x / c
        return self._reduce(out)

    # -- decisions ------------------------------------------------------------------

    def _int_poly(self, poly: dict) -> IntPolynomial:
        lcm = 1
        for c in poly.values():
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        return IntPolynomial(self.nvars, {e: int(c * lcm) for e, c in poly.items()})

    def _poly_sign(self, poly: dict) -> Sign:
        key = tuple(sorted(poly.items()))
        s = self._sign_cache.get(key)
        if s is None:
            const = self._constant(poly)
            if const is not None:
                s = Sign.of(const)
            else:
                s = certify_sign(self._int_poly(poly), self._vars, self.ctx)
            if len(self._sign_cache) > 200000:
                self._sign_cache.clear()
            self._sign_cache[key] = s
        return s

    def _constant(self, poly: dict):
        if not poly:
            return Fraction(0)
        if len(poly) == 1 and self._zero in poly:
            return poly[self._zero]
        return None

    def sign(self, x) -> Sign:
        """Certified sign of an exact scalar."""
        if isinstance(x, _RATIONAL):
            return Sign.of(x)
        s = self._poly_sign(x.num)
        if x.den is not None:
            s = Sign(s * self._poly_sign(x.den))
        return s

    def compare(self, a, b) -> int:
        return int(self.sign(a - b))

    def eq(self, a, b) -> bool:
        return self.sign(a - b) == 0

    def is_zero(self, x) -> bool:
        return self.sign(x) == 0

    def abs(self, x):
        return -x if self.sign(x) < 0 else x

    def le_abs(self, x, bound) -> bool:
        """Certified ``|x| <= bound``."""
        return self.sign(bound - x) >= 0 and self.sign(bound + x) >= 0

    def key(self, x):
        """Hashable structural key; equal keys imply equal values."""
        if isinstance(x, _RATIONAL):
            return Fraction(x)
        return x.key

    # -- approximation ----------------------------------------------------------------

    def enclosure(self, x, width=Fraction(1, 2**64)):
        """Rational interval of width <= ``width`` containing ``x``."""
        if isinstance(x, _RATIONAL):
            return Fraction(x), Fraction(x)
        width = Fraction(width)
        num_ev = x._evaluator()
        if x.den is None:
            return num_ev.enclose(width)
        den_ev = RationalTermsEvaluator(x.den, self._vars)
        w = width / 4
        while True:
            a, b = num_ev.enclose(w)
            c, d = den_ev.enclose(w)
            if c > 0 or d < 0:
                qs = (a / c, a / d, b / c, b / d)
                lo, hi = min(qs), max(qs)
                if hi - lo <= width:
                    return lo, hi
            w /= 2**32

    def approx(self, x) -> float:
        """Float with (near) full relative precision."""
        if isinstance(x, _RATIONAL):
            return float(x)
        lo, hi = self.enclosure(x, Fraction(1, 2**64))
        if lo <= 0 <= hi:
            if self.sign(x) == 0:
                return 0.0
        w = Fraction(1, 2**64)
        while lo <= 0 <= hi or (hi - lo) > min(abs(lo), abs(hi)) / 2**54:
            w /= 2**64
            lo, hi = self.enclosure(x, w)
        return float((lo + hi) / 2)

    def log2(self, x) -> float:
        if self.sign(x) <= 0:
            raise ValueError("log2 of a non-positive value")
        if isinstance(x, _RATIONAL):
            x = Fraction(x)
            return math.log2(x.numerator) - math.log2(x.denominator)
        return math.log2(self.approx(x))

    def floor(self, x) -> int:
        """Certified floor."""
        if isinstance(x, _RATIONAL):
            return math.floor(x)
        lo, hi = self.enclosure(x, Fraction(1, 2**20))
        a, b = math.floor(lo), math.floor(hi)
        if a == b:
            return a
        return b if self.sign(x - b) >= 0 else b - 1

    # -- grouping & sorting --------------------------------------------------------------

    def group_equal(self, vectors) -> list:
        """Partition indices of equal-length scalar vectors into equal classes.

        Groups are ordered by their smallest index, members ascending.
        """
        buckets = {}
        for i, vec in enumerate(vectors):
            buckets.setdefault(tuple(self.key(c) for c in vec), []).append(i)
        groups = list(buckets.values())
        if self.canonical or len(groups) < 2:
            return groups
        reps = [vectors[g[0]] for g in groups]
        width = Fraction(1, 2**48)
        enc = [[self.enclosure(c, width) for c in vec] for vec in reps]
        parent = list(range(len(groups)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        dims = len(reps[0])
        if dims == 0:
            return [sorted(i for g in groups for i in g)]
        order = sorted(range(len(groups)), key=lambda i: enc[i][0][0])
        for a_pos, i in enumerate(order):
            hi_i = enc[i][0][1]
            for j in order[a_pos + 1:]:
                if enc[j][0][0] > hi_i:
                    break
                if find(i) == find(j):
                    continue
                if all(enc[j][c][0] <= enc[i][c][1] and enc[i][c][0] <= enc[j][c][1]
                       for c in range(dims)):
                    if all(self.eq(x, y) for x, y in zip(reps[i], reps[j])):
                        parent[find(j)] = find(i)
        merged = {}
        for gi, g in enumerate(groups):
            merged.setdefault(find(gi), []).extend(g)
        out = [sorted(g) for g in merged.values()]
        out.sort(key=lambda g: g[0])
        return out

    def sorted_indices(self, values) -> list:
        """Indices of ``values`` in certified ascending order."""
        if all(isinstance(v, _RATIONAL) for v in values):
            return sorted(range(len(values)), key=lambda i: values[i])
        width = Fraction(1, 2**64)
        enc = [self.enclosure(v, width) for v in values]
        order = sorted(range(len(values)), key=lambda i: enc[i][0])
        out = []
        cluster = []
        cluster_hi = None
        cmp = cmp_to_key(lambda i, j: self.compare(values[i], values[j]))
        for i in order:
            if cluster and enc[i][0] > cluster_hi:
                out.extend(sorted(cluster, key=cmp) if len(cluster) > 1 else cluster)
                cluster = []
            if not cluster:
                cluster_hi = enc[i][1]
            else:
                cluster_hi = max(cluster_hi, enc[i][1])
            cluster.append(i)
        out.extend(sorted(cluster, key=cmp) if len(cluster) > 1 else cluster)
        return out

    def min_value(self, values):
        """Certified minimum of a nonempty list."""
        best = values[0]
        for v in values[1:]:
            if self.compare(v, best) < 0:
                best = v
        return best

    def evaluate(self, P: IntPolynomial, point=None):
        """Exact value of an integer polynomial at generator values."""
        if point is None:
            point = self._gens[:P.nvars]
        return P.evaluate(list(point), one=Fraction(1))

    # -- literals ----------------------------------------------------------------------

    def _terms_json(self, poly: dict):
        out = []
        for e, c in sorted(poly.items()):
            g = [0] * len(self.generators)
            for v, k in enumerate(e):
                g[self._var_gen[v]] = k
            out.append([g, str(c)])
        return out

    def _terms_from_json(self, data):
        total = Fraction(0)
        for exps, c in data:
            if len(exps) != len(self.generators):
                raise ValueError("exponent vector does not match generator count")
            term = as_fraction(c)
            for i, k in enumerate(exps):
                if k:
                    term = term * self._gens[i] ** int(k)
            total = total + term
        return total

    def to_literal(self, x):
        """``"p/q"`` for rationals, a term dict over generators otherwise."""
        if isinstance(x, _RATIONAL):
            return str(Fraction(x))
        lit = {"terms": self._terms_json(x.num)}
        if x.den is not None:
            lit["den"] = self._terms_json(x.den)
        lit["approx"] = repr(self.approx(x))
        return lit

    def from_literal(self, obj):
        if isinstance(obj, dict) and "terms" in obj:
            value = self._terms_from_json(obj["terms"])
            if "den" in obj:
                value = value / self._terms_from_json(obj["den"])
            return value
        return self.coerce(parse_scalar_literal(obj))

    def format(self, x) -> str:
        if isinstance(x, _RATIONAL):
            return str(Fraction(x))
        return str(x)


class FieldElement:
    """Irrational (or not provably rational) element of a :class:`ScalarField`."""

    __slots__ = ("field", "num", "den", "_key", "_ev")

    def __init__(self):
        raise TypeError("use ScalarField.gen() and arithmetic to build elements")

    @staticmethod
    def _make(field: ScalarField, num: dict, den):
        if den is not None:
            const = field._constant(den)
            if const is not None:
                if not const:
                    raise ZeroDivisionError("division by zero")
                num = _pscale(num, 1 / const)
                den = None
            else:
                v = field._var_of(den)
                if v is not None:
                    num = field._reduce(_pmul_raw(num, field._inverse(den, v)))
                    den = None
        const = field._constant(num)
        if const is not None and (den is None or not const):
            return const
        x = object.__new__(FieldElement)
        x.field = field
        x.num = num
        x.den = den
        x._key = None
        x._ev = None
        return x

    @property
    def key(self):
        if self._key is None:
            self._key = (tuple(sorted(self.num.items())),
                         None if self.den is None else tuple(sorted(self.den.items())))
        return self._key

    def _evaluator(self):
        if self._ev is None:
            self._ev = RationalTermsEvaluator(self.num, self.field._vars)
        return self._ev

    def _split(self, other):
        """Return ``(num, den)`` dicts of ``other`` in this field, or None."""
        f = self.field
        if isinstance(other, FieldElement):
            if other.field is not f and not other.field.same_as(f):
                raise ValueError("elements of different fields")
            return other.num, other.den
        if isinstance(other, _RATIONAL) and not isinstance(other, bool):
            other = Fraction(other)
            return ({f._zero: other} if other else {}), None
        return None

    def __add__(self, other, sign=1):
        parts = self._split(other)
        if parts is None:
            return NotImplemented
        on, od = parts
        f = self.field
        if self.den is None and od is None:
            return FieldElement._make(f, _padd(self.num, on, sign), None)
        sd = self.den if self.den is not None else {f._zero: Fraction(1)}
        od = od if od is not None else {f._zero: Fraction(1)}
        num = _padd(f._reduce(_pmul_raw(self.num, od)), f._reduce(_pmul_raw(on, sd)), sign)
        return FieldElement._make(f, num, f._reduce(_pmul_raw(sd, od)))

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        return self.__add__(other, -1)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return FieldElement._make(self.field, {e: -c for e, c in self.num.items()}, self.den)

    def __mul__(self, other):
        parts = self._split(other)
        if parts is None:
            return NotImplemented
        on, od = parts
        f = self.field
        if isinstance(other, _RATIONAL):
            return FieldElement._make(f, _pscale(self.num, Fraction(other)), self.den)
        num = f._reduce(_pmul_raw(self.num, on))
        if self.den is None and od is None:
            return FieldElement._make(f, num, None)
        one = {f._zero: Fraction(1)}
        den = f._reduce(_pmul_raw(self.den or one, od or one))
        return FieldElement._make(f, num, den)

    __rmul__ = __mul__

    def _reciprocal(self):
        f = self.field
        if f.sign(self) == 0:
            raise ZeroDivisionError("division by a certified zero")
        den = self.den if self.den is not None else {f._zero: Fraction(1)}
        return FieldElement._make(f, den, self.num)

    def __truediv__(self, other):
        if isinstance(other, _RATIONAL) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("division by zero")
            return FieldElement._make(self.field, _pscale(self.num, 1 / Fraction(other)), self.den)
        if isinstance(other, FieldElement):
            return self * other._reciprocal()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _RATIONAL) and not isinstance(other, bool):
            return self._reciprocal() * Fraction(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self._reciprocal() ** (-k)
        result = Fraction(1)
        base = self
        while k:
            if k & 1:
                result = base * result
            k >>= 1
            if k:
                base = base * base
        return result

    # certified comparisons
    def __eq__(self, other):
        if self._split(other) is None:
            return NotImplemented
        return self.field.sign(self - other) == 0

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __lt__(self, other):
        return self.field.sign(self - other) < 0

    def __le__(self, other):
        return self.field.sign(self - other) <= 0

    def __gt__(self, other):
        return self.field.sign(self - other) > 0

    def __ge__(self, other):
        return self.field.sign(self - other) >= 0

    def __hash__(self):
        if not self.field.canonical:
            raise TypeError("elements of a non-canonical field are unhashable")
        return hash(self.key)

    def __abs__(self):
        return self.field.abs(self)

    def __float__(self):
        return self.field.approx(self)

    def _fmt(self, poly):
        parts = []
        for e, c in sorted(poly.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(
                (f"g{self.field._var_gen[v]}" if k == 1 else f"g{self.field._var_gen[v]}^{k}")
                for v, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        s = self._fmt(self.num)
        if self.den is not None:
            s = f"({s})/({self._fmt(self.den)})"
        return s

    def __repr__(self):
        return f"FieldElement({self})"
