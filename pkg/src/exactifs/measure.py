"""Discrete measures on the similarity group and their partition entropies.

``nu_n(model, n)`` is the law of ``phi_w`` for a random word of length
``n`` with i.i.d. symbols drawn from ``p``.  Cell masses are exact
rationals; only the final entropy is a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv
from mpmath.libmp import to_rational

from .errors import InvalidInput, PreconditionError
from .ifs import IFSModel, SimilarityMap, entropy_of, rate_stats, span_check

__all__ = [
    "DiscreteAffineMeasure",
    "PartitionSpec",
    "chi_compare",
    "chi_enclosure",
    "convolve",
    "dim_estimate",
    "dim_upper_bound",
    "floor_chi_n",
    "hochman_diagnostic",
    "nu_n",
    "partition_entropy",
]


class DiscreteAffineMeasure:
    """Finitely supported probability measure on similarity maps.

    Atoms equal as maps are merged (certified), so the atom list is a set.
    """

    def __init__(self, field, d: int, pairs):
        self.field = field
        self.d = d
        buckets = {}
        for psi, mass in pairs:
            if psi.dimension != d:
                raise InvalidInput("atom dimension mismatch")
            k = psi.key
            if k in buckets:
                buckets[k][1] += mass
            else:
                buckets[k] = [psi, Fraction(mass)]
        atoms = list(buckets.values())
        if not field.canonical and len(atoms) > 1:
            groups = field.group_equal([(a[0].scale,) + a[0].translation for a in atoms])
            atoms = [[atoms[g[0]][0], sum(atoms[i][1] for i in g)] for g in groups]
        self.atoms = [(psi, mass) for psi, mass in atoms]
        if sum(m for _, m in self.atoms) != 1:
            raise AssertionError("measure masses do not sum to 1")

    @classmethod
    def dirac(cls, psi: SimilarityMap) -> "DiscreteAffineMeasure":
        return cls(psi.field, psi.dimension, [(psi, Fraction(1))])

    def __len__(self):
        return len(self.atoms)

    @property
    def masses(self):
        return [m for _, m in self.atoms]

    def entropy(self) -> float:
        return abs(entropy_of(self.masses))

    def mass_of(self, psi: SimilarityMap) -> Fraction:
        total = Fraction(0)
        for phi, m in self.atoms:
            if phi.equals(psi):
                total += m
        return total

    def equals(self, other: "DiscreteAffineMeasure") -> bool:
        """Same atoms with the same masses (exact)."""
        if self.d != other.d or len(self) != len(other):
            return False
        f = self.field
        if f.canonical:
            mine = {psi.key: m for psi, m in self.atoms}
            theirs = {psi.key: m for psi, m in other.atoms}
            return mine == theirs
        union = self.atoms + other.atoms
        groups = f.group_equal([(a.scale,) + a.translation for a, _ in union])
        n = len(self.atoms)
        for g in groups:
            left = [i for i in g if i < n]
            right = [i for i in g if i >= n]
            if len(left) != 1 or len(right) != 1 or union[left[0]][1] != union[right[0]][1]:
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, DiscreteAffineMeasure):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __repr__(self):
        return f"DiscreteAffineMeasure({len(self)} atoms, d={self.d})"


def nu_n(model: IFSModel, n: int, budget=None) -> DiscreteAffineMeasure:
    """``sum_w p_w delta_{phi_w}`` over words of length ``n``, by direct enumeration."""
    if n < 0:
        raise InvalidInput("depth must be >= 0")
    f = model.field
    pairs = [(SimilarityMap(f, model.scale_of(a), pos), model.mass_of(a))
             for _, a, pos in model.enumerate(n, budget)]
    return DiscreteAffineMeasure(f, model.d, pairs)


def convolve(nu1: DiscreteAffineMeasure, nu2: DiscreteAffineMeasure) -> DiscreteAffineMeasure:
    """Group convolution: atoms ``psi1 o psi2`` with product masses."""
    if nu1.d != nu2.d:
        raise InvalidInput("cannot convolve measures of different dimension")
    if not nu1.field.same_as(nu2.field):
        raise InvalidInput("measures live over different fields")
    pairs = [(a.then(b), x * y) for a, x in nu1.atoms for b, y in nu2.atoms]
    return DiscreteAffineMeasure(nu1.field, nu1.d, pairs)


@dataclass(frozen=True)
class PartitionSpec:
    """A partition of the similarity group.

    ``kind`` is one of ``"dyadic"`` (translation cells of side ``2**-level``,
    half-open), ``"scaling"`` (by scale), ``"join"`` (both) or
    ``"singletons"``.  Real levels are floored.
    """

    kind: str
    level: int = 0

    def __post_init__(self):
        if self.kind not in ("dyadic", "scaling", "join", "singletons"):
            raise InvalidInput(f"unknown partition kind {self.kind!r}")
        lvl = self.level
        if lvl < 0:
            raise InvalidInput("partition level must be >= 0")
        object.__setattr__(self, "level", int(math.floor(lvl)))

    @classmethod
    def dyadic(cls, r):
        return cls("dyadic", r)

    @classmethod
    def scaling(cls):
        return cls("scaling")

    @classmethod
    def join(cls, r):
        return cls("join", r)

    @classmethod
    def singletons(cls):
        return cls("singletons")


def _dyadic_labels(nu, level: int):
    f = nu.field
    scale = 2**level
    return [tuple(f.floor(c * scale) for c in psi.translation) for psi, _ in nu.atoms]


def _scaling_labels(nu):
    f = nu.field
    groups = f.group_equal([(psi.scale,) for psi, _ in nu.atoms])
    labels = [0] * len(nu.atoms)
    for gi, g in enumerate(groups):
        for i in g:
            labels[i] = gi
    return labels


def scaling_class_count(nu) -> int:
    return len(set(_scaling_labels(nu))) if nu.atoms else 0


def partition_cells(nu: DiscreteAffineMeasure, spec: PartitionSpec) -> dict:
    """Exact mass of each nonempty cell, keyed by a cell label."""
    if spec.kind == "singletons":
        labels = list(range(len(nu.atoms)))
    elif spec.kind == "dyadic":
        labels = _dyadic_labels(nu, spec.level)
    elif spec.kind == "scaling":
        labels = _scaling_labels(nu)
    else:
        labels = list(zip(_dyadic_labels(nu, spec.level), _scaling_labels(nu)))
    cells = {}
    for lab, (_, m) in zip(labels, nu.atoms):
        cells[lab] = cells.get(lab, 0) + m
    return cells


def partition_entropy(nu: DiscreteAffineMeasure, spec: PartitionSpec) -> float:
    """``H(nu, spec) = -sum nu(C) log2 nu(C)``."""
    return abs(entropy_of(partition_cells(nu, spec).values()))


# -- the Lyapunov exponent, exactly where it matters ----------------------------------

def chi_enclosure(model: IFSModel, prec: int = 128):
    """Rational interval containing ``chi = -sum p_j log2|lambda_j|``."""
    f = model.field
    old = iv.prec
    iv.prec = prec + 16
    try:
        total = iv.mpf(0)
        log2 = iv.log(iv.mpf(2))
        width = Fraction(1, 2**prec)
        for p, lam in zip(model.p, model.lam):
            lo, hi = f.enclosure(abs(lam), width)
            box = iv.mpf([iv.mpf(lo.numerator) / lo.denominator, iv.mpf(hi.numerator) / hi.denominator])
            total += (iv.mpf(p.numerator) / p.denominator) * iv.log(box) / log2
        a, b = total._mpi_
        lo, hi = (Fraction(*map(int, to_rational(x))) for x in (b, a))
        return -lo, -hi
    finally:
        iv.prec = old


def _chi_equals(model: IFSModel, r: Fraction) -> bool:
    # chi = u/v with p_j = a_j/b  <=>  prod |lambda_j|^(v a_j) = 2^(-u b)
    b = 1
    for p in model.p:
        b = b * p.denominator // math.gcd(b, p.denominator)
    u, v = r.numerator, r.denominator
    f = model.field
    lhs = Fraction(1)
    for p, lam in zip(model.p, model.lam):
        lhs = lhs * abs(lam) ** (v * int(p * b))
    return f.eq(lhs, Fraction(2) ** (-u * b))


def chi_compare(model: IFSModel, r) -> int:
    """Certified sign of ``chi - r`` for rational ``r``."""
    r = Fraction(r)
    prec = 64
    while prec <= 4096:
        lo, hi = chi_enclosure(model, prec)
        if lo > r:
            return 1
        if hi < r:
            return -1
        if prec >= 256 and _chi_equals(model, r):
            return 0
        prec *= 2
    if _chi_equals(model, r):
        return 0
    raise PreconditionError(f"could not separate chi from {r}")


def floor_chi_n(model: IFSModel, n: int) -> int:
    """Certified ``floor(chi * n)``."""
    lo, hi = chi_enclosure(model, 96)
    k = math.floor(hi * n)
    return k if chi_compare(model, Fraction(k, n)) >= 0 else k - 1


# -- dimension estimators -----------------------------------------------------------------

def dim_estimate(model: IFSModel, n: int, budget=None, nu=None) -> float:
    """``H(nu_n, E_floor(chi n)) / (chi n)``."""
    if n < 1:
        raise InvalidInput("n must be >= 1")
    nu = nu_n(model, n, budget) if nu is None else nu
    _, chi, _ = rate_stats(model)
    H = partition_entropy(nu, PartitionSpec.dyadic(floor_chi_n(model, n)))
    return H / (chi * n)


def dim_upper_bound(model: IFSModel, n: int, budget=None, nu=None) -> float:
    """``H(nu_n) / (chi n)``, an upper bound for the dimension at every ``n``."""
    if n < 1:
        raise InvalidInput("n must be >= 1")
    nu = nu_n(model, n, budget) if nu is None else nu
    _, chi, _ = rate_stats(model)
    return nu.entropy() / (chi * n)


def hochman_diagnostic(model: IFSModel, n: int, q=None, budget=None, nu=None) -> float:
    """``H(nu_n, E_floor(q n) v F) / (chi n)`` where ``F`` splits by scale.

    ``q`` defaults to ``chi`` and must not be smaller than it.
    """
    if n < 1:
        raise InvalidInput("n must be >= 1")
    if not span_check(model):
        raise PreconditionError("translations do not span R^d")
    if q is None:
        level = floor_chi_n(model, n)
    else:
        q = Fraction(q)
        if chi_compare(model, q) > 0:
            raise PreconditionError("q must be >= chi")
        level = math.floor(q * n)
    nu = nu_n(model, n, budget) if nu is None else nu
    _, chi, _ = rate_stats(model)
    return partition_entropy(nu, PartitionSpec.join(level)) / (chi * n)
