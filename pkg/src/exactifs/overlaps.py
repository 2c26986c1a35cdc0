"""Exact overlaps, the overlap gap and its decay.

Words of length ``n`` are grouped into lambda classes (equal contraction
``lambda_w``).  Two words overlap exactly when they share a class and have
equal translations ``phi_w(0)``; the overlap gap is the smallest nonzero or
zero translation distance within a class.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra.polynomial import IntPolynomial
from .errors import InvalidInput
from .ifs import IFSModel, check_budget, coefficient_polynomials, compose, multi_index

__all__ = [
    "UNDEFINED",
    "DecayProfile",
    "LambdaClass",
    "OverlapCertificate",
    "decay_profile",
    "delta_n",
    "find_overlap",
    "lambda_classes",
    "verify_certificate",
]

UNDEFINED = "undefined"


@dataclass
class LambdaClass:
    """Words of one length sharing the contraction ``value``."""

    value: object
    alphas: list
    words: list
    translations: list = dc_field(repr=False)

    def __len__(self):
        return len(self.words)


def lambda_classes(model: IFSModel, n: int, budget=None) -> list:
    """Partition of all words of length ``n`` by certified ``lambda_w``.

    Words are first bucketed by multi-index, then buckets whose scales are
    certified equal are merged.  Classes come in order of their first word.
    """
    if n < 1:
        raise InvalidInput("depth must be >= 1")
    entries = model.enumerate(n, budget)
    by_alpha = {}
    for w, alpha, pos in entries:
        by_alpha.setdefault(alpha, []).append((w, pos))
    alphas = list(by_alpha)
    groups = model.field.group_equal([(model.scale_of(a),) for a in alphas])
    out = []
    for g in groups:
        members = sorted(x for i in g for x in by_alpha[alphas[i]])
        out.append(LambdaClass(
            value=model.scale_of(alphas[g[0]]),
            alphas=sorted(alphas[i] for i in g),
            words=[w for w, _ in members],
            translations=[pos for _, pos in members],
        ))
    out.sort(key=lambda c: c.words[0])
    if len(out) > math.comb(n + model.m, model.m):
        raise AssertionError("more lambda classes than multi-indices")
    return out


def _sup_dist(field, u, v):
    best = None
    for a, b in zip(u, v):
        x = abs(a - b)
        if best is None or field.compare(x, best) > 0:
            best = x
    return best


def delta_n(model: IFSModel, n: int, budget=None):
    """The overlap gap at depth ``n``, or ``UNDEFINED`` if no class has two words.

    In dimension 1 each class is sorted and adjacent gaps are scanned.  For
    ``d > 1`` the sup-norm distance over all pairs within a class is used.
    """
    f = model.field
    best = None
    for cls in lambda_classes(model, n, budget):
        if len(cls) < 2:
            continue
        ts = cls.translations
        if model.d == 1:
            vals = [t[0] for t in ts]
            order = f.sorted_indices(vals)
            gaps = [vals[j] - vals[i] for i, j in zip(order, order[1:])]
        else:
            k = len(ts)
            check_budget(k * (k - 1) // 2, budget, "pairs")
            gaps = [_sup_dist(f, ts[i], ts[j]) for i in range(k) for j in range(i + 1, k)]
        g = f.min_value(gaps)
        if best is None or f.compare(g, best) < 0:
            best = g
        if f.sign(best) == 0:
            return Fraction(0)
    return UNDEFINED if best is None else best


@dataclass
class DecayProfile:
    entries: list
    nonincreasing: bool
    superexponential_hint: bool

    def as_dict(self):
        return {
            "entries": [[n, v] for n, v in self.entries],
            "nonincreasing": self.nonincreasing,
            "reached_zero": self.superexponential_hint,
        }


def decay_profile(model: IFSModel, n_max: int, budget=None) -> DecayProfile:
    """``(n, log2(Delta_n) / n)`` for ``n = 1..n_max``; undefined depths are skipped."""
    if n_max < 2:
        raise InvalidInput("n_max must be >= 2")
    entries = []
    for n in range(1, n_max + 1):
        dn = delta_n(model, n, budget)
        if dn is UNDEFINED:
            continue
        if model.field.sign(dn) == 0:
            entries.append((n, -math.inf))
        else:
            entries.append((n, model.field.log2(dn) / n))
    vals = [v for _, v in entries]
    mono = all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))
    return DecayProfile(entries, mono, any(v == -math.inf for v in vals))


@dataclass
class OverlapCertificate:
    """Distinct words of equal length whose compositions coincide.

    ``scale_identity`` is ``X^alpha(w1) - X^alpha(w2)`` and
    ``translation_polynomials`` are the ``P^j`` with
    ``phi_w1(0) - phi_w2(0) = sum_j P^j(lambda) t_j``; both vanish at the
    model's data.
    """

    n: int
    w1: tuple
    w2: tuple
    scale_identity: IntPolynomial
    translation_polynomials: list

    @classmethod
    def from_words(cls, m: int, w1, w2) -> "OverlapCertificate":
        w1, w2 = tuple(w1), tuple(w2)
        if len(w1) != len(w2):
            raise InvalidInput("certificate words must have equal length")
        a1, a2 = multi_index(w1, m), multi_index(w2, m)
        scale = IntPolynomial.monomial(a1) - IntPolynomial.monomial(a2)
        return cls(len(w1), w1, w2, scale, coefficient_polynomials(w1, w2, m))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "w1": list(self.w1),
            "w2": list(self.w2),
            "nvars": self.scale_identity.nvars,
            "scale_identity": self.scale_identity.to_json(),
            "translation_polynomials": [P.to_json() for P in self.translation_polynomials],
        }

    @classmethod
    def from_json(cls, data) -> "OverlapCertificate":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            w1, w2 = tuple(int(q) for q in data["w1"]), tuple(int(q) for q in data["w2"])
            nv = int(data["nvars"])
            scale = IntPolynomial.from_json(nv, data["scale_identity"])
            polys = [IntPolynomial.from_json(nv, p) for p in data["translation_polynomials"]]
            n = int(data["n"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed certificate: {exc}") from exc
        return cls(n, w1, w2, scale, polys)


def verify_certificate(model: IFSModel, cert: OverlapCertificate) -> bool:
    """Recompute both compositions and certify that they agree.

    Raises InvalidInput for length mismatch or out-of-range symbols.
    """
    w1, w2 = tuple(cert.w1), tuple(cert.w2)
    if len(w1) != len(w2) or len(w1) != cert.n:
        raise InvalidInput("certificate word lengths do not match")
    multi_index(w1, model.m)
    multi_index(w2, model.m)
    if w1 == w2:
        return False
    expected = OverlapCertificate.from_words(model.m, w1, w2)
    if (cert.scale_identity != expected.scale_identity
            or list(cert.translation_polynomials) != expected.translation_polynomials):
        return False
    return compose(model, w1).equals(compose(model, w2))


def find_overlap(model: IFSModel, n_max: int, budget=None):
    """Smallest ``(n, w1, w2)`` with ``phi_w1 = phi_w2``, or None up to ``n_max``."""
    if n_max < 1:
        raise InvalidInput("n_max must be >= 1")
    f = model.field
    for n in range(1, n_max + 1):
        best = None
        for cls in lambda_classes(model, n, budget):
            if len(cls) < 2:
                continue
            for g in f.group_equal(cls.translations):
                if len(g) >= 2:
                    pair = (cls.words[g[0]], cls.words[g[1]])
                    if best is None or pair < best:
                        best = pair
        if best is not None:
            cert = OverlapCertificate.from_words(model.m, *best)
            if not verify_certificate(model, cert):
                raise AssertionError("emitted certificate failed verification")
            return cert
    return None
