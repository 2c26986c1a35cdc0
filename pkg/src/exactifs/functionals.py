"""Linear functionals of word pairs, candidate sets and their rank.

For words ``w1, w2`` of length ``n`` the difference of translations is a
linear functional of the translation vector,
``L(t) = phi_w1(0) - phi_w2(0) = sum_j P^j(lambda) t_j``.  A candidate set
collects the functionals of equal-contraction pairs that are small on the
model's translations.  When its rank is ``m - d`` the translations can be
recovered from it by Cramer's rule; when it is smaller the data can be
lifted to a higher-dimensional system.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations

from .algebra.enclosure import certify_sign
from .algebra.linalg import gram_det, row_reduction_rank, solve
from .algebra.polynomial import IntPolynomial, determinant
from .errors import CertificateError, InvalidInput, PreconditionError
from .ifs import IFSModel, coefficient_polynomials, normalize, span_check
from .overlaps import find_overlap, lambda_classes, verify_certificate

__all__ = [
    "CandidateSet",
    "CombinationRecord",
    "LiftResult",
    "LinearFunctional",
    "RankReport",
    "Reconstruction",
    "build_candidate_set",
    "consistency_check",
    "functional_from_words",
    "gram_rank",
    "lift_to_higher_dim",
    "projection_residual",
    "rank_analysis",
    "reconstruct_translations",
    "transfer_certificate",
]


# -- functionals ---------------------------------------------------------------------

@dataclass
class LinearFunctional:
    """``L(t) = sum_{j=0..m} a^j t_j``; ``row`` holds ``a^1..a^m``.

    ``polys`` are the coefficient polynomials ``P^0..P^m`` for functionals
    built from words and None for synthetic rows.
    """

    w1: tuple | None
    w2: tuple | None
    a0: object
    row: tuple
    polys: list | None = dc_field(default=None, repr=False)

    @property
    def n(self):
        return None if self.w1 is None else len(self.w1)

    @property
    def coefficient_polys(self):
        return None if self.polys is None else self.polys[1:]

    def __call__(self, translations):
        """Value at ``m + 1`` translation vectors (one entry per coordinate)."""
        coeffs = (self.a0,) + tuple(self.row)
        d = len(translations[0])
        out = []
        for l in range(d):
            total = Fraction(0)
            for a, t in zip(coeffs, translations):
                total = total + a * t[l]
            out.append(total)
        return tuple(out)

    @classmethod
    def synthetic(cls, row):
        return cls(None, None, Fraction(0), _exact_row(row))


def _exact_row(row):
    return tuple(Fraction(x) if isinstance(x, (int, str)) else x for x in row)


def _eval_poly(model: IFSModel, P: IntPolynomial):
    total = Fraction(0)
    for alpha, c in P.items():
        total = total + c * model.scale_of(alpha)
    return total


def functional_from_words(model: IFSModel, w1, w2) -> LinearFunctional:
    """``L_{w1,w2}`` with coefficient polynomials and their exact values."""
    w1, w2 = tuple(w1), tuple(w2)
    if len(w1) != len(w2):
        raise InvalidInput("words must have equal length")
    if not w1:
        raise InvalidInput("words must be nonempty")
    polys = coefficient_polynomials(w1, w2, model.m)
    n = len(w1)
    if not all(P.in_class(1, n) for P in polys):
        raise AssertionError("coefficient polynomial outside P(1, n)")
    vals = [_eval_poly(model, P) for P in polys]
    return LinearFunctional(w1, w2, vals[0], tuple(vals[1:]), polys)


# -- candidate sets --------------------------------------------------------------------

@dataclass
class CandidateSet:
    """Functionals with ``|L(t^l)| <= delta^n`` for every coordinate ``l``."""

    field: object
    m: int
    n: int | None
    delta: Fraction | None
    functionals: list
    model: IFSModel | None = None
    diagnostics: dict = dc_field(default_factory=dict)

    @property
    def matrix(self):
        return [L.row for L in self.functionals]

    @property
    def has_polys(self) -> bool:
        return all(L.polys is not None for L in self.functionals)

    def __len__(self):
        return len(self.functionals)

    @classmethod
    def synthetic(cls, field, rows, model=None, n=None):
        rows = [tuple(r) for r in rows]
        m = len(rows[0]) if rows else (model.m if model else 0)
        return cls(field, m, n, None, [LinearFunctional.synthetic(r) for r in rows], model)

    @classmethod
    def from_pairs(cls, model: IFSModel, pairs, n=None):
        fs = [functional_from_words(model, a, b) for a, b in pairs]
        n = n if n is not None else (fs[0].n if fs else None)
        return cls(model.field, model.m, n, None, fs, model)


def dyadic_level_for(delta: Fraction, n: int) -> int:
    """Smallest ``k >= 0`` with ``2**-k <= delta**n``."""
    r = (1 / Fraction(delta)) ** n
    a, b = r.numerator, r.denominator
    k = max(0, a.bit_length() - b.bit_length() - 1)
    while (b << k) < a:
        k += 1
    return k


def _prepare(model, normalize_model=True):
    if not model.is_normalized:
        if not normalize_model:
            raise PreconditionError("model is not normalized (t_0 != 0)")
        model = normalize(model)
    if not span_check(model):
        raise PreconditionError("translations t_1..t_m do not span R^d")
    return model


def build_candidate_set(model: IFSModel, delta, n: int, budget=None,
                        normalize_model=True) -> CandidateSet:
    """All ``L_{w1,w2}`` (``w1 < w2``, equal contraction) small on ``t``.

    Comparisons against ``delta**n`` are exact.  The diagnostics record
    whether pigeonholing in ``E_k v F`` (with ``2**-k <= delta**n``)
    already forces the set to be nonempty.
    """
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise InvalidInput("delta must lie in (0, 1)")
    if n < 1:
        raise InvalidInput("n must be >= 1")
    model = _prepare(model, normalize_model)
    f = model.field
    eps = delta**n
    level = dyadic_level_for(delta, n)
    cells = set()
    words = 0
    pairs = []
    for ci, cls in enumerate(lambda_classes(model, n, budget)):
        ts = cls.translations
        words += len(ts)
        for t in ts:
            cells.add((ci,) + tuple(f.floor(c * 2**level) for c in t))
        if len(ts) < 2:
            continue
        first = [t[0] for t in ts]
        order = f.sorted_indices(first)
        for a_pos, i in enumerate(order):
            for j in order[a_pos + 1:]:
                if f.sign(eps - (first[j] - first[i])) < 0:
                    break
                if all(f.le_abs(ts[i][l] - ts[j][l], eps) for l in range(1, model.d)):
                    a, b = sorted((cls.words[i], cls.words[j]))
                    pairs.append((a, b))
    pairs.sort()
    fs = [functional_from_words(model, a, b) for a, b in pairs]
    forced = len(cells) < words
    if forced and not fs:
        raise AssertionError("pigeonhole forced a candidate but none was found")
    diag = {"level": level, "words": words, "occupied_cells": len(cells), "forced_nonempty": forced}
    return CandidateSet(f, model.m, n, delta, fs, model, diag)


# -- rank --------------------------------------------------------------------------------

@dataclass
class RankReport:
    rank: int
    rows: list
    vectors: list
    gram: object
    field: object


def gram_rank(S, field=None) -> RankReport:
    """Greedy independent rows: a row joins iff the extended Gram determinant is nonzero.

    ``S`` is a CandidateSet or a list of rows (then ``field`` is required).
    The result is cross-checked against fraction-free elimination.
    """
    if isinstance(S, CandidateSet):
        rows, field = S.matrix, S.field
    else:
        rows = [_exact_row(r) for r in S]
        if field is None:
            from .algebra.field import ScalarField
            field = ScalarField()
    chosen, vecs = [], []
    G = Fraction(1)
    width = len(rows[0]) if rows else 0
    for i, r in enumerate(rows):
        if len(chosen) == width:
            break
        G_new = gram_det(vecs + [r])
        if field.sign(G_new) != 0:
            chosen.append(i)
            vecs.append(r)
            G = G_new
    rr = row_reduction_rank(rows, field)
    if rr != len(chosen):
        raise AssertionError(f"Gram rank {len(chosen)} disagrees with elimination rank {rr}")
    return RankReport(len(chosen), chosen, vecs, G, field)


def projection_residual(report: RankReport, x):
    """``G(rows, x) / G(rows)``: squared distance from ``x`` to the row span."""
    if report.rank < 1:
        raise PreconditionError("projection residual needs rank >= 1")
    f = report.field
    if f.sign(report.gram) == 0:
        raise AssertionError("Gram determinant of independent rows is zero")
    return gram_det(report.vectors + [_exact_row(x)]) / report.gram


# -- Cramer machinery ---------------------------------------------------------------------

def _minor(A, cols, zero=Fraction(0)):
    return determinant([[row[c] for c in cols] for row in A], zero=zero)


def _replaced(cols, k, l):
    return [l if c == k else c for c in cols]


@dataclass
class Reconstruction:
    status: str
    translations: list | None
    rows: list
    columns: list
    pj: object
    conjugated: list | None = None


def _basis_matrix(S, d):
    """Columns ``t_1..t_d`` of the model (identity for synthetic sets)."""
    if S.model is None:
        return None
    f = S.field
    M = [[S.model.t[j + 1][l] for j in range(d)] for l in range(d)]
    if f.sign(determinant(M, zero=Fraction(0))) == 0:
        raise PreconditionError("t_1..t_d are not linearly independent")
    ident = all(f.eq(M[l][j], 1 if l == j else 0) for l in range(d) for j in range(d))
    return None if ident else M


def _first_case(S: CandidateSet, d: int):
    m = S.m
    if not 0 <= d < m:
        raise PreconditionError("need 0 <= d < m")
    rep = gram_rank(S)
    if rep.rank != m - d:
        raise PreconditionError(f"rank {rep.rank} != m - d = {m - d}")
    A = [S.functionals[i].row for i in rep.rows]
    J = list(range(d, m))
    return rep, A, J


def reconstruct_translations(S: CandidateSet, d: int | None = None) -> Reconstruction:
    """Recover ``t_{d+1..m}`` from rank ``m - d`` data by Cramer's rule.

    The first ``d`` translations are taken as the coordinate basis; if the
    model's are not the standard basis the problem is solved in those
    coordinates and mapped back.  Status is ``"inconsistent"`` when the
    column minor on ``{d+1..m}`` vanishes (then it vanishes for every basis
    of the row space).
    """
    if d is None:
        if S.model is None:
            raise InvalidInput("d is required for a synthetic candidate set")
        d = S.model.d
    f = S.field
    rep, A, J = _first_case(S, d)
    M = _basis_matrix(S, d)
    pj = _minor(A, J)
    cols1 = [j + 1 for j in J]
    if f.sign(pj) == 0:
        return Reconstruction("inconsistent", None, rep.rows, cols1, pj)
    conj = [tuple(Fraction(int(l == j)) for l in range(d)) for j in range(d)]
    for k in J:
        conj.append(tuple(-_minor(A, _replaced(J, k, l)) / pj for l in range(d)))
    if M is None:
        ts = conj
    else:
        ts = [tuple(sum((M[r][l] * v[l] for l in range(d)), Fraction(0)) for r in range(d))
              for v in conj]
    zero = (Fraction(0),) * d
    return Reconstruction("ok", [zero] + ts, rep.rows, cols1, pj, [zero] + conj)


def consistency_check(S_n: CandidateSet, S_next: CandidateSet, d: int | None = None) -> bool:
    """Whether the Cramer ratios agree at two depths.

    For each ``k in J`` and ``l <= d`` the polynomial
    ``Q = P_n^{J_kl} P_{n+1}^J - P_{n+1}^{J_kl} P_n^J`` is formed and its
    sign at ``lambda`` certified.
    """
    if d is None:
        model = S_n.model or S_next.model
        if model is None:
            raise InvalidInput("d is required for synthetic candidate sets")
        d = model.d
    f = S_n.field
    if not f.same_as(S_next.field):
        raise InvalidInput("candidate sets over different fields")
    rep1, A1, J = _first_case(S_n, d)
    rep2, A2, _ = _first_case(S_next, d)
    if f.sign(_minor(A1, J)) == 0 or f.sign(_minor(A2, J)) == 0:
        raise PreconditionError("column minor on {d+1..m} vanishes")
    model = S_n.model or S_next.model
    if S_n.has_polys and S_next.has_polys and model is not None:
        nv = S_n.m + 1
        zero = IntPolynomial(nv)
        B1 = [S_n.functionals[i].coefficient_polys for i in rep1.rows]
        B2 = [S_next.functionals[i].coefficient_polys for i in rep2.rows]
        p1, p2 = _minor(B1, J, zero), _minor(B2, J, zero)
        lams = model.lambda_scalars
        for k in J:
            for l in range(d):
                cols = _replaced(J, k, l)
                Q = _minor(B1, cols, zero) * p2 - _minor(B2, cols, zero) * p1
                if certify_sign(Q, lams) != 0:
                    return False
        return True
    p1, p2 = _minor(A1, J), _minor(A2, J)
    for k in J:
        for l in range(d):
            cols = _replaced(J, k, l)
            if f.sign(_minor(A1, cols) * p2 - _minor(A2, cols) * p1) != 0:
                return False
    return True


# -- lifting --------------------------------------------------------------------------------

@dataclass
class CombinationRecord:
    """``t_j = sum_l coefficients[j][l] * t_{basis[l]}`` for ``j = 1..m`` (1-based)."""

    basis: tuple
    coefficients: dict

    def holds_for(self, model: IFSModel) -> bool:
        f = model.field
        for j, c in self.coefficients.items():
            for coord in range(model.d):
                rhs = Fraction(0)
                for l, b in enumerate(self.basis):
                    rhs = rhs + c[l] * model.t[b][coord]
                if not f.eq(model.t[j][coord], rhs):
                    return False
        return True

    def lifted_translations(self, m: int):
        dp = len(self.basis)
        out = [(Fraction(0),) * dp]
        for j in range(1, m + 1):
            out.append(tuple(self.coefficients[j]))
        return out

    @classmethod
    def identity(cls, model: IFSModel) -> "CombinationRecord":
        """Express every ``t_j`` in the first independent ``t``'s (exact solve)."""
        f = model.field
        basis = []
        for j in range(1, model.size):
            trial = [model.t[b] for b in basis] + [model.t[j]]
            if row_reduction_rank(trial, f) == len(trial):
                basis.append(j)
            if len(basis) == model.d:
                break
        if len(basis) < model.d:
            raise PreconditionError("translations do not span R^d")
        A = [[model.t[b][r] for b in basis] for r in range(model.d)]
        coeffs = {j: tuple(solve(A, list(model.t[j]), f)) for j in range(1, model.size)}
        return cls(tuple(basis), coeffs)

    def to_json(self, field):
        return {"basis": list(self.basis),
                "coefficients": {str(j): [field.to_literal(x) for x in c]
                                 for j, c in sorted(self.coefficients.items())}}

    @classmethod
    def from_json(cls, data, field):
        return cls(tuple(int(b) for b in data["basis"]),
                   {int(j): tuple(field.from_literal(x) for x in c)
                    for j, c in data["coefficients"].items()})


@dataclass
class LiftResult:
    translations: list
    columns: list
    basis: list
    pj: object
    record: CombinationRecord
    verified: bool
    model_s: IFSModel | None


def lift_to_higher_dim(S: CandidateSet, r: int | None = None, d: int | None = None) -> LiftResult:
    """Solve ``L(s^l) = 0`` for a rank ``r < m - d`` candidate set.

    The column set ``J`` (``|J| = r``) maximises ``|P^J(lambda)|`` over all
    subsets (ties lexicographic); the complementary columns get the
    standard basis of ``R^(m - r)`` and the columns in ``J`` the Cramer
    ratios, which therefore lie in ``[-1, 1]``.  ``d`` defaults to the
    model's dimension, or 0 for a synthetic set.
    """
    f = S.field
    m = S.m
    if d is None:
        d = S.model.d if S.model is not None else 0
    rep = gram_rank(S)
    if r is None:
        r = rep.rank
    if rep.rank != r:
        raise PreconditionError(f"rank is {rep.rank}, not {r}")
    if not 1 <= r < m - d:
        raise PreconditionError(f"lifting needs 1 <= r < m - d = {m - d}")
    A = [S.functionals[i].row for i in rep.rows]
    best, best_abs = None, None
    for J in combinations(range(m), r):
        v = f.abs(_minor(A, list(J)))
        if f.sign(v) != 0 and (best is None or f.compare(v, best_abs) > 0):
            best, best_abs = list(J), v
    if best is None:
        raise PreconditionError("no admissible column set")
    J = best
    pj = _minor(A, J)
    F = [j for j in range(m) if j not in J]
    dp = len(F)
    s = [None] * m
    for l, j in enumerate(F):
        s[j] = tuple(Fraction(int(i == l)) for i in range(dp))
    for j in J:
        s[j] = tuple(-_minor(A, _replaced(J, j, F[l])) / pj for l in range(dp))
    for L in S.functionals:
        for l in range(dp):
            val = Fraction(0)
            for a, sj in zip(L.row, s):
                val = val + a * sj[l]
            if f.sign(val) != 0:
                raise CertificateError("lifted family violates L(s^l) = 0")
    if not all(f.le_abs(x, 1) for v in s for x in v):
        raise AssertionError("Cramer ratio outside [-1, 1]")
    record = CombinationRecord(tuple(j + 1 for j in F), {j + 1: s[j] for j in range(m)})
    translations = [(Fraction(0),) * dp] + s
    model_s = S.model.with_translations(translations) if S.model is not None else None
    return LiftResult(translations, [j + 1 for j in J], list(record.basis), pj, record,
                      True, model_s)


def transfer_certificate(model_t: IFSModel, model_s: IFSModel, cert, record: CombinationRecord):
    """Carry an overlap of ``model_s`` to ``model_t`` through a combination record."""
    if not verify_certificate(model_s, cert):
        raise CertificateError("certificate does not hold for the lifted model")
    if not record.holds_for(model_t):
        raise CertificateError("combination record does not hold for the target model")
    f = model_s.field
    lifted = record.lifted_translations(model_t.m)
    for j in range(1, model_t.size):
        for a, b in zip(model_s.t[j], lifted[j]):
            if not f.eq(a, b):
                raise CertificateError("combination record does not match the lifted model")
    if not verify_certificate(model_t, cert):
        raise CertificateError("transferred certificate failed verification")
    return cert


# -- pipeline -----------------------------------------------------------------------------

def rank_analysis(model: IFSModel, delta, n: int, budget=None, normalize_model=True) -> dict:
    """Candidate set, rank and, when the rank exceeds ``m - d``, an overlap search."""
    S = build_candidate_set(model, delta, n, budget, normalize_model)
    rep = gram_rank(S)
    out = {"candidates": S, "report": rep, "expected_max": S.m - S.model.d,
           "overlap_search": None}
    if rep.rank > S.m - S.model.d:
        out["overlap_search"] = find_overlap(S.model, n, budget) or "none"
    return out
