"""The ten acceptance criteria, one test each.

Each test records a one-line verdict that the terminal summary prints as
``criterion k: PASS|FAIL``.
"""

import math
import random
import time
from fractions import Fraction
from itertools import product

import sympy

from exactifs import IFSModel
from exactifs.algebra import (AlgebraicScalar, IntPolynomial, ScalarField, SeparationContext,
                              Sign, certify_sign, eval_enclosure, row_reduction_rank,
                              separation_bound)
from exactifs.cli import run
from exactifs.config import parse_config
from exactifs.functionals import (build_candidate_set, consistency_check, gram_rank,
                                  lift_to_higher_dim, projection_residual,
                                  reconstruct_translations, transfer_certificate)
from exactifs.ifs import coefficient_polynomials, compose, rate_stats
from exactifs.measure import convolve, dim_estimate, dim_upper_bound, nu_n
from exactifs.overlaps import delta_n, find_overlap, verify_certificate

from conftest import (ACCEPTANCE, RHO, RHO_LIT, SQRT2_LIT, QRho, oracle_compose, oracle_delta,
                      random_rational_model)


def record(k, ok, text):
    ACCEPTANCE[k] = (bool(ok), text)
    assert ok, text


def corpus():
    """The 20 random rational models shared by criteria 5 and 6."""
    rng = random.Random(2024)
    return [random_rational_model(rng) for _ in range(20)]


# -- 1 ---------------------------------------------------------------------------------

def test_criterion_1_overlap_certification():
    start = time.perf_counter()
    code, rep, _ = run(["overlaps", "--preset", "bernoulli-golden", "--max-depth", "3"])
    elapsed = time.perf_counter() - start
    cert = rep["certificate"]
    model = parse_config(preset="bernoulli-golden")
    # independent check of phi_011 = phi_100 in Q(rho) with rho^2 = 1 - rho
    w1, w2 = tuple(cert["w1"]), tuple(cert["w2"])
    maps = []
    for w in (w1, w2):
        scale, pos = QRho(1), QRho(0)
        for q in w:
            pos = pos + scale * q
            scale = scale * RHO
        maps.append((scale, pos))
    ok = (code == 0 and rep["verified"] and (w1, w2) == ((0, 1, 1), (1, 0, 0))
          and maps[0] == maps[1] and RHO + RHO * RHO == 1 and elapsed < 1.0
          and compose(model, w1) == compose(model, w2))
    record(1, ok, f"golden certificate {w1} ~ {w2}, Q(rho) oracle agrees, {elapsed:.3f} s")


# -- 2 ---------------------------------------------------------------------------------

def test_criterion_2_overlap_gap():
    model = parse_config(preset="doubling")
    exact = all(delta_n(model, n) == Fraction(2, 2**n) for n in range(2, 16))
    lams = [x.rational for x in model.lambda_scalars]
    ts = [tuple(v) for v in model.t]
    brute = all(delta_n(model, n) == oracle_delta(lams, ts, n) for n in range(1, 7))
    start = time.perf_counter()
    d16 = delta_n(model, 16)
    elapsed = time.perf_counter() - start
    ok = exact and brute and d16 == Fraction(1, 2**15) and elapsed < 5.0
    record(2, ok, f"Delta_n = 2^(1-n) for n=2..16, brute force n<=6 agrees, n=16 in {elapsed:.2f} s")


# -- 3 ---------------------------------------------------------------------------------

def test_criterion_3_dimension_estimator():
    start = time.perf_counter()
    doubling = parse_config(preset="doubling")
    ones = [dim_estimate(doubling, n) for n in range(1, 13)]
    gasket = parse_config(preset="gasket-thirds")
    est = dim_estimate(gasket, 10)
    elapsed = time.perf_counter() - start
    ok = all(v == 1.0 for v in ones) and abs(est - 1) <= 0.15 and elapsed < 30.0
    record(3, ok, f"doubling estimate 1.0 for n<=12, gasket n=10 estimate {est:.6f}, {elapsed:.1f} s")


# -- 4 ---------------------------------------------------------------------------------

def test_criterion_4_entropy_deficit():
    model = parse_config(preset="overlap-halves")
    H, chi, beta = rate_stats(model)
    ub = dim_upper_bound(model, 10)
    ok = ub <= 1.10 and abs(H / chi - math.log2(3)) < 1e-12
    record(4, ok, f"overlap-halves upper bound {ub:.4f} at n=10 against H/chi = {H / chi:.4f}")


# -- 5 and 6 -------------------------------------------------------------------------------

def test_criterion_5_convolution_identity():
    failures = 0
    checked = 0
    for model in corpus():
        nus = {n: nu_n(model, n) for n in range(1, 9)}
        for n, k in product(range(1, 5), repeat=2):
            conv = convolve(nus[n], nus[k])
            direct = nus[n + k]
            same = {(a.scale, a.translation): m for a, m in conv.atoms} == \
                   {(a.scale, a.translation): m for a, m in direct.atoms}
            failures += not (same and conv == direct)
            checked += 1
    record(5, failures == 0, f"nu^(n+k) == nu^(n) * nu^(k) exactly in {checked - failures}/{checked} cases")


def test_criterion_6_subadditivity():
    tol = 2.0**-20
    worst = -math.inf
    count = 0
    for model in corpus():
        H = {n: nu_n(model, n).entropy() for n in range(1, 9)}
        for n, k in product(range(1, 5), repeat=2):
            worst = max(worst, H[n + k] - H[n] - H[k])
            count += 1
    record(6, worst <= tol, f"max H(n+k) - H(n) - H(k) = {worst:.3e} over {count} cases")


# -- 7 ---------------------------------------------------------------------------------

def _sympy_rem_zero(coeffs):
    x = sympy.Symbol("x")
    P = sympy.Poly(list(reversed(coeffs)), x)
    return sympy.rem(P, sympy.Poly(x**2 + x - 1, x)).is_zero


def _random_p18(rng):
    """Half uniform members of P(1, 8), half multiples of the minimal polynomial."""
    if rng.random() < 0.5:
        return [rng.randint(-1, 1) for _ in range(8)]
    while True:
        q = [rng.randint(-1, 1) for _ in range(6)]
        coeffs = [0] * 8
        for i, c in enumerate(q):
            for j, e in enumerate((-1, 1, 1)):
                coeffs[i + j] += c * e
        if all(-1 <= c <= 1 for c in coeffs):
            return coeffs


def test_criterion_7_separation_soundness():
    rho = AlgebraicScalar(minpoly=[-1, 1, 1], interval=("1/2", "1"))
    bound = separation_bound(SeparationContext.for_scalars([rho]), 1, 8)
    rng = random.Random(77)
    false_zero = false_nonzero = below = zeros = 0

    def check(coeffs, oracle_zero):
        nonlocal false_zero, false_nonzero, below, zeros
        P = IntPolynomial(1, {(i,): c for i, c in enumerate(coeffs) if c})
        assert P.in_class(1, 8)
        s = certify_sign(P, [rho])
        zeros += oracle_zero
        if s == Sign.ZERO and not oracle_zero:
            false_zero += 1
        if s != Sign.ZERO and oracle_zero:
            false_nonzero += 1
        if s != Sign.ZERO:
            lo, hi = eval_enclosure(P, [rho], bound / 4)
            if min(abs(lo), abs(hi)) < bound or lo * hi <= 0:
                below += 1

    for _ in range(1000):
        coeffs = _random_p18(rng)
        check(coeffs, _sympy_rem_zero(coeffs))
    random_zeros = zeros
    # every member of P(1, 8), against exact arithmetic in Q(rho)
    for coeffs in product((-1, 0, 1), repeat=8):
        v, power = QRho(0), QRho(1)
        for c in coeffs:
            v, power = v + power * c, power * RHO
        check(list(coeffs), v == QRho(0))
    ok = false_zero == 0 and false_nonzero == 0 and below == 0 and random_zeros > 0
    record(7, ok, f"1000 random + all 6561 in P(1,8): {false_zero} false zeros, {false_nonzero} "
                  f"false nonzeros, {below} below the bound; {random_zeros} random zeros")


# -- 8 ---------------------------------------------------------------------------------

def test_criterion_8_functional_correctness():
    rng = random.Random(8)
    bad = 0
    for _ in range(1000):
        m = rng.randint(1, 3)
        d = rng.randint(1, 2)
        lams = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 4), rng.randint(5, 9)) for _ in range(m + 1)]
        ts = [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(d)) for _ in range(m + 1)]
        n = rng.randint(1, 8)
        w1 = tuple(rng.randrange(m + 1) for _ in range(n))
        w2 = tuple(rng.randrange(m + 1) for _ in range(n))
        polys = coefficient_polynomials(w1, w2, m)
        values = [P.evaluate(lams, one=Fraction(1)) for P in polys]
        lhs = tuple(sum(v * t[l] for v, t in zip(values, ts)) for l in range(d))
        a, b = oracle_compose(lams, ts, w1)[1], oracle_compose(lams, ts, w2)[1]
        rhs = tuple(x - y for x, y in zip(a, b))
        if lhs != rhs or not all(P.in_class(1, n) for P in polys):
            bad += 1
    record(8, bad == 0, f"sum_j P^j(lambda) t_j == phi_w1(0) - phi_w2(0) in {1000 - bad}/1000 pairs")


# -- 9 ---------------------------------------------------------------------------------

def _random_matrix(rng):
    r, c = rng.randint(1, 8), rng.randint(1, 8)
    k = rng.randint(0, min(r, c))
    B = [[Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(k)] for _ in range(r)]
    C = [[Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(c)] for _ in range(k)]
    return [[sum((B[i][t] * C[t][j] for t in range(k)), Fraction(0)) for j in range(c)]
            for i in range(r)]


def test_criterion_9_rank_machinery():
    rng = random.Random(9)
    K = ScalarField()
    rank_bad = resid_bad = resid_checked = 0
    for _ in range(100):
        M = _random_matrix(rng)
        rep = gram_rank(M, K)
        true_rank = sympy.Matrix(M).rank()
        rank_bad += not (rep.rank == row_reduction_rank(M, K) == true_rank)
        if rep.rank == 0:
            continue
        c = len(M[0])
        coef = [Fraction(rng.randint(-3, 3)) for _ in rep.vectors]
        inside = [sum((a * v[j] for a, v in zip(coef, rep.vectors)), Fraction(0)) for j in range(c)]
        outside = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(c)]
        for x in (inside, outside):
            member = sympy.Matrix(M + [x]).rank() == true_rank
            r = projection_residual(rep, x)
            resid_bad += (r == 0) != member or r < 0
            resid_checked += 1
    ok = rank_bad == 0 and resid_bad == 0
    record(9, ok, f"rank agrees on {100 - rank_bad}/100 matrices; residual zero iff in span "
                  f"on {resid_checked - resid_bad}/{resid_checked} vectors")


# -- 10 -----------------------------------------------------------------------------------

def _golden_sum():
    K = ScalarField([RHO_LIT] * 3)
    return IFSModel([RHO_LIT] * 3, [0, 1, 1 + K.gen(0)], field=K)


def reconstruction_plants():
    """``(name, model, n, delta)`` with exact relations of rank ``m - d``."""
    return [
        ("halves", IFSModel(["1/2"] * 3, [0, 1, "1/2"]), 2, Fraction(1, 3)),
        ("halves, scaled basis", IFSModel(["1/2"] * 3, [0, 3, "3/2"]), 2, Fraction(1, 2)),
        ("thirds", IFSModel(["1/3"] * 3, [0, 1, "1/3"]), 2, Fraction(1, 4)),
        ("mixed contractions", IFSModel(["1/2", "1/4", "1/2"], [0, 1, "2/3"]), 2, Fraction(1, 3)),
        ("golden", IFSModel([RHO_LIT] * 3, [0, 1, RHO_LIT]), 2, Fraction(1, 3)),
        ("golden, t_2 = 1 + rho", _golden_sum(), 2, Fraction(1, 3)),
        ("four maps", IFSModel(["1/2"] * 4, [0, 1, "1/2", "1/4"]), 2, Fraction(1, 3)),
        ("plane", IFSModel(["1/2"] * 4, [[0, 0], [1, 0], [0, 1], ["1/2", "1/4"]]), 3, Fraction(1, 3)),
        ("plane, skew basis", IFSModel(["1/2"] * 4, [[0, 0], [1, 1], [1, -1], ["1/2", "1/2"]]),
         2, Fraction(1, 3)),
        ("plane, golden", IFSModel([RHO_LIT] * 4, [[0, 0], [1, 0], [0, 1], [RHO_LIT, 0]]),
         2, Fraction(1, 3)),
    ]


def lift_plants():
    K = ScalarField(["1/2"] * 5 + [SQRT2_LIT])
    s2 = K.gen(5)
    return [
        ("sqrt2", IFSModel(["1/2"] * 4, [0, 1, SQRT2_LIT, "1/2"], constants=[SQRT2_LIT])),
        ("golden and sqrt2", IFSModel([RHO_LIT] * 4, [0, 1, SQRT2_LIT, RHO_LIT],
                                      constants=[SQRT2_LIT])),
        ("five maps", IFSModel(["1/2"] * 5, [0, 1, s2, "1/2", s2 / 2], field=K)),
    ]


def test_criterion_10_reconstruction_round_trip():
    failures = []
    for name, model, n, delta in reconstruction_plants():
        S = build_candidate_set(model, delta, n)
        S_next = build_candidate_set(model, delta, n + 1)
        f = model.field
        rec = reconstruct_translations(S)
        exact = rec.status == "ok" and all(
            f.eq(a, b) for u, v in zip(rec.translations, model.t) for a, b in zip(u, v))
        if not exact or not consistency_check(S, S_next):
            failures.append(name)
    for name, model in lift_plants():
        S = build_candidate_set(model, Fraction(1, 8), 2)
        res = lift_to_higher_dim(S)
        f = model.field
        vanish = all(
            f.sign(sum((a * s[l] for a, s in zip(L.row, res.translations[1:])), Fraction(0))) == 0
            for L in S.functionals for l in range(len(res.basis)))
        cert = find_overlap(res.model_s, 2)
        try:
            back = transfer_certificate(model, res.model_s, cert, res.record)
            moved = verify_certificate(model, back)
        except Exception:
            moved = False
        if not (res.verified and vanish and moved):
            failures.append(name)
    total = len(reconstruction_plants()) + len(lift_plants())
    record(10, not failures, f"{total - len(failures)}/{total} plants round-trip"
                             + (f"; failed: {', '.join(failures)}" if failures else
                                " (10 reconstructions, 3 lifts)"))
