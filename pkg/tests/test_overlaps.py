import json
import random
from fractions import Fraction
from itertools import product

import pytest

from exactifs import IFSModel
from exactifs.errors import InvalidInput
from exactifs.ifs import compose
from exactifs.overlaps import (UNDEFINED, OverlapCertificate, decay_profile, delta_n,
                               find_overlap, lambda_classes, verify_certificate)

from conftest import RHO_LIT, oracle_compose, oracle_delta, random_rational_model


def brute_first_overlap(model, n_max):
    lams = [x.rational for x in model.lambda_scalars]
    ts = [tuple(v) for v in model.t]
    for n in range(1, n_max + 1):
        words = list(product(range(model.size), repeat=n))
        maps = {w: oracle_compose(lams, ts, w) for w in words}
        for i, a in enumerate(words):
            for b in words[i + 1:]:
                if maps[a] == maps[b]:
                    return n, a, b
    return None


class TestLambdaClasses:
    def test_homogeneous_has_one_class(self, halves):
        cls = lambda_classes(halves, 3)
        assert len(cls) == 1 and len(cls[0]) == 27

    def test_multi_index_merge(self):
        # 1/4 * 1/4 == 1/2 * 1/8 merges two multi-indices at depth 2
        model = IFSModel(["1/4", "1/2", "1/8"], [0, 1, 2])
        classes = lambda_classes(model, 2)
        merged = [c for c in classes if c.value == Fraction(1, 16)]
        assert merged[0].alphas == [(0, 1, 1), (2, 0, 0)]
        assert merged[0].words == [(0, 0), (1, 2), (2, 1)]
        assert len(classes) == 5

    def test_classes_cover_words_and_agree_with_oracle(self):
        rng = random.Random(8)
        for _ in range(20):
            model = random_rational_model(rng)
            lams = [x.rational for x in model.lambda_scalars]
            for n in (1, 2, 3):
                classes = lambda_classes(model, n)
                seen = [w for c in classes for w in c.words]
                assert sorted(seen) == list(product(range(model.size), repeat=n))
                for c in classes:
                    for w in c.words:
                        assert oracle_compose(lams, [(0,)] * model.size, w)[0] == c.value


class TestDelta:
    def test_doubling(self, doubling):
        for n in range(2, 9):
            assert delta_n(doubling, n) == Fraction(2, 2**n)

    def test_depth_one_distinct_contractions_undefined(self):
        assert delta_n(IFSModel(["1/2", "1/3"], [0, 1]), 1) is UNDEFINED

    def test_exact_overlap_gives_zero(self, halves, golden):
        assert delta_n(halves, 2) == 0
        assert golden.field.sign(delta_n(golden, 3)) == 0
        assert golden.field.sign(delta_n(golden, 2)) > 0

    def test_against_brute_force(self):
        rng = random.Random(9)
        for _ in range(30):
            model = random_rational_model(rng)
            lams = [x.rational for x in model.lambda_scalars]
            ts = [tuple(v) for v in model.t]
            for n in (1, 2, 3):
                expected = oracle_delta(lams, ts, n)
                got = delta_n(model, n)
                assert (got is UNDEFINED) == (expected is None)
                if expected is not None:
                    assert got == expected

    def test_decay_profile(self, doubling, halves):
        prof = decay_profile(doubling, 6)
        assert [n for n, _ in prof.entries] == [1, 2, 3, 4, 5, 6]
        assert prof.entries[-1][1] == pytest.approx(-5 / 6)
        assert prof.nonincreasing and not prof.superexponential_hint
        prof = decay_profile(halves, 3)
        assert prof.superexponential_hint
        assert json.dumps(prof.as_dict(), default=str)
        with pytest.raises(InvalidInput):
            decay_profile(doubling, 1)


class TestCertificates:
    def test_golden(self, golden):
        cert = find_overlap(golden, 3)
        assert (cert.n, cert.w1, cert.w2) == (3, (0, 1, 1), (1, 0, 0))
        assert verify_certificate(golden, cert)
        assert find_overlap(golden, 2) is None

    def test_halves(self, halves):
        cert = find_overlap(halves, 2)
        assert (cert.w1, cert.w2) == ((0, 1), (2, 0))

    def test_doubling_is_free(self, doubling):
        assert find_overlap(doubling, 8) is None

    def test_json_round_trip(self, golden):
        cert = find_overlap(golden, 3)
        back = OverlapCertificate.from_json(json.dumps(cert.to_json()))
        assert back.w1 == cert.w1 and back.scale_identity == cert.scale_identity
        assert verify_certificate(golden, back)

    def test_tampered_certificates(self, golden):
        cert = find_overlap(golden, 3)
        data = cert.to_json()
        data["w2"] = [1, 0, 1]
        assert not verify_certificate(golden, OverlapCertificate.from_json(data))
        # a consistent but false pair of words also fails
        fake = OverlapCertificate.from_words(1, (0, 1, 0), (1, 0, 0))
        assert not verify_certificate(golden, fake)
        same = OverlapCertificate.from_words(1, (0, 1), (0, 1))
        assert not verify_certificate(golden, same)
        data = cert.to_json()
        data["translation_polynomials"][0] = {}
        assert not verify_certificate(golden, OverlapCertificate.from_json(data))

    def test_invalid_certificates(self, golden):
        with pytest.raises(InvalidInput):
            verify_certificate(golden, OverlapCertificate(3, (0, 1, 1), (1, 0), None, []))
        with pytest.raises(InvalidInput):
            verify_certificate(golden, OverlapCertificate.from_words(2, (0, 2), (1, 0)))
        with pytest.raises(InvalidInput):
            OverlapCertificate.from_json({"w1": [0]})

    def test_find_matches_brute_force(self):
        rng = random.Random(10)
        for _ in range(25):
            model = random_rational_model(rng, d=1)
            expected = brute_first_overlap(model, 3)
            cert = find_overlap(model, 3)
            if expected is None:
                assert cert is None
            else:
                assert (cert.n, cert.w1, cert.w2) == expected

    def test_planted_two_dimensional(self):
        # phi_0 phi_1 = phi_2 phi_0 with lambda = 1/2 and t_2 = t_1 / 2
        model = IFSModel(["1/2"] * 3, [[0, 0], [1, 1], ["1/2", "1/2"]])
        cert = find_overlap(model, 2)
        assert cert is not None and verify_certificate(model, cert)
        assert compose(model, cert.w1) == compose(model, cert.w2)

    def test_golden_certificate_in_three_maps(self):
        model = IFSModel([RHO_LIT] * 3, [0, 1, 2])
        cert = find_overlap(model, 3)
        assert cert is not None and verify_certificate(model, cert)
