import math

import numpy as np
import pytest

from pcretract.core import NormBand, NormKind, Tolerance, norm, piece
from pcretract.constructions import (
    build_construction,
    open_ball_retraction,
    sphere_retraction,
)
from pcretract.fields import parse_field
from pcretract.verification import (
    CORRUPTIONS,
    FAIL,
    INCONCLUSIVE,
    PASS,
    Sampler,
    borsuk_discontinuity_demo,
    check_cover,
    check_norm_identity_open_ball,
    check_operator_properties,
    check_piece_continuity,
    check_retraction_identity,
    codomain_sampler,
    corrupt_halved,
    corrupt_identity_rule,
    corrupt_shrinking_witness,
    corrupt_understated_lipschitz,
    domain_sampler,
    lipschitz_oracle,
    negated_operator,
    run_suite,
)

P2 = NormKind(2.0)


@pytest.fixture
def sphere():
    return sphere_retraction(2, P2)


@pytest.fixture
def open_ball():
    return open_ball_retraction(2, P2)


class TestSampler:
    def test_determinism(self):
        a = Sampler(42, "ball", dim=3, hi=2.0).draw(1000)
        b = Sampler(42, "ball", dim=3, hi=2.0).draw(1000)
        assert np.array_equal(a, b)

    def test_nesting(self):
        small = Sampler(7, "ball", dim=2, hi=3.0).draw(100)
        big = Sampler(7, "ball", dim=2, hi=3.0).draw(1000)
        assert np.array_equal(big[:100], small)
        small_s = Sampler(7, "sphere", dim=4).draw(50)
        big_s = Sampler(7, "sphere", dim=4).draw(500)
        assert np.array_equal(big_s[:50], small_s)

    def test_sphere_strategy_unit_norm(self):
        pts = Sampler(1, "sphere", dim=3, kind=NormKind(1.0)).draw(500)
        assert np.max(np.abs(norm(pts, NormKind(1.0)) - 1.0)) <= 1e-12

    def test_ball_radius_range(self):
        pts = Sampler(2, "ball", dim=2, lo=1.0, hi=2.0).draw(500)
        r = norm(pts, P2)
        assert np.all((r >= 1.0 - 1e-12) & (r <= 2.0 + 1e-12))

    def test_descriptor_strategy(self):
        band = NormBand(P2, 0.5, 1.5, 2)
        pts = Sampler(3, "set", descriptor=band).draw(300)
        assert np.all(band.contains(pts, 1e-9))

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            Sampler(0, "halton", dim=2).draw(10)


class TestIdentityCheck:
    def test_sphere_passes(self, sphere):
        r = check_retraction_identity(sphere, n=10_000, tol=1e-12, seed=1)
        assert r.status == PASS and r.max_violation <= 1e-12

    def test_fractional_exact_on_retract(self):
        m = build_construction("fractional")
        r = check_retraction_identity(m, n=5000, tol=0.0, seed=1)
        assert r.status == PASS and r.max_violation == 0.0

    def test_negative_control_halved(self, sphere):
        r = check_retraction_identity(corrupt_halved(sphere), n=1000, seed=1)
        assert r.status == FAIL
        assert r.max_violation == pytest.approx(0.5, abs=1e-12)
        assert len(r.witness_points) > 0


class TestCoverCheck:
    def test_sphere_passes_including_origin(self, sphere):
        r = check_cover(sphere, n=5000, seed=2, extra_points=[np.zeros(2)])
        assert r.status == PASS

    def test_paper_witness_fails_exactly_at_origin(self):
        m = sphere_retraction(2, P2, paper_witness=True)
        r = check_cover(m, n=2000, seed=2, extra_points=[np.zeros(2)])
        assert r.status == FAIL
        assert r.witness_points == ((0.0, 0.0),)

    def test_negative_control_shrinking_witness(self, sphere):
        r = check_cover(corrupt_shrinking_witness(sphere), n=500, seed=2)
        assert r.status == FAIL

    def test_open_ball_cover(self, open_ball):
        r = check_cover(open_ball, n=5000, seed=3, extra_points=[np.zeros(2)])
        assert r.status == PASS


class TestContinuityCheck:
    def test_sphere_band_within_declared_bound(self, sphere):
        r = check_piece_continuity(sphere, 2, pairs=5000, seed=4)
        assert r.status == PASS
        assert r.max_violation <= 4.0

    def test_fractional_ratio_near_one(self):
        m = build_construction("fractional")
        r = check_piece_continuity(m, 1, pairs=5000, seed=4)
        assert r.status == PASS
        assert r.max_violation <= 1.0 + 1e-9

    def test_open_ball_inner_piece_isometric(self, open_ball):
        r = check_piece_continuity(open_ball, 1, pairs=5000, seed=4)
        assert r.status == PASS

    def test_degenerate_piece_inconclusive(self, open_ball):
        # Piece 0 is the origin alone: no usable pairs.
        r = check_piece_continuity(open_ball, 0, pairs=500, seed=4)
        assert r.status == INCONCLUSIVE

    def test_negative_control_understated(self, sphere):
        r = check_piece_continuity(corrupt_understated_lipschitz(sphere), 2, pairs=2000, seed=4)
        assert r.status == FAIL


class TestLipschitzOracle:
    def test_sphere_band_half(self, sphere):
        v = lipschitz_oracle(sphere, 2, pairs=200_000, seed=5)
        assert 1.9 <= v <= 4.0

    def test_fractional_slope_one(self):
        m = build_construction("fractional")
        v = lipschitz_oracle(m, 1, pairs=50_000, seed=5)
        assert v <= 1.0 + 1e-9

    def test_open_ball_band_declared_dominates(self, open_ball):
        band = NormBand(P2, 1.0, 1.5, 2)
        v = lipschitz_oracle(open_ball, band, pairs=50_000, seed=5)
        assert math.isfinite(v)
        assert v <= open_ball.piece_lipschitz(1)

    def test_declared_dominate_oracle_all_constructions(self):
        for cid in ("fractional", "glue", "sphere", "open-ball", "extend"):
            m = build_construction(cid, 2, P2)
            for k in range(1, 5):
                lip = m.piece_lipschitz(k)
                if lip is None:
                    continue
                v = lipschitz_oracle(m, k, pairs=20_000, seed=6)
                assert v <= lip * (1.0 + 1e-6), (cid, k, v, lip)


class TestNormIdentity:
    def test_passes(self, open_ball):
        r = check_norm_identity_open_ball(open_ball, n=50_000, tol=1e-12, seed=7)
        assert r.status == PASS

    def test_integer_norm_maps_to_origin(self, open_ball):
        x = np.array([3.0, 0.0])
        assert np.array_equal(open_ball(x), [0.0, 0.0])

    def test_negative_control_identity_rule(self, open_ball):
        bad = corrupt_identity_rule(open_ball)
        r = check_norm_identity_open_ball(bad, n=5000, seed=7)
        assert r.status == FAIL
        # At ||x|| = 2.5 the defect of the identity map is exactly 2.
        pts = np.array([[2.5, 0.0]])
        rn = norm(bad.apply(pts), P2)
        assert abs(rn[0] - 0.5) == pytest.approx(2.0)


class TestOperatorChecks:
    @pytest.fixture
    def catalog(self, sphere):
        return [
            parse_field(e, 2, sphere.codomain, 1.0)
            for e in ("const:1", "coord:0", "coord:1", "prod:0,1", "sin:0")
        ]

    def test_all_pass(self, sphere, catalog):
        reps = check_operator_properties(sphere, catalog, n=5000, iso_n=20_000, seed=8)
        names = [r.check_name for r in reps]
        assert names == [
            "operator-linearity",
            "operator-positivity",
            "operator-extension",
            "operator-isometry",
        ]
        assert all(r.status == PASS for r in reps)
        assert reps[0].max_violation <= 1e-12
        assert reps[1].max_violation == 0.0
        assert reps[2].max_violation <= 1e-12
        assert reps[3].max_violation <= 1e-9

    def test_negative_control_negated_operator(self, sphere, catalog):
        reps = check_operator_properties(
            sphere, catalog, n=2000, iso_n=2000, seed=8, operator=negated_operator
        )
        by_name = {r.check_name: r for r in reps}
        assert by_name["operator-positivity"].status == FAIL
        assert by_name["operator-extension"].status == FAIL

    def test_negative_control_halved_phi(self, sphere, catalog):
        reps = check_operator_properties(corrupt_halved(sphere), catalog, n=2000, iso_n=2000, seed=8)
        by_name = {r.check_name: r for r in reps}
        assert by_name["operator-extension"].status == FAIL


class TestBorsukDemo:
    def test_constant_output_gap(self, sphere):
        rows = borsuk_discontinuity_demo(sphere, [1.0, 0.0], [0.0, 1.0], depth=12)
        assert len(rows) == 12
        root2 = math.sqrt(2.0)
        for row in rows:
            assert row.image_u == (1.0, 0.0)
            assert row.image_v == (0.0, 1.0)
            assert abs(row.output_gap - root2) <= 1e-15
        assert rows[-1].input_gap <= 2e-12

    def test_rejects_equal_directions(self, sphere):
        with pytest.raises(ValueError):
            borsuk_discontinuity_demo(sphere, [1.0, 0.0], [1.0, 0.0])

    def test_rejects_non_unit(self, sphere):
        with pytest.raises(ValueError):
            borsuk_discontinuity_demo(sphere, [2.0, 0.0], [0.0, 1.0])

    def test_rejects_zero_depth(self, sphere):
        with pytest.raises(ValueError):
            borsuk_discontinuity_demo(sphere, [1.0, 0.0], [0.0, 1.0], depth=0)


class TestSuiteAndReports:
    def test_suite_deterministic_bitwise(self, sphere):
        a = run_suite(sphere, seed=7, samples=1000, pairs=500)
        b = run_suite(sphere, seed=7, samples=1000, pairs=500)
        assert [r.to_json_dict() for r in a] == [r.to_json_dict() for r in b]

    def test_report_json_schema(self, sphere):
        r = check_retraction_identity(sphere, n=100, seed=9)
        doc = r.to_json_dict()
        assert set(doc) == {"check", "status", "samples", "max_violation", "tolerance", "witness_points"}
        assert doc["status"] in ("pass", "fail", "inconclusive")

    def test_witness_points_capped_at_ten(self, sphere):
        r = check_retraction_identity(corrupt_halved(sphere), n=5000, seed=9)
        assert 0 < len(r.witness_points) <= 10

    def test_corruption_catalog_documented(self):
        assert set(CORRUPTIONS) == {
            "halved",
            "identity-rule",
            "shrinking-witness",
            "understated-lipschitz",
        }

    def test_default_samplers(self, sphere):
        assert domain_sampler(sphere, 0).strategy == "ball"
        assert codomain_sampler(sphere.codomain, 0).strategy == "sphere"
        m = build_construction("fractional")
        assert domain_sampler(m, 0).strategy == "interval"
        assert codomain_sampler(m.codomain, 0).strategy == "interval"
