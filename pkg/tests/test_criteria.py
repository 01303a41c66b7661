"""Polygonality detection, Klee-style testers, certificates, and drift."""

import math
import random
from fractions import Fraction as F

import pytest

from helpers import CUBE_VERTICES, centered_polytope

from polysect.bodies import (
    SectionSample,
    make_ball,
    make_ellipsoid,
    wrap_polytope,
)
from polysect.cones import ConeError
from polysect.criteria import (
    CriterionError,
    DriftConfig,
    default_normal_family,
    drift_config_from_geometry,
    drift_inequality_eval,
    epsilon_certificate,
    klee_projection_test,
    klee_section_test,
    no_extreme_in_cone,
    polygonality_detect,
    sphere_apexes,
    visual_cone_test,
)
from polysect.polytope import convex_hull

OCTA_VERTICES = [
    (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1),
]


def cube():
    return convex_hull(CUBE_VERTICES)


def polar_sample(radius_fn, n):
    pts = []
    angles = []
    for i in range(n):
        theta = 2 * math.pi * i / n
        r = radius_fn(theta)
        pts.append((r * math.cos(theta), r * math.sin(theta)))
        angles.append(theta)
    return SectionSample(None, tuple(pts), tuple(angles))


def square_radius(theta):
    c, s = math.cos(theta), math.sin(theta)
    return 1.0 / max(abs(c), abs(s))


def hexagon_radius(theta):
    # support-line distance of a regular hexagon with inradius 1
    best = None
    for k in range(6):
        nx, ny = math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)
        d = nx * math.cos(theta) + ny * math.sin(theta)
        if d > 1e-12:
            r = 1.0 / d
            best = r if best is None else min(best, r)
    return best


class TestPolygonalityDetect:
    def test_circle_is_curved_with_frozen_witness_area(self):
        verdict = polygonality_detect(polar_sample(lambda t: 1.0, 32))
        assert verdict.kind == "curved"
        assert verdict.witness_triple is not None
        # consecutive-triple area on the unit circle: sin(step)*(1-cos(step))
        step = 2 * math.pi / 32
        expected = math.sin(step) * (1 - math.cos(step))
        assert abs(verdict.witness_area - expected) < 1e-9
        assert abs(verdict.witness_area - 0.0037486) < 1e-6

    def test_square_has_four_edges(self):
        verdict = polygonality_detect(polar_sample(square_radius, 32))
        assert verdict.kind == "polygon"
        assert verdict.edges == 4

    def test_hexagon_has_six_edges(self):
        verdict = polygonality_detect(polar_sample(hexagon_radius, 48))
        assert verdict.kind == "polygon"
        assert verdict.edges == 6

    def test_repeated_points_are_tolerated(self):
        pts = [(1.0, 0.0)] * 4 + [(0.0, 1.0)] * 4 + [(-1.0, -1.0)] * 4
        sample = SectionSample(None, tuple(pts), tuple(range(12)))
        verdict = polygonality_detect(sample)
        assert verdict.kind == "polygon"

    def test_tau_scales_with_diameter(self):
        # a scaled circle stays curved: tau is relative, not absolute
        verdict = polygonality_detect(polar_sample(lambda t: 1000.0, 32))
        assert verdict.kind == "curved"

    def test_loose_tau_accepts_circle(self):
        verdict = polygonality_detect(polar_sample(lambda t: 1.0, 32), tau=0.5)
        assert verdict.kind == "polygon"


class TestKleeSectionTest:
    def test_cube_is_consistent(self):
        rep = klee_section_test(cube(), 10, seed=4)
        assert rep.criterion == "K1"
        assert rep.verdict == "polytope-consistent"
        assert rep.exact
        assert rep.samples_used == 10
        assert rep.witness is None

    def test_ball_rejected_on_first_flat(self):
        rep = klee_section_test(make_ball((0, 0, 0), 1), 5, seed=7)
        assert rep.verdict == "non-polytope"
        assert rep.samples_used == 1
        assert rep.witness is not None
        assert rep.witness.kind == "section"
        assert rep.witness.reverified

    def test_ellipsoid_rejected(self):
        rep = klee_section_test(make_ellipsoid((0, 0, 0), (2, 1, 1)), 5, seed=3)
        assert rep.verdict == "non-polytope"
        assert rep.witness.reverified

    def test_wrapped_polytope_routes_exact(self):
        rep = klee_section_test(wrap_polytope(cube()), 6, seed=1)
        assert rep.exact
        assert rep.verdict == "polytope-consistent"

    def test_delta_marks_non_central(self):
        rep = klee_section_test(cube(), 6, seed=2, delta=0.25)
        assert rep.criterion == "T1.1"
        assert rep.verdict == "polytope-consistent"

    def test_callable_delta(self):
        rep = klee_section_test(cube(), 6, seed=2, delta=lambda u: 0.1)
        assert rep.criterion == "T1.1"
        assert rep.verdict == "polytope-consistent"

    def test_four_dim_polytope(self):
        rng = random.Random(11)
        body = centered_polytope(rng, 4, 8)
        rep = klee_section_test(body, 4, seed=5)
        assert rep.verdict == "polytope-consistent"

    def test_three_dim_sections_of_four_dim_body(self):
        rng = random.Random(12)
        body = centered_polytope(rng, 4, 8)
        rep = klee_section_test(body, 3, seed=5, k=3)
        assert rep.verdict == "polytope-consistent"

    def test_k_bounds_enforced(self):
        with pytest.raises(CriterionError):
            klee_section_test(cube(), 3, k=1)
        with pytest.raises(CriterionError):
            klee_section_test(cube(), 3, k=3)

    def test_oracle_needs_plane_sections_in_three_dim(self):
        # sampled sections only work for 2-flats of 3-dim bodies
        with pytest.raises(CriterionError):
            klee_section_test(make_ball((0, 0, 0, 0), 1), 3)

    def test_negative_budget_rejected(self):
        with pytest.raises(CriterionError):
            klee_section_test(cube(), -1)

    def test_coverage_notes_mention_missed_flats(self):
        # a tiny off-center body: many random central flats miss it entirely
        small = convex_hull(
            [(F(3) + F(s1, 10), F(3) + F(s2, 10), F(3) + F(s3, 10))
             for s1 in (-1, 1) for s2 in (-1, 1) for s3 in (-1, 1)]
        )
        rep = klee_section_test(small, 8, seed=0)
        assert rep.verdict == "polytope-consistent"
        assert any("miss" in n for n in rep.notes)


class TestKleeProjectionTest:
    def test_cube_is_consistent(self):
        rep = klee_projection_test(cube(), 10, seed=4)
        assert rep.criterion == "K2"
        assert rep.verdict == "polytope-consistent"
        assert rep.exact

    def test_ellipsoid_rejected_on_first_subspace(self):
        rep = klee_projection_test(make_ellipsoid((0, 0, 0), (2, 1, 1)), 5, seed=3)
        assert rep.verdict == "non-polytope"
        assert rep.samples_used == 1
        assert rep.witness.kind == "projection"
        assert rep.witness.reverified

    def test_ball_rejected(self):
        rep = klee_projection_test(make_ball((0, 0, 0), 1), 4, seed=8)
        assert rep.verdict == "non-polytope"

    def test_wrapped_polytope_exact(self):
        rep = klee_projection_test(wrap_polytope(cube()), 5, seed=2)
        assert rep.exact
        assert rep.verdict == "polytope-consistent"

    def test_four_dim_exact(self):
        rng = random.Random(21)
        body = centered_polytope(rng, 4, 8)
        rep = klee_projection_test(body, 4, seed=6)
        assert rep.verdict == "polytope-consistent"

    def test_random_bodies_consistent(self):
        for seed in range(3):
            rng = random.Random(seed)
            body = centered_polytope(rng, 3, 10)
            rep = klee_projection_test(body, 6, seed=seed)
            assert rep.verdict == "polytope-consistent"


class TestVisualConeTest:
    def test_cube_apexes_give_exact_cones(self):
        rep = visual_cone_test(cube(), [(0, 0, 3), (3, 0, 0)], seed=1)
        assert rep.criterion == "T1.2"
        assert rep.verdict == "polytope-consistent"
        assert rep.exact
        assert any("exact cone" in n for n in rep.notes)

    def test_sphere_source_on_cube(self):
        rep = visual_cone_test(
            cube(), ("sphere", (0.0, 0.0, 0.0), 6.0), seed=2, budget=4
        )
        assert rep.verdict == "polytope-consistent"
        assert rep.samples_used == 4

    def test_ball_oracle_rejected(self):
        rep = visual_cone_test(
            make_ball((0, 0, 0), 1),
            ("sphere", (0.0, 0.0, 0.0), 4.0),
            seed=0,
            budget=1,
            sections_per_apex=3,
        )
        assert rep.verdict == "non-polytope"
        assert rep.witness is not None
        assert rep.witness.kind == "visual-cone"
        assert rep.witness.apex is not None

    def test_apex_inside_exact_body_raises(self):
        with pytest.raises(ConeError):
            visual_cone_test(cube(), [(0, 0, 0)], seed=0)

    def test_sphere_apexes_deterministic(self):
        rng1, rng2 = random.Random(5), random.Random(5)
        a = sphere_apexes((0.0, 0.0, 0.0), 4.0, 6, rng1)
        b = sphere_apexes((0.0, 0.0, 0.0), 4.0, 6, rng2)
        assert a == b
        for apex in a:
            assert abs(math.dist(apex, (0, 0, 0)) - 4.0) < 1e-9


class TestEpsilonCertificate:
    def test_cube_diagonal_interior_crossing(self):
        body = cube()
        cert = epsilon_certificate(body, (1, 1, 1), (-1, -1, -1))
        assert cert.case == "interior-crossing"
        assert cert.radius == 1.0
        expected = 0.5 * math.asin(1 / math.sqrt(3))
        assert abs(cert.epsilon - expected) < 1e-12
        assert cert.epsilon == 0.30773985433519374

    def test_cube_edge_boundary_segment(self):
        body = cube()
        cert = epsilon_certificate(body, (1, 1, 1), (1, 1, -1))
        assert cert.case == "boundary-segment"
        assert cert.distance == 1.0
        assert set(cert.vertex_set) == {(1, -1, 0), (-1, 1, 0)}
        angle = math.acos(1 / math.sqrt(5))
        assert any(abs(b - angle) < 1e-9 for b in cert.bound_branches)
        assert cert.epsilon == 0.5

    def test_facet_interior_segment(self):
        body = cube()
        cert = epsilon_certificate(
            body, (1, F(1, 2), F(1, 2)), (1, F(-1, 2), F(-1, 2))
        )
        assert cert.case == "boundary-segment"
        # the tight section facet lies inside the cube facet x = 1
        assert cert.vertex_set
        assert all(v[0] == 1 for v in cert.vertex_set)
        assert 0 < cert.epsilon <= 0.5 * cert.distance
        assert no_extreme_in_cone(
            body, (1, F(1, 2), F(1, 2)), (1, F(-1, 2), F(-1, 2)), cert.epsilon
        )

    def test_epsilon_always_positive_on_random_pairs(self):
        rng = random.Random(2)
        body = centered_polytope(rng, 3, 10)
        verts = body.vertices
        for p in verts[:4]:
            for q in verts[:4]:
                if p == q:
                    continue
                cert = epsilon_certificate(body, p, q)
                assert cert.epsilon > 0
                assert no_extreme_in_cone(body, p, q, cert.epsilon)

    def test_identical_endpoints_rejected(self):
        with pytest.raises(CriterionError):
            epsilon_certificate(cube(), (1, 1, 1), (1, 1, 1))

    def test_outside_point_rejected(self):
        with pytest.raises(CriterionError):
            epsilon_certificate(cube(), (2, 0, 0), (0, 0, 0))

    def test_family_coverage_failure(self):
        # every family normal is orthogonal to the segment: no transversal flat
        with pytest.raises(CriterionError, match="family"):
            epsilon_certificate(
                cube(), (1, 1, 1), (1, 1, -1), family=[(1, 0, 0), (0, 1, 0)]
            )

    def test_custom_family_works_when_transverse(self):
        cert = epsilon_certificate(
            cube(), (1, 1, 1), (1, 1, -1), family=[(0, 0, 1), (1, 0, 0)]
        )
        assert cert.case == "boundary-segment"
        assert cert.epsilon > 0


class TestNoExtremeInCone:
    def test_certified_epsilon_excludes(self):
        body = cube()
        cert = epsilon_certificate(body, (1, 1, 1), (-1, -1, -1))
        assert no_extreme_in_cone(body, (1, 1, 1), (-1, -1, -1), cert.epsilon)

    def test_oversized_epsilon_fails(self):
        body = cube()
        assert not no_extreme_in_cone(body, (1, 1, 1), (-1, -1, -1), math.pi)

    def test_p_itself_never_counts(self):
        body = cube()
        assert no_extreme_in_cone(body, (1, 1, 1), (-1, -1, -1), 1e-6)


class TestDriftInequality:
    def test_gamma_zero_closed_form(self):
        res = drift_inequality_eval(
            DriftConfig(0.0, 0.3, 0.9, 1.0, 0.2)
        )
        assert res.lhs == 0.0
        assert res.holds

    def test_right_angle_closed_form(self):
        eps2 = 0.31
        res = drift_inequality_eval(
            DriftConfig(0.2, math.pi / 2, math.pi / 2, 1.0, eps2)
        )
        assert res.rhs == math.tan(eps2)

    def test_synthetic_violation_detected(self):
        res = drift_inequality_eval(
            DriftConfig(1.2, 0.0, math.pi / 2, 1.0, 0.05)
        )
        assert not res.holds
        assert res.lhs > res.rhs

    def test_validation_errors(self):
        with pytest.raises(CriterionError):
            drift_inequality_eval(DriftConfig(-0.1, 0.3, 0.9, 1.0, 0.2))
        with pytest.raises(CriterionError):
            drift_inequality_eval(DriftConfig(0.1, 0.3, 0.0, 1.0, 0.2))
        with pytest.raises(CriterionError):
            drift_inequality_eval(DriftConfig(0.1, 2.0, 0.9, 1.0, 0.2))
        with pytest.raises(CriterionError):
            drift_inequality_eval(DriftConfig(0.1, 0.3, 0.9, 0.0, 0.2))
        with pytest.raises(CriterionError):
            drift_inequality_eval(DriftConfig(0.1, 0.3, 0.9, 1.0, 1.6))

    def test_realized_configuration_holds(self):
        cfg, points = drift_config_from_geometry(
            (0, 0, 0), (2, 0, 0), (0.5, 0.4, 0.1), gamma=0.15
        )
        assert cfg.realized
        res = drift_inequality_eval(cfg)
        assert res.holds
        assert res.chain_holds

    def test_realized_lengths_match_formulas(self):
        cfg, points = drift_config_from_geometry(
            (0, 0, 0), (2, 0, 0), (0.5, 0.4, 0.1), gamma=0.1
        )
        res = drift_inequality_eval(cfg)
        b, t, a, p, qn = (
            points["b"], points["t"], points["a"], points["p"], points["q_n"]
        )
        assert abs(res.lengths["b-t"] - math.dist(b, t)) < 1e-9
        assert abs(res.lengths["a-t"] - math.dist(a, t)) < 1e-9
        assert abs(res.lengths["b-p"] - math.dist(b, p)) < 1e-9
        assert abs(res.lengths["b-q"] - math.dist(b, qn)) < 1e-9

    def test_many_random_realized_configs_hold(self):
        rng = random.Random(17)
        done = 0
        while done < 40:
            p = (0.0, 0.0, 0.0)
            q = (rng.uniform(1, 3), 0.0, 0.0)
            qn = (
                rng.uniform(0.2, 0.8) * q[0],
                rng.uniform(-0.5, 0.5),
                rng.uniform(-0.5, 0.5),
            )
            try:
                cfg, _ = drift_config_from_geometry(
                    p, q, qn, gamma=rng.uniform(0.0, 0.6)
                )
            except CriterionError:
                continue
            res = drift_inequality_eval(cfg)
            assert res.holds, (cfg, res)
            done += 1

    def test_collinear_drifting_point_rejected(self):
        with pytest.raises(CriterionError):
            drift_config_from_geometry((0, 0, 0), (2, 0, 0), (1, 0, 0))

    def test_coincident_segment_rejected(self):
        with pytest.raises(CriterionError):
            drift_config_from_geometry((0, 0, 0), (0, 0, 0), (1, 1, 0))


class TestNormalFamily:
    def test_contains_axes(self):
        fam = default_normal_family(3)
        assert (F(1), F(0), F(0)) in fam
        assert len(fam) == 24

    def test_deterministic(self):
        assert default_normal_family(3, seed=5) == default_normal_family(3, seed=5)
        assert default_normal_family(3, seed=5) != default_normal_family(3, seed=6)
