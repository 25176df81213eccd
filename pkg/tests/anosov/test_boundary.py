import unittest

import numpy as np

from convex_cocompact.anosov import (
    BoundaryMapSample,
    boundary_map_sample,
    chart_boundedness,
    collinear_triples,
    generator_drift,
    hyperplane_separation,
    invariant_domain_from_limit,
    transversality_check,
)
from convex_cocompact.catalog import VERONESE_FORM, simplex_z2, sym2_fuchsian, triangle_pqr
from convex_cocompact.domain import AffineChart, PolytopeBody, contains, hausdorff_distance, unit_ball
from convex_cocompact.errors import NoChartDiagnostic, PreconditionError
from convex_cocompact.group import MatrixGroup
from convex_cocompact.projlin import ProjectiveMap, ProjectivePoint


class TestBoundaryMaps(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.entry = sym2_fuchsian()
        cls.sample = boundary_map_sample(cls.entry.group, 6)

    def test_lines_on_the_conic(self):
        self.assertGreater(len(self.sample), 10)
        self.assertIsNone(self.sample.diagnostic)
        for x in self.sample.lines:
            self.assertLess(abs(x @ VERONESE_FORM @ x), 1e-6)

    def test_hyperplanes_are_tangent(self):
        for x, n in zip(self.sample.lines, self.sample.normals):
            tangent = VERONESE_FORM @ x
            tangent /= np.linalg.norm(tangent)
            self.assertGreater(abs(tangent @ n), 1.0 - 1e-6)
            self.assertLess(abs(n @ x), 1e-6)

    def test_transversality(self):
        report = transversality_check(self.sample, pair_tol=1e-2)
        self.assertTrue(report)
        self.assertGreaterEqual(report.min_angle, 1e-3)

    def test_chart(self):
        report = chart_boundedness(self.sample, n_random=500)
        self.assertGreaterEqual(report.margin, 0.1)
        self.assertTrue(np.all(np.abs(self.sample.lines @ report.chart.covector) >= report.margin - 1e-12))

    def test_no_collinear_triples(self):
        scan = collinear_triples(self.sample.lines)
        self.assertEqual(len(scan), 0)
        self.assertGreater(scan.min_ratio, 1e-6)

    def test_hyperplanes_avoid_the_domain(self):
        self.assertGreater(hyperplane_separation(self.sample, self.entry.domain), 0.0)

    def test_invariant_domain_drift(self):
        report = chart_boundedness(self.sample, n_random=500)
        p = ProjectivePoint(report.chart.lift_many(self.sample.lines).mean(axis=0))
        domain = invariant_domain_from_limit(self.entry.group, self.sample, p, L=4, chart=report.chart)
        self.assertTrue(contains(domain, p))
        self.assertLess(generator_drift(self.entry.group, domain), 1.0)

    def test_invariant_domain_at_depth(self):
        sample = boundary_map_sample(self.entry.group, 10)
        report = chart_boundedness(sample, n_random=500)
        p = ProjectivePoint(report.chart.lift_many(sample.lines).mean(axis=0))
        domain = invariant_domain_from_limit(self.entry.group, sample, p, L=10, chart=report.chart)
        self.assertTrue(contains(domain, p))
        self.assertLessEqual(generator_drift(self.entry.group, domain), 0.05)


class TestDegenerateSamples(unittest.TestCase):
    def test_no_biproximal_elements(self):
        group = MatrixGroup([ProjectiveMap(np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]))])
        sample = boundary_map_sample(group, 4)
        self.assertEqual(len(sample), 0)
        self.assertIsNotNone(sample.diagnostic)
        with self.assertRaises(PreconditionError):
            chart_boundedness(sample)

    def test_projective_line_has_no_chart(self):
        angles = np.pi * np.arange(20_000) / 20_000
        lines = np.column_stack([np.cos(angles), np.sin(angles), np.zeros_like(angles)])
        sample = BoundaryMapSample(lines, np.zeros((0, 3)))
        with self.assertRaises(NoChartDiagnostic):
            chart_boundedness(sample, n_random=100)

    def test_single_line(self):
        sample = BoundaryMapSample(np.array([[0.0, 0.6, 0.8]]), np.array([[1.0, 0.0, 0.0]]))
        self.assertGreater(chart_boundedness(sample, n_random=10).margin, 0.99)
        self.assertEqual(transversality_check(sample).pairs, 0)

    def test_trivial_group_gives_the_hull(self):
        chart = AffineChart.standard(3)
        lines = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0]])
        lines /= np.linalg.norm(lines, axis=1, keepdims=True)
        sample = BoundaryMapSample(lines, np.eye(3))
        group = MatrixGroup([ProjectiveMap.identity(3)])
        p = ProjectivePoint.from_coords(1.0, 1.0, 3.0)
        domain = invariant_domain_from_limit(group, sample, p, L=3, chart=chart)
        triangle = PolytopeBody(chart, chart.lift_many(lines))
        self.assertEqual(len(domain.vertices), 3)
        self.assertLess(hausdorff_distance(domain, triangle), 1e-9)
        self.assertLess(generator_drift(group, domain), 1e-12)

    def test_point_outside_the_hull(self):
        chart = AffineChart.standard(3)
        lines = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0]])
        sample = BoundaryMapSample(lines / np.linalg.norm(lines, axis=1, keepdims=True), np.eye(3))
        group = MatrixGroup([ProjectiveMap.identity(3)])
        with self.assertRaises(PreconditionError):
            invariant_domain_from_limit(group, sample, ProjectivePoint.from_coords(2.0, 2.0, 1.0), L=1, chart=chart)


class TestCollinearity(unittest.TestCase):
    def test_polytope_boundary_has_collinear_triples(self):
        simplex = simplex_z2().domain
        scan = collinear_triples(simplex.boundary_sample(256))
        self.assertGreater(len(scan), 0)

    def test_conic_points(self):
        disc = unit_ball(3)
        scan = collinear_triples(disc.boundary_sample(64))
        self.assertEqual(len(scan), 0)

    def test_triangle_group_boundary_map(self):
        sample = boundary_map_sample(triangle_pqr().group, 6)
        self.assertGreater(len(sample), 10)
        scan = collinear_triples(sample.lines)
        self.assertEqual(len(scan), 0)


if __name__ == "__main__":
    unittest.main()
