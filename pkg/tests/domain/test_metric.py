import unittest

import numpy as np

from convex_cocompact.catalog import list_examples, load_example
from convex_cocompact.domain import (
    EllipsoidBody,
    PolytopeBody,
    check_automorphism,
    cross_ratio,
    geodesic_point,
    hausdorff_distance,
    hilbert_distance,
    invariance_drift,
    is_properly_embedded,
    line_boundary_points,
    make_simplex,
    unit_ball,
)
from convex_cocompact.errors import DegenerateLineError, NotAutomorphismError, PreconditionError
from convex_cocompact.projlin import ProjectiveMap, ProjectivePoint, translation_length


def boost(s):
    return ProjectiveMap(np.array([[np.cosh(s), 0.0, np.sinh(s)], [0.0, 1.0, 0.0], [np.sinh(s), 0.0, np.cosh(s)]]))


def standard_simplex():
    return make_simplex([ProjectivePoint(e) for e in np.eye(3)])


def random_points(body, n, seed=0):
    rng = np.random.default_rng(seed)
    return [ProjectivePoint(v) for v in body.random_interior(rng, n)]


class TestHilbertDistance(unittest.TestCase):
    def test_interval(self):
        interval = unit_ball(2)
        x = interval.chart.from_coords([0.0])
        y = interval.chart.from_coords([0.5])
        self.assertAlmostEqual(hilbert_distance(interval, x, y), 0.5 * np.log(3.0), places=12)

    def test_disc_radius(self):
        disc = unit_ball(3)
        origin = disc.chart.from_coords([0.0, 0.0])
        for r in (0.1, 0.5, 0.9, 0.999):
            x = disc.chart.from_coords([0.0, r])
            self.assertAlmostEqual(hilbert_distance(disc, origin, x), np.arctanh(r), places=9)

    def test_metric_axioms(self):
        for body in (unit_ball(3), standard_simplex()):
            pts = random_points(body, 12)
            for x, y, z in zip(pts[:4], pts[4:8], pts[8:]):
                dxy = hilbert_distance(body, x, y)
                self.assertAlmostEqual(dxy, hilbert_distance(body, y, x), places=9)
                self.assertLessEqual(hilbert_distance(body, x, z), dxy + hilbert_distance(body, y, z) + 1e-9)
            self.assertEqual(hilbert_distance(body, pts[0], pts[0]), 0.0)

    def test_isometry_invariance(self):
        disc = unit_ball(3)
        g = boost(0.8)
        pts = random_points(disc, 10, seed=1)
        for x, y in zip(pts[:5], pts[5:]):
            self.assertAlmostEqual(hilbert_distance(disc, g(x), g(y)), hilbert_distance(disc, x, y), places=8)

    def test_simplex_displacement_is_constant(self):
        simplex = standard_simplex()
        g = ProjectiveMap.diag(9.0, 3.0, 1.0)
        for x in random_points(simplex, 20, seed=2):
            self.assertAlmostEqual(hilbert_distance(simplex, x, g(x)), translation_length(g), places=6)

    def test_cross_ratio(self):
        disc = unit_ball(3)
        x = disc.chart.from_coords([0.1, 0.2])
        y = disc.chart.from_coords([-0.3, 0.4])
        a, b = line_boundary_points(disc, x, y)
        half_log = 0.5 * np.log(cross_ratio(disc.chart, a, x, y, b))
        self.assertAlmostEqual(half_log, hilbert_distance(disc, x, y), places=9)

    def test_preconditions(self):
        disc = unit_ball(3)
        x = disc.chart.from_coords([0.1, 0.2])
        with self.assertRaises(PreconditionError):
            hilbert_distance(disc, x, disc.chart.from_coords([2.0, 0.0]))
        with self.assertRaises(DegenerateLineError):
            line_boundary_points(disc, x, x)


class TestGeodesics(unittest.TestCase):
    def test_geodesic_point(self):
        disc = unit_ball(3)
        x = disc.chart.from_coords([0.0, 0.0])
        eta = disc.chart.from_coords([1.0, 0.0])
        p = geodesic_point(disc, x, eta, np.arctanh(0.5))
        np.testing.assert_allclose(disc.chart.to_coords(p), [0.5, 0.0], atol=1e-12)
        for t in (0.3, 2.0, 5.0):
            self.assertAlmostEqual(hilbert_distance(disc, x, geodesic_point(disc, x, eta, t)), t, places=8)

    def test_geodesic_needs_boundary_point(self):
        disc = unit_ball(3)
        x = disc.chart.from_coords([0.0, 0.0])
        with self.assertRaises(PreconditionError):
            geodesic_point(disc, x, disc.chart.from_coords([0.5, 0.0]), 1.0)


class TestComparisons(unittest.TestCase):
    def test_hausdorff(self):
        disc = unit_ball(3)
        small = EllipsoidBody(disc.chart, disc.chart.covector, 0.5 * np.eye(3)[:, :2])
        self.assertAlmostEqual(hausdorff_distance(disc, disc), 0.0)
        self.assertAlmostEqual(hausdorff_distance(disc, small), 0.5, places=9)

    def test_properly_embedded_chord(self):
        disc = unit_ball(3)
        chord = PolytopeBody(disc.chart, np.array([[-1.0, 0.0, 1.0], [1.0, 0.0, 1.0]]))
        short = PolytopeBody(disc.chart, np.array([[-0.5, 0.0, 1.0], [0.5, 0.0, 1.0]]))
        self.assertTrue(is_properly_embedded(chord, disc))
        self.assertFalse(is_properly_embedded(short, disc))

    def test_invariance(self):
        disc = unit_ball(3)
        self.assertLess(invariance_drift(boost(1.3), disc), 1e-10)
        check_automorphism(boost(1.3), disc)
        self.assertGreater(invariance_drift(ProjectiveMap.diag(2.0, 1.0, 1.0), disc), 0.1)
        with self.assertRaises(NotAutomorphismError):
            check_automorphism(ProjectiveMap.diag(2.0, 1.0, 1.0), disc)


class TestCatalogBodies(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.entries = [load_example(name) for name in list_examples()]

    def test_metric_suite(self):
        for entry in self.entries:
            body = entry.domain
            pts = random_points(body, 600, seed=3)
            for x, y, z in zip(pts[:200], pts[200:400], pts[400:]):
                dxy = hilbert_distance(body, x, y)
                self.assertLessEqual(abs(dxy - hilbert_distance(body, y, x)), 1e-12 * max(1.0, dxy), entry.name)
                dxz, dyz = hilbert_distance(body, x, z), hilbert_distance(body, y, z)
                self.assertLessEqual(dxz, dxy + dyz + 1e-9, entry.name)
                for g in entry.group.generators:
                    self.assertLessEqual(abs(hilbert_distance(body, g(x), g(y)) - dxy), 1e-9, entry.name)

    def test_segment_distance_estimate(self):
        for entry in self.entries:
            body = entry.domain
            pts = random_points(body, 400, seed=4)
            for x1, y1, x2, y2 in zip(pts[:100], pts[100:200], pts[200:300], pts[300:]):
                T1, T2 = hilbert_distance(body, x1, y1), hilbert_distance(body, x2, y2)
                b1, b2 = line_boundary_points(body, x1, y1)[1], line_boundary_points(body, x2, y2)[1]
                bound = hilbert_distance(body, x1, x2) + hilbert_distance(body, y1, y2) + 1e-9
                for lam in np.arange(1, 10) / 10.0:
                    p1 = geodesic_point(body, x1, b1, lam * T1)
                    p2 = geodesic_point(body, x2, b2, lam * T2)
                    self.assertLessEqual(hilbert_distance(body, p1, p2), bound, entry.name)

    def test_simplex_in_the_cone(self):
        cone = load_example("cone-fuchsian").domain
        base = cone.base
        p, q = base.center + base.axes[:, 0], base.center - base.axes[:, 0]
        triangle = PolytopeBody(cone.chart, np.array([cone.apex, p, q]))
        self.assertTrue(is_properly_embedded(triangle, cone))
        inner = PolytopeBody(cone.chart, np.array([cone.apex, p, base.center - 0.5 * base.axes[:, 0]]))
        self.assertFalse(is_properly_embedded(inner, cone))


if __name__ == "__main__":
    unittest.main()
