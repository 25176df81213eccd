import unittest

import numpy as np

from convex_cocompact.catalog import simplex_z2, triangle_pqr
from convex_cocompact.domain import unit_ball
from convex_cocompact.errors import PreconditionError
from convex_cocompact.flow import EndpointBox, axis_shadowing_error, transitivity_experiment
from convex_cocompact.group import MatrixGroup, rank_one_elements
from convex_cocompact.projlin import ProjectiveMap, ProjectivePoint, classify_proximal


def boost(s):
    return ProjectiveMap(np.array([[np.cosh(s), 0.0, np.sinh(s)], [0.0, 1.0, 0.0], [np.sinh(s), 0.0, np.cosh(s)]]))


def rotation(theta):
    c, s = np.cos(theta), np.sin(theta)
    return ProjectiveMap(np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]))


class TestShadowing(unittest.TestCase):
    def setUp(self):
        self.disc = unit_ball(3)
        self.w = self.disc.chart.from_coords([0.0, 1.0])

    def test_ray_converges_to_axis(self):
        profile = axis_shadowing_error(self.disc, boost(1.0), self.w, T=20.0)
        self.assertEqual(len(profile.times), 21)
        self.assertLessEqual(profile.values[-1], 1e-3)
        self.assertLess(profile.values[-1], profile.values[0])
        self.assertEqual(list(profile.to_frame().columns), ["t", "distance"])

    def test_attracting_point_rejected(self):
        with self.assertRaises(PreconditionError):
            axis_shadowing_error(self.disc, boost(1.0), self.disc.chart.from_coords([1.0, 0.0]))

    def test_elliptic_rejected(self):
        with self.assertRaises(PreconditionError):
            axis_shadowing_error(self.disc, rotation(0.5), self.w)

    def test_triangle_group_axes(self):
        entry = triangle_pqr()
        found = rank_one_elements(entry.group, entry.domain, 6)
        found.sort(key=lambda item: -item[1].proximal.top_ratio)
        boundary = [ProjectivePoint(v) for v in entry.domain.boundary_sample(64)]
        for word, report in found[:5]:
            w = next(p for p in boundary if min(p.angle_to(report.attracting), p.angle_to(report.repelling)) > 0.1)
            profile = axis_shadowing_error(entry.domain, entry.group.evaluate(word), w, T=20.0)
            self.assertLessEqual(profile.values[-1], 1e-3, "*".join(word))


class TestTransitivity(unittest.TestCase):
    def test_same_box_is_trivial(self):
        disc = unit_ball(3)
        box = EndpointBox(disc.chart.from_coords([-1.0, 0.0]), disc.chart.from_coords([1.0, 0.0]))
        group = MatrixGroup([boost(1.0)], ["h"])
        witness = transitivity_experiment(group, disc, box, box, 4)
        self.assertTrue(witness.found)
        self.assertEqual(witness.word, ())
        self.assertEqual(witness.t, 0.0)

    def test_along_a_single_axis(self):
        disc = unit_ball(3)
        h = boost(1.0)
        data = classify_proximal(h)
        group = MatrixGroup([h], ["h"])
        U = EndpointBox(data.repelling, data.attracting, radius=0.05, base_radius=1.0)
        V = EndpointBox(data.repelling, data.attracting, radius=0.05, base_radius=2.0)
        witness = transitivity_experiment(group, disc, U, V, 4)
        self.assertTrue(witness.found)
        self.assertFalse(witness.exhausted)
        self.assertGreater(len(witness.word), 0)
        self.assertTrue(np.isfinite(witness.t))
        self.assertTrue(U.contains(disc, witness.u))
        self.assertTrue(V.contains(disc, witness.image))

    def test_simplex_is_exhausted(self):
        entry = simplex_z2()
        e = [ProjectivePoint(v) for v in np.eye(3)]
        U = EndpointBox(e[2], e[0])
        V = EndpointBox(e[0], e[1])
        witness = transitivity_experiment(entry.group, entry.domain, U, V, 4)
        self.assertTrue(witness.exhausted)
        self.assertIsNotNone(witness.diagnostic)

    def test_triangle_group_random_boxes(self):
        entry = triangle_pqr()
        rng = np.random.default_rng(0)
        boundary = [ProjectivePoint(v) for v in entry.domain.boundary_sample(64)]
        found = 0
        for _ in range(10):
            ends = rng.choice(len(boundary), size=4, replace=False)
            U = EndpointBox(boundary[ends[0]], boundary[ends[1]])
            V = EndpointBox(boundary[ends[2]], boundary[ends[3]])
            witness = transitivity_experiment(entry.group, entry.domain, U, V, 10)
            if witness.found and abs(witness.t) <= 30.0:
                self.assertTrue(U.contains(entry.domain, witness.u))
                self.assertTrue(V.contains(entry.domain, witness.image))
                found += 1
        self.assertEqual(found, 10)


if __name__ == "__main__":
    unittest.main()
