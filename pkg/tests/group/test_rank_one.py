import unittest

import numpy as np

from convex_cocompact.catalog import simplex_z2, triangle_pqr
from convex_cocompact.domain import make_simplex
from convex_cocompact.errors import PreconditionError
from convex_cocompact.group import (
    is_rank_one,
    minimal_translation_sample,
    rank_one_approximation,
    rank_one_elements,
)
from convex_cocompact.projlin import ProjectiveMap, ProjectivePoint, orbit_power_point


class TestRankOne(unittest.TestCase):
    def test_simplex_has_no_rank_one_elements(self):
        entry = simplex_z2()
        self.assertEqual(rank_one_elements(entry.group, entry.domain, 4), [])
        report = is_rank_one(ProjectiveMap.diag(4.0, 2.0, 1.0), entry.domain)
        self.assertFalse(report)
        self.assertTrue(report.proximal.is_biproximal)

    def test_triangle_group_inventory(self):
        entry = triangle_pqr()
        found = rank_one_elements(entry.group, entry.domain, 6)
        self.assertGreaterEqual(len(found), 10)
        rng = np.random.default_rng(0)
        z = [ProjectivePoint(v) for v in entry.domain.random_interior(rng, 5)]
        checked = 0
        for word, report in found:
            if report.proximal.top_ratio < 1.2:
                continue
            g = entry.group.evaluate(word)
            for point in z:
                self.assertLess(orbit_power_point(g, point, 200).angle_to(report.attracting), 1e-6)
            checked += 1
            if checked == 5:
                break
        self.assertGreater(checked, 0)

    def test_approximation_needs_distinct_points(self):
        entry = triangle_pqr()
        x = ProjectivePoint(entry.domain.boundary_sample(4)[0])
        with self.assertRaises(PreconditionError):
            rank_one_approximation(x, x, entry.group, entry.domain, 4)

    def test_approximation_needs_segment_through_domain(self):
        entry = simplex_z2()
        x1, x2 = ProjectivePoint([1.0, 0.2, 0.0]), ProjectivePoint([0.3, 1.0, 0.0])
        with self.assertRaises(PreconditionError):
            rank_one_approximation(x1, x2, entry.group, entry.domain, 4)

    def test_approximation_candidates_are_rank_one(self):
        entry = triangle_pqr()
        boundary = entry.domain.boundary_sample(4)
        x1, x2 = ProjectivePoint(boundary[0]), ProjectivePoint(boundary[2])
        candidates = rank_one_approximation(x1, x2, entry.group, entry.domain, 6)
        self.assertGreater(len(candidates), 0)
        for c in candidates:
            self.assertTrue(is_rank_one(c.psi, entry.domain))
            self.assertEqual(entry.group.evaluate(c.word), c.psi)
        lengths = [len(c.word) for c in candidates]
        self.assertEqual(lengths, sorted(lengths))


class TestTranslation(unittest.TestCase):
    def test_diagonal_on_simplex(self):
        simplex = simplex_z2().domain
        sample = minimal_translation_sample(ProjectiveMap.diag(9.0, 3.0, 1.0), simplex)
        self.assertAlmostEqual(sample.tau, np.log(3.0), delta=1e-3)
        self.assertGreater(len(sample.argmin), 0)

    def test_conjugated_diagonals(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            P = np.eye(3) + 0.3 * rng.standard_normal((3, 3))
            D = np.exp(rng.standard_normal(3))
            g = ProjectiveMap(P @ np.diag(D) @ np.linalg.inv(P))
            body = make_simplex([ProjectivePoint(P[:, i]) for i in range(3)])
            sample = minimal_translation_sample(g, body, grid=50)
            self.assertAlmostEqual(sample.tau, 0.5 * np.log(D.max() / D.min()), delta=1e-3)
            self.assertGreaterEqual(sample.tau, sample.lower_bound - 1e-9)


if __name__ == "__main__":
    unittest.main()
