import unittest

import numpy as np

from convex_cocompact.catalog import simplex_z2, triangle_pqr
from convex_cocompact.errors import BudgetError, PreconditionError, TheoremViolation
from convex_cocompact.group import (
    CentralizerSubspace,
    CharacterComponent,
    centralizer_fixed_subspace,
    joint_eigenspaces,
    orbital_limit_set,
    simplex_edge_projection,
)
from convex_cocompact.projlin import ProjectiveMap, Subspace, classify_proximal


class TestJointEigenspaces(unittest.TestCase):
    def test_diagonal_pair(self):
        spaces = joint_eigenspaces([ProjectiveMap.diag(4.0, 2.0, 1.0), ProjectiveMap.diag(1.0, 4.0, 2.0)])
        self.assertEqual(len(spaces), 3)
        for Q, chars in spaces:
            self.assertEqual(Q.shape, (3, 1))
            self.assertEqual(len(chars), 2)

    def test_repeated_eigenvalue(self):
        spaces = joint_eigenspaces([ProjectiveMap.diag(2.0, 2.0, 1.0)])
        self.assertEqual(sorted(Q.shape[1] for Q, _ in spaces), [1, 2])


class TestCentralizer(unittest.TestCase):
    def test_simplex_fixed_subspace(self):
        entry = simplex_z2()
        sample = orbital_limit_set(entry.group, entry.domain, entry.base_point, 8)
        result = centralizer_fixed_subspace(entry.group.generators, sample, entry.domain)
        self.assertEqual(result.V.dim, entry.truth["fixed_subspace_dim"])
        self.assertEqual(len(result.components), entry.truth["components"])
        self.assertIs(result.core_slice, entry.domain)
        self.assertEqual(len(result.fixed_points), 3)

    def test_hyperbolic_axis(self):
        entry = triangle_pqr()
        h = entry.group.evaluate(("r1", "r2", "r3", "r1", "r2", "r3"))
        data = classify_proximal(h)
        sample = orbital_limit_set(entry.group, entry.domain, entry.base_point, 6, depth=1.0)
        result = centralizer_fixed_subspace([h], sample, entry.domain)
        self.assertEqual(result.V.dim, 2)
        self.assertEqual(len(result.components), 2)
        self.assertEqual(result.core_slice.dim_span, 1)
        ends = result.core_slice.vertex_points()
        self.assertEqual(len(ends), 2)
        for target in (data.attracting, data.repelling):
            self.assertLess(min(p.angle_to(target) for p in ends), 1e-6)

    def test_non_commuting(self):
        entry = triangle_pqr()
        sample = orbital_limit_set(entry.group, entry.domain, entry.base_point, 6, depth=1.0)
        with self.assertRaises(PreconditionError):
            centralizer_fixed_subspace(entry.group.generators[:2], sample, entry.domain)

    def test_components_must_be_transverse(self):
        entry = simplex_z2()
        plane = CharacterComponent(Subspace(np.eye(3)[:, :2]), (2.0,))
        line = CharacterComponent(Subspace.span([[1.0, 1.0, 0.0]]), (1.0,))
        with self.assertRaises(TheoremViolation):
            CentralizerSubspace(Subspace(np.eye(3)), [plane, line], entry.domain, [])

    def test_found_components_are_transverse(self):
        entry = simplex_z2()
        sample = orbital_limit_set(entry.group, entry.domain, entry.base_point, 8)
        result = centralizer_fixed_subspace(entry.group.generators, sample, entry.domain)
        for i, first in enumerate(result.components):
            for second in result.components[i + 1 :]:
                self.assertGreater(first.space.min_angle_to(second.space), 1e-8)


class TestEdgeProjection(unittest.TestCase):
    def test_edge_projections(self):
        entry = simplex_z2()
        expected = {2: np.diag([1.0, 1.0, 0.0]), 0: np.diag([0.0, 1.0, 1.0]), 1: np.diag([1.0, 0.0, 1.0])}
        for drop, target in expected.items():
            T = simplex_edge_projection(entry.domain, entry.group.generators, drop)
            self.assertEqual(T.rank, 2)
            np.testing.assert_allclose(T.rep, target, atol=1e-9)

    def test_generators_must_fix_vertices(self):
        entry = simplex_z2()
        swap = ProjectiveMap(np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]))
        with self.assertRaises(PreconditionError):
            simplex_edge_projection(entry.domain, [swap], 2)

    def test_cyclic_pair_has_no_collapsing_direction(self):
        entry = simplex_z2(b=(1.0, 2.0, 4.0))
        with self.assertRaises(BudgetError):
            simplex_edge_projection(entry.domain, entry.group.generators, 2)

    def test_irrational_characters(self):
        # log(3/2) / log(7/5) is irrational: no lattice direction makes the kept characters agree
        entry = simplex_z2()
        A = [ProjectiveMap.diag(2.0, 3.0, 1.0), ProjectiveMap.diag(5.0, 7.0, 1.0)]
        T = simplex_edge_projection(entry.domain, A, 2)
        self.assertEqual(T.rank, 2)
        self.assertLess(np.linalg.norm(T.rep[:, 2]), 1e-8)
        self.assertLess(np.abs(T.rep[2]).max(), 1e-8)
        ratio = T.rep[0, 0] / T.rep[1, 1]
        bound = 2.0 * np.log(1.5)
        self.assertTrue(np.exp(-bound) <= ratio <= np.exp(bound))


if __name__ == "__main__":
    unittest.main()
