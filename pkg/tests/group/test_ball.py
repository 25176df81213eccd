import unittest

import numpy as np

from convex_cocompact.catalog import simplex_z2, triangle_pqr
from convex_cocompact.errors import BudgetError, PreconditionError
from convex_cocompact.group import MatrixGroup
from convex_cocompact.projlin import ProjectiveMap


class TestMatrixGroup(unittest.TestCase):
    def test_free_abelian_ball_sizes(self):
        group = simplex_z2().group
        self.assertEqual(len(group.enumerate_ball(1)), 5)
        self.assertEqual(len(group.enumerate_ball(2)), 13)
        self.assertEqual(group.sphere_sizes(3), [1, 4, 8, 12])

    def test_ball_is_prefix(self):
        group = simplex_z2().group
        small = [e.word for e in group.enumerate_ball(2)]
        large = [e.word for e in group.enumerate_ball(4)]
        self.assertEqual(large[: len(small)], small)
        self.assertEqual(small[0], ())

    def test_involutions_have_no_inverse_letters(self):
        group = triangle_pqr().group
        self.assertEqual(group.letter_labels, ["r1", "r2", "r3"])
        self.assertEqual(len(group.enumerate_ball(1)), 4)
        self.assertTrue(group.evaluate(("r1", "r1")).is_identity())

    def test_evaluate_and_inverse_word(self):
        group = simplex_z2().group
        word = ("a", "b", "b", "a^-1", "b")
        g = group.evaluate(word)
        self.assertTrue((g @ group.evaluate(group.inverse_word(word))).is_identity())
        self.assertEqual(g, group.evaluate(("b", "b", "b")))
        with self.assertRaises(PreconditionError):
            group.evaluate(("c",))

    def test_words_evaluate_to_matrices(self):
        group = triangle_pqr().group
        for element in group.enumerate_ball(3):
            self.assertEqual(group.evaluate(element.word), element.map)

    def test_budget(self):
        group = MatrixGroup([ProjectiveMap.diag(4.0, 2.0, 1.0), ProjectiveMap.diag(1.0, 4.0, 2.0)], max_elements=10)
        with self.assertRaises(BudgetError) as ctx:
            group.enumerate_ball(3)
        self.assertLessEqual(len(ctx.exception.partial), 10)

    def test_subgroup(self):
        group = simplex_z2().group
        sub = group.subgroup([("a", "a")])
        self.assertEqual(sub.labels, ["a*a"])
        self.assertEqual(len(sub.enumerate_ball(2)), 5)

    def test_mixed_dimensions(self):
        with self.assertRaises(PreconditionError):
            MatrixGroup([ProjectiveMap.identity(3), ProjectiveMap.identity(4)])

    def test_ball_matrices(self):
        group = simplex_z2().group
        mats = group.ball_matrices(2)
        self.assertEqual(mats.shape, (13, 3, 3))
        np.testing.assert_allclose(mats[0], np.eye(3))


if __name__ == "__main__":
    unittest.main()
