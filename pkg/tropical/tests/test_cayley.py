from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase

from polytope.faces import face_from_members, facets
from toric.builders import dilated_cube_model
from toric.specs import load_spec
from tropical.cayley import cayley_subdivision_check, euler_derivatives
from tropical.tropical_engine import TropicalWeights, tropical_system


class CayleyCheckTests(SimpleTestCase):
    def test_segment_vertex_gives_a_triangulation(self):
        M = load_spec("unit_segment").model
        F = face_from_members(M.configuration(), [0])
        W = TropicalWeights(face=F, w={1: 1}, w_prime={1: 1})
        check = cayley_subdivision_check(M, F, W)
        self.assertTrue(check.is_triangulation)
        # theta * d/dtheta - b on (1 + t*theta) is t*theta - t, so both terms carry t^1.
        self.assertEqual(check.lifts, (1, 1))
        self.assertEqual(check.cells, ((0, 1),))

    def test_euler_derivatives_drop_vanishing_terms(self):
        M = load_spec("unit_segment").model
        F = face_from_members(M.configuration(), [0])
        W = TropicalWeights(face=F, w={1: 1}, w_prime={1: 1})
        (terms,) = euler_derivatives(tropical_system(M, [1, 1], F, W))
        self.assertEqual(sorted(terms), [(0,), (1,)])

    def test_segre_lifts_every_support_point(self):
        spec = load_spec("segre_tropical")
        trop = spec.tropical
        F = face_from_members(spec.model.configuration(), trop.face)
        W = TropicalWeights(face=F, w=trop.w, w_prime=trop.w_prime)
        check = cayley_subdivision_check(spec.model, F, W, u=trop.data)
        self.assertEqual(len(check.lifts), len(check.configuration))
        self.assertIsInstance(check.is_triangulation, bool)
        self.assertTrue(check.cells)
        covered = {i for cell in check.cells for i in cell}
        self.assertLessEqual(covered, set(range(len(check.configuration))))

    @skipUnless(settings.MLDEG_SLOW_TESTS, "slow: Cayley subdivision of a 27-point cube")
    def test_cube_bottom_facet_is_not_a_triangulation(self):
        M = dilated_cube_model(3, 2)
        (bottom,) = [F for F in facets(M.configuration()) if all(M.exponents[j][2] == 0 for j in F.member_indices)]
        W = TropicalWeights.seeded(M.n, bottom, seed=0)
        check = cayley_subdivision_check(M, bottom, W)
        self.assertFalse(check.is_triangulation)
