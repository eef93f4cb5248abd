from django.test import SimpleTestCase

from polytope.faces import face_from_members
from toric.graphs import (
    BipartiteSupport,
    MarkedGraph,
    graphical_model_matrix,
    induced_subgraph_columns,
    induced_subgraph_face,
    induced_support,
    induced_support_columns,
    is_doubly_chordal_bipartite,
    maximal_cliques,
    quasi_independence_matrix,
)
from toric.scaled_model import ModelSpecError

NO_DIAGONAL = frozenset({(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)})


class GraphicalModelTests(SimpleTestCase):
    def setUp(self):
        self.cycle = MarkedGraph.cycle(4)

    def test_cliques_of_four_cycle(self):
        self.assertEqual(maximal_cliques(self.cycle), [(0, 1), (0, 3), (1, 2), (2, 3)])

    def test_binary_four_cycle_dimensions(self):
        M = graphical_model_matrix(self.cycle)
        self.assertEqual((M.n, M.d), (16, 8))

    def test_induced_subgraph_face(self):
        M = graphical_model_matrix(self.cycle)
        columns = induced_subgraph_columns(self.cycle, ["x1", "x2"])
        self.assertEqual(columns, [0, 4, 8, 12])
        face = induced_subgraph_face(self.cycle, ["x1", "x2"], model=M)
        self.assertEqual(face.member_indices, tuple(columns))
        self.assertEqual(face.face_dim, 3)

    def test_path_graph_has_edge_cliques(self):
        path = MarkedGraph.build(["a", "b", "c"], [("a", "b"), ("b", "c")], 2)
        self.assertEqual(maximal_cliques(path), [(0, 1), (1, 2)])
        self.assertEqual(graphical_model_matrix(path).d, 5)

    def test_invalid_graphs(self):
        with self.assertRaises(ModelSpecError):
            MarkedGraph.build(["a", "a"], [], 2)
        with self.assertRaises(ModelSpecError):
            MarkedGraph.build(["a", "b"], [("a", "z")], 2)
        with self.assertRaises(ModelSpecError):
            MarkedGraph.build(["a", "b"], [("a", "b")], [2, 1])
        with self.assertRaises(ModelSpecError):
            self.cycle.induced(["x9"])


class BipartiteTests(SimpleTestCase):
    def test_doubly_chordal(self):
        self.assertTrue(is_doubly_chordal_bipartite(BipartiteSupport.full(3, 3)))
        self.assertFalse(is_doubly_chordal_bipartite(BipartiteSupport(3, 3, NO_DIAGONAL)))

    def test_quasi_independence_matrix(self):
        M = quasi_independence_matrix(BipartiteSupport(3, 3, NO_DIAGONAL))
        self.assertEqual((M.n, M.d), (6, 4))

    def test_induced_support_is_a_face(self):
        B = BipartiteSupport(3, 3, NO_DIAGONAL)
        self.assertEqual(induced_support(B, [0, 1], [0, 1, 2]).pairs(), [(0, 1), (0, 2), (1, 0), (1, 2)])
        columns = induced_support_columns(B, [0, 1], [0, 1, 2])
        self.assertEqual(columns, [0, 1, 2, 3])
        M = quasi_independence_matrix(B)
        self.assertEqual(face_from_members(M.configuration(), columns).member_indices, (0, 1, 2, 3))

    def test_support_bounds(self):
        with self.assertRaises(ModelSpecError):
            BipartiteSupport(2, 2, frozenset({(0, 2)}))
        with self.assertRaises(ModelSpecError):
            BipartiteSupport(2, 2, frozenset())
