from fractions import Fraction

import pytest

from feyngen.algebra import ONE, Monomial
from feyngen.evaluation import (
    Model,
    ModelError,
    NPointTable,
    evaluate_graph,
    load_model,
    nu,
    sigma_lv,
    sigma_recursive,
    sigma_zero_vertex,
)
from feyngen.graphs import OrderedGraph, permute_vertices

XY = Monomial.of("x1", "x2")


class TestModel:
    def test_computes_inverse_automatically(self, two_label_model):
        m = two_label_model
        for x in m.labels:
            for z in m.labels:
                total = sum(
                    m.propagator[(x, y)] * m.inverse_propagator[(y, z)] for y in m.labels
                )
                assert total == (1 if x == z else 0)

    def test_rejects_failed_inverse_identity(self):
        with pytest.raises(ModelError):
            Model(
                ("x",),
                {("x", "x"): Fraction(2)},
                inverse_propagator={("x", "x"): Fraction(1)},
                vertex_by_degree={3: Fraction(1)},
            )

    def test_rejects_singular_propagator(self):
        with pytest.raises(ModelError):
            Model(("x",), {("x", "x"): Fraction(0)}, vertex_by_degree={3: Fraction(1)})

    def test_rejects_asymmetric_table(self):
        with pytest.raises(ModelError):
            Model(
                ("a", "b"),
                {("a", "b"): Fraction(1), ("b", "a"): Fraction(2), ("a", "a"): Fraction(1), ("b", "b"): Fraction(1)},
                vertex_by_degree={3: Fraction(1)},
            )

    def test_float_tolerance(self):
        m = Model(
            ("x",),
            {("x", "x"): 0.5},
            inverse_propagator={("x", "x"): 2.0},
            vertex_by_degree={3: 1.0},
        )
        assert not m.is_exact

    def test_loader_round_trip(self, tmp_path):
        doc = {
            "labels": ["x"],
            "propagator": {"x,x": "1/2"},
            "vertex": {"3": "3/8"},
        }
        path = tmp_path / "model.json"
        path.write_text(__import__("json").dumps(doc))
        m = load_model(path)
        assert m.inverse_propagator[("x", "x")] == 2
        assert m.vertex_by_degree == {3: Fraction(3, 8)}

    def test_loader_multiset_vertices(self):
        m = load_model(
            {
                "labels": ["a", "b"],
                "propagator": {"a,a": 1, "b,b": 1, "a,b": 0},
                "vertex": {"a,a": "1/3", "a,b": "1/4", "b,b": "1/5"},
            }
        )
        assert nu(m, Monomial.of("a", "b")) == Fraction(1, 4)
        with pytest.raises(ModelError):
            nu(m, Monomial.of("a", "a", "a"))


class TestNu:
    def test_degree_lookup(self, phi3_model):
        f3 = phi3_model.vertex_by_degree[3]
        assert nu(phi3_model, Monomial.of("x", "x", "x")) == f3
        assert nu(phi3_model, Monomial.of("p", "q", "r")) == f3  # degree-symmetric
        assert nu(phi3_model, Monomial.of("x", "x")) == 0

    def test_unit_default_and_override(self, phi3_model):
        assert nu(phi3_model, ONE) == 0
        m = Model(
            ("x",),
            {("x", "x"): Fraction(1)},
            vertex_by_degree={},
            unit_value=Fraction(7),
        )
        assert nu(m, ONE) == 7


class TestEvaluateGraph:
    def test_bare_vertex(self, phi4_model):
        g = OrderedGraph(1, (), {"x1": 1, "x2": 1})
        m = Model(("x",), {("x", "x"): Fraction(1)}, vertex_by_degree={2: Fraction(5)})
        assert evaluate_graph(m, g) == 5

    def test_self_loop_with_externals(self):
        g_val = Fraction(1, 3)
        m = Model(("x",), {("x", "x"): g_val}, vertex_by_degree={4: Fraction(7)})
        g = OrderedGraph(1, ((1, 1),), {"x1": 1, "x2": 1})
        assert evaluate_graph(m, g, Fraction(1, 2)) == Fraction(1, 2) * 7 / g_val

    def test_dumbbell_phi3(self, phi3_model):
        g_val = phi3_model.propagator[("x", "x")]
        f3 = phi3_model.vertex_by_degree[3]
        dumbbell = OrderedGraph(2, ((1, 1), (2, 2), (1, 2)))
        got = evaluate_graph(phi3_model, dumbbell, Fraction(1, 8))
        assert got == Fraction(1, 8) * f3**2 / g_val**3

    def test_invariant_under_vertex_permutation(self, two_label_model):
        g = OrderedGraph(3, ((1, 1), (1, 2), (2, 3)), {"a": 2, "b": 3})
        base = evaluate_graph(two_label_model, g)
        for perm in [(2, 1, 3), (3, 2, 1), (2, 3, 1)]:
            assert evaluate_graph(two_label_model, permute_vertices(g, perm)) == base


class TestSigma:
    def test_single_term(self):
        m = Model(("x",), {("x", "x"): Fraction(1)}, vertex_by_degree={2: Fraction(5)})
        assert sigma_lv(m, 0, 1, XY) == 5

    def test_phi4_two_point_one_loop(self, phi4_model):
        g_val = phi4_model.propagator[("x", "x")]
        lam = phi4_model.vertex_by_degree[4] / g_val**4
        assert sigma_lv(phi4_model, 1, 1, XY) == Fraction(1, 2) * lam * g_val**3

    def test_phi3_vacuum_two_loop(self, phi3_model):
        g_val = phi3_model.propagator[("x", "x")]
        lam = phi3_model.vertex_by_degree[3] / g_val**3
        assert sigma_lv(phi3_model, 2, 2) == Fraction(5, 24) * lam**2 * g_val**3

    def test_recursive_base_cases(self, phi3_model):
        g_val = phi3_model.propagator[("x", "x")]
        f2 = Fraction(0)  # no 2-valent coupling in the phi3 model
        assert sigma_recursive(phi3_model, 1, 1, ONE) == f2
        m = Model(("x",), {("x", "x"): g_val}, vertex_by_degree={2: Fraction(9)})
        assert sigma_recursive(m, 1, 1, ONE) == Fraction(1, 2) * 9 / g_val

    @pytest.mark.parametrize("fixture", ["phi3_model", "two_label_model"])
    def test_recursive_matches_graph_sum(self, fixture, request):
        model = request.getfixturevalue(fixture)
        labels = ("x1", "x2")
        for e in range(0, 4):
            for v in range(1, e + 2):
                l = e - v + 1
                for n in range(0, 3):
                    m = Monomial(labels[:n])
                    assert sigma_recursive(model, l, v, m) == sigma_lv(model, l, v, m), (l, v, n)

    def test_linearity_in_weights(self, phi3_model):
        from feyngen.recursion import GraphSum

        g1 = OrderedGraph(2, ((1, 2), (1, 2), (1, 2)))
        g2 = OrderedGraph(2, ((1, 1), (2, 2), (1, 2)))
        s = GraphSum(2, {g1: Fraction(1, 12), g2: Fraction(1, 8)})
        from feyngen.evaluation import evaluate_graph_sum

        total = evaluate_graph_sum(phi3_model, s)
        assert total == evaluate_graph(phi3_model, g1, Fraction(1, 12)) + evaluate_graph(
            phi3_model, g2, Fraction(1, 8)
        )


class TestZeroVertexSector:
    def test_propagator_on_degree_two(self, two_label_model):
        assert sigma_zero_vertex(two_label_model, 0, Monomial.of("a", "b")) == Fraction(1, 2)

    def test_zero_elsewhere(self, two_label_model):
        assert sigma_zero_vertex(two_label_model, 1, Monomial.of("a", "b")) == 0
        assert sigma_zero_vertex(two_label_model, 0, Monomial.of("a")) == 0

    def test_table_facade(self, phi3_model):
        table = NPointTable(phi3_model)
        assert table.value(0, 0, Monomial.of("x", "x")) == phi3_model.propagator[("x", "x")]
        assert table.value(2, 2) == sigma_lv(phi3_model, 2, 2)
        total = table.loop_total(2, 2)
        assert total == table.value(2, 0) + table.value(2, 1) + table.value(2, 2)
