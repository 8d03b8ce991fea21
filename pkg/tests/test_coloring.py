import itertools
from concurrent.futures import ThreadPoolExecutor

import pytest

from stableset.coloring import (
    ColoringOracle,
    load_coloring,
    make_rule_coloring,
    make_table_coloring,
    save_coloring,
)
from stableset.core import ElementSet
from stableset.errors import ContractViolation
from stableset.graphs import Family, GraphFamilySpec, adjacent, vertices

S = lambda n, k: GraphFamilySpec(Family.SCHRIJVER, n, k)
K = lambda n, k: GraphFamilySpec(Family.KNESER, n, k)


class TestRules:
    def test_constant(self):
        o = make_rule_coloring(S(6, 2), 3, "constant")
        assert all(o.color_of(v) == 1 for v in vertices(S(6, 2)))

    def test_min_element_capped(self):
        o = make_rule_coloring(S(6, 2), 3, "min-element-capped")
        assert o.color_of(ElementSet.of(6, [2, 5])) == 2
        assert o.color_of(ElementSet.of(6, [4, 6])) == 3

    def test_proper_lovasz_spec_assignments(self):
        o = make_rule_coloring(K(5, 2), 3, "proper-lovasz")
        assert o.color_of(ElementSet.of(5, [1, 2])) == 1
        assert o.color_of(ElementSet.of(5, [2, 3])) == 2
        assert o.color_of(ElementSet.of(5, [3, 4])) == 3
        assert o.color_of(ElementSet.of(5, [4, 5])) == 3

    @pytest.mark.parametrize("n,k", [(4, 1), (5, 2), (6, 2), (7, 3), (8, 3), (9, 4), (10, 4)])
    def test_proper_lovasz_is_proper(self, n, k):
        spec = K(n, k)
        o = make_rule_coloring(spec, n - 2 * k + 2, "proper-lovasz")
        colors = {v.elements: o.color_of(v) for v in vertices(spec)}
        for a, b in itertools.combinations(colors, 2):
            if adjacent(spec, ElementSet(n, a), ElementSet(n, b)):
                assert colors[a] != colors[b]

    def test_random_determinism(self):
        v = ElementSet.of(6, [2, 5])
        o1 = make_rule_coloring(S(6, 2), 4, "random", seed=7)
        o2 = make_rule_coloring(S(6, 2), 4, "random", seed=7)
        assert o1.color_of(v) == o1.color_of(v) == o2.color_of(v)
        o3 = make_rule_coloring(S(6, 2), 4, "random", seed=8)
        assert any(
            o1.color_of(u) != o3.color_of(u) for u in vertices(S(6, 2))
        ), "different seeds should differ somewhere"

    def test_random_needs_seed(self):
        with pytest.raises(ValueError):
            make_rule_coloring(S(6, 2), 3, "random")

    def test_unknown_rule(self):
        with pytest.raises(ValueError):
            make_rule_coloring(S(6, 2), 3, "no-such-rule")


class TestOracleContract:
    def test_counter_per_query(self):
        o = make_rule_coloring(S(6, 2), 3, "constant")
        assert o.queries == 0
        v = ElementSet.of(6, [1, 3])
        o.color_of(v)
        o.color_of(v)
        assert o.queries == 2

    def test_counter_under_threads(self):
        o = make_rule_coloring(S(8, 2), 3, "constant")
        v = ElementSet.of(8, [1, 3])
        with ThreadPoolExecutor(max_workers=4) as pool:
            list(pool.map(lambda _: o.color_of(v), range(400)))
        assert o.queries == 400

    def test_non_vertex_query(self):
        o = make_rule_coloring(S(6, 2), 3, "constant")
        with pytest.raises(ValueError):
            o.color_of(ElementSet.of(6, [1, 2]))  # unstable

    def test_bad_palette(self):
        with pytest.raises(ValueError):
            make_rule_coloring(S(6, 2), 0, "constant")

    def test_bad_answer_rejected(self):
        o = ColoringOracle(S(6, 2), 3, "table", lambda a: 0)
        with pytest.raises(ContractViolation):
            o.color_of(ElementSet.of(6, [1, 3]))


class TestFiles:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "c.tbl"
        o = make_rule_coloring(S(6, 2), 3, "min-element-capped")
        save_coloring(o, path)
        loaded = load_coloring(path)
        assert loaded.spec == S(6, 2) and loaded.m == 3
        for v in vertices(S(6, 2)):
            assert loaded.color_of(v) == min(v.elements[0], 3)

    def test_table_lookup_example(self, tmp_path):
        path = tmp_path / "c.tbl"
        path.write_text("6 2 3 schrijver\n# comment line\n1,3 2\n")
        o = load_coloring(path)
        assert o.color_of(ElementSet.of(6, [1, 3])) == 2

    def test_partial_table_queries_error(self, tmp_path):
        path = tmp_path / "c.tbl"
        path.write_text("6 2 3 schrijver\n1,3 2\n")
        o = load_coloring(path)
        with pytest.raises(ContractViolation):
            o.color_of(ElementSet.of(6, [2, 5]))

    def test_color_zero_rejected(self, tmp_path):
        path = tmp_path / "c.tbl"
        path.write_text("6 2 3 schrijver\n1,3 0\n")
        with pytest.raises(ValueError):
            load_coloring(path)

    def test_color_above_palette_rejected(self, tmp_path):
        path = tmp_path / "c.tbl"
        path.write_text("6 2 3 schrijver\n1,3 4\n")
        with pytest.raises(ValueError):
            load_coloring(path)

    def test_duplicate_vertex_rejected(self, tmp_path):
        path = tmp_path / "c.tbl"
        path.write_text("6 2 3 schrijver\n1,3 1\n1,3 2\n")
        with pytest.raises(ValueError):
            load_coloring(path)

    def test_malformed_line_rejected(self, tmp_path):
        path = tmp_path / "c.tbl"
        path.write_text("6 2 3 schrijver\n1,3\n")
        with pytest.raises(ValueError):
            load_coloring(path)

    def test_non_vertex_line_rejected(self, tmp_path):
        path = tmp_path / "c.tbl"
        path.write_text("6 2 3 schrijver\n1,2 1\n")
        with pytest.raises(ValueError):
            load_coloring(path)

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "c.tbl"
        path.write_text("6 2 3\n")
        with pytest.raises(ValueError):
            load_coloring(path)


def test_make_table_coloring():
    o = make_table_coloring(S(6, 2), 3, {(1, 3): 2})
    assert o.color_of(ElementSet.of(6, [1, 3])) == 2
    assert o.queries == 1
