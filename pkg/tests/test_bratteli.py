import json
import math

import pytest

from skeincluster.bratteli import (
    BratteliDiagram,
    build_diagram,
    catalan_check,
    catalan_number,
    dimension_vector,
    enumerate_paths,
    inclusion_check,
    to_json_obj,
    transition_matrix,
    truncated_defect_labels,
)


class TestConstruction:
    def test_pascal_sizes(self):
        assert build_diagram("pascal", 4).sizes == (1, 2, 3, 4)

    def test_truncated_sizes(self):
        assert build_diagram("truncated-pascal", 4).sizes == (1, 2, 2, 3)
        assert build_diagram("truncated-pascal", 8).sizes == (1, 2, 2, 3, 3, 4, 4, 5)

    def test_s11_sizes(self):
        assert build_diagram("s11", 3).sizes == (1, 3, 7)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            build_diagram("fibonacci", 3)

    def test_bad_level_count(self):
        with pytest.raises(ValueError):
            build_diagram("pascal", 0)

    def test_s11_level_envelope(self):
        assert build_diagram("s11", 10).sizes[-1] == 2**10 - 1
        with pytest.raises(ValueError):
            build_diagram("s11", 11)

    def test_connectivity_validated(self):
        with pytest.raises(ValueError):
            BratteliDiagram("pascal", (1, 2), (((1, 0),),))

    def test_deterministic_rebuild(self):
        first = json.dumps(to_json_obj(build_diagram("truncated-pascal", 9)))
        second = json.dumps(to_json_obj(build_diagram("truncated-pascal", 9)))
        assert first == second


class TestDimensionVectors:
    def test_pascal_binomial_row(self):
        diagram = build_diagram("pascal", 4)
        assert dimension_vector(diagram, 3) == (1, 3, 3, 1)

    def test_truncated_small_levels(self):
        diagram = build_diagram("truncated-pascal", 4)
        assert dimension_vector(diagram, 2) == (2, 1)
        assert dimension_vector(diagram, 3) == (2, 3, 1)

    def test_s11_first_level(self):
        diagram = build_diagram("s11", 2)
        assert dimension_vector(diagram, 1) == (1, 1, 1)

    def test_pascal_rows_are_binomials_to_20(self):
        diagram = build_diagram("pascal", 21)
        for level in range(21):
            expected = tuple(math.comb(level, k) for k in range(level + 1))
            assert dimension_vector(diagram, level) == expected

    @pytest.mark.parametrize("kind", ["pascal", "truncated-pascal", "s11"])
    def test_incidence_recursion(self, kind):
        levels = 8 if kind != "s11" else 5
        diagram = build_diagram(kind, levels)
        for level in range(levels - 1):
            dims = dimension_vector(diagram, level)
            matrix = diagram.matrices[level]
            nxt = tuple(
                sum(matrix[v][j] * dims[v] for v in range(len(dims)))
                for j in range(diagram.sizes[level + 1])
            )
            assert nxt == dimension_vector(diagram, level + 1)

    def test_entries_at_least_one(self):
        for kind, levels in (("pascal", 10), ("truncated-pascal", 10), ("s11", 6)):
            diagram = build_diagram(kind, levels)
            for level in range(levels):
                assert all(d >= 1 for d in dimension_vector(diagram, level))

    def test_out_of_range(self):
        diagram = build_diagram("pascal", 3)
        with pytest.raises(IndexError):
            dimension_vector(diagram, 3)


class TestTransitionMatrices:
    def test_pascal_root_matrix(self):
        assert transition_matrix(build_diagram("pascal", 2), 0) == ((1, 1),)

    def test_truncated_level_one_matrix(self):
        # defect 0 feeds only defect 1; defect 2 feeds defects 1 and 3
        assert transition_matrix(build_diagram("truncated-pascal", 3), 1) == ((1, 0), (1, 1))

    def test_s11_root_matrix(self):
        assert transition_matrix(build_diagram("s11", 2), 0) == ((1, 1, 1),)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            transition_matrix(build_diagram("pascal", 3), 2)


class TestCatalan:
    def test_catalan_numbers(self):
        assert [catalan_number(n) for n in range(1, 8)] == [1, 2, 5, 14, 42, 132, 429]

    def test_level_one(self):
        # dims (1, 1): 1 + 1 = 2 = Catalan(2)
        report = catalan_check(1)
        assert report.passed

    def test_levels_two_and_three(self):
        report = catalan_check(3)
        assert report.passed
        details = {c.check_id: c.detail for c in report.checks}
        assert "sum of squares 5" in details["level2"]
        assert "sum of squares 14" in details["level3"]

    def test_through_level_twelve(self):
        report = catalan_check(12)
        assert report.passed
        assert len(report.checks) == 12


class TestInclusion:
    def test_level_one_equality(self):
        truncated = build_diagram("truncated-pascal", 2)
        pascal = build_diagram("pascal", 2)
        assert dimension_vector(truncated, 1) == dimension_vector(pascal, 1) == (1, 1)

    def test_level_three_bounds(self):
        # mapped positions of defects (0, 2, 4) are (2, 1, 0): (2, 3, 1) <= (3, 3, 1)
        report = inclusion_check(3)
        assert report.passed

    def test_level_eight(self):
        report = inclusion_check(8)
        assert report.passed
        ids = [c.check_id for c in report.checks]
        assert ids == [
            "edges-map-to-edges",
            "paths-valid-in-pascal",
            "paths-distinct",
            "dims-bounded-by-binomials",
        ]

    def test_path_enumeration_matches_dims(self):
        diagram = build_diagram("truncated-pascal", 7)
        for level in range(7):
            count = sum(1 for _ in enumerate_paths(diagram, level))
            assert count == sum(dimension_vector(diagram, level))

    def test_defect_labels(self):
        assert truncated_defect_labels(0) == (1,)
        assert truncated_defect_labels(1) == (0, 2)
        assert truncated_defect_labels(4) == (1, 3, 5)


class TestJson:
    def test_shape(self):
        obj = to_json_obj(build_diagram("s11", 2))
        assert obj["kind"] == "s11"
        assert obj["levels"][0] == {"size": 1, "dims": [1], "matrix": [[1, 1, 1]]}
        assert obj["levels"][1] == {"size": 3, "dims": [1, 1, 1]}
