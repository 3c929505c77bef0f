import numpy as np
import pytest

from core.exceptions import (
    EndpointMismatchError,
    ExtentError,
    FieldFormatError,
    LatticeOrderError,
    ParityError,
)
from core.lpp import (
    WeightField,
    dump_field,
    floored_target,
    last_passage,
    load_field,
    max_displacement,
    passage_value,
    point_to_line,
    sample_field,
    summarize_geodesic,
)


def field_from(entries, size):
    weights = np.zeros((size + 1, size + 1))
    for (x, y), w in entries.items():
        weights[x, y] = w
    return WeightField.from_weights(weights)


class TestWeightField:
    def test_sub_rectangle_consistency(self, exp1):
        big = sample_field(exp1, 12, 9, seed=3)
        small = sample_field(exp1, 5, 4, seed=3)
        assert np.array_equal(big.weights[:6, :5], small.weights)
        assert big.restrict(5, 4).weights.tolist() == small.weights.tolist()

    def test_immutable(self, exp1):
        field = sample_field(exp1, 3, 3, seed=1)
        with pytest.raises(ValueError):
            field.weights[1, 1] = 0.0

    def test_bad_extents(self, exp1):
        with pytest.raises(ExtentError):
            sample_field(exp1, 0, 3, seed=1)
        with pytest.raises(ExtentError):
            WeightField.from_weights([[0.0, -1.0], [1.0, 1.0]])

    def test_dump_and_load(self, gamma21, tmp_path):
        field = sample_field(gamma21, 4, 6, seed=123)
        path = tmp_path / "field.lppf"
        size = dump_field(field, path)
        assert size == path.stat().st_size
        assert load_field(path) == field

    def test_load_rejects_garbage(self, tmp_path):
        path = tmp_path / "bad.lppf"
        path.write_bytes(b"NOPE" + bytes(60))
        with pytest.raises(FieldFormatError):
            load_field(path)
        path.write_bytes(b"LPP")
        with pytest.raises(FieldFormatError):
            load_field(path)


class TestLastPassage:
    def test_single_step(self):
        field = field_from({(1, 0): 2.0, (0, 1): 3.0}, 1)
        assert passage_value(field, (0, 0), (1, 0)) == 2.0
        assert passage_value(field, (0, 0), (0, 1)) == 3.0

    def test_source_weight_excluded(self):
        field = field_from({(0, 0): 100.0, (1, 1): 1.0}, 1)
        assert last_passage(field, (0, 0), (0, 0)).value == 0.0
        assert last_passage(field, (0, 0), (1, 1)).value == 1.0

    def test_two_by_two(self):
        field = field_from({(1, 0): 1.0, (0, 1): 4.0, (1, 1): 2.0}, 1)
        result = last_passage(field, (0, 0), (1, 1))
        assert result.value == 6.0
        assert result.geodesic == ((0, 0), (0, 1), (1, 1))
        assert not result.tie_broken

    def test_rightmost_on_ties(self):
        field = WeightField.from_weights(np.zeros((4, 4)))
        result = last_passage(field, (0, 0), (3, 3))
        assert result.geodesic == ((0, 0), (1, 0), (2, 0), (3, 0), (3, 1), (3, 2), (3, 3))
        assert result.tie_broken

    def test_value_matches_table(self, exp1):
        field = sample_field(exp1, 15, 10, seed=8)
        assert last_passage(field, (2, 1), (15, 10)).value == passage_value(field, (2, 1), (15, 10))

    def test_geodesic_is_up_right(self, exp1):
        field = sample_field(exp1, 10, 10, seed=4)
        result = last_passage(field, (0, 0), (10, 10))
        steps = np.diff(np.array(result.geodesic), axis=0)
        assert len(result.geodesic) == 21
        assert all(tuple(step) in ((1, 0), (0, 1)) for step in steps)
        assert sum(field.weight(p) for p in result.geodesic[1:]) == pytest.approx(result.value)

    def test_order_and_extent_errors(self, exp1):
        field = sample_field(exp1, 3, 3, seed=1)
        with pytest.raises(LatticeOrderError):
            last_passage(field, (2, 0), (1, 3))
        with pytest.raises(ExtentError):
            last_passage(field, (0, 0), (4, 1))

    def test_monotone_coupling(self, exp1):
        field = sample_field(exp1, 6, 6, seed=10)
        base = passage_value(field, (0, 0), (6, 6))
        for point in [(3, 2), (6, 0), (1, 5)]:
            weights = field.weights.copy()
            weights[point] += 0.75
            assert passage_value(WeightField.from_weights(weights), (0, 0), (6, 6)) >= base


class TestGeodesicSummary:
    def test_corner_path(self):
        field = field_from({(1, 0): 5.0, (2, 0): 5.0, (2, 1): 5.0, (2, 2): 5.0}, 2)
        result = last_passage(field, (0, 0), (2, 2))
        summary = summarize_geodesic(result, 2)
        assert summary.midpoint == (2, 0)
        assert summary.midpoint_offset == 1
        assert summary.max_displacement == 1

    def test_summary_invariants(self, exp1):
        n = 8
        field = sample_field(exp1, n, n, seed=21)
        result = last_passage(field, (0, 0), (n, n))
        summary = summarize_geodesic(result, n, field)
        assert sum(summary.midpoint) == n
        assert summary.midpoint in result.geodesic
        assert abs(summary.midpoint_offset) <= n // 2
        assert summary.max_displacement >= abs(summary.midpoint_offset)
        assert summary.max_displacement == max_displacement(result.geodesic)
        assert summary.endpoint_ptl == point_to_line(field, n).endpoint

    def test_parity_and_endpoints(self, exp1):
        field = sample_field(exp1, 4, 4, seed=2)
        with pytest.raises(ParityError):
            summarize_geodesic(last_passage(field, (0, 0), (3, 3)), 3)
        with pytest.raises(EndpointMismatchError):
            summarize_geodesic(last_passage(field, (0, 0), (4, 2)), 4)


class TestPointToLine:
    def test_small_example(self):
        field = field_from({(1, 0): 5.0, (0, 1): 0.1, (2, 0): 0.1, (1, 1): 0.2, (0, 2): 0.1}, 2)
        value, endpoint = point_to_line(field, 2)
        assert endpoint == (1, 1)
        assert value == pytest.approx(5.2)

    def test_argmax_over_line(self, exp1):
        n = 10
        field = sample_field(exp1, n, n, seed=17)
        value, endpoint = point_to_line(field, n)
        for x in range(n + 1):
            assert passage_value(field, (0, 0), (x, n - x)) <= value
        assert passage_value(field, (0, 0), endpoint) == value
        assert value >= passage_value(field, (0, 0), (n // 2, n // 2))

    def test_ties_prefer_larger_x(self):
        field = WeightField.from_weights(np.zeros((5, 5)))
        assert point_to_line(field, 4) == (0.0, (4, 0))

    def test_zero_line(self, exp1):
        assert point_to_line(sample_field(exp1, 2, 2, seed=1), 0) == (0.0, (0, 0))


def test_floored_target():
    assert floored_target(30, 0.1) == (18, 12)
    assert floored_target(10, 0.5) == (10, 0)
    assert floored_target(5, 0.0) == (2, 2)
    assert floored_target(7, 0.25) == (5, 1)


class TestGeodesicStructure:
    def test_crosses_each_level_once(self, exp1):
        n = 9
        result = last_passage(sample_field(exp1, n, n, seed=30), (0, 0), (n, n))
        assert [x + y for x, y in result.geodesic] == list(range(2 * n + 1))
        assert not result.tie_broken

    def test_superadditivity(self, exp1):
        n = 7
        field = sample_field(exp1, n, n, seed=31)
        total = passage_value(field, (0, 0), (n, n))
        on_path = set(last_passage(field, (0, 0), (n, n)).geodesic)
        for x in range(n + 1):
            for y in range(n + 1):
                split = passage_value(field, (0, 0), (x, y)) + passage_value(field, (x, y), (n, n))
                if (x, y) in on_path:
                    assert split == pytest.approx(total, rel=1e-12)
                else:
                    assert split < total + 1e-9
