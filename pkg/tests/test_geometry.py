import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridocr.geometry import (BBox, QuantBox, QuantGrid, dequantize, expand,
                              intersection_area, iou, quantize)
from util import iou_pixel_oracle, quantize_oracle, random_box

GRID = QuantGrid.for_max_size(640, 640, step_px=10)


class TestBBox:
    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            BBox(5, 0, 4, 10)
        with pytest.raises(ValueError):
            BBox(-1, 0, 4, 10)

    def test_degenerate_allowed(self):
        assert BBox(3, 3, 3, 3).area == 0

    def test_serialization(self):
        box = BBox(1, 2, 3, 4)
        assert BBox.from_list(box.as_list()) == box


class TestQuantize:
    def test_examples(self):
        # boundary edge closes the lower cell; interior edges occupy their cell
        assert quantize(BBox(10, 20, 50, 30), GRID) == QuantBox(1, 2, 4, 2)
        assert quantize(BBox(0, 0, 0, 0), GRID) == QuantBox(0, 0, 0, 0)
        assert quantize(BBox(123, 7, 126, 9), GRID) == QuantBox(12, 0, 12, 0)

    def test_examples_match_occupancy_oracle(self):
        for box in (BBox(10, 20, 50, 30), BBox(0, 0, 0, 0), BBox(123, 7, 126, 9)):
            assert quantize(box, GRID) == quantize_oracle(box, GRID)

    def test_matches_occupancy_oracle_randomly(self):
        rng = np.random.default_rng(7)
        for _ in range(500):
            box = random_box(rng, GRID.extent_w, GRID.extent_h)
            assert quantize(box, GRID) == quantize_oracle(box, GRID)

    def test_clamps_outside_extent(self):
        q = quantize(BBox(0, 0, 10_000, 10_000), GRID)
        assert GRID.contains(q)
        assert q == QuantBox(0, 0, GRID.n_x - 1, GRID.n_y - 1)


class TestDequantize:
    def test_examples(self):
        assert dequantize(QuantBox(1, 2, 5, 3), GRID).as_list() == [10, 20, 60, 40]
        assert dequantize(QuantBox(0, 0, 0, 0), GRID).as_list() == [0, 0, 10, 10]

    @given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63), st.integers(0, 63))
    def test_right_inverse_of_quantize(self, a, b, c, d):
        q = QuantBox(min(a, c), min(b, d), max(a, c), max(b, d))
        assert quantize(dequantize(q, GRID), GRID) == q

    @settings(max_examples=300)
    @given(st.floats(0, 640), st.floats(0, 640), st.floats(0, 640), st.floats(0, 640))
    def test_roundtrip_contains_and_is_tight(self, x1, y1, x2, y2):
        box = BBox(min(x1, x2), min(y1, y2), max(x1, x2), max(y1, y2))
        cover = dequantize(quantize(box, GRID), GRID)
        assert cover.x1 <= box.x1 and cover.y1 <= box.y1
        assert cover.x2 >= box.x2 and cover.y2 >= box.y2
        for got, want in zip(cover.as_list(), box.as_list()):
            assert abs(got - want) <= GRID.step_px


class TestIou:
    def test_identical(self):
        box = BBox(3, 4, 20, 30)
        assert iou(box, box) == 1.0

    def test_disjoint(self):
        assert iou(BBox(0, 0, 10, 10), BBox(20, 20, 30, 30)) == 0.0

    def test_half_overlap_matches_pixel_oracle(self):
        a, b = BBox(0, 0, 10, 10), BBox(5, 0, 15, 10)
        assert iou(a, b) == pytest.approx(1 / 3)
        assert iou_pixel_oracle(a, b, scale=8) == pytest.approx(1 / 3, abs=0.02)

    def test_zero_area_pairs(self):
        point = BBox(5, 5, 5, 5)
        assert iou(point, point) == 0.0

    def test_symmetry(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            a = random_box(rng, 100, 100)
            b = random_box(rng, 100, 100)
            assert iou(a, b) == pytest.approx(iou(b, a))
            assert 0.0 <= iou(a, b) <= 1.0


class TestExpand:
    def test_examples(self):
        assert expand(BBox(10, 10, 20, 20), 1, 100, 100).as_list() == [9, 9, 21, 21]
        assert expand(BBox(0, 0, 20, 20), 2, 100, 100).as_list() == [0, 0, 22, 22]
        box = BBox(4, 5, 6, 7)
        assert expand(box, 0, 100, 100) == box

    def test_clamps_to_bounds(self):
        got = expand(BBox(90, 90, 100, 100), 5, 100, 100)
        assert got.as_list() == [85, 85, 100, 100]

    def test_joint_expansion_never_shrinks_intersection(self):
        rng = np.random.default_rng(23)
        for _ in range(200):
            a = random_box(rng, 100, 100)
            b = random_box(rng, 100, 100)
            base = intersection_area(a, b)
            grown = intersection_area(expand(a, 2, 100, 100), expand(b, 2, 100, 100))
            assert grown >= base - 1e-9
