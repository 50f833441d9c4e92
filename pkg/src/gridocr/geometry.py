"""Axis-aligned rectangle arithmetic in pixel space and on the quantization grid.

Pixel boxes use a top-left origin with x growing rightward and y downward.
Grid boxes hold cell indices on a fixed-pixel-step lattice; the lattice is
absolute (same pixel step for every image), not image-relative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class BBox:
    """Pixel-space rectangle (x1, y1, x2, y2) with x1 <= x2 and y1 <= y2.

    Degenerate (zero width or height) boxes are legal; their area is 0.
    """

    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self) -> None:
        if self.x1 < 0 or self.y1 < 0:
            raise ValueError(f"negative coordinates in {self.as_list()}")
        if self.x2 < self.x1 or self.y2 < self.y1:
            raise ValueError(f"inverted corners in {self.as_list()}")

    @property
    def width(self) -> float:
        return self.x2 - self.x1

    @property
    def height(self) -> float:
        return self.y2 - self.y1

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def center(self) -> tuple[float, float]:
        return (self.x1 + self.x2) / 2.0, (self.y1 + self.y2) / 2.0

    def contains_point(self, x: float, y: float) -> bool:
        return self.x1 <= x <= self.x2 and self.y1 <= y <= self.y2

    def as_list(self) -> list[float]:
        """Serialized form used in every JSON format: [x1, y1, x2, y2]."""
        return [self.x1, self.y1, self.x2, self.y2]

    @classmethod
    def from_list(cls, values) -> "BBox":
        x1, y1, x2, y2 = values
        return cls(float(x1), float(y1), float(x2), float(y2))


@dataclass(frozen=True)
class QuantGrid:
    """Fixed-step lattice covering images up to (n_x*step_px, n_y*step_px) pixels."""

    step_px: int
    n_x: int
    n_y: int

    def __post_init__(self) -> None:
        if self.step_px < 1:
            raise ValueError("step_px must be >= 1")
        if self.n_x < 1 or self.n_y < 1:
            raise ValueError("cell counts must be >= 1")

    @classmethod
    def for_max_size(cls, max_width: int, max_height: int, step_px: int = 10) -> "QuantGrid":
        """Grid with enough cells to cover the given maximum image size."""
        return cls(step_px=step_px,
                   n_x=math.ceil(max_width / step_px),
                   n_y=math.ceil(max_height / step_px))

    @property
    def extent_w(self) -> int:
        return self.n_x * self.step_px

    @property
    def extent_h(self) -> int:
        return self.n_y * self.step_px

    def contains(self, qbox: "QuantBox") -> bool:
        return 0 <= qbox.ix1 <= qbox.ix2 < self.n_x and 0 <= qbox.iy1 <= qbox.iy2 < self.n_y


@dataclass(frozen=True)
class QuantBox:
    """Grid-cell index rectangle; ix/iy are inclusive cell indices."""

    ix1: int
    iy1: int
    ix2: int
    iy2: int

    def __post_init__(self) -> None:
        if self.ix1 < 0 or self.iy1 < 0:
            raise ValueError(f"negative cell index in {self.as_list()}")
        if self.ix2 < self.ix1 or self.iy2 < self.iy1:
            raise ValueError(f"inverted cell indices in {self.as_list()}")

    def as_list(self) -> list[int]:
        return [self.ix1, self.iy1, self.ix2, self.iy2]

    @classmethod
    def from_list(cls, values) -> "QuantBox":
        ix1, iy1, ix2, iy2 = (int(v) for v in values)
        return cls(ix1, iy1, ix2, iy2)


def quantize(box: BBox, grid: QuantGrid) -> QuantBox:
    """Map a pixel box onto the cells its interior occupies, clamped into range.

    Lower corners use floor(coord / step). Upper corners use
    ceil(coord / step) - 1 so an edge sitting exactly on a cell boundary
    closes the lower cell instead of opening the next one. This makes
    dequantize a right inverse (quantize(dequantize(q)) == q) while the
    covering box of the result still contains the input.
    """
    s = grid.step_px

    def lo(coord: float, n: int) -> int:
        return min(max(int(math.floor(coord / s)), 0), n - 1)

    def hi(coord: float, low: int, n: int) -> int:
        return min(max(int(math.ceil(coord / s)) - 1, low), n - 1)

    ix1 = lo(box.x1, grid.n_x)
    iy1 = lo(box.y1, grid.n_y)
    return QuantBox(
        ix1=ix1,
        iy1=iy1,
        ix2=hi(box.x2, ix1, grid.n_x),
        iy2=hi(box.y2, iy1, grid.n_y),
    )


def dequantize(qbox: QuantBox, grid: QuantGrid) -> BBox:
    """Smallest pixel box covering every point that quantizes into the cell range."""
    s = grid.step_px
    return BBox(
        x1=qbox.ix1 * s,
        y1=qbox.iy1 * s,
        x2=(qbox.ix2 + 1) * s,
        y2=(qbox.iy2 + 1) * s,
    )


def intersection_area(a: BBox, b: BBox) -> float:
    w = min(a.x2, b.x2) - max(a.x1, b.x1)
    h = min(a.y2, b.y2) - max(a.y1, b.y1)
    if w <= 0 or h <= 0:
        return 0.0
    return w * h


def iou(a: BBox, b: BBox) -> float:
    """Intersection over union; 0 when disjoint or when both areas are 0."""
    inter = intersection_area(a, b)
    union = a.area + b.area - inter
    if union <= 0:
        return 0.0
    return inter / union


def expand(box: BBox, pad_px: float, width: float, height: float) -> BBox:
    """Move every side outward by pad_px, clamped to [0, width] x [0, height]."""
    if pad_px < 0:
        raise ValueError("pad_px must be >= 0")
    return BBox(
        x1=max(0.0, box.x1 - pad_px),
        y1=max(0.0, box.y1 - pad_px),
        x2=min(float(width), box.x2 + pad_px),
        y2=min(float(height), box.y2 + pad_px),
    )
