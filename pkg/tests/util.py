"""Shared helpers for the test suite: independent oracles and random data."""

from __future__ import annotations

import numpy as np

from gridocr.codec import LineElement, reading_order
from gridocr.geometry import BBox, QuantBox, QuantGrid, dequantize
from gridocr.vocab import CHARSET


def occupied_cells_1d(lo: float, hi: float, step: int, n: int) -> tuple[int, int]:
    """Enumerate which cells the interval [lo, hi] occupies (oracle).

    A cell counts when the open interior of the interval overlaps it; a
    degenerate interval occupies the cell containing its point.
    """
    if hi <= lo:
        k = min(max(int(lo // step), 0), n - 1)
        return k, k
    cells = [k for k in range(n) if k * step < hi and (k + 1) * step > lo]
    if not cells:  # interval entirely beyond the extent
        return n - 1, n - 1
    return cells[0], cells[-1]


def quantize_oracle(box: BBox, grid: QuantGrid) -> QuantBox:
    ix1, ix2 = occupied_cells_1d(box.x1, box.x2, grid.step_px, grid.n_x)
    iy1, iy2 = occupied_cells_1d(box.y1, box.y2, grid.step_px, grid.n_y)
    return QuantBox(ix1, iy1, ix2, iy2)


def iou_pixel_oracle(a: BBox, b: BBox, scale: int = 1) -> float:
    """IoU by counting rasterized unit cells; exact for integer boxes."""
    w = int(max(a.x2, b.x2) * scale) + 1
    h = int(max(a.y2, b.y2) * scale) + 1
    xs = (np.arange(w) + 0.5) / scale
    ys = (np.arange(h) + 0.5) / scale

    def mask(box: BBox) -> np.ndarray:
        mx = (xs >= box.x1) & (xs <= box.x2)
        my = (ys >= box.y1) & (ys <= box.y2)
        return my[:, None] & mx[None, :]

    ma, mb = mask(a), mask(b)
    union = np.count_nonzero(ma | mb)
    if union == 0:
        return 0.0
    return np.count_nonzero(ma & mb) / union


def random_box(rng: np.random.Generator, max_w: float, max_h: float,
               integer: bool = False) -> BBox:
    xs = rng.uniform(0, max_w, size=2)
    ys = rng.uniform(0, max_h, size=2)
    if integer:
        xs, ys = np.floor(xs), np.floor(ys)
    return BBox(min(xs), min(ys), max(xs), max(ys))


def random_text(rng: np.random.Generator, max_len: int = 12) -> str:
    pool = CHARSET.strip(" ")  # avoid all-space strings
    n = int(rng.integers(1, max_len + 1))
    body = "".join(pool[i] for i in rng.integers(0, len(pool), size=n))
    return body


def random_aligned_page(rng: np.random.Generator, grid: QuantGrid,
                        max_lines: int = 6) -> list[LineElement]:
    """Random page whose boxes are grid-aligned (exact codec round-trips)."""
    n = int(rng.integers(1, max_lines + 1))
    elements = []
    for _ in range(n):
        ix = np.sort(rng.integers(0, grid.n_x, size=2))
        iy = np.sort(rng.integers(0, grid.n_y, size=2))
        q = QuantBox(int(ix[0]), int(iy[0]), int(ix[1]), int(iy[1]))
        elements.append(LineElement(text=random_text(rng), box=dequantize(q, grid)))
    return reading_order(elements)


def pages_equal(a: list[LineElement], b: list[LineElement]) -> bool:
    if len(a) != len(b):
        return False
    return all(x.text == y.text and x.box.as_list() == y.box.as_list()
               for x, y in zip(a, b))
