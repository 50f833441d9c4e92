"""Deterministic synthetic page renderer.

Draws multi-line article pages and receipt-like tickets with the built-in
bitmap font, applies augmentations (shear, per-glyph jitter, resolution
loss, shadow gradient, background speckle), and returns the image together
with tight line-level boxes. Boxes are derived from the final ink of each
line, after all geometric ops, so they stay tight. Ink pixels are <= 127;
page-level photometric effects never go below 160, which keeps the two
separable.

A page is a pure function of its spec (the seed drives every draw).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from . import font
from .codec import LineElement
from .geometry import BBox
from .words import RECEIPT_ITEMS, RECEIPT_SHOPS, WORDS

INK_THRESHOLD = 127  # pixel values at or below this count as ink
_PHOTOMETRIC_FLOOR = 160

STYLES = ("article", "receipt")


class GenerationError(Exception):
    pass


@dataclass(frozen=True)
class AugmentConfig:
    """Probabilities and parameter ranges for per-page augmentations."""

    p_slant: float = 0.0
    slant_range: tuple[float, float] = (0.06, 0.18)
    p_jitter: float = 0.0
    jitter_px: int = 1
    p_blur: float = 0.0
    blur_factor: int = 2
    p_shadow: float = 0.0
    p_speckle: float = 0.0
    speckle_density: float = 0.0015

    @classmethod
    def none(cls) -> "AugmentConfig":
        return cls()

    @classmethod
    def light(cls) -> "AugmentConfig":
        return cls(p_slant=0.25, p_jitter=0.25, p_blur=0.15,
                   p_shadow=0.25, p_speckle=0.25)


@dataclass(frozen=True)
class PageSpec:
    """Concrete parameters for one page; seed fully determines the output."""

    width: int = 416
    height: int = 256
    style: str = "article"
    scale_x: int = 1
    scale_y: int = 2
    n_lines: tuple[int, int] = (3, 6)
    words_per_line: tuple[int, int] = (1, 12)
    line_spacing: tuple[int, int] = (6, 14)
    margin: tuple[int, int] = (8, 24)
    augment: AugmentConfig = field(default_factory=AugmentConfig.none)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.style not in STYLES:
            raise ValueError(f"unknown style {self.style!r}")
        if self.width < 64 or self.height < 48:
            raise ValueError("page too small to render")


@dataclass
class AugmentationRecord:
    ops: list[dict] = field(default_factory=list)

    def add(self, op: str, **params) -> None:
        self.ops.append({"op": op, **params})

    def as_list(self) -> list[dict]:
        return list(self.ops)


@dataclass
class SampleManifest:
    """One page record: image reference, dimensions, ordered line elements."""

    id: str
    image: str
    width: int
    height: int
    lines: list[LineElement]
    augment: AugmentationRecord = field(default_factory=AugmentationRecord)

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "image": self.image,
            "width": self.width,
            "height": self.height,
            "lines": [{"text": e.text, "box": [round(v, 2) for v in e.box.as_list()]}
                      for e in self.lines],
            "augment": self.augment.as_list(),
        }

    @classmethod
    def from_record(cls, record: dict) -> "SampleManifest":
        lines = [LineElement(text=e["text"], box=BBox.from_list(e["box"]))
                 for e in record["lines"]]
        return cls(id=record["id"], image=record["image"], width=record["width"],
                   height=record["height"], lines=lines,
                   augment=AugmentationRecord(list(record.get("augment", []))))


def _sample_span(rng: np.random.Generator, span: tuple[int, int]) -> int:
    lo, hi = span
    return int(rng.integers(lo, hi + 1))


def _money(rng: np.random.Generator) -> str:
    return f"${rng.integers(0, 50)}.{rng.integers(0, 100):02d}"


def _article_lines(rng: np.random.Generator, spec: PageSpec, max_chars: int) -> list[str]:
    lines = []
    n = _sample_span(rng, spec.n_lines)
    title = rng.uniform() < 0.3
    for i in range(n):
        target_words = _sample_span(rng, spec.words_per_line)
        words: list[str] = []
        length = 0
        while len(words) < target_words:
            w = WORDS[int(rng.integers(0, len(WORDS)))]
            if i == 0 and title:
                w = w.upper()
            elif rng.uniform() < 0.08:
                w = w.capitalize()
            if rng.uniform() < 0.05:
                w = str(rng.integers(0, 10000))
            add = len(w) + (1 if words else 0)
            if length + add > max_chars:
                break
            words.append(w)
            length += add
        if not words:
            short = min((w for w in WORDS if len(w) <= max_chars), key=len, default=None)
            if short is None:
                raise GenerationError("no word fits the line budget")
            words = [short]
        line = " ".join(words)
        if i > 0 and rng.uniform() < 0.15 and len(line) < max_chars:
            line += "."
        lines.append(line)
    return lines


def _receipt_lines(rng: np.random.Generator, spec: PageSpec, max_chars: int) -> list[str]:
    shop = " ".join(rng.choice(RECEIPT_SHOPS, size=2, replace=False))
    lines = [shop[:max_chars]]
    lines.append(f"{rng.integers(1, 29):02d}/{rng.integers(1, 13):02d}/{rng.integers(2019, 2026)}")
    n_items = _sample_span(rng, (2, max(2, spec.n_lines[1] - 3)))
    total = 0.0
    for _ in range(n_items):
        item = RECEIPT_ITEMS[int(rng.integers(0, len(RECEIPT_ITEMS)))]
        price = round(float(rng.integers(50, 2000)) / 100, 2)
        total += price
        width = max(4, max_chars - len(item) - 1)
        lines.append(f"{item} {f'${price:.2f}'.rjust(min(width, 8))}"[:max_chars])
    lines.append(f"TOTAL ${total:.2f}"[:max_chars])
    if rng.uniform() < 0.5:
        lines.append("THANK YOU")
    return lines


def _blur_raster(raster: np.ndarray, factor: int) -> np.ndarray:
    """Resolution loss: block-average downscale then nearest upscale."""
    h, w = raster.shape
    ph = (factor - h % factor) % factor
    pw = (factor - w % factor) % factor
    padded = np.pad(raster.astype(np.float32), ((0, ph), (0, pw)), constant_values=255)
    hh, ww = padded.shape
    small = padded.reshape(hh // factor, factor, ww // factor, factor).mean(axis=(1, 3))
    up = np.repeat(np.repeat(small, factor, axis=0), factor, axis=1)
    return up[:h, :w].astype(np.uint8)


def generate_page(spec: PageSpec, max_attempts: int = 3) -> tuple[np.ndarray, SampleManifest]:
    """Render a page; returns (uint8 grayscale image, manifest).

    Retries with a reduced vertical scale when the text cannot fit, then
    raises GenerationError.
    """
    last_error: Exception | None = None
    for attempt in range(max_attempts):
        scale_y = max(1, spec.scale_y - attempt)
        try:
            return _generate_once(dataclasses.replace(spec, scale_y=scale_y))
        except GenerationError as err:
            last_error = err
    raise GenerationError(f"page generation failed after {max_attempts} attempts: {last_error}")


def _generate_once(spec: PageSpec) -> tuple[np.ndarray, SampleManifest]:
    rng = np.random.default_rng(spec.seed)
    aug = spec.augment
    record = AugmentationRecord()

    image = np.full((spec.height, spec.width), int(rng.integers(248, 256)), dtype=np.uint8)

    margin = _sample_span(rng, spec.margin)
    budget_px = spec.width - 2 * margin
    max_chars = (budget_px + font.TRACKING * spec.scale_x) // font.char_advance(spec.scale_x)
    if max_chars < 1:
        raise GenerationError("margin leaves no room for text")

    texts = (_receipt_lines if spec.style == "receipt" else _article_lines)(rng, spec, max_chars)

    slant = 0.0
    if aug.p_slant and rng.uniform() < aug.p_slant:
        slant = float(rng.uniform(*aug.slant_range)) * (1 if rng.uniform() < 0.5 else -1)
        record.add("slant", shear=round(slant, 4))
    jitter = aug.jitter_px if (aug.p_jitter and rng.uniform() < aug.p_jitter) else 0
    if jitter:
        record.add("jitter", px=jitter)
    blur = aug.blur_factor if (aug.p_blur and rng.uniform() < aug.p_blur) else 0
    if blur:
        record.add("blur", factor=blur)

    elements: list[LineElement] = []
    y = margin
    for text in texts:
        ink = int(rng.integers(0, 60))
        mask = font.render_line(text, spec.scale_x, spec.scale_y,
                                jitter_px=jitter, shear=slant, rng=rng)
        raster = np.where(mask > 0, ink, 255).astype(np.uint8)
        if blur:
            blurred = _blur_raster(raster, blur)
            if (blurred <= INK_THRESHOLD).any():
                raster = blurred
        h, w = raster.shape
        if y + h + margin > spec.height:
            break
        x = margin if spec.style == "receipt" else margin + int(
            rng.integers(0, max(1, budget_px - w + 1) // 8 + 1))
        if x + w > spec.width - 1:
            x = max(0, spec.width - 1 - w)

        dark = np.argwhere(raster <= INK_THRESHOLD)
        if dark.size == 0:
            continue
        r0, c0 = dark.min(axis=0)
        r1, c1 = dark.max(axis=0)
        region = image[y:y + h, x:x + w]
        np.minimum(region, raster, out=region)
        elements.append(LineElement(
            text=text,
            box=BBox(x + int(c0), y + int(r0), x + int(c1) + 1, y + int(r1) + 1)))
        y += h + _sample_span(rng, spec.line_spacing)

    if not elements:
        raise GenerationError("no line fits the page at this scale")

    if aug.p_shadow and rng.uniform() < aug.p_shadow:
        depth = float(rng.uniform(0.05, 0.25))
        record.add("shadow", depth=round(depth, 3))
        axis = int(rng.integers(0, 2))
        ramp = np.linspace(1.0 - depth, 1.0, image.shape[axis], dtype=np.float32)
        if rng.uniform() < 0.5:
            ramp = ramp[::-1]
        grad = ramp[:, None] if axis == 0 else ramp[None, :]
        light = image > INK_THRESHOLD
        shaded = np.maximum(image * grad, _PHOTOMETRIC_FLOOR).astype(np.uint8)
        image = np.where(light, shaded, image)

    if aug.p_speckle and rng.uniform() < aug.p_speckle:
        density = aug.speckle_density
        record.add("speckle", density=density)
        dots = rng.uniform(size=image.shape) < density
        values = rng.integers(_PHOTOMETRIC_FLOOR, 230, size=image.shape).astype(np.uint8)
        image = np.where(dots & (image > 230), values, image)

    manifest = SampleManifest(id="", image="", width=spec.width, height=spec.height,
                              lines=elements, augment=record)
    return image, manifest
