"""Corpus assembly: renders pages to PNG, writes the manifest JSONL and the
per-split task files with prompt/target pairs for the four tasks.

File layout under the output directory:

    corpus.json        build parameters (seed, counts, grid step)
    images/<id>.png    8-bit grayscale pages
    manifest.jsonl     one page per line (includes its split and task)
    tasks_train.jsonl  {"id", "task", "prompt_arg", "target"}
    tasks_val.jsonl
    tasks_test.jsonl

(seed, template, n) -> bit-identical corpus: every sample derives its own
RNG stream from (seed, index, attempt), so page content never depends on
generation order or on task-sampling options.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from PIL import Image

from .codec import TASKS, TaskPrompt, expected_target, word_span_matches
from .geometry import BBox, QuantGrid, dequantize, quantize
from .synthgen import AugmentConfig, GenerationError, PageSpec, SampleManifest, generate_page
from .vocab import Vocabulary

SPLITS = ("train", "val", "test")


@dataclass(frozen=True)
class CorpusTemplate:
    """Ranges the per-page specs are drawn from, plus task/split policy."""

    width: tuple[int, int] = (384, 448)
    height: tuple[int, int] = (224, 288)
    style_mix: tuple[float, float] = (0.7, 0.3)  # article, receipt
    scale_x: int = 1
    scale_y: int = 2
    n_lines: tuple[int, int] = (3, 6)
    words_per_line: tuple[int, int] = (1, 12)
    line_spacing: tuple[int, int] = (6, 14)
    margin: tuple[int, int] = (8, 24)
    augment: AugmentConfig = field(default_factory=AugmentConfig.none)
    task_mix: dict = field(default_factory=lambda: {
        "ocr": 0.25, "ocr_layout": 0.25, "read_at": 0.25, "find_it": 0.25})
    split_ratios: tuple[float, float, float] = (0.8, 0.1, 0.1)
    findit_words: tuple[int, int] = (1, 4)

    def __post_init__(self) -> None:
        if abs(sum(self.task_mix.values()) - 1.0) > 1e-9:
            raise ValueError("task mix must sum to 1")
        if abs(sum(self.split_ratios) - 1.0) > 1e-9:
            raise ValueError("split ratios must sum to 1")
        for task in self.task_mix:
            if task not in TASKS:
                raise ValueError(f"unknown task {task!r}")


@dataclass
class TaskRecord:
    id: str
    task: str
    prompt_arg: object  # None | [x1, y1, x2, y2] | query string
    target: object      # None | text | [x1, y1, x2, y2]

    def to_record(self) -> dict:
        return {"id": self.id, "task": self.task,
                "prompt_arg": self.prompt_arg, "target": self.target}

    @classmethod
    def from_record(cls, record: dict) -> "TaskRecord":
        return cls(record["id"], record["task"], record["prompt_arg"], record["target"])

    def prompt(self, grid: QuantGrid) -> TaskPrompt:
        if self.task == "ocr":
            return TaskPrompt.ocr()
        if self.task == "ocr_layout":
            return TaskPrompt.ocr_layout()
        if self.task == "read_at":
            return TaskPrompt.read_at(quantize(BBox.from_list(self.prompt_arg), grid))
        return TaskPrompt.find_it(self.prompt_arg)


def apportion(n: int, ratios) -> list[int]:
    """Largest-remainder rounding: counts sum to n, each within 1 of n*ratio."""
    exact = [n * r for r in ratios]
    counts = [int(np.floor(e)) for e in exact]
    remainder = n - sum(counts)
    order = np.argsort([c - e for c, e in zip(counts, exact)])
    for i in range(remainder):
        counts[order[i]] += 1
    return counts


def _sample_read_at(rng: np.random.Generator, manifest: SampleManifest,
                    grid: QuantGrid, attempts: int = 20) -> TaskRecord | None:
    lines = manifest.lines
    order = rng.permutation(len(lines))
    for li in order:
        line = lines[int(li)]
        for k in range(attempts):
            if k == attempts - 1:
                jitter = np.zeros(4)
            else:
                jitter = rng.uniform(-grid.step_px, grid.step_px, size=4)
            xs = sorted((min(max(0.0, line.box.x1 + jitter[0]), manifest.width),
                         min(max(0.0, line.box.x2 + jitter[2]), manifest.width)))
            ys = sorted((min(max(0.0, line.box.y1 + jitter[1]), manifest.height),
                         min(max(0.0, line.box.y2 + jitter[3]), manifest.height)))
            box = BBox(xs[0], ys[0], xs[1], ys[1])
            region = dequantize(quantize(box, grid), grid)
            selected = [e for e in lines if region.contains_point(*e.box.center)]
            if len(selected) == 1 and selected[0] is line:
                return TaskRecord(manifest.id, "read_at",
                                  [round(v, 2) for v in box.as_list()], line.text)
    return None


def _sample_find_it(rng: np.random.Generator, manifest: SampleManifest,
                    span: tuple[int, int], attempts: int = 30) -> TaskRecord | None:
    lines = manifest.lines
    lo, hi = span
    for _ in range(attempts):
        line = lines[int(rng.integers(0, len(lines)))]
        words = line.text.split()
        if len(words) < lo:
            continue
        k = int(rng.integers(lo, min(hi, len(words)) + 1))
        start = int(rng.integers(0, len(words) - k + 1))
        query = " ".join(words[start:start + k])
        if len(word_span_matches(lines, query)) == 1:
            return TaskRecord(manifest.id, "find_it", query,
                              [round(v, 2) for v in line.box.as_list()])
    return None


def _build_sample(seed: int, index: int, template: CorpusTemplate, task: str,
                  grid: QuantGrid, max_attempts: int = 10
                  ) -> tuple[np.ndarray, SampleManifest, TaskRecord]:
    """Generate one page and its task record, resampling the page when the
    task prompt cannot be constructed on it."""
    for attempt in range(max_attempts):
        stream = np.random.SeedSequence(entropy=seed, spawn_key=(index, attempt))
        meta_child, task_child = stream.spawn(2)
        meta_rng = np.random.default_rng(meta_child)
        page_seed = int(meta_rng.integers(0, 2**63 - 1))
        style = "article" if meta_rng.uniform() < template.style_mix[0] else "receipt"
        spec = PageSpec(
            width=int(meta_rng.integers(template.width[0], template.width[1] + 1)),
            height=int(meta_rng.integers(template.height[0], template.height[1] + 1)),
            style=style,
            scale_x=template.scale_x,
            scale_y=template.scale_y,
            n_lines=template.n_lines,
            words_per_line=template.words_per_line,
            line_spacing=template.line_spacing,
            margin=template.margin,
            augment=template.augment,
            seed=page_seed,
        )
        try:
            image, manifest = generate_page(spec)
        except GenerationError:
            continue
        manifest.id = f"{index:07d}"
        manifest.image = f"images/{manifest.id}.png"

        task_rng = np.random.default_rng(task_child)
        if task == "ocr":
            record = TaskRecord(manifest.id, "ocr", None,
                                "\n".join(e.text for e in manifest.lines))
        elif task == "ocr_layout":
            record = TaskRecord(manifest.id, "ocr_layout", None, None)
        elif task == "read_at":
            record = _sample_read_at(task_rng, manifest, grid)
        else:
            record = _sample_find_it(task_rng, manifest, template.findit_words)
        if record is not None:
            return image, manifest, record
    raise GenerationError(f"could not build sample {index} for task {task!r}")


def build_corpus(out_dir, n: int, template: CorpusTemplate, grid: QuantGrid,
                 seed: int = 0) -> dict:
    """Write a complete corpus; returns the summary dict (also corpus.json)."""
    if n < 1:
        raise ValueError("need n >= 1")
    out = Path(out_dir)
    (out / "images").mkdir(parents=True, exist_ok=True)

    tasks = sorted(template.task_mix)
    task_counts = apportion(n, [template.task_mix[t] for t in tasks])
    task_list = [t for t, c in zip(tasks, task_counts) for _ in range(c)]
    assign_rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0xA11,)))
    task_order = [task_list[i] for i in assign_rng.permutation(n)]

    split_counts = apportion(n, template.split_ratios)
    split_order = [s for s, c in zip(SPLITS, split_counts) for _ in range(c)]

    manifest_rows = []
    task_rows = {s: [] for s in SPLITS}
    per_task = {t: 0 for t in tasks}
    for index in range(n):
        task = task_order[index]
        image, manifest, record = _build_sample(seed, index, template, task, grid)
        Image.fromarray(image, mode="L").save(out / manifest.image, optimize=False)
        split = split_order[index]
        row = manifest.to_record()
        row["split"] = split
        row["task"] = task
        manifest_rows.append(row)
        task_rows[split].append(record.to_record())
        per_task[task] += 1

    with open(out / "manifest.jsonl", "w") as fh:
        for row in manifest_rows:
            fh.write(json.dumps(row) + "\n")
    for split in SPLITS:
        with open(out / f"tasks_{split}.jsonl", "w") as fh:
            for row in task_rows[split]:
                fh.write(json.dumps(row) + "\n")

    summary = {
        "format": "gridocr-corpus/1",
        "seed": seed,
        "n": n,
        "step_px": grid.step_px,
        "grid": [grid.n_x, grid.n_y],
        "task_counts": per_task,
        "split_counts": dict(zip(SPLITS, split_counts)),
        "template": _template_record(template),
    }
    with open(out / "corpus.json", "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
    return summary


def _template_record(template: CorpusTemplate) -> dict:
    record = dataclasses.asdict(template)
    return record


def load_manifests(corpus_dir, split: str | None = None) -> list[SampleManifest]:
    rows = _read_jsonl(Path(corpus_dir) / "manifest.jsonl")
    if split is not None:
        rows = [r for r in rows if r.get("split") == split]
    return [SampleManifest.from_record(r) for r in rows]


def load_tasks(corpus_dir, split: str) -> list[TaskRecord]:
    return [TaskRecord.from_record(r)
            for r in _read_jsonl(Path(corpus_dir) / f"tasks_{split}.jsonl")]


def load_summary(corpus_dir) -> dict:
    with open(Path(corpus_dir) / "corpus.json") as fh:
        return json.load(fh)


def _read_jsonl(path: Path) -> list[dict]:
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append(json.loads(line))
    return rows


def verify_task_record(record: TaskRecord, manifest: SampleManifest,
                       grid: QuantGrid, vocab: Vocabulary, scheme: str) -> bool:
    """Cross-check a stored prompt/target pair against expected_target."""
    prompt = record.prompt(grid)
    target = expected_target(prompt, manifest.lines, grid, vocab, scheme)
    if record.task == "read_at":
        want = vocab.encode_text(record.target)
        return target == want
    if record.task == "find_it":
        from .codec import location_tokens
        q = quantize(BBox.from_list(record.target), grid)
        return target == location_tokens(q, vocab, scheme)
    return True
