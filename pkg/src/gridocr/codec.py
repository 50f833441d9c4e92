"""Bidirectional mapping between page annotations and token sequences.

Three interchangeable encodings of a text line with quantized box
(ix1, iy1, ix2, iy2):

  original:   <x_ix1> <y_iy1>  text  <x_ix2> <y_iy2>
  segmented:  text </text> <x_ix1> <y_iy1> <x_ix2> <y_iy2> </location>
  unified:    <loc_ix1> <loc_iy1>  text  <loc_ix2> <loc_iy2>

Lines are concatenated in reading order and wrapped in <bos> ... <eos>.
Decoding accepts arbitrary token sequences (including malformed model
output) and recovers the maximal well-formed prefix of each element,
reporting what it had to drop or repair.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import BBox, QuantBox, QuantGrid, dequantize, quantize
from .vocab import Vocabulary

SCHEMES = ("original", "segmented", "unified")

TASKS = ("ocr", "ocr_layout", "read_at", "find_it")


@dataclass(frozen=True)
class LineElement:
    """One text line paired with its pixel-space box."""

    text: str
    box: BBox

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ValueError("line text is empty")


@dataclass(frozen=True)
class TaskPrompt:
    """One of the four task specifications with its argument."""

    task: str
    region: QuantBox | None = None
    query: str | None = None

    def __post_init__(self) -> None:
        if self.task not in TASKS:
            raise ValueError(f"unknown task {self.task!r}")
        if self.task == "read_at" and self.region is None:
            raise ValueError("read_at prompt requires a region")
        if self.task == "find_it" and not (self.query or "").strip():
            raise ValueError("find_it prompt requires a non-empty query")
        if self.task in ("ocr", "ocr_layout") and (self.region or self.query):
            raise ValueError(f"{self.task} takes no argument")

    @classmethod
    def ocr(cls) -> "TaskPrompt":
        return cls("ocr")

    @classmethod
    def ocr_layout(cls) -> "TaskPrompt":
        return cls("ocr_layout")

    @classmethod
    def read_at(cls, region: QuantBox) -> "TaskPrompt":
        return cls("read_at", region=region)

    @classmethod
    def find_it(cls, query: str) -> "TaskPrompt":
        return cls("find_it", query=query)


@dataclass
class DecodeDiagnostics:
    """Structural repairs and losses encountered while parsing model output."""

    dropped_tokens: int = 0
    incomplete_elements: int = 0
    coord_repairs: int = 0

    def ok(self) -> bool:
        return self.dropped_tokens == 0 and self.incomplete_elements == 0 and self.coord_repairs == 0

    def as_dict(self) -> dict:
        return {
            "dropped_tokens": self.dropped_tokens,
            "incomplete_elements": self.incomplete_elements,
            "coord_repairs": self.coord_repairs,
        }


def reading_order(elements) -> list[LineElement]:
    """Top-to-bottom by y1, ties broken left-to-right by x1."""
    return sorted(elements, key=lambda e: (e.box.y1, e.box.x1))


def _check_scheme(scheme: str) -> None:
    if scheme not in SCHEMES:
        raise ValueError(f"unknown encoding scheme {scheme!r}")


def _corner_tokens(q: QuantBox, vocab: Vocabulary, scheme: str) -> tuple[list[int], list[int]]:
    """(leading, trailing) location tokens for one element under a scheme."""
    if scheme == "unified":
        first = [vocab.loc_id(q.ix1), vocab.loc_id(q.iy1)]
        second = [vocab.loc_id(q.ix2), vocab.loc_id(q.iy2)]
    else:
        first = [vocab.x_id(q.ix1), vocab.y_id(q.iy1)]
        second = [vocab.x_id(q.ix2), vocab.y_id(q.iy2)]
    return first, second


def location_tokens(q: QuantBox, vocab: Vocabulary, scheme: str) -> list[int]:
    """The four location token ids of a quantized box under a scheme."""
    _check_scheme(scheme)
    first, second = _corner_tokens(q, vocab, scheme)
    return first + second


def encode_element(element: LineElement, grid: QuantGrid, vocab: Vocabulary, scheme: str) -> list[int]:
    q = quantize(element.box, grid)
    if not grid.contains(q):
        raise ValueError("box outside grid extent")
    first, second = _corner_tokens(q, vocab, scheme)
    text = vocab.encode_text(element.text)
    if scheme == "segmented":
        return text + [vocab.end_text_id] + first + second + [vocab.end_loc_id]
    return first + text + second


def encode_page_body(elements, grid: QuantGrid, vocab: Vocabulary, scheme: str) -> list[int]:
    """Concatenated per-element encodings in reading order, no <bos>/<eos>."""
    _check_scheme(scheme)
    out: list[int] = []
    for idx, element in enumerate(reading_order(elements)):
        box = element.box
        if box.x2 > grid.extent_w or box.y2 > grid.extent_h:
            raise ValueError(f"element {idx} box {box.as_list()} outside grid extent")
        out.extend(encode_element(element, grid, vocab, scheme))
    return out


def encode_page(elements, grid: QuantGrid, vocab: Vocabulary, scheme: str) -> list[int]:
    """Full page target sequence: <bos> body <eos>."""
    return [vocab.bos_id] + encode_page_body(elements, grid, vocab, scheme) + [vocab.eos_id]


def _finish_element(ix1: int, iy1: int, ix2: int, iy2: int, chars: list[str],
                    grid: QuantGrid, vocab: Vocabulary,
                    diags: DecodeDiagnostics) -> LineElement | None:
    text = "".join(chars)
    if not text.strip():
        # structurally complete but violates the non-empty-text invariant
        diags.incomplete_elements += 1
        diags.dropped_tokens += 4 + len(chars)
        return None
    repaired = False
    if ix1 > ix2:
        ix1, ix2 = ix2, ix1
        repaired = True
    if iy1 > iy2:
        iy1, iy2 = iy2, iy1
        repaired = True
    if repaired:
        diags.coord_repairs += 1
    q = QuantBox(min(ix1, grid.n_x - 1), min(iy1, grid.n_y - 1),
                 min(ix2, grid.n_x - 1), min(iy2, grid.n_y - 1))
    return LineElement(text=text, box=dequantize(q, grid))


def decode_page(tokens, grid: QuantGrid, vocab: Vocabulary, scheme: str
                ) -> tuple[list[LineElement], DecodeDiagnostics]:
    """Inverse of encode_page on well-formed input; total on anything else.

    Recovered boxes are grid-aligned pixel boxes (dequantized). Inverted
    corner pairs are swapped and counted as repairs; an element whose
    structure never completes is dropped and counted.
    """
    _check_scheme(scheme)
    diags = DecodeDiagnostics()
    elements: list[LineElement] = []

    token_list = list(tokens)
    for tid in token_list:
        if not 0 <= tid < len(vocab):
            raise ValueError(f"token id {tid} outside vocabulary")

    # <bos>/<pad> are structural noise; everything after <eos> is unreachable
    stream: list[int] = []
    for pos, tid in enumerate(token_list):
        if tid == vocab.eos_id:
            diags.dropped_tokens += len(token_list) - pos - 1
            break
        if tid not in (vocab.bos_id, vocab.pad_id):
            stream.append(tid)

    if scheme == "segmented":
        _decode_segmented(stream, grid, vocab, elements, diags)
    else:
        unified = scheme == "unified"
        _decode_interleaved(stream, grid, vocab, unified, elements, diags)
    return elements, diags


def _loc_index(tid: int, vocab: Vocabulary, unified: bool, axis: str) -> int | None:
    """Grid index of a location token if it fits the expected axis, else None."""
    if unified:
        if vocab.is_loc(tid):
            return vocab.loc_index(tid)
        return None
    if axis == "x" and vocab.is_x(tid):
        return vocab.x_index(tid)
    if axis == "y" and vocab.is_y(tid):
        return vocab.y_index(tid)
    return None


def _decode_interleaved(stream, grid, vocab, unified, elements, diags) -> None:
    # element := LOCx LOCy char* LOCx LOCy   (LOC tokens are <loc_*> when unified)
    i, n = 0, len(stream)
    while i < n:
        start = i
        coords: list[int] = []
        for axis in ("x", "y"):
            if i < n:
                idx = _loc_index(stream[i], vocab, unified, axis)
                if idx is not None:
                    coords.append(idx)
                    i += 1
                    continue
            break
        if len(coords) < 2:
            # not the start of an element: drop tokens up to here plus one
            i = max(i, start + 1)
            diags.dropped_tokens += i - start
            if coords:
                diags.incomplete_elements += 1
            continue
        chars: list[str] = []
        while i < n and vocab.is_char(stream[i]):
            chars.append(vocab.to_string(stream[i]))
            i += 1
        tail: list[int] = []
        for axis in ("x", "y"):
            if i < n:
                idx = _loc_index(stream[i], vocab, unified, axis)
                if idx is not None:
                    tail.append(idx)
                    i += 1
                    continue
            break
        if len(tail) < 2:
            diags.incomplete_elements += 1
            diags.dropped_tokens += i - start
            if i == start:
                i += 1
            continue
        element = _finish_element(coords[0], coords[1], tail[0], tail[1], chars,
                                  grid, vocab, diags)
        if element is not None:
            elements.append(element)


def _decode_segmented(stream, grid, vocab, elements, diags) -> None:
    # element := char* </text> LOCx LOCy LOCx LOCy </location>
    i, n = 0, len(stream)
    while i < n:
        start = i
        chars: list[str] = []
        while i < n and vocab.is_char(stream[i]):
            chars.append(vocab.to_string(stream[i]))
            i += 1
        if i >= n or stream[i] != vocab.end_text_id:
            diags.dropped_tokens += max(i - start, 0) + (0 if i >= n else 1)
            if chars:
                diags.incomplete_elements += 1
            i += 1
            continue
        i += 1  # consume </text>
        coords: list[int] = []
        for axis in ("x", "y", "x", "y"):
            if i < n:
                idx = _loc_index(stream[i], vocab, False, axis)
                if idx is not None:
                    coords.append(idx)
                    i += 1
                    continue
            break
        closed = i < n and stream[i] == vocab.end_loc_id
        if len(coords) < 4 or not closed:
            diags.incomplete_elements += 1
            diags.dropped_tokens += i - start
            if i == start:
                i += 1
            continue
        i += 1  # consume </location>
        element = _finish_element(coords[0], coords[1], coords[2], coords[3], chars,
                                  grid, vocab, diags)
        if element is not None:
            elements.append(element)


def decode_text(tokens, vocab: Vocabulary) -> tuple[list[str], DecodeDiagnostics]:
    """Parse a text-only target (ocr / read_at output) into lines.

    <nl> separates lines; location and structural tokens are junk here and
    get counted as dropped.
    """
    diags = DecodeDiagnostics()
    lines: list[str] = [""]
    for tid in tokens:
        if not 0 <= tid < len(vocab):
            raise ValueError(f"token id {tid} outside vocabulary")
        if tid == vocab.eos_id:
            break
        if tid in (vocab.bos_id, vocab.pad_id):
            continue
        if tid == vocab.nl_id:
            lines.append("")
        elif vocab.is_char(tid):
            lines[-1] += vocab.to_string(tid)
        else:
            diags.dropped_tokens += 1
    return [ln for ln in lines if ln.strip()], diags


def encode_prompt(prompt: TaskPrompt, grid: QuantGrid, vocab: Vocabulary) -> list[int]:
    """Task prefix fed to the decoder before generation starts.

    Region prompts always use the per-axis <x_*>/<y_*> tokens, whatever the
    page encoding scheme.
    """
    tid = vocab.task_ids[prompt.task]
    if prompt.task in ("ocr", "ocr_layout"):
        return [tid]
    if prompt.task == "read_at":
        q = prompt.region
        if not grid.contains(q):
            raise ValueError(f"prompt region {q.as_list()} outside grid")
        return [tid, vocab.x_id(q.ix1), vocab.y_id(q.iy1), vocab.x_id(q.ix2), vocab.y_id(q.iy2)]
    return [tid] + vocab.encode_text(prompt.query)


def word_span_matches(elements, query: str) -> list[int]:
    """Indices of lines containing the query as a contiguous word-level span."""
    q_words = query.split()
    if not q_words:
        return []
    hits = []
    for idx, element in enumerate(elements):
        words = element.text.split()
        k = len(q_words)
        if any(words[i:i + k] == q_words for i in range(len(words) - k + 1)):
            hits.append(idx)
    return hits


def text_lines_target(lines, vocab: Vocabulary) -> list[int]:
    out: list[int] = []
    for i, line in enumerate(lines):
        if i:
            out.append(vocab.nl_id)
        out.extend(vocab.encode_text(line))
    return out


def expected_target(prompt: TaskPrompt, elements, grid: QuantGrid,
                    vocab: Vocabulary, scheme: str) -> list[int]:
    """Ground-truth body tokens for a prompt over a page (no <bos>/<eos>).

    read_at transcribes the lines whose box center falls inside the
    dequantized prompt region; find_it answers with the location tokens of
    the single line containing the query.
    """
    _check_scheme(scheme)
    ordered = reading_order(elements)
    if prompt.task == "ocr":
        return text_lines_target([e.text for e in ordered], vocab)
    if prompt.task == "ocr_layout":
        return encode_page_body(ordered, grid, vocab, scheme)
    if prompt.task == "read_at":
        region = dequantize(prompt.region, grid)
        inside = [e.text for e in ordered if region.contains_point(*e.box.center)]
        return text_lines_target(inside, vocab)
    # find_it
    hits = word_span_matches(ordered, prompt.query)
    if len(hits) != 1:
        raise ValueError(f"query {prompt.query!r} matches {len(hits)} lines, need exactly 1")
    q = quantize(ordered[hits[0]].box, grid)
    first, second = _corner_tokens(q, vocab, scheme)
    return first + second
