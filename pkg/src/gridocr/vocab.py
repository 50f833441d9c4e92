"""Unified token space: text characters, per-axis and unified location tokens,
control tokens, and task-prompt tokens.

The vocabulary is immutable once built and maps token strings to contiguous
integer ids. Text is tokenized at character level over a fixed Latin charset.
"""

from __future__ import annotations

import hashlib
import json

# Character set renderable by the built-in font; order defines token ids.
CHARSET = (
    " "
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "abcdefghijklmnopqrstuvwxyz"
    "0123456789"
    ".,:;!?$%&'\"()*+-/=#@_<>[]"
)

PAD = "<pad>"
BOS = "<bos>"
EOS = "<eos>"
NL = "<nl>"
END_TEXT = "</text>"
END_LOC = "</location>"
TASK_OCR = "<ocr>"
TASK_OCR_LAYOUT = "<ocr_layout>"
TASK_READ_AT = "<read_at>"
TASK_FIND_IT = "<find_it>"

CONTROL_TOKENS = (PAD, BOS, EOS, NL, END_TEXT, END_LOC,
                  TASK_OCR, TASK_OCR_LAYOUT, TASK_READ_AT, TASK_FIND_IT)

VOCAB_FORMAT = "gridocr-vocab/1"


class Vocabulary:
    """Bijective id <-> string mapping over control, text and location tokens.

    Token id layout (all ranges contiguous):
      controls | charset | <x_0..x_{n_x-1}> | <y_0..y_{n_y-1}> | <loc_0..loc_{m-1}>
    where m = max(n_x, n_y).
    """

    def __init__(self, n_x: int, n_y: int, charset: str = CHARSET):
        if len(set(charset)) != len(charset):
            raise ValueError("charset contains duplicate characters")
        self.n_x = n_x
        self.n_y = n_y
        self.charset = charset
        self.n_loc = max(n_x, n_y)

        tokens: list[str] = list(CONTROL_TOKENS)
        tokens.extend(charset)
        tokens.extend(f"<x_{i}>" for i in range(n_x))
        tokens.extend(f"<y_{i}>" for i in range(n_y))
        tokens.extend(f"<loc_{i}>" for i in range(self.n_loc))
        self._tokens = tokens
        self._ids = {tok: i for i, tok in enumerate(tokens)}
        if len(self._ids) != len(tokens):
            raise ValueError("token strings are not unique")

        self.pad_id = self._ids[PAD]
        self.bos_id = self._ids[BOS]
        self.eos_id = self._ids[EOS]
        self.nl_id = self._ids[NL]
        self.end_text_id = self._ids[END_TEXT]
        self.end_loc_id = self._ids[END_LOC]
        self.task_ids = {
            "ocr": self._ids[TASK_OCR],
            "ocr_layout": self._ids[TASK_OCR_LAYOUT],
            "read_at": self._ids[TASK_READ_AT],
            "find_it": self._ids[TASK_FIND_IT],
        }
        self.char_base = len(CONTROL_TOKENS)
        self.x_base = self.char_base + len(charset)
        self.y_base = self.x_base + n_x
        self.loc_base = self.y_base + n_y
        self._char_ids = {c: self.char_base + i for i, c in enumerate(charset)}

    def __len__(self) -> int:
        return len(self._tokens)

    def to_id(self, token: str) -> int:
        return self._ids[token]

    def to_string(self, token_id: int) -> str:
        return self._tokens[token_id]

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(self._tokens)

    # location token helpers

    def x_id(self, i: int) -> int:
        if not 0 <= i < self.n_x:
            raise ValueError(f"x index {i} outside [0, {self.n_x})")
        return self.x_base + i

    def y_id(self, i: int) -> int:
        if not 0 <= i < self.n_y:
            raise ValueError(f"y index {i} outside [0, {self.n_y})")
        return self.y_base + i

    def loc_id(self, i: int) -> int:
        if not 0 <= i < self.n_loc:
            raise ValueError(f"loc index {i} outside [0, {self.n_loc})")
        return self.loc_base + i

    def is_x(self, token_id: int) -> bool:
        return self.x_base <= token_id < self.y_base

    def is_y(self, token_id: int) -> bool:
        return self.y_base <= token_id < self.loc_base

    def is_loc(self, token_id: int) -> bool:
        return self.loc_base <= token_id < len(self._tokens)

    def is_location(self, token_id: int) -> bool:
        """True for any spatial token: per-axis or unified."""
        return self.x_base <= token_id < len(self._tokens)

    def is_char(self, token_id: int) -> bool:
        return self.char_base <= token_id < self.x_base

    def x_index(self, token_id: int) -> int:
        return token_id - self.x_base

    def y_index(self, token_id: int) -> int:
        return token_id - self.y_base

    def loc_index(self, token_id: int) -> int:
        return token_id - self.loc_base

    # text <-> ids

    def encode_text(self, text: str) -> list[int]:
        """Character-level encoding; rejects characters outside the charset."""
        unknown = sorted({c for c in text if c not in self._char_ids})
        if unknown:
            raise ValueError(f"characters outside vocabulary: {unknown!r}")
        return [self._char_ids[c] for c in text]

    def decode_text(self, ids) -> str:
        return "".join(self._tokens[i] for i in ids if self.is_char(i))

    # serialization

    def to_json(self) -> str:
        payload = {
            "format": VOCAB_FORMAT,
            "n_x": self.n_x,
            "n_y": self.n_y,
            "charset": self.charset,
            "tokens": self._tokens,
        }
        return json.dumps(payload, ensure_ascii=True, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Vocabulary":
        payload = json.loads(text)
        if payload.get("format") != VOCAB_FORMAT:
            raise ValueError(f"unsupported vocabulary format: {payload.get('format')!r}")
        vocab = cls(payload["n_x"], payload["n_y"], payload["charset"])
        if list(vocab._tokens) != payload["tokens"]:
            raise ValueError("token list does not match reconstructed vocabulary")
        return vocab

    def sha256(self) -> str:
        return hashlib.sha256(self.to_json().encode("ascii")).hexdigest()
