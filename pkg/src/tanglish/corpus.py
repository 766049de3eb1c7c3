"""Loading and summarising the six-class offensive-language TSV corpus."""

from __future__ import annotations

import enum
import io
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

SPLIT_NAMES = ("train", "dev", "test")


class CorpusError(ValueError):
    """A corpus file could not be parsed."""


class Label(enum.IntEnum):
    """Offense label; the integer value is the confusion-matrix index."""

    NOT_OFFENSIVE = 0
    OFFENSIVE_UNTARGETED = 1
    OFFENSIVE_TARGETED_INSULT_GROUP = 2
    OFFENSIVE_TARGETED_INSULT_INDIVIDUAL = 3
    NOT_TAMIL = 4
    OFFENSIVE_TARGETED_INSULT_OTHER = 5

    @property
    def display(self) -> str:
        return _DISPLAY[self]

    @property
    def abbrev(self) -> str:
        return _ABBREV[self]

    @classmethod
    def parse(cls, raw: str) -> "Label":
        """Parse a label string, ignoring case and '-'/'_' separators."""
        key = _fold(raw)
        try:
            return _BY_KEY[key]
        except KeyError:
            raise CorpusError(f"unknown label {raw!r}") from None


_DISPLAY = {
    Label.NOT_OFFENSIVE: "Not-Offensive",
    Label.OFFENSIVE_UNTARGETED: "Offensive-Untargeted",
    Label.OFFENSIVE_TARGETED_INSULT_GROUP: "Offensive-Targeted-Insult-Group",
    Label.OFFENSIVE_TARGETED_INSULT_INDIVIDUAL: "Offensive-Targeted-Insult-Individual",
    Label.NOT_TAMIL: "Not-Tamil",
    Label.OFFENSIVE_TARGETED_INSULT_OTHER: "Offensive-Targeted-Insult-Other",
}

_ABBREV = {
    Label.NOT_OFFENSIVE: "NF",
    Label.OFFENSIVE_UNTARGETED: "OU",
    Label.OFFENSIVE_TARGETED_INSULT_GROUP: "OTIG",
    Label.OFFENSIVE_TARGETED_INSULT_INDIVIDUAL: "OTII",
    Label.NOT_TAMIL: "NT",
    Label.OFFENSIVE_TARGETED_INSULT_OTHER: "OTIO",
}


def _fold(raw: str) -> str:
    return raw.strip().lower().replace("-", "").replace("_", "").replace(" ", "")


_BY_KEY = {_fold(text): label for label, text in _DISPLAY.items()}
# The shared-task release misspells this label.
_BY_KEY["offensiveuntargetede"] = Label.OFFENSIVE_UNTARGETED


@dataclass(frozen=True)
class LabeledSample:
    id: str
    text: str
    label: Label


@dataclass(frozen=True)
class DatasetSplit:
    name: str
    samples: tuple[LabeledSample, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.name not in SPLIT_NAMES:
            raise CorpusError(f"split name must be one of {SPLIT_NAMES}, got {self.name!r}")
        if not isinstance(self.samples, tuple):
            object.__setattr__(self, "samples", tuple(self.samples))

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    @property
    def texts(self) -> list[str]:
        return [s.text for s in self.samples]

    @property
    def labels(self) -> list[Label]:
        return [s.label for s in self.samples]

    def with_texts(self, texts: Iterable[str]) -> "DatasetSplit":
        texts = list(texts)
        if len(texts) != len(self.samples):
            raise ValueError("text count does not match sample count")
        return DatasetSplit(
            self.name,
            tuple(LabeledSample(s.id, t, s.label) for s, t in zip(self.samples, texts)),
        )


def _parse_lines(lines: Iterable[str], name: str, lenient: bool) -> list[LabeledSample]:
    samples = []
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\r\n")
        if not line.strip():
            continue
        cols = line.split("\t")
        while len(cols) > 2 and cols[-1].strip() == "":
            cols.pop()
        if len(cols) < 2 or (len(cols) > 2 and not lenient):
            raise CorpusError(
                f"malformed line {lineno}: expected 2 tab-separated columns, got {len(cols)}"
            )
        text, raw_label = cols[0], cols[-1]
        if lineno == 1 and _fold(raw_label) == "label":
            continue  # header row
        try:
            label = Label.parse(raw_label)
        except CorpusError:
            raise CorpusError(f"unknown label {raw_label.strip()!r} at line {lineno}") from None
        if not text.strip():
            raise CorpusError(f"empty text at line {lineno}")
        samples.append(LabeledSample(f"{name}:{lineno}", text, label))
    return samples


def load_dataset(path: str | Path, name: str, *, lenient: bool = False) -> DatasetSplit:
    """Read a ``text<TAB>label`` file into a split, preserving row order.

    With ``lenient``, lines carrying extra columns keep the first column as
    text and the last as label instead of raising.
    """
    if name not in SPLIT_NAMES:
        raise CorpusError(f"split name must be one of {SPLIT_NAMES}, got {name!r}")
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    try:
        content = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise CorpusError(f"{path} is not valid UTF-8: {exc}") from exc
    return DatasetSplit(name, tuple(_parse_lines(io.StringIO(content), name, lenient)))


def dumps_dataset(split: DatasetSplit) -> str:
    out = io.StringIO()
    for s in split.samples:
        if "\t" in s.text or "\n" in s.text:
            raise CorpusError(f"sample {s.id} contains a tab or newline")
        out.write(f"{s.text}\t{s.label.display}\n")
    return out.getvalue()


def save_dataset(split: DatasetSplit, path: str | Path) -> None:
    Path(path).write_text(dumps_dataset(split), encoding="utf-8")


def class_distribution(split: DatasetSplit) -> dict[Label, int]:
    counts = Counter(s.label for s in split.samples)
    return {label: counts.get(label, 0) for label in Label}
