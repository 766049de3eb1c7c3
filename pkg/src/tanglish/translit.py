"""Greedy longest-match transliteration of romanised Tamil into Tamil script.

A table maps short lowercase Latin patterns to Tamil output.  Consonant
outputs are left "open" so that a following vowel rule can attach as a
dependent sign; an open consonant followed by another consonant, or by the
end of the word, receives a pulli.  Vowel rules are written with the
independent vowel (அ, ஆ, இ ...) and the engine swaps in the matching sign
when the vowel follows an open consonant, so பு is written ``p`` + ``u``.
"""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

from .textprep import is_ascii_letter, is_tamil_char

DEFAULT_TABLE = "translit_ta.tsv"
MAX_PATTERN = 4

PULLI = "்"
CONSONANTS = frozenset(chr(c) for c in range(0x0B95, 0x0BBA) if unicodedata.category(chr(c)) == "Lo")
VOWEL_SIGNS = frozenset(chr(c) for c in range(0x0BBE, 0x0BCD)) | {"ௗ"}
VOWEL_TO_SIGN = {
    "அ": "",
    "ஆ": "ா",
    "இ": "ி",
    "ஈ": "ீ",
    "உ": "ு",
    "ஊ": "ூ",
    "எ": "ெ",
    "ஏ": "ே",
    "ஐ": "ை",
    "ஒ": "ொ",
    "ஓ": "ோ",
    "ஔ": "ௌ",
}

# Latin letters NFKD cannot reduce to ASCII.
_FOLD_EXTRA = str.maketrans({
    "ß": "ss", "æ": "ae", "Æ": "AE", "ø": "o", "Ø": "O", "œ": "oe", "Œ": "OE",
    "đ": "d", "Đ": "D", "ł": "l", "Ł": "L", "ı": "i", "þ": "th", "Þ": "TH",
    "ð": "d", "Ð": "D", "ħ": "h", "Ħ": "H", "ŋ": "ng", "Ŋ": "NG",
})


class TranslitError(ValueError):
    pass


class Context(enum.Enum):
    ANY = "Any"
    WORD_INITIAL = "WordInitial"
    AFTER_CONSONANT = "AfterConsonant"
    WORD_FINAL = "WordFinal"

    @classmethod
    def parse(cls, raw: str) -> "Context":
        key = raw.strip().lower().replace("_", "").replace("-", "")
        for ctx in cls:
            if ctx.value.lower() == key:
                return ctx
        raise TranslitError(f"unknown context {raw!r}")


# Among rules of equal pattern length, the more specific context wins.
_PRIORITY = (Context.AFTER_CONSONANT, Context.WORD_FINAL, Context.WORD_INITIAL, Context.ANY)


@dataclass(frozen=True)
class TranslitRule:
    pattern: str
    output: str
    context: Context = Context.ANY

    def __post_init__(self):
        p, out = self.pattern, self.output
        if not (1 <= len(p) <= MAX_PATTERN) or not all("a" <= ch <= "z" for ch in p):
            raise TranslitError(f"pattern {p!r} must be 1-{MAX_PATTERN} lowercase ASCII letters")
        if not out or not all(is_tamil_char(ch) for ch in out):
            raise TranslitError(f"output {out!r} for {p!r} must be non-empty Tamil script")
        if out[0] in VOWEL_SIGNS and self.context is not Context.AFTER_CONSONANT:
            raise TranslitError(f"output {out!r} for {p!r} starts with a vowel sign outside AfterConsonant")


class TranslitTable:
    def __init__(self, rules: Iterable[TranslitRule], version: str = "unversioned"):
        self.rules = tuple(rules)
        self.version = version
        self._index: dict[str, dict[Context, TranslitRule]] = {}
        for rule in self.rules:
            slot = self._index.setdefault(rule.pattern, {})
            if rule.context in slot:
                raise TranslitError(f"duplicate rule for ({rule.pattern!r}, {rule.context.value})")
            slot[rule.context] = rule
        for letter in "abcdefghijklmnopqrstuvwxyz":
            if Context.ANY not in self._index.get(letter, {}):
                raise TranslitError(f"no rule for letter {letter!r}")

    def __len__(self) -> int:
        return len(self.rules)

    def match(self, s: str, i: int, pending: bool) -> TranslitRule:
        """Longest rule matching at ``s[i:]`` whose context holds."""
        for length in range(min(MAX_PATTERN, len(s) - i), 0, -1):
            slot = self._index.get(s[i:i + length])
            if not slot:
                continue
            valid = {
                Context.ANY: True,
                Context.WORD_INITIAL: i == 0,
                Context.AFTER_CONSONANT: pending,
                Context.WORD_FINAL: i + length == len(s),
            }
            for ctx in _PRIORITY:
                if ctx in slot and valid[ctx]:
                    return slot[ctx]
        raise TranslitError(f"no rule matches {s[i:]!r}")  # unreachable for a validated table


def parse_table(lines: Iterable[str], where: str = "<table>") -> TranslitTable:
    rules = []
    version = "unversioned"
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped.lstrip("#").strip()
            if body.lower().startswith("version:"):
                version = body.split(":", 1)[1].strip()
            continue
        cols = [c.strip() for c in line.rstrip("\r\n").split("\t")]
        if len(cols) == 2:
            cols.append(Context.ANY.value)
        if len(cols) != 3:
            raise TranslitError(f"{where}:{lineno}: expected 'pattern<TAB>output<TAB>context'")
        try:
            rules.append(TranslitRule(cols[0], cols[1], Context.parse(cols[2])))
        except TranslitError as exc:
            raise TranslitError(f"{where}:{lineno}: {exc}") from None
    return TranslitTable(rules, version)


def load_table(path: str | Path) -> TranslitTable:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise TranslitError(f"cannot read {path}: {exc}") from exc
    return parse_table(text.splitlines(), str(path))


@lru_cache(maxsize=1)
def default_table() -> TranslitTable:
    text = resources.files(__package__).joinpath("data").joinpath(DEFAULT_TABLE).read_text("utf-8")
    return parse_table(text.splitlines(), DEFAULT_TABLE)


@lru_cache(maxsize=2048)
def _latin_base(ch: str) -> str:
    """ASCII letter named by a Latin letter's Unicode name, e.g. TURNED A -> a."""
    name = unicodedata.name(ch, "")
    if "LATIN" not in name or not ch.isalpha():
        return ch
    words = name.split()
    after = words[words.index("LETTER") + 1:] if "LETTER" in words else words[1:]
    singles = [w for w in after if len(w) == 1 and w.isalpha()]
    base = singles[-1] if singles else (after[-1][0] if after else "")
    if not base:
        return ch
    return base.upper() if "CAPITAL" in words else base.lower()


def _fold_run(run: str) -> str:
    decomposed = unicodedata.normalize("NFKD", run.translate(_FOLD_EXTRA))
    out = []
    for ch in decomposed:
        if unicodedata.combining(ch) and out and out[-1].isascii():
            continue
        out.append(ch if ch.isascii() else _latin_base(ch))
    return unicodedata.normalize("NFC", "".join(out))


def fold_latin(word: str) -> str:
    """Reduce every Latin-script letter to ASCII; Tamil characters are untouched."""
    if word.isascii():
        return word
    return "".join(
        run if is_tamil_char(run[0]) else _fold_run(run)
        for run in _split_runs(word, is_tamil_char)
    )


def _split_runs(word: str, pred) -> list[str]:
    runs: list[str] = []
    for ch in word:
        if runs and pred(runs[-1][-1]) == pred(ch):
            runs[-1] += ch
        else:
            runs.append(ch)
    return runs


def segment(run: str, table: TranslitTable) -> list[TranslitRule]:
    """The rules the greedy scan applies to a lowercase ASCII run, in order."""
    rules = []
    pending = False
    i = 0
    while i < len(run):
        rule = table.match(run, i, pending)
        rules.append(rule)
        out = rule.output
        if pending and out[0] in VOWEL_TO_SIGN:
            out = VOWEL_TO_SIGN[out[0]] + out[1:]
        pending = bool(out) and out[-1] in CONSONANTS
        i += len(rule.pattern)
    return rules


def compose(rules: Iterable[TranslitRule]) -> str:
    """Join rule outputs, attaching vowel signs and pulli where needed."""
    pieces: list[str] = []
    pending = False
    for rule in rules:
        text = rule.output
        if pending:
            if text[0] in VOWEL_TO_SIGN:
                text = VOWEL_TO_SIGN[text[0]] + text[1:]
            elif text[0] not in VOWEL_SIGNS:
                pieces.append(PULLI)
        pieces.append(text)
        pending = bool(text) and text[-1] in CONSONANTS
    if pending:
        pieces.append(PULLI)
    return "".join(pieces)


def _transliterate_run(run: str, table: TranslitTable) -> str:
    return compose(segment(run, table))


def transliterate_word(word: str, table: TranslitTable | None = None) -> str:
    """Transliterate the Latin letters of ``word``; other characters pass through.

    Each maximal run of ASCII letters is treated as its own word for the
    initial/final contexts, so a mixed token such as ``padamல`` keeps its
    Tamil suffix and converts only ``padam``.
    """
    if table is None:
        table = default_table()
    word = fold_latin(word)
    return "".join(
        _transliterate_run(run.lower(), table) if is_ascii_letter(run[0]) else run
        for run in _split_runs(word, is_ascii_letter)
    )
