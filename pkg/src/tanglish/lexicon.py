"""Word lists: the English gate, the reference Tamil vocabulary and the offline dictionary."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Literal

from .corpus import DatasetSplit
from .textprep import PreprocessConfig, ScriptTag, classify_script, preprocess

DEFAULT_DICTIONARY = "en_ta_dictionary.tsv"


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class EnglishLexicon:
    words: frozenset[str]

    @classmethod
    def from_words(cls, words: Iterable[str]) -> "EnglishLexicon":
        return cls(frozenset(w.strip().lower() for w in words if w.strip().isascii() and w.strip()))

    def __contains__(self, word: object) -> bool:
        return isinstance(word, str) and word.lower() in self.words

    def __len__(self) -> int:
        return len(self.words)


def _read_lines(path: str | Path) -> list[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise LexiconError(f"cannot read {path}: {exc}") from exc
    return [line.strip() for line in text.splitlines() if line.strip()]


def load_wordlist(path: str | Path) -> EnglishLexicon:
    lex = EnglishLexicon.from_words(_read_lines(path))
    if not lex.words:
        raise LexiconError(f"{path}: word list is empty")
    return lex


@lru_cache(maxsize=1)
def default_english_lexicon() -> EnglishLexicon:
    """The web2 English word list (the list NLTK's ``words`` corpus ships)."""
    from english_words import get_english_words_set

    return EnglishLexicon.from_words(get_english_words_set(["web2"], alpha=True, lower=True))


def is_english(word: str, lex: EnglishLexicon) -> bool:
    return bool(word) and word in lex


@dataclass(frozen=True)
class ReferenceVocabulary:
    words: frozenset[str]
    source_name: str = "reference"

    def __post_init__(self):
        if not self.words:
            raise LexiconError(f"reference vocabulary {self.source_name!r} is empty")

    def __contains__(self, word: object) -> bool:
        return isinstance(word, str) and (word in self.words or word.lower() in self.words)

    def union(self, other: Iterable[str]) -> "ReferenceVocabulary":
        return ReferenceVocabulary(self.words | frozenset(other), self.source_name)


def load_reference_vocabulary(paths: str | Path | Iterable[str | Path], source_name: str | None = None) -> ReferenceVocabulary:
    """Load one or more one-word-per-line files.

    Lines may carry extra tab-separated columns (as lexicon TSVs do); every
    column is added to the vocabulary.
    """
    if isinstance(paths, (str, Path)):
        paths = [paths]
    paths = list(paths)
    words: set[str] = set()
    for p in paths:
        for line in _read_lines(p):
            words.update(col.strip() for col in line.split("\t") if col.strip())
    name = source_name or ",".join(Path(p).name for p in paths)
    return ReferenceVocabulary(frozenset(words), name)


@dataclass(frozen=True)
class TranslationDictionary:
    """English word to Tamil script.  An empty value marks a known word with no usable translation."""

    entries: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for eng, tam in self.entries.items():
            if tam and (classify_script(tam) is not ScriptTag.TAMIL or len(tam.split()) != 1):
                raise LexiconError(f"translation of {eng!r} is not a single Tamil-script word: {tam!r}")

    def lookup(self, word: str) -> str | None:
        """Return the translation, or None when absent or marked untranslatable."""
        return self.entries.get(word.lower()) or None

    def __len__(self) -> int:
        return len(self.entries)


def _parse_dictionary(lines: Iterable[str], where: str) -> TranslationDictionary:
    entries: dict[str, str] = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.rstrip("\r\n").split("\t")
        if len(cols) == 1:
            cols.append("")
        if len(cols) != 2:
            raise LexiconError(f"{where}:{lineno}: expected 'english<TAB>tamil'")
        eng, tam = cols[0].strip().lower(), cols[1].strip()
        if tam and (classify_script(tam) is not ScriptTag.TAMIL or len(tam.split()) != 1):
            raise LexiconError(f"{where}:{lineno}: {tam!r} is not a single Tamil-script word")
        entries[eng] = tam
    return TranslationDictionary(entries)


def load_translation_dictionary(path: str | Path) -> TranslationDictionary:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise LexiconError(f"cannot read {path}: {exc}") from exc
    return _parse_dictionary(text.splitlines(), str(path))


@lru_cache(maxsize=1)
def default_translation_dictionary() -> TranslationDictionary:
    text = resources.files(__package__).joinpath("data").joinpath(DEFAULT_DICTIONARY).read_text("utf-8")
    return _parse_dictionary(text.splitlines(), DEFAULT_DICTIONARY)


def corpus_tokens(split: DatasetSplit, cfg: PreprocessConfig | None = PreprocessConfig()) -> list[str]:
    """Whitespace tokens of every sample, after preprocessing unless ``cfg`` is None."""
    out = []
    for s in split.samples:
        text = preprocess(s.text, cfg) if cfg is not None else s.text
        out.extend(text.split())
    return out


def oov_proportion(
    split: DatasetSplit,
    ref: ReferenceVocabulary,
    eng: EnglishLexicon | None = None,
    *,
    mode: Literal["token", "type"] = "token",
    cfg: PreprocessConfig | None = PreprocessConfig(),
) -> float:
    """Fraction of words missing from ``ref``.

    English words count as out-of-vocabulary even when ``ref`` lists them.
    ``mode="token"`` counts occurrences, ``mode="type"`` distinct words.
    """
    if not ref.words:
        raise LexiconError("reference vocabulary is empty")
    if len(split) == 0:
        raise LexiconError("split is empty")
    tokens = corpus_tokens(split, cfg)
    if mode == "type":
        tokens = list(dict.fromkeys(tokens))
    elif mode != "token":
        raise ValueError(f"mode must be 'token' or 'type', got {mode!r}")
    if not tokens:
        return 0.0

    def missing(tok: str) -> bool:
        if eng is not None and classify_script(tok) is ScriptTag.LATIN and tok in eng:
            return True
        return tok not in ref

    return sum(map(missing, tokens)) / len(tokens)
