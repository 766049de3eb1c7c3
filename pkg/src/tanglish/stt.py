"""Selective translation and transliteration of code-mixed text.

Each word is handled on its own: words already in the target script are
kept, English words are translated (or kept, in transliterate-only mode),
and everything else is transliterated.  Translators and transliterators are
pluggable; the defaults are the offline dictionary and rule table.
"""

from __future__ import annotations

import enum
import json
import os
import threading
import time
import urllib.error
import urllib.request
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Protocol

from .corpus import DatasetSplit
from .lexicon import EnglishLexicon, TranslationDictionary, default_english_lexicon, default_translation_dictionary, is_english
from .textprep import ScriptTag, classify_script, is_ascii_letter
from .translit import TranslitTable, default_table, transliterate_word

ENV_URL = "TANGLISH_TRANSLATE_URL"
ENV_TIMEOUT = "TANGLISH_TRANSLATE_TIMEOUT"
ENV_RETRIES = "TANGLISH_TRANSLATE_RETRIES"


class Mode(enum.Enum):
    FULL = "full"
    TRANSLITERATE_ONLY = "translit-only"


@dataclass(frozen=True)
class SttConfig:
    target_language: str = "Tamil"
    mode: Mode = Mode.FULL

    def __post_init__(self):
        if self.target_language.lower() not in ("tamil", "ta"):
            raise ValueError(f"unsupported target language {self.target_language!r}")

    @property
    def target_script(self) -> ScriptTag:
        return ScriptTag.TAMIL


class BackendError(RuntimeError):
    """A translation or transliteration backend failed."""


class SttError(RuntimeError):
    def __init__(self, message: str, token: str = "", position: int = -1, sample_id: str | None = None):
        super().__init__(message)
        self.token = token
        self.position = position
        self.sample_id = sample_id


class TranslatorBackend(Protocol):
    def translate_word(self, word: str) -> str | None:
        """Tamil-script translation of an English word, or None if there is none."""


class TransliteratorBackend(Protocol):
    def transliterate_word(self, word: str) -> str: ...


class DictionaryTranslator:
    def __init__(self, dictionary: TranslationDictionary | None = None):
        self.dictionary = dictionary if dictionary is not None else default_translation_dictionary()

    def translate_word(self, word: str) -> str | None:
        return self.dictionary.lookup(word)


class TableTransliterator:
    def __init__(self, table: TranslitTable | None = None):
        self.table = table if table is not None else default_table()

    def transliterate_word(self, word: str) -> str:
        return transliterate_word(word, self.table)


class HttpTranslator:
    """Translator that POSTs ``{"word", "target"}`` and reads ``{"translation"}``.

    Calls are serialised and answers cached; a null or empty translation
    means "no translation".
    """

    def __init__(self, url: str, timeout: float = 10.0, max_retries: int = 2, target: str = "ta"):
        self.url = url
        self.timeout = timeout
        self.max_retries = max_retries
        self.target = target
        self._lock = threading.Lock()
        self._cache: dict[str, str | None] = {}

    @classmethod
    def from_env(cls) -> "HttpTranslator":
        url = os.environ.get(ENV_URL)
        if not url:
            raise BackendError(f"{ENV_URL} is not set")
        return cls(
            url,
            timeout=float(os.environ.get(ENV_TIMEOUT, "10")),
            max_retries=int(os.environ.get(ENV_RETRIES, "2")),
        )

    def _request(self, word: str) -> str | None:
        body = json.dumps({"word": word, "target": self.target}).encode("utf-8")
        req = urllib.request.Request(self.url, data=body, headers={"Content-Type": "application/json"})
        last: Exception | None = None
        for attempt in range(self.max_retries + 1):
            try:
                with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                    payload = json.loads(resp.read().decode("utf-8"))
                return payload.get("translation") or None
            except (urllib.error.URLError, OSError, ValueError) as exc:
                last = exc
                if attempt < self.max_retries:
                    time.sleep(min(0.1 * 2**attempt, 2.0))
        raise BackendError(f"translation request for {word!r} failed: {last}")

    def translate_word(self, word: str) -> str | None:
        key = word.lower()
        with self._lock:
            if key not in self._cache:
                self._cache[key] = self._request(key)
            return self._cache[key]


def _has_latin(s: str) -> bool:
    return any(is_ascii_letter(ch) for ch in s)


def _convert(word: str, i: int, cfg: SttConfig, eng: EnglishLexicon,
             tr: TranslatorBackend, tl: TransliteratorBackend) -> str:
    if classify_script(word) is cfg.target_script:
        return word
    try:
        if is_english(word, eng):
            if cfg.mode is Mode.TRANSLITERATE_ONLY:
                return word
            translated = tr.translate_word(word)
            if translated:
                if classify_script(translated) is not ScriptTag.TAMIL or len(translated.split()) != 1:
                    raise BackendError(f"translator returned {translated!r}, not one Tamil-script word")
                return translated
        out = tl.transliterate_word(word)
    except SttError:
        raise
    except Exception as exc:
        raise SttError(f"backend failed on token {word!r} at position {i}: {exc}", word, i) from exc
    if not out or len(out.split()) != 1 or _has_latin(out):
        raise SttError(f"transliterator returned {out!r} for token {word!r} at position {i}", word, i)
    return out


def stt_text(
    text: str,
    cfg: SttConfig = SttConfig(),
    eng: EnglishLexicon | None = None,
    tr: TranslatorBackend | None = None,
    tl: TransliteratorBackend | None = None,
) -> str:
    """Convert preprocessed text word by word; raises SttError without partial output."""
    eng = eng if eng is not None else default_english_lexicon()
    tr = tr if tr is not None else DictionaryTranslator()
    tl = tl if tl is not None else TableTransliterator()
    words = text.split()
    return " ".join(_convert(w, i, cfg, eng, tr, tl) for i, w in enumerate(words))


def stt_split(
    split: DatasetSplit,
    cfg: SttConfig = SttConfig(),
    eng: EnglishLexicon | None = None,
    tr: TranslatorBackend | None = None,
    tl: TransliteratorBackend | None = None,
    *,
    workers: int = 1,
) -> DatasetSplit:
    """Apply :func:`stt_text` to every sample; labels and order are kept.

    ``workers > 1`` runs samples on a thread pool, which is only safe with
    backends that tolerate concurrent calls.
    """
    eng = eng if eng is not None else default_english_lexicon()
    tr = tr if tr is not None else DictionaryTranslator()
    tl = tl if tl is not None else TableTransliterator()

    def one(sample):
        try:
            return stt_text(sample.text, cfg, eng, tr, tl)
        except SttError as exc:
            raise SttError(f"sample {sample.id}: {exc}", exc.token, exc.position, sample.id) from exc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            texts = list(pool.map(one, split.samples))
    else:
        texts = [one(s) for s in split.samples]
    return split.with_texts(texts)
