"""Tokenisation, per-token script tagging, comment cleaning and code-mix profiling."""

from __future__ import annotations

import enum
import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

if TYPE_CHECKING:
    from .lexicon import EnglishLexicon

TAMIL_START, TAMIL_END = 0x0B80, 0x0BFF


class ScriptTag(enum.Enum):
    LATIN = "Latin"
    TAMIL = "Tamil"
    MIXED = "Mixed"
    OTHER = "Other"


class CodeMixType(enum.Enum):
    NO_CODE_MIXING = "NoCodeMixing"
    INTER_SENTENTIAL = "InterSentential"
    ONLY_TAMIL_LATIN_SCRIPT = "OnlyTamilLatinScript"
    MORPHOLOGICAL_MIX = "MorphologicalMix"
    INTRA_SENTENTIAL_LATIN_ONLY = "IntraSententialLatinOnly"
    INTER_AND_INTRA_SENTENTIAL = "InterAndIntraSentential"


@dataclass(frozen=True)
class Token:
    surface: str
    script: ScriptTag
    span: tuple[int, int]  # UTF-8 byte offsets into the source text


@dataclass(frozen=True)
class PreprocessConfig:
    lowercase_latin: bool = True
    strip_emoji: bool = True
    strip_mentions_hashtags: bool = True
    strip_numbers_punct: bool = True
    stemming: bool = False


def is_tamil_char(ch: str) -> bool:
    return TAMIL_START <= ord(ch) <= TAMIL_END


def is_ascii_letter(ch: str) -> bool:
    return ("a" <= ch <= "z") or ("A" <= ch <= "Z")


@lru_cache(maxsize=4096)
def _is_latin_script(ch: str) -> bool:
    return unicodedata.name(ch, "").startswith("LATIN ")


def classify_script(token: str) -> ScriptTag:
    """Tag a token by the scripts of its alphabetic characters.

    Latin means every letter is ASCII, Tamil means every letter is in the
    Tamil block, Mixed means both occur.  Tokens without letters, and
    tokens whose letters come from any other script, are Other.
    """
    latin = tamil = foreign = False
    for ch in token:
        if not ch.isalpha():
            continue
        if is_ascii_letter(ch):
            latin = True
        elif is_tamil_char(ch):
            tamil = True
        else:
            foreign = True
    if latin and tamil:
        return ScriptTag.MIXED
    if foreign:
        return ScriptTag.OTHER
    if latin:
        return ScriptTag.LATIN
    if tamil:
        return ScriptTag.TAMIL
    return ScriptTag.OTHER


_NON_SPACE = re.compile(r"\S+")


def tokenize(text: str) -> list[Token]:
    tokens = []
    byte_pos = 0
    char_pos = 0
    for m in _NON_SPACE.finditer(text):
        # advance byte offset incrementally instead of re-encoding prefixes
        byte_pos += len(text[char_pos:m.start()].encode("utf-8"))
        surface = m.group()
        end = byte_pos + len(surface.encode("utf-8"))
        tokens.append(Token(surface, classify_script(surface), (byte_pos, end)))
        byte_pos, char_pos = end, m.end()
    return tokens


# Emoji and pictograph code points, plus the joiners and selectors that glue them.
_EMOJI = re.compile(
    "["
    "\U0001F000-\U0001FAFF"
    "\U0001FC00-\U0001FFFF"
    "\u2190-\u21FF"
    "\u2300-\u23FF"
    "\u2460-\u24FF"
    "\u25A0-\u27BF"
    "\u2900-\u297F"
    "\u2B00-\u2BFF"
    "\u3030\u303D\u3297\u3299"
    "\u00A9\u00AE\u203C\u2049\u2122\u2139"
    "\u200D\u20E3\uFE00-\uFE0F"
    "\U000E0020-\U000E007F"
    "]+"
)

DEFAULT_EMOTICONS = "emoticons.txt"


def load_emoticons(path: str | Path | None = None) -> list[str]:
    """Read an emoticon list, one per line; '#' starts a comment line."""
    if path is None:
        text = resources.files(__package__).joinpath("data").joinpath(DEFAULT_EMOTICONS).read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def _emoticon_regex(emoticons: Iterable[str]) -> re.Pattern:
    parts = []
    for emo in sorted(set(emoticons), key=lambda e: (-len(e), e)):
        pat = re.escape(emo)
        if emo[0].isalnum():
            pat = r"(?<![^\W_])" + pat
        if emo[-1].isalnum():
            pat = pat + r"(?![^\W_])"
        parts.append(pat)
    return re.compile("|".join(parts))


@lru_cache(maxsize=8)
def _default_emoticon_regex() -> re.Pattern:
    return _emoticon_regex(load_emoticons())


def _lower_latin(token: str) -> str:
    return "".join(ch.lower() if _is_latin_script(ch) else ch for ch in token)


_STEM_SUFFIXES = ("ing", "ed", "s")


def stem_english(token: str, lexicon: "EnglishLexicon") -> str:
    """Strip one of -ing/-ed/-s from a token found in the English lexicon."""
    low = token.lower()
    if low not in lexicon:
        return token
    for suffix in _STEM_SUFFIXES:
        if low.endswith(suffix) and len(low) - len(suffix) >= 3:
            if suffix == "s" and low.endswith("ss"):
                continue
            return token[: -len(suffix)]
    return token


def _is_kept_char(ch: str) -> bool:
    cat = unicodedata.category(ch)
    return cat[0] in "LM" or ch.isspace()


def _drop_tagged(text: str) -> str:
    return " ".join(t for t in text.split() if not t.startswith(("@", "#")))


def preprocess(
    text: str,
    cfg: PreprocessConfig = PreprocessConfig(),
    *,
    emoticons: Iterable[str] | None = None,
    lexicon: "EnglishLexicon | None" = None,
) -> str:
    """Clean a raw comment.

    Stages run in order: drop '@'/'#' tokens, strip emoji and emoticons,
    replace digits/punctuation/symbols with spaces, lowercase Latin letters,
    optionally stem English tokens, then collapse whitespace.  Stop words
    are kept.  Removed characters become spaces so that runs such as
    ``kodungada.....-kaathu`` split into two words.
    """
    if cfg.strip_mentions_hashtags:
        text = _drop_tagged(text)
    if cfg.strip_emoji:
        emo_re = _default_emoticon_regex() if emoticons is None else _emoticon_regex(emoticons)
        text = emo_re.sub(" ", text)
        text = _EMOJI.sub(" ", text)
        if cfg.strip_mentions_hashtags:
            # emoji removal can expose a new '@'/'#'-initial token ("🤔@x")
            text = _drop_tagged(text)
    if cfg.strip_numbers_punct:
        text = "".join(ch if _is_kept_char(ch) else " " for ch in text)
    tokens = text.split()
    if cfg.lowercase_latin:
        tokens = [_lower_latin(t) for t in tokens]
    if cfg.stemming:
        if lexicon is None:
            from .lexicon import default_english_lexicon

            lexicon = default_english_lexicon()
        tokens = [stem_english(t, lexicon) for t in tokens]
    return " ".join(tokens)


_SENTENCE_END = re.compile(r"[.!?]+")
_STRIP_EDGES = re.compile(r"^[^\w]+|[^\w]+$")


def _token_kind(token: str, lexicon: "EnglishLexicon") -> str | None:
    core = _STRIP_EDGES.sub("", token)
    tag = classify_script(core) if core else ScriptTag.OTHER
    if tag is ScriptTag.TAMIL:
        return "T"
    if tag is ScriptTag.MIXED:
        return "M"
    if tag is ScriptTag.LATIN:
        return "E" if core.lower() in lexicon else "N"
    return None


def codemix_profile(text: str, lexicon: "EnglishLexicon") -> CodeMixType:
    """Assign one of the six code-mixing types with a fixed decision tree.

    Tokens are Tamil-script (T), Latin English (E), Latin non-English (N) or
    Mixed-script (M).  A Mixed token, or Tamil script sharing a sentence with
    Latin script, means morphological mixing.  Sentences whose dominant
    language differs mean inter-sentential mixing, upgraded to the combined
    type when some sentence also mixes internally.  Otherwise E together
    with N is intra-sentential, N alone is romanised Tamil, and T alone or
    E alone is no mixing.
    """
    sentences = []
    for chunk in _SENTENCE_END.split(text):
        kinds = [k for k in (_token_kind(t, lexicon) for t in chunk.split()) if k]
        if kinds:
            sentences.append(kinds)
    if not sentences:
        return CodeMixType.NO_CODE_MIXING
    if any("M" in kinds for kinds in sentences):
        return CodeMixType.MORPHOLOGICAL_MIX
    if any("T" in kinds and ({"E", "N"} & set(kinds)) for kinds in sentences):
        return CodeMixType.MORPHOLOGICAL_MIX

    def dominant(kinds: list[str]) -> str:
        english = kinds.count("E")
        return "en" if english > len(kinds) - english else "ta"

    def mixes(kinds: list[str]) -> bool:
        return len(set(kinds)) > 1

    if len({dominant(k) for k in sentences}) > 1:
        if any(mixes(k) for k in sentences):
            return CodeMixType.INTER_AND_INTRA_SENTENTIAL
        return CodeMixType.INTER_SENTENTIAL
    kinds_all = set().union(*map(set, sentences))
    if kinds_all == {"N"}:
        return CodeMixType.ONLY_TAMIL_LATIN_SCRIPT
    if {"E", "N"} <= kinds_all:
        return CodeMixType.INTRA_SENTENTIAL_LATIN_ONLY
    return CodeMixType.NO_CODE_MIXING
