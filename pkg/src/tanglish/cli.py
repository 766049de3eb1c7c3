"""Command-line entry point: ``tanglish stats|normalize|train|eval``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from collections import Counter
from pathlib import Path

from . import baseline, evaluation
from .corpus import SPLIT_NAMES, CorpusError, DatasetSplit, class_distribution, dumps_dataset, load_dataset
from .lexicon import (
    LexiconError,
    default_english_lexicon,
    default_translation_dictionary,
    load_reference_vocabulary,
    load_translation_dictionary,
    load_wordlist,
    oov_proportion,
)
from .stt import BackendError, DictionaryTranslator, HttpTranslator, Mode, SttConfig, SttError, TableTransliterator, stt_split
from .textprep import CodeMixType, PreprocessConfig, codemix_profile, preprocess
from .translit import TranslitError, default_table, load_table


class CliError(Exception):
    pass


def _split_name(path: str, given: str | None) -> str:
    if given:
        return given
    stem = Path(path).name.lower()
    for name in SPLIT_NAMES:
        if name in stem:
            return name
    return "train"


def _load(path: str, split: str | None, lenient: bool) -> DatasetSplit:
    return load_dataset(path, _split_name(path, split), lenient=lenient)


def _english(path: str | None):
    return load_wordlist(path) if path else default_english_lexicon()


def cmd_stats(args) -> int:
    split = _load(args.input, args.split, args.lenient)
    counts = class_distribution(split)
    out: dict = {
        "split": split.name,
        "total": len(split),
        "counts": {label.display: n for label, n in counts.items()},
    }
    if args.ref_vocab or args.eng_lexicon:
        eng = _english(args.eng_lexicon)
        if args.ref_vocab:
            ref = load_reference_vocabulary(args.ref_vocab)
            modes = ("token", "type") if args.oov_mode == "both" else (args.oov_mode,)
            out["oov"] = {
                "reference": ref.source_name,
                **{m: round(oov_proportion(split, ref, eng, mode=m), 6) for m in modes},
            }
        hist = Counter(codemix_profile(s.text, eng) for s in split.samples)
        out["codemix"] = {t.value: hist.get(t, 0) for t in CodeMixType}
    print(json.dumps(out, ensure_ascii=False, indent=2))
    return 0


def _preprocess_config(args) -> PreprocessConfig:
    return PreprocessConfig(
        lowercase_latin=not args.keep_case,
        strip_emoji=not args.keep_emoji,
        strip_mentions_hashtags=not args.keep_mentions,
        strip_numbers_punct=not args.keep_punct,
        stemming=args.stem,
    )


def cmd_normalize(args) -> int:
    split = _load(args.input, args.split, args.lenient)
    eng = _english(args.eng_lexicon)
    pcfg = _preprocess_config(args)
    cleaned = split.with_texts(preprocess(s.text, pcfg, lexicon=eng) for s in split.samples)
    kept = tuple(s for s in cleaned.samples if s.text)
    if len(kept) != len(cleaned):
        print(f"warning: dropped {len(cleaned) - len(kept)} samples left empty by preprocessing", file=sys.stderr)
    cleaned = DatasetSplit(cleaned.name, kept)
    if args.http_translator:
        tr = HttpTranslator.from_env()
    else:
        tr = DictionaryTranslator(load_translation_dictionary(args.dict) if args.dict else default_translation_dictionary())
    tl = TableTransliterator(load_table(args.translit_table) if args.translit_table else default_table())
    mode = Mode(args.mode)
    out_path = Path(args.output)
    fd, tmp = tempfile.mkstemp(prefix=".normalize-", dir=out_path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            converted = stt_split(cleaned, SttConfig(mode=mode), eng, tr, tl, workers=args.workers)
            fh.write(dumps_dataset(converted))
        os.replace(tmp, out_path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return 0


def cmd_train(args) -> int:
    split = _load(args.train, args.split or "train", args.lenient)
    vocab = baseline.fit_vocab(split.texts, (args.ngram_min, args.ngram_max), args.min_df)
    cfg = baseline.TrainConfig(
        learning_rate=args.lr, epochs=args.epochs, l2=args.l2, seed=args.seed, batch_size=args.batch_size
    )
    model = baseline.train(split, vocab, cfg)
    for epoch, loss in enumerate(model.loss_trace, start=1):
        print(f"epoch {epoch} loss {loss:.6f}", file=sys.stderr)
    baseline.save_model(model, args.model_out)
    return 0


def cmd_eval(args) -> int:
    split = _load(args.test, args.split or "test", args.lenient)
    if len(split) == 0:
        raise CliError(f"{args.test} has no samples")
    model = baseline.load_model(args.model)
    preds = baseline.predict_many(model, split.texts)
    report = evaluation.metrics(evaluation.confusion(split.labels, preds))
    if args.confusion_csv:
        Path(args.confusion_csv).write_text(evaluation.confusion_csv(report.confusion), encoding="utf-8")
    if args.format == "json":
        print(evaluation.report_json(report))
    else:
        print(evaluation.report_table(report))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tanglish", description="Normalize Tamil code-mixed text and train/evaluate a baseline classifier.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--split", choices=SPLIT_NAMES, help="split name (default: inferred from the file name)")
        p.add_argument("--lenient", action="store_true", help="take the last column as label on extra-column lines")

    p = sub.add_parser("stats", help="class counts, OOV proportion and code-mix histogram")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--ref-vocab", nargs="+", help="reference vocabulary file(s) for the OOV proportion")
    p.add_argument("--eng-lexicon", help="English word list (default: bundled web2 list)")
    p.add_argument("--oov-mode", choices=("token", "type", "both"), default="both")
    common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("normalize", help="preprocess and convert to Tamil script")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.FULL.value)
    p.add_argument("--dict", help="english<TAB>tamil dictionary (default: bundled)")
    p.add_argument("--translit-table", help="transliteration table TSV (default: bundled)")
    p.add_argument("--eng-lexicon", help="English word list (default: bundled web2 list)")
    p.add_argument("--http-translator", action="store_true",
                   help="translate through the HTTP backend configured by TANGLISH_TRANSLATE_* variables")
    p.add_argument("--keep-case", action="store_true", help="do not lowercase Latin letters")
    p.add_argument("--keep-emoji", action="store_true")
    p.add_argument("--keep-mentions", action="store_true")
    p.add_argument("--keep-punct", action="store_true")
    p.add_argument("--stem", action="store_true", help="strip -ing/-ed/-s from English words")
    p.add_argument("--workers", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("train", help="fit the char n-gram baseline")
    p.add_argument("--train", required=True)
    p.add_argument("--model-out", required=True)
    p.add_argument("--lr", type=float, default=0.1)
    p.add_argument("--epochs", type=int, default=20)
    p.add_argument("--l2", type=float, default=1e-4)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--batch-size", type=int, default=64)
    p.add_argument("--min-df", type=int, default=1)
    p.add_argument("--ngram-min", type=int, default=1)
    p.add_argument("--ngram-max", type=int, default=5)
    common(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a saved model")
    p.add_argument("--test", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--confusion-csv", help="also write the confusion grid as CSV")
    common(p)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("workers", "epochs"):
        if getattr(args, name, 1) < (1 if name == "workers" else 0):
            parser.error(f"--{name} out of range")
    try:
        return args.func(args)
    except (baseline.TrainingDiverged, SttError, CorpusError, LexiconError, TranslitError, BackendError, baseline.BaselineError,
            evaluation.EvalError, CliError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
