"""Acceptance criteria, one test per criterion.

The terminal summary prints a PASS/FAIL/SKIP line for each (see conftest).
Criterion 9 needs the official corpus and the Dakshina Tamil lexicon; point
TANGLISH_TRAIN_TSV, TANGLISH_TEST_TSV and TANGLISH_DAKSHINA_VOCAB at them.
"""

import os
import random
import unicodedata

import numpy as np
import pytest

from oracles import TEST_SUPPORTS, TRAIN_SUPPORTS, brute_force_report, gradient_rel_error, separable_fixture
from tanglish.baseline import TrainConfig, fit_vocab, predict_many, train
from tanglish.corpus import DatasetSplit, Label, LabeledSample, class_distribution, load_dataset
from tanglish.evaluation import confusion, metrics
from tanglish.lexicon import is_english, load_reference_vocabulary, oov_proportion
from tanglish.stt import Mode, SttConfig, stt_text
from tanglish.textprep import PreprocessConfig, ScriptTag, classify_script, preprocess

FUZZ_SIZE = 10_000
FULL = SttConfig(mode=Mode.FULL)
TRANSLIT = SttConfig(mode=Mode.TRANSLITERATE_ONLY)

TAMIL_WORDS = ["அட", "அரைவேக்காட்டு", "பயலே", "காது", "பூரா", "ரத்தம்", "படம்", "சூப்பர்", "தலைவா", "வாழ்த்துக்கள்"]
ROMAN_TAMIL = ["apadiye", "kaathukku", "kodungada", "semma", "mokka", "thalaivaa", "vera", "padam", "engaiyoo", "irukae"]
ACCENTED = ["café", "naïve", "Ñaan", "rôle", "Über", "ǅemal", "fiancée", "ßuper", "ŋga", "ɡood"]
NOISE = ["🤔", "❤️", ":-D", "<3", "!!", "...", "#Thala", "@user", "2019", "👍🏽", "-", "'s"]


def _latin_letters(s):
    return [c for c in s if unicodedata.category(c)[0] == "L" and "LATIN" in unicodedata.name(c, "")]


def _fuzz_corpus(english, n=FUZZ_SIZE, seed=20241014):
    rng = random.Random(seed)
    eng_words = sorted(english.words)
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    out = []
    for _ in range(n):
        toks = []
        for _ in range(rng.randint(1, 10)):
            kind = rng.random()
            if kind < 0.25:
                toks.append("".join(rng.choice(letters) for _ in range(rng.randint(1, 12))))
            elif kind < 0.5:
                toks.append(rng.choice(eng_words).capitalize() if rng.random() < 0.2 else rng.choice(eng_words))
            elif kind < 0.65:
                toks.append(rng.choice(ROMAN_TAMIL))
            elif kind < 0.75:
                toks.append(rng.choice(TAMIL_WORDS))
            elif kind < 0.85:
                toks.append(rng.choice(ROMAN_TAMIL + eng_words[:500]) + rng.choice(["ல", "க்கு", "ஆ", "டா"]))
            elif kind < 0.93:
                toks.append(rng.choice(ACCENTED))
            else:
                toks.append(rng.choice(NOISE))
        out.append(preprocess(" ".join(toks), PreprocessConfig()))
    return out


@pytest.fixture(scope="module")
def fuzz(english):
    return _fuzz_corpus(english)


def test_criterion_1_golden_preprocessing():
    cfg = PreprocessConfig(lowercase_latin=False)
    cases = [
        ("Inda music ha engaiyoo keta mariyae irukae?? 🤔 🤔", "Inda music ha engaiyoo keta mariyae irukae"),
        ("அட அரைவேக்காட்டு பயலே :-D :-D", "அட அரைவேக்காட்டு பயலே"),
        (
            "#6Million Views @5Days..!! #200K Came In Quick Baby..!! #Varlaam #Varalaaam Vaa #Bairavaa..!!!",
            "Views Came In Quick Baby Vaa",
        ),
        ("ThalaivanSTR <3 #Vjs <3 #AV <3 #AS <3!", "ThalaivanSTR"),
    ]
    assert [preprocess(raw, cfg) for raw, _ in cases] == [want for _, want in cases]


def test_criterion_2_golden_stt():
    out = stt_text("apadiye kaathukku panchachayum kodungada kaathu poora raththam", FULL)
    assert out.encode("utf-8") == "அப்படியே காதுக்கு பஞ்சசேயும் கொடுங்கடா காது பூரா ரத்தம்".encode("utf-8")


def test_criterion_3_script_purity_fuzz(fuzz, english):
    assert len(fuzz) == FUZZ_SIZE
    impure, altered = [], []
    for text in fuzz:
        full = stt_text(text, FULL, english)
        if _latin_letters(full):
            impure.append((text, full))
        only = stt_text(text, TRANSLIT, english).split()
        for src, dst in zip(text.split(), only):
            if classify_script(src) is ScriptTag.LATIN and is_english(src, english):
                if dst != src:
                    altered.append((src, dst))
            elif _latin_letters(dst):
                altered.append((src, dst))
    assert not impure[:5], f"{len(impure)} outputs still contain Latin letters"
    assert not altered[:5], f"{len(altered)} tokens mishandled in transliterate-only mode"


def test_criterion_4_stt_idempotence_and_token_count(fuzz, english):
    failures = []
    for text in fuzz:
        for cfg in (FULL, TRANSLIT):
            once = stt_text(text, cfg, english)
            if stt_text(once, cfg, english) != once or len(once.split()) != len(text.split()):
                failures.append((cfg.mode.value, text, once))
    assert not failures[:5], f"{len(failures)} failures"


def test_criterion_5_metric_oracle():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        n = int(rng.integers(1, 300))
        k = int(rng.integers(1, 7))
        classes = rng.choice(6, size=k, replace=False)
        truths = rng.choice(classes, size=n, p=rng.dirichlet(np.ones(k)))
        preds = np.where(rng.random(n) < rng.random(), truths, rng.integers(0, 6, size=n))
        rep = metrics(confusion([Label(int(t)) for t in truths], [Label(int(p)) for p in preds]))
        per_class, weighted, accuracy = brute_force_report(truths.tolist(), preds.tolist())
        got = [x for m in rep.per_class for x in (m.precision, m.recall, m.f1)]
        want = [x for m in per_class for x in m[:3]]
        assert np.max(np.abs(np.array(got) - np.array(want))) <= 1e-9
        assert np.max(np.abs(np.array([rep.weighted.precision, rep.weighted.recall, rep.weighted.f1]) - weighted)) <= 1e-9
        assert abs(rep.weighted.recall - rep.accuracy) <= 1e-12
        assert abs(rep.accuracy - accuracy) <= 1e-12


def test_criterion_6_majority_baseline():
    truths = [Label(c) for c, n in enumerate(TEST_SUPPORTS) for _ in range(n)]
    rep = metrics(confusion(truths, [Label.NOT_OFFENSIVE] * len(truths)))
    assert abs(rep.weighted.recall - 0.7263) <= 1e-4
    assert abs(rep.weighted.f1 - 0.6112) <= 1e-4


def test_criterion_7_gradient_check():
    rng = np.random.default_rng(7)
    errors = [gradient_rel_error(rng) for _ in range(100)]
    assert max(errors) < 1e-4


def test_criterion_8_separable_fixture():
    split = DatasetSplit("train", [LabeledSample(str(i), t, Label(l)) for i, (t, l) in enumerate(separable_fixture())])
    model = train(split, fit_vocab(split.texts, (1, 1)), TrainConfig(epochs=20))
    assert predict_many(model, split.texts) == split.labels
    trace = model.loss_trace
    assert all(b <= a for a, b in zip(trace, trace[1:]))


def _env_paths():
    keys = ("TANGLISH_TRAIN_TSV", "TANGLISH_TEST_TSV", "TANGLISH_DAKSHINA_VOCAB")
    paths = [os.environ.get(k) for k in keys]
    if not all(p and os.path.exists(p) for p in paths):
        pytest.skip("official corpus / Dakshina lexicon not available (set " + ", ".join(keys) + ")")
    return paths


def test_criterion_9_corpus_statistics(english, record_property):
    train_path, test_path, vocab_path = _env_paths()
    train_split = load_dataset(train_path, "train", lenient=True)
    test_split = load_dataset(test_path, "test", lenient=True)
    assert len(train_split) == sum(TRAIN_SUPPORTS) == 35139
    assert len(test_split) == sum(TEST_SUPPORTS) == 4392
    assert [class_distribution(train_split)[l] for l in Label] == list(TRAIN_SUPPORTS)
    assert [class_distribution(test_split)[l] for l in Label] == list(TEST_SUPPORTS)
    ref = load_reference_vocabulary(vocab_path)
    results = {}
    for mode in ("token", "type"):
        for stage, cfg in (("raw", None), ("preprocessed", PreprocessConfig())):
            for eng_name, eng in (("english-as-oov", english), ("reference-only", None)):
                results[f"{mode}/{stage}/{eng_name}"] = oov_proportion(train_split, ref, eng, mode=mode, cfg=cfg)
    for name, value in results.items():
        record_property(f"oov[{name}]", round(value, 6))
        print(f"oov {name}: {value:.4f}")
    matching = [name for name, value in results.items() if abs(value - 0.8555) <= 0.02]
    record_property("oov_matching_modes", ",".join(matching))
    assert matching, f"no counting mode within 0.8555 +/- 0.02: {results}"
