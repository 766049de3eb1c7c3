import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tanglish.corpus import (
    CorpusError,
    DatasetSplit,
    Label,
    LabeledSample,
    class_distribution,
    dumps_dataset,
    load_dataset,
    save_dataset,
)


def test_label_indices_follow_confusion_legend():
    assert [l.abbrev for l in sorted(Label)] == ["NF", "OU", "OTIG", "OTII", "NT", "OTIO"]
    assert len(Label) == 6


@pytest.mark.parametrize(
    "raw, expected",
    [
        ("Offensive-Targeted-Insult-Individual", Label.OFFENSIVE_TARGETED_INSULT_INDIVIDUAL),
        ("offensive_targeted_insult_individual", Label.OFFENSIVE_TARGETED_INSULT_INDIVIDUAL),
        ("Not_offensive", Label.NOT_OFFENSIVE),
        ("not-Tamil", Label.NOT_TAMIL),
        ("Offensive_Untargetede", Label.OFFENSIVE_UNTARGETED),
        ("NotOffensive", Label.NOT_OFFENSIVE),
    ],
)
def test_label_parse_variants(raw, expected):
    assert Label.parse(raw) is expected


def test_label_parse_rejects_unknown():
    with pytest.raises(CorpusError, match="Bogus"):
        Label.parse("Bogus-Label")


def test_load_one_per_label(write_tsv, one_per_label):
    split = load_dataset(write_tsv(one_per_label), "train")
    assert len(split) == 6
    assert set(class_distribution(split).values()) == {1}
    assert [s.text for s in split] == [r[0] for r in one_per_label]


def test_unknown_label_names_string_and_line(write_tsv):
    path = write_tsv([("fine", "Not-Offensive"), ("hello", "Bogus-Label")])
    with pytest.raises(CorpusError, match=r"unknown label 'Bogus-Label' at line 2"):
        load_dataset(path, "dev")


def test_wrong_column_count(write_tsv):
    path = write_tsv(["only one column"])
    with pytest.raises(CorpusError, match="line 1"):
        load_dataset(path, "train")


def test_extra_columns_strict_and_lenient(write_tsv):
    path = write_tsv(["some text\textra\tNot-Tamil"])
    with pytest.raises(CorpusError, match="malformed line 1"):
        load_dataset(path, "train")
    split = load_dataset(path, "train", lenient=True)
    assert split.samples[0].text == "some text"
    assert split.samples[0].label is Label.NOT_TAMIL


def test_trailing_empty_columns_ignored(write_tsv):
    split = load_dataset(write_tsv(["text\tNot-Tamil\t\t"]), "test")
    assert split.labels == [Label.NOT_TAMIL]


def test_header_row_skipped(write_tsv):
    split = load_dataset(write_tsv(["text\tlabel", ("x", "Not-Tamil")]), "train")
    assert len(split) == 1


def test_empty_text_rejected(write_tsv):
    with pytest.raises(CorpusError, match="empty text at line 1"):
        load_dataset(write_tsv([("   ", "Not-Tamil")]), "train")


def test_invalid_utf8(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_bytes(b"\xff\xfe\tNot-Tamil\n")
    with pytest.raises(CorpusError, match="UTF-8"):
        load_dataset(path, "train")


def test_bad_split_name(write_tsv, one_per_label):
    with pytest.raises(CorpusError):
        load_dataset(write_tsv(one_per_label), "validation")


def test_class_distribution_empty_and_small():
    assert set(class_distribution(DatasetSplit("train")).values()) == {0}
    split = DatasetSplit(
        "train",
        [
            LabeledSample("a", "x", Label.NOT_OFFENSIVE),
            LabeledSample("b", "y", Label.NOT_OFFENSIVE),
            LabeledSample("c", "z", Label.NOT_TAMIL),
        ],
    )
    counts = class_distribution(split)
    assert counts[Label.NOT_OFFENSIVE] == 2
    assert counts[Label.NOT_TAMIL] == 1
    assert sum(counts.values()) == len(split)


_text = st.text(
    alphabet=st.characters(blacklist_categories=("Cs", "Cc", "Zl", "Zp"), blacklist_characters="\t\n\r\x85"),
    min_size=1,
).filter(lambda t: t.strip())


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(_text, st.sampled_from(list(Label))), max_size=20))
def test_round_trip(tmp_path_factory, rows):
    split = DatasetSplit("train", [LabeledSample(f"train:{i + 1}", t, l) for i, (t, l) in enumerate(rows)])
    path = tmp_path_factory.mktemp("rt") / "split.tsv"
    save_dataset(split, path)
    again = load_dataset(path, "train")
    assert [(s.text, s.label) for s in again] == [(s.text, s.label) for s in split]
    assert sum(class_distribution(again).values()) == len(again)


def test_dump_rejects_tabs():
    split = DatasetSplit("train", [LabeledSample("x", "a\tb", Label.NOT_TAMIL)])
    with pytest.raises(CorpusError):
        dumps_dataset(split)


def test_table_sized_synthetic_split(write_tsv):
    supports = {Label.NOT_OFFENSIVE: 3190, Label.OFFENSIVE_UNTARGETED: 368, Label.OFFENSIVE_TARGETED_INSULT_GROUP: 288,
                Label.OFFENSIVE_TARGETED_INSULT_INDIVIDUAL: 315, Label.NOT_TAMIL: 160, Label.OFFENSIVE_TARGETED_INSULT_OTHER: 71}
    rows = [(f"row {label.abbrev} {i}", label.display) for label, n in supports.items() for i in range(n)]
    split = load_dataset(write_tsv(rows, "test.tsv"), "test")
    assert len(split) == 4392
    assert class_distribution(split) == supports
