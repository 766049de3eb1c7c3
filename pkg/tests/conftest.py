from __future__ import annotations

from pathlib import Path

import pytest

from tanglish.corpus import Label
from tanglish.lexicon import EnglishLexicon, default_english_lexicon

_ACCEPTANCE: list[tuple[str, str, str]] = []


@pytest.fixture(scope="session")
def english() -> EnglishLexicon:
    return default_english_lexicon()


@pytest.fixture
def write_tsv(tmp_path: Path):
    def write(rows, name="data.tsv") -> Path:
        path = tmp_path / name
        lines = [r if isinstance(r, str) else f"{r[0]}\t{r[1]}" for r in rows]
        path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
        return path

    return write


@pytest.fixture
def one_per_label():
    return [(f"sample number {i}", label.display) for i, label in enumerate(Label)]


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        verdict = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        detail = ""
        if report.outcome == "skipped" and isinstance(report.longrepr, tuple):
            detail = report.longrepr[2]
        _ACCEPTANCE.append((verdict, name, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for verdict, name, detail in _ACCEPTANCE:
        line = f"{verdict}  {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
