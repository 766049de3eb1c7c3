"""Confusion matrices and support-weighted precision/recall/F1 reports."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus import Label

N = len(Label)


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class ConfusionMatrix:
    counts: np.ndarray  # rows: true label index, columns: predicted

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def support(self) -> np.ndarray:
        return self.counts.sum(axis=1)


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class Averages:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class EvalReport:
    per_class: tuple[ClassMetrics, ...]
    weighted: Averages
    macro: Averages
    confusion: ConfusionMatrix

    @property
    def accuracy(self) -> float:
        return float(np.trace(self.confusion.counts)) / self.confusion.total


def confusion(truths: Sequence[Label], preds: Sequence[Label]) -> ConfusionMatrix:
    if len(truths) != len(preds):
        raise EvalError(f"length mismatch: {len(truths)} truths vs {len(preds)} predictions")
    if not truths:
        raise EvalError("nothing to evaluate")
    counts = np.zeros((N, N), dtype=np.int64)
    np.add.at(counts, (np.array([int(t) for t in truths]), np.array([int(p) for p in preds])), 1)
    return ConfusionMatrix(counts)


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def f1_score(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


def metrics(cm: ConfusionMatrix) -> EvalReport:
    """Per-class metrics with 0 for undefined ratios, then support-weighted and macro means."""
    counts = cm.counts
    total = counts.sum()
    if total <= 0:
        raise EvalError("confusion matrix is empty")
    tp = np.diag(counts)
    col = counts.sum(axis=0)
    row = counts.sum(axis=1)
    per_class = []
    for c in range(N):
        p = _ratio(tp[c], col[c])
        r = _ratio(tp[c], row[c])
        per_class.append(ClassMetrics(float(p), float(r), float(f1_score(p, r)), int(row[c])))
    def wmean(attr):
        return float(sum(int(row[c]) * getattr(m, attr) for c, m in enumerate(per_class)) / int(total))

    weighted = Averages(wmean("precision"), wmean("recall"), wmean("f1"))
    macro = Averages(
        float(np.mean([m.precision for m in per_class])),
        float(np.mean([m.recall for m in per_class])),
        float(np.mean([m.f1 for m in per_class])),
    )
    return EvalReport(tuple(per_class), weighted, macro, cm)


class _Fixed6(float):
    """Float that JSON-encodes with exactly six decimals."""

    def __repr__(self) -> str:
        return f"{float(self):.6f}"


def _fix(x: float) -> "_Fixed6":
    return _Fixed6(round(x, 6))


def _encode(obj, indent: int | None) -> str:
    # json's float encoder calls float.__repr__, so substitute the text afterwards
    placeholder = {}

    def walk(o):
        if isinstance(o, _Fixed6):
            key = f"@@F{len(placeholder)}@@"
            placeholder[key] = repr(o)
            return key
        if isinstance(o, dict):
            return {k: walk(v) for k, v in o.items()}
        if isinstance(o, list):
            return [walk(v) for v in o]
        return o

    text = json.dumps(walk(obj), indent=indent, ensure_ascii=False)
    for key, val in placeholder.items():
        text = text.replace(f'"{key}"', val)
    return text


def report_dict(report: EvalReport) -> dict:
    def avg(a: Averages) -> dict:
        return {"precision": _fix(a.precision), "recall": _fix(a.recall), "f1": _fix(a.f1)}

    return {
        "per_class": [
            {
                "label": Label(c).display,
                "precision": _fix(m.precision),
                "recall": _fix(m.recall),
                "f1": _fix(m.f1),
                "support": m.support,
            }
            for c, m in enumerate(report.per_class)
        ],
        "weighted": avg(report.weighted),
        "macro": avg(report.macro),
        "confusion": report.confusion.counts.tolist(),
    }


def report_json(report: EvalReport, indent: int | None = 2) -> str:
    return _encode(report_dict(report), indent)


def reformat_json(text: str, indent: int | None = 2) -> str:
    """Re-emit a parsed report with the same float formatting."""

    def walk(o):
        if isinstance(o, float):
            return _Fixed6(o)
        if isinstance(o, dict):
            return {k: walk(v) for k, v in o.items()}
        if isinstance(o, list):
            return [walk(v) for v in o]
        return o

    return _encode(walk(json.loads(text)), indent)


def report_table(report: EvalReport) -> str:
    """Plain-text summary: per-class rows, weighted average, then the confusion grid."""
    lines = [f"{'class':<38}{'precision':>10}{'recall':>10}{'f1':>10}{'support':>9}"]
    for c, m in enumerate(report.per_class):
        name = f"{c} {Label(c).display} ({Label(c).abbrev})"
        lines.append(f"{name:<38}{m.precision:>10.4f}{m.recall:>10.4f}{m.f1:>10.4f}{m.support:>9d}")
    w = report.weighted
    lines.append(f"{'weighted avg':<38}{w.precision:>10.4f}{w.recall:>10.4f}{w.f1:>10.4f}{report.confusion.total:>9d}")
    lines.append("")
    lines.append("confusion (rows=true, cols=predicted): " + " ".join(f"{c}={Label(c).abbrev}" for c in range(N)))
    lines.append("      " + "".join(f"{c:>7d}" for c in range(N)))
    for c in range(N):
        lines.append(f"{c:>6d}" + "".join(f"{v:>7d}" for v in report.confusion.counts[c]))
    return "\n".join(lines)


def confusion_csv(cm: ConfusionMatrix) -> str:
    header = "true\\pred," + ",".join(Label(c).abbrev for c in range(N))
    rows = [f"{Label(r).abbrev}," + ",".join(str(v) for v in cm.counts[r]) for r in range(N)]
    return "\n".join([header, *rows]) + "\n"
