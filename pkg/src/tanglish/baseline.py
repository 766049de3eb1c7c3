"""Character n-gram TF-IDF features and a softmax regression classifier."""

from __future__ import annotations

import json
import logging
import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .corpus import DatasetSplit, Label

log = logging.getLogger(__name__)

N_CLASSES = len(Label)
BOW, EOW = "^", "$"
MODEL_FORMAT = "tanglish-linear"
MODEL_VERSION = 1


class BaselineError(ValueError):
    pass


class TrainingDiverged(RuntimeError):
    def __init__(self, epoch: int):
        super().__init__(f"training diverged at epoch {epoch}: non-finite loss")
        self.epoch = epoch


def char_ngrams(text: str, n_range: tuple[int, int]) -> Counter:
    """Within-token character n-grams; each token is padded as ``^token$``."""
    lo, hi = n_range
    counts: Counter = Counter()
    for tok in text.split():
        padded = BOW + tok + EOW
        for n in range(lo, hi + 1):
            for i in range(len(padded) - n + 1):
                counts[padded[i:i + n]] += 1
    return counts


@dataclass
class NgramVocab:
    n_range: tuple[int, int]
    grams: dict[str, int]
    doc_freq: np.ndarray
    n_docs: int

    def __len__(self) -> int:
        return len(self.grams)

    @property
    def idf(self) -> np.ndarray:
        return np.log((1.0 + self.n_docs) / (1.0 + self.doc_freq)) + 1.0


def fit_vocab(texts: Sequence[str], n_range: tuple[int, int] = (1, 5), min_df: int = 1) -> NgramVocab:
    if not texts:
        raise BaselineError("cannot fit a vocabulary on an empty corpus")
    if min_df < 1:
        raise BaselineError("min_df must be >= 1")
    lo, hi = n_range
    if not 1 <= lo <= hi:
        raise BaselineError(f"invalid n_range {n_range}")
    df: Counter = Counter()
    for text in texts:
        df.update(char_ngrams(text, n_range).keys())
    kept = sorted(g for g, c in df.items() if c >= min_df)
    if not kept:
        raise BaselineError("no features retained")
    grams = {g: i for i, g in enumerate(kept)}
    return NgramVocab((lo, hi), grams, np.array([df[g] for g in kept], dtype=np.int64), len(texts))


@dataclass(frozen=True)
class FeatureVector:
    indices: np.ndarray
    weights: np.ndarray

    def __len__(self) -> int:
        return len(self.indices)


def featurize(text: str, vocab: NgramVocab) -> FeatureVector:
    """Raw-count tf times smoothed idf, L2-normalised; unknown grams are dropped."""
    counts = char_ngrams(text, vocab.n_range)
    pairs = sorted((vocab.grams[g], c) for g, c in counts.items() if g in vocab.grams)
    if not pairs:
        return FeatureVector(np.zeros(0, dtype=np.int64), np.zeros(0))
    idx = np.array([p[0] for p in pairs], dtype=np.int64)
    w = np.array([p[1] for p in pairs], dtype=float) * vocab.idf[idx]
    return FeatureVector(idx, w / np.linalg.norm(w))


def featurize_many(texts: Iterable[str], vocab: NgramVocab) -> sp.csr_matrix:
    indptr, indices, data = [0], [], []
    for text in texts:
        fv = featurize(text, vocab)
        indices.append(fv.indices)
        data.append(fv.weights)
        indptr.append(indptr[-1] + len(fv))
    n = len(indptr) - 1
    return sp.csr_matrix(
        (np.concatenate(data) if data else np.zeros(0), np.concatenate(indices) if indices else np.zeros(0, dtype=np.int64), indptr),
        shape=(n, len(vocab)),
    )


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.1
    epochs: int = 20
    l2: float = 1e-4
    seed: int = 42
    batch_size: int = 64

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise BaselineError("learning_rate must be positive")
        if self.epochs < 0:
            raise BaselineError("epochs must be non-negative")
        if self.l2 < 0:
            raise BaselineError("l2 must be non-negative")
        if self.batch_size < 1:
            raise BaselineError("batch_size must be positive")


@dataclass
class LinearModel:
    W: np.ndarray
    b: np.ndarray
    vocab: NgramVocab
    config: TrainConfig = field(default_factory=TrainConfig)
    loss_trace: list[float] = field(default_factory=list)

    @classmethod
    def zeros(cls, vocab: NgramVocab, config: TrainConfig | None = None) -> "LinearModel":
        return cls(np.zeros((N_CLASSES, len(vocab))), np.zeros(N_CLASSES), vocab, config or TrainConfig())


def softmax(scores: np.ndarray) -> np.ndarray:
    z = scores - scores.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def objective(W: np.ndarray, b: np.ndarray, X, y: np.ndarray, l2: float) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean softmax cross-entropy plus ``l2/2 * ||W||^2`` and its gradients.

    ``X`` is (n, D), dense or sparse; ``y`` holds class indices.  Biases are
    not regularised.
    """
    n = X.shape[0]
    scores = np.asarray(X @ W.T) + b
    z = scores - scores.max(axis=1, keepdims=True)
    log_norm = np.log(np.exp(z).sum(axis=1))
    log_p = z[np.arange(n), y] - log_norm
    loss = -log_p.mean() + 0.5 * l2 * float(np.sum(W * W))
    G = np.exp(z - log_norm[:, None])
    G[np.arange(n), y] -= 1.0
    G /= n
    gW = np.asarray(G.T @ X) + l2 * W
    gb = G.sum(axis=0)
    return float(loss), gW, gb


def train(split: DatasetSplit, vocab: NgramVocab, cfg: TrainConfig = TrainConfig()) -> LinearModel:
    """Mini-batch gradient descent from zero weights with a seeded shuffle."""
    if len(split) == 0:
        raise BaselineError("cannot train on an empty split")
    X = featurize_many(split.texts, vocab)
    y = np.array([int(lbl) for lbl in split.labels], dtype=np.int64)
    if y.max() >= N_CLASSES or y.min() < 0:
        raise BaselineError("label index out of range")
    model = LinearModel.zeros(vocab, cfg)
    rng = np.random.default_rng(cfg.seed)
    n = X.shape[0]
    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(n)
        # overflow surfaces as a non-finite loss below
        with np.errstate(over="ignore", invalid="ignore"):
            for start in range(0, n, cfg.batch_size):
                batch = order[start:start + cfg.batch_size]
                _, gW, gb = objective(model.W, model.b, X[batch], y[batch], cfg.l2)
                model.W -= cfg.learning_rate * gW
                model.b -= cfg.learning_rate * gb
            loss, _, _ = objective(model.W, model.b, X, y, cfg.l2)
        if not math.isfinite(loss) or not np.all(np.isfinite(model.W)):
            raise TrainingDiverged(epoch)
        model.loss_trace.append(loss)
        log.info("epoch %d loss %.6f", epoch, loss)
    return model


def scores_many(model: LinearModel, texts: Sequence[str]) -> np.ndarray:
    X = featurize_many(texts, model.vocab)
    return np.asarray(X @ model.W.T) + model.b


def predict_proba(model: LinearModel, text: str) -> np.ndarray:
    return softmax(scores_many(model, [text]))[0]


def predict(model: LinearModel, text: str) -> Label:
    # np.argmax returns the first maximum, i.e. the lowest label index on ties
    return Label(int(np.argmax(scores_many(model, [text])[0])))


def predict_many(model: LinearModel, texts: Sequence[str]) -> list[Label]:
    if not texts:
        return []
    return [Label(int(i)) for i in np.argmax(scores_many(model, texts), axis=1)]


def save_model(model: LinearModel, path: str | Path) -> None:
    vocab = model.vocab
    grams = [None] * len(vocab)
    for g, i in vocab.grams.items():
        grams[i] = g
    payload = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "n_range": list(vocab.n_range),
        "n_docs": vocab.n_docs,
        "grams": grams,
        "doc_freq": vocab.doc_freq.tolist(),
        "idf": vocab.idf.tolist(),
        "W": model.W.tolist(),
        "b": model.b.tolist(),
        "config": asdict(model.config),
        "loss_trace": model.loss_trace,
    }
    Path(path).write_text(json.dumps(payload, ensure_ascii=False), encoding="utf-8")


def load_model(path: str | Path) -> LinearModel:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise BaselineError(f"cannot read model {path}: {exc}") from exc
    if payload.get("format") != MODEL_FORMAT or payload.get("version") != MODEL_VERSION:
        raise BaselineError(
            f"model {path} has format {payload.get('format')!r} version {payload.get('version')!r}, "
            f"expected {MODEL_FORMAT!r} version {MODEL_VERSION}"
        )
    grams = payload["grams"]
    vocab = NgramVocab(
        tuple(payload["n_range"]),
        {g: i for i, g in enumerate(grams)},
        np.array(payload["doc_freq"], dtype=np.int64),
        int(payload["n_docs"]),
    )
    W = np.array(payload["W"], dtype=float).reshape(N_CLASSES, len(grams))
    b = np.array(payload["b"], dtype=float)
    if b.shape != (N_CLASSES,):
        raise BaselineError(f"model {path} has {b.shape} biases, expected {N_CLASSES}")
    return LinearModel(W, b, vocab, TrainConfig(**payload["config"]), list(payload.get("loss_trace", [])))
