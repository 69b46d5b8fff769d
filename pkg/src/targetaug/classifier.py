"""Hashed n-gram logistic regression: featurizer, SGD trainer, and the
label-consistency filter for generated candidates."""

from __future__ import annotations

import json
import math
import random
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .corpus import HATEFUL, NON_HATEFUL, Post, TargetIdentity

MODEL_FORMAT_VERSION = 1


class TrainingError(RuntimeError):
    pass


@dataclass(frozen=True)
class FeatureSpec:
    word_orders: tuple[int, ...] = (1, 2)
    char_orders: tuple[int, ...] = (3, 4, 5)
    hash_dim: int = 2**18
    lowercase: bool = True

    def __post_init__(self):
        if self.hash_dim < 2**10 or self.hash_dim & (self.hash_dim - 1):
            raise ValueError(f"hash_dim must be a power of two >= 1024, got {self.hash_dim}")
        if not self.word_orders and not self.char_orders:
            raise ValueError("at least one n-gram order is required")

    def to_dict(self) -> dict:
        return {
            "word_orders": list(self.word_orders),
            "char_orders": list(self.char_orders),
            "hash_dim": self.hash_dim,
            "lowercase": self.lowercase,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "FeatureSpec":
        return cls(
            word_orders=tuple(d["word_orders"]),
            char_orders=tuple(d["char_orders"]),
            hash_dim=int(d["hash_dim"]),
            lowercase=bool(d["lowercase"]),
        )


def _hash_feature(key: str, mask: int) -> int:
    # crc32 is stable across processes and platforms, unlike builtin hash()
    return zlib.crc32(key.encode("utf-8")) & mask


def featurize(text: str, spec: FeatureSpec) -> dict[int, float]:
    """Hashed bag of word and character n-grams, as index -> count."""
    if spec.lowercase:
        text = text.lower()
    tokens = text.split()
    mask = spec.hash_dim - 1
    counts: dict[int, float] = {}
    for order in spec.word_orders:
        for i in range(len(tokens) - order + 1):
            idx = _hash_feature(f"w{order}:" + " ".join(tokens[i : i + order]), mask)
            counts[idx] = counts.get(idx, 0.0) + 1.0
    normalized = " ".join(tokens)
    for order in spec.char_orders:
        for i in range(len(normalized) - order + 1):
            idx = _hash_feature(f"c{order}:" + normalized[i : i + order], mask)
            counts[idx] = counts.get(idx, 0.0) + 1.0
    return counts


@dataclass
class TrainConfig:
    epochs: int = 5
    learning_rate: float = 0.1
    batch_size: int = 16
    seed: int = 0
    l2: float = 1e-6
    # fraction of training data held out for best-epoch selection; 0 disables
    holdout_fraction: float = 0.0

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.l2 < 0:
            raise ValueError("l2 must be non-negative")
        if not 0.0 <= self.holdout_fraction < 1.0:
            raise ValueError("holdout_fraction must be in [0,1)")

    def to_dict(self) -> dict:
        return {
            "epochs": self.epochs,
            "learning_rate": self.learning_rate,
            "batch_size": self.batch_size,
            "seed": self.seed,
            "l2": self.l2,
            "holdout_fraction": self.holdout_fraction,
        }


@dataclass
class LinearModel:
    weights: np.ndarray
    bias: float
    spec: FeatureSpec
    train_meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not np.all(np.isfinite(self.weights)) or not math.isfinite(self.bias):
            raise ValueError("model weights must be finite")


def _sigmoid(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-min(z, 500.0)))
    return math.exp(max(z, -500.0)) / (1.0 + math.exp(max(z, -500.0)))


def _score_features(model: LinearModel, features: Mapping[int, float]) -> float:
    return float(sum(model.weights[i] * c for i, c in features.items()) + model.bias)


def predict_features(model: LinearModel, features: Mapping[int, float]) -> tuple[str, float]:
    prob = _sigmoid(_score_features(model, features))
    # tie at exactly 0.5 goes to the negative class
    return (HATEFUL if prob > 0.5 else NON_HATEFUL), prob


def predict(model: LinearModel, text: str) -> tuple[str, float]:
    """Classify one text: (label, probability of the hateful class)."""
    return predict_features(model, featurize(text, model.spec))


Batch = Sequence[tuple[Mapping[int, float], int]]


def loss_and_gradient(
    model: LinearModel, batch: Batch, l2: float = 0.0
) -> tuple[float, np.ndarray, float]:
    """Mean binary cross-entropy plus l2*||w||^2/2, with its exact gradient.

    Labels are 1 for hateful, 0 otherwise. Returns (loss, d/dw, d/db).
    """
    if not batch:
        raise ValueError("batch is empty")
    m = len(batch)
    grad_w = np.zeros_like(model.weights)
    grad_b = 0.0
    loss = 0.0
    for features, y in batch:
        z = _score_features(model, features)
        p = _sigmoid(z)
        # numerically stable -log p / -log(1-p) via softplus of the logit
        if y == 1:
            loss += math.log1p(math.exp(-abs(z))) + max(-z, 0.0)
        else:
            loss += math.log1p(math.exp(-abs(z))) + max(z, 0.0)
        err = p - y
        for i, c in features.items():
            grad_w[i] += err * c
        grad_b += err
    loss = loss / m + 0.5 * l2 * float(np.dot(model.weights, model.weights))
    grad_w /= m
    if l2:
        grad_w += l2 * model.weights
    return loss, grad_w, grad_b / m


def _label_to_y(label: str) -> int:
    return 1 if label == HATEFUL else 0


def train(dataset: Sequence[Post], config: TrainConfig, spec: FeatureSpec) -> LinearModel:
    """Mini-batch SGD over seeded-shuffled epochs; deterministic for fixed inputs."""
    labels = {p.label for p in dataset}
    if len(labels) < 2:
        raise TrainingError(
            f"training data must contain both labels, found only {sorted(labels)}"
        )
    examples = [(featurize(p.text, spec), _label_to_y(p.label)) for p in dataset]

    rng = np.random.default_rng(config.seed)
    holdout: list[tuple[Mapping[int, float], int]] = []
    if config.holdout_fraction > 0:
        n_hold = max(1, int(round(config.holdout_fraction * len(examples))))
        order = rng.permutation(len(examples))
        holdout = [examples[i] for i in order[:n_hold]]
        examples = [examples[i] for i in order[n_hold:]]
        if not examples:
            raise TrainingError("holdout split leaves no training examples")

    model = LinearModel(
        weights=np.zeros(spec.hash_dim, dtype=np.float64), bias=0.0, spec=spec
    )
    best_weights = None
    best_bias = 0.0
    best_val = math.inf
    epoch_losses: list[float] = []
    for _ in range(config.epochs):
        order = rng.permutation(len(examples))
        for start in range(0, len(examples), config.batch_size):
            batch = [examples[i] for i in order[start : start + config.batch_size]]
            _, grad_w, grad_b = loss_and_gradient(model, batch, config.l2)
            model.weights -= config.learning_rate * grad_w
            model.bias -= config.learning_rate * grad_b
        epoch_loss, _, _ = loss_and_gradient(model, examples, config.l2)
        epoch_losses.append(float(epoch_loss))
        if holdout:
            val_loss, _, _ = loss_and_gradient(model, holdout, 0.0)
            if val_loss < best_val:
                best_val = val_loss
                best_weights = model.weights.copy()
                best_bias = model.bias

    if holdout and best_weights is not None:
        model.weights = best_weights
        model.bias = best_bias

    if not np.all(np.isfinite(model.weights)):
        raise TrainingError("training diverged to non-finite weights")
    model.train_meta = {
        **config.to_dict(),
        "n_train": len(examples),
        "n_holdout": len(holdout),
        "final_loss": epoch_losses[-1],
        "epoch_losses": epoch_losses,
    }
    return model


# -- model files -------------------------------------------------------------


def save_model(model: LinearModel, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    meta = {
        "format_version": MODEL_FORMAT_VERSION,
        "bias": model.bias,
        "spec": model.spec.to_dict(),
        "train_meta": model.train_meta,
    }
    with open(path, "wb") as fh:
        np.savez(fh, weights=model.weights, meta=np.frombuffer(
            json.dumps(meta, sort_keys=True).encode("utf-8"), dtype=np.uint8
        ))


def load_model(path: str | Path) -> LinearModel:
    with np.load(path) as data:
        weights = data["weights"]
        meta = json.loads(bytes(data["meta"].tobytes()).decode("utf-8"))
    if meta.get("format_version") != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {meta.get('format_version')!r}")
    return LinearModel(
        weights=weights,
        bias=float(meta["bias"]),
        spec=FeatureSpec.from_dict(meta["spec"]),
        train_meta=meta.get("train_meta", {}),
    )


# -- external scorer hook ------------------------------------------------------


class FileScorer:
    """Per-text probabilities supplied from a JSON-lines {id, p_hateful} file.

    Lets a transformer's predictions stand in for the built-in model without
    code changes.
    """

    def __init__(self, scores: Mapping[str, float]):
        self.scores = dict(scores)

    @classmethod
    def from_jsonl(cls, path: str | Path) -> "FileScorer":
        scores = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                    scores[str(record["id"])] = float(record["p_hateful"])
                except (json.JSONDecodeError, KeyError, ValueError) as exc:
                    raise ValueError(f"{path}: line {lineno}: {exc}") from exc
        return cls(scores)

    def predict_post(self, post: Post) -> tuple[str, float]:
        try:
            prob = self.scores[post.post_id]
        except KeyError:
            raise KeyError(f"no external score for post {post.post_id!r}") from None
        return (HATEFUL if prob > 0.5 else NON_HATEFUL), prob


def _predicted_label(model, post: Post) -> str:
    if isinstance(model, LinearModel):
        return predict(model, post.text)[0]
    return model.predict_post(post)[0]


# -- consistency filtering -------------------------------------------------------


@dataclass
class FilterReport:
    total_candidates: int
    pass_counts: dict[tuple[str, str | None], int]
    kept_per_label: dict[str, int]
    cap_per_label: int
    shortfall: dict[str, bool]

    def to_dict(self) -> dict:
        return {
            "total_candidates": self.total_candidates,
            "pass_counts": [
                {"intended_label": label, "intended_target": target, "passed": n}
                for (label, target), n in sorted(
                    self.pass_counts.items(), key=lambda kv: (kv[0][0], kv[0][1] or "")
                )
            ],
            "kept_per_label": self.kept_per_label,
            "cap_per_label": self.cap_per_label,
            "shortfall": self.shortfall,
        }


def filter_generated(
    candidates: Sequence[Post],
    model,
    cap_per_label: int,
    seed: int,
) -> tuple[list[Post], FilterReport]:
    """Keep candidates whose predicted label matches their intended label.

    When more than cap_per_label survive for a label, a seeded uniform
    subsample of exactly cap_per_label is kept; when fewer, all survivors are
    kept and the shortfall is flagged. `model` is a LinearModel or any object
    with a predict_post method (see FileScorer).
    """
    passed: dict[str, list[int]] = {HATEFUL: [], NON_HATEFUL: []}
    pass_counts: dict[tuple[str, str | None], int] = {}
    for idx, post in enumerate(candidates):
        meta = post.source_meta or {}
        intended = meta.get("intended_label")
        if intended not in (HATEFUL, NON_HATEFUL):
            raise ValueError(f"candidate {post.post_id!r} has no intended label")
        if _predicted_label(model, post) == intended:
            passed[intended].append(idx)
            cell = (intended, meta.get("intended_target"))
            pass_counts[cell] = pass_counts.get(cell, 0) + 1

    kept_indices: list[int] = []
    kept_per_label: dict[str, int] = {}
    shortfall: dict[str, bool] = {}
    for label, indices in passed.items():
        if len(indices) > cap_per_label:
            chosen = random.Random(f"{seed}|{label}").sample(indices, cap_per_label)
        else:
            chosen = indices
        shortfall[label] = len(indices) < cap_per_label
        kept_per_label[label] = len(chosen)
        kept_indices.extend(chosen)

    kept_indices.sort()
    report = FilterReport(
        total_candidates=len(candidates),
        pass_counts=pass_counts,
        kept_per_label=kept_per_label,
        cap_per_label=cap_per_label,
        shortfall=shortfall,
    )
    return [candidates[i] for i in kept_indices], report
