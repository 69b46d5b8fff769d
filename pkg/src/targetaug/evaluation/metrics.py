"""Classification metrics: macro-F1, hate-class F1, and per-target breakdowns."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..corpus import ALL_TARGETS, HATEFUL, Post, TargetIdentity


@dataclass
class ConfusionCounts:
    """Counts for the hateful class taken as positive."""

    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def to_dict(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "fn": self.fn, "tn": self.tn}


def _f1(tp: int, fp: int, fn: int) -> float:
    # 0/0 := 0 convention throughout
    denom = 2 * tp + fp + fn
    return 2 * tp / denom if denom else 0.0


def f1_scores(
    gold: Sequence[str], predicted: Sequence[str]
) -> tuple[float, float, ConfusionCounts]:
    """(macro_f1, hate_f1, confusion) with macro the unweighted mean of the
    two per-class F1 scores."""
    if len(gold) != len(predicted):
        raise ValueError(f"length mismatch: {len(gold)} gold vs {len(predicted)} predicted")
    if not gold:
        raise ValueError("empty evaluation set")
    cc = ConfusionCounts()
    for g, p in zip(gold, predicted):
        if g == HATEFUL:
            if p == HATEFUL:
                cc.tp += 1
            else:
                cc.fn += 1
        else:
            if p == HATEFUL:
                cc.fp += 1
            else:
                cc.tn += 1
    hate_f1 = _f1(cc.tp, cc.fp, cc.fn)
    # the non-hateful class swaps positives and negatives
    non_hate_f1 = _f1(cc.tn, cc.fn, cc.fp)
    return (hate_f1 + non_hate_f1) / 2, hate_f1, cc


def per_target_hate_f1(
    eval_set: Sequence[Post], predictions: Sequence[str]
) -> dict[TargetIdentity, float]:
    """Hate-F1 restricted to posts carrying each target.

    Multi-target posts count in every matching bucket; untargeted posts
    contribute to no bucket; targets without posts are omitted.
    """
    if len(eval_set) != len(predictions):
        raise ValueError(
            f"length mismatch: {len(eval_set)} posts vs {len(predictions)} predictions"
        )
    out: dict[TargetIdentity, float] = {}
    for target in ALL_TARGETS:
        pairs = [
            (post.label, pred)
            for post, pred in zip(eval_set, predictions)
            if target in post.targets
        ]
        if not pairs:
            continue
        _, hate_f1, _ = f1_scores([g for g, _ in pairs], [p for _, p in pairs])
        out[target] = hate_f1
    return out


@dataclass
class EvalReport:
    macro_f1: float
    hate_f1: float
    per_target_hate_f1: dict[TargetIdentity, float]
    n_eval: int
    run_meta: dict = field(default_factory=dict)
    confusion: ConfusionCounts | None = None

    def to_dict(self) -> dict:
        return {
            "macro_f1": self.macro_f1,
            "hate_f1": self.hate_f1,
            "per_target_hate_f1": {
                t.value: v for t, v in self.per_target_hate_f1.items()
            },
            "n_eval": self.n_eval,
            "run_meta": self.run_meta,
            "confusion": self.confusion.to_dict() if self.confusion else None,
        }


def build_eval_report(
    eval_set: Sequence[Post],
    predictions: Sequence[str],
    run_meta: Mapping[str, object] | None = None,
) -> EvalReport:
    gold = [p.label for p in eval_set]
    macro, hate, cc = f1_scores(gold, predictions)
    return EvalReport(
        macro_f1=macro,
        hate_f1=hate,
        per_target_hate_f1=per_target_hate_f1(eval_set, predictions),
        n_eval=len(eval_set),
        run_meta=dict(run_meta or {}),
        confusion=cc,
    )
