"""Krippendorff's alpha (nominal) over manual annotation judgments.

Uses the coincidence-matrix formulation: alpha = 1 - D_o / D_e, where D_o is
the observed disagreement among pairable judgments within items and D_e the
disagreement expected by chance from the value margins. Items judged by a
single annotator carry no pairable values and are skipped.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Iterable, Sequence

DIMENSIONS = ("hateful", "target_match", "realistic")


class UndefinedAgreementError(ValueError):
    """Expected disagreement is zero (every judgment has the same value)."""


@dataclass(frozen=True)
class AnnotationJudgment:
    """One annotator's judgment of one generated item."""

    item_id: str
    annotator_id: str
    hateful: bool
    realistic: bool
    # present only for items generated with target conditioning
    target_match: bool | None = None

    def value_for(self, dimension: str):
        if dimension not in DIMENSIONS:
            raise ValueError(f"unknown dimension {dimension!r}; expected one of {DIMENSIONS}")
        return getattr(self, dimension)

    def to_dict(self) -> dict:
        return {
            "item_id": self.item_id,
            "annotator_id": self.annotator_id,
            "hateful": self.hateful,
            "target_match": self.target_match,
            "realistic": self.realistic,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AnnotationJudgment":
        return cls(
            item_id=str(d["item_id"]),
            annotator_id=str(d["annotator_id"]),
            hateful=bool(d["hateful"]),
            realistic=bool(d["realistic"]),
            target_match=None if d.get("target_match") is None else bool(d["target_match"]),
        )


def read_judgments_jsonl(path: str | Path) -> list[AnnotationJudgment]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                out.append(AnnotationJudgment.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, ValueError) as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from exc
    return out


def krippendorff_alpha_nominal(
    judgments: Iterable[AnnotationJudgment], dimension: str
) -> float:
    """Alpha over the chosen dimension, with missing judgments allowed."""
    by_item: dict[str, list[Hashable]] = defaultdict(list)
    for j in judgments:
        value = j.value_for(dimension)
        if value is not None:
            by_item[j.item_id].append(value)

    units = [values for values in by_item.values() if len(values) >= 2]
    if len(units) < 2:
        raise ValueError(
            f"need at least 2 items with at least 2 judgments each on "
            f"{dimension!r}, found {len(units)}"
        )
    return _alpha_from_units(units)


def _alpha_from_units(units: Sequence[Sequence[Hashable]]) -> float:
    # coincidence matrix: each unit contributes m_u*(m_u-1) ordered pairs,
    # weighted by 1/(m_u - 1)
    coincidence: dict[tuple[Hashable, Hashable], float] = defaultdict(float)
    margins: dict[Hashable, float] = defaultdict(float)
    for values in units:
        m = len(values)
        weight = 1.0 / (m - 1)
        for i, a in enumerate(values):
            for j, b in enumerate(values):
                if i != j:
                    coincidence[(a, b)] += weight
    for (a, _), count in coincidence.items():
        margins[a] += count
    n = sum(margins.values())

    d_observed = sum(count for (a, b), count in coincidence.items() if a != b) / n
    d_expected = sum(
        margins[a] * margins[b]
        for a in margins
        for b in margins
        if a != b
    ) / (n * (n - 1))
    if d_expected == 0.0:
        raise UndefinedAgreementError(
            "all pairable judgments share one value; expected disagreement is zero"
        )
    return 1.0 - d_observed / d_expected
