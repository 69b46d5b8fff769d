"""Functional diagnostic suite evaluation with target-identity mapping.

Suite cases name their own target vocabulary (women, trans people, gay
people, black people, disabled people, Muslims, immigrants); each maps onto
one of the corpus categories, and results roll up accordingly. No suite
target maps to `age`.
"""

from __future__ import annotations

import csv
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .metrics import _f1
from ..corpus import HATEFUL, NON_HATEFUL, TargetIdentity
from ..classifier import LinearModel, predict

HATECHECK_TO_CATEGORY: dict[str, TargetIdentity] = {
    "women": TargetIdentity.GENDER,
    "trans people": TargetIdentity.GENDER,
    "gay people": TargetIdentity.SEXUALITY,
    "black people": TargetIdentity.RACE,
    "disabled people": TargetIdentity.DISABILITY,
    "Muslims": TargetIdentity.RELIGION,
    "immigrants": TargetIdentity.ORIGIN,
}

_NO_TARGET = "none"
_LABEL_MAP = {"hateful": HATEFUL, "non-hateful": NON_HATEFUL}


class HateCheckSchemaError(ValueError):
    pass


@dataclass(frozen=True)
class HateCheckCase:
    functionality: str
    case_id: str
    text: str
    gold_label: str  # hateful | non_hateful
    target_ident: str  # suite vocabulary or "none"

    def __post_init__(self):
        if self.target_ident != _NO_TARGET and self.target_ident not in HATECHECK_TO_CATEGORY:
            raise HateCheckSchemaError(
                f"case {self.case_id!r}: unknown target identity {self.target_ident!r}"
            )


def read_hatecheck_csv(path: str | Path) -> list[HateCheckCase]:
    """Read cases from CSV with columns functionality,case_id,test_case,label_gold,target_ident."""
    cases = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"functionality", "case_id", "test_case", "label_gold", "target_ident"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise HateCheckSchemaError(
                f"{path}: expected columns {sorted(required)}, got {reader.fieldnames}"
            )
        for i, row in enumerate(reader):
            raw_label = row["label_gold"].strip()
            if raw_label not in _LABEL_MAP:
                raise HateCheckSchemaError(
                    f"{path}: row {i}: label_gold {raw_label!r} not in "
                    f"{sorted(_LABEL_MAP)}"
                )
            ident = row["target_ident"].strip() or _NO_TARGET
            cases.append(
                HateCheckCase(
                    functionality=row["functionality"].strip(),
                    case_id=row["case_id"].strip(),
                    text=row["test_case"],
                    gold_label=_LABEL_MAP[raw_label],
                    target_ident=ident,
                )
            )
    return cases


@dataclass
class HateCheckReport:
    per_target_hate_f1: dict[str, float] = field(default_factory=dict)
    per_functionality_accuracy: dict[str, float] = field(default_factory=dict)
    category_rollup_hate_f1: dict[TargetIdentity, float] = field(default_factory=dict)
    n_cases: int = 0

    def to_dict(self) -> dict:
        return {
            "per_target_hate_f1": dict(self.per_target_hate_f1),
            "per_functionality_accuracy": dict(self.per_functionality_accuracy),
            "category_rollup_hate_f1": {t.value: v for t, v in self.category_rollup_hate_f1.items()},
            "n_cases": self.n_cases,
        }


def _hate_f1_of(pairs: Sequence[tuple[str, str]]) -> float:
    tp = sum(1 for g, p in pairs if g == HATEFUL and p == HATEFUL)
    fp = sum(1 for g, p in pairs if g != HATEFUL and p == HATEFUL)
    fn = sum(1 for g, p in pairs if g == HATEFUL and p != HATEFUL)
    return _f1(tp, fp, fn)


def hatecheck_evaluate(
    cases: Sequence[HateCheckCase], model: LinearModel
) -> HateCheckReport:
    """Hate-F1 per suite target plus per-functionality accuracy and the
    corpus-category rollup."""
    if not cases:
        raise ValueError("no cases to evaluate")
    predictions = [predict(model, case.text)[0] for case in cases]

    by_target: dict[str, list[tuple[str, str]]] = defaultdict(list)
    by_functionality: dict[str, list[bool]] = defaultdict(list)
    by_category: dict[TargetIdentity, list[tuple[str, str]]] = defaultdict(list)
    for case, pred in zip(cases, predictions):
        by_functionality[case.functionality].append(case.gold_label == pred)
        if case.target_ident != _NO_TARGET:
            by_target[case.target_ident].append((case.gold_label, pred))
            by_category[HATECHECK_TO_CATEGORY[case.target_ident]].append((case.gold_label, pred))

    return HateCheckReport(
        per_target_hate_f1={t: _hate_f1_of(pairs) for t, pairs in sorted(by_target.items())},
        per_functionality_accuracy={
            f: sum(hits) / len(hits) for f, hits in sorted(by_functionality.items())
        },
        category_rollup_hate_f1={t: _hate_f1_of(pairs) for t, pairs in by_category.items()},
        n_cases=len(cases),
    )
