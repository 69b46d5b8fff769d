"""Metrics, significance testing, agreement, and functional diagnostics."""

from .agreement import (
    DIMENSIONS,
    AnnotationJudgment,
    UndefinedAgreementError,
    krippendorff_alpha_nominal,
    read_judgments_jsonl,
)
from .aso import AsoConfig, AsoResult, aso_epsilon, aso_min_epsilon
from .hatecheck import (
    HATECHECK_TO_CATEGORY,
    HateCheckCase,
    HateCheckReport,
    HateCheckSchemaError,
    hatecheck_evaluate,
    read_hatecheck_csv,
)
from .metrics import (
    ConfusionCounts,
    EvalReport,
    build_eval_report,
    f1_scores,
    per_target_hate_f1,
)

__all__ = [
    "DIMENSIONS",
    "AnnotationJudgment",
    "AsoConfig",
    "AsoResult",
    "ConfusionCounts",
    "EvalReport",
    "HATECHECK_TO_CATEGORY",
    "HateCheckCase",
    "HateCheckReport",
    "HateCheckSchemaError",
    "UndefinedAgreementError",
    "aso_epsilon",
    "aso_min_epsilon",
    "build_eval_report",
    "f1_scores",
    "hatecheck_evaluate",
    "krippendorff_alpha_nominal",
    "per_target_hate_f1",
    "read_hatecheck_csv",
    "read_judgments_jsonl",
]
