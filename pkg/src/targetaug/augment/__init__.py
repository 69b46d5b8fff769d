"""Prompt building, quota planning, and generation backends."""

from .backends import (
    BackendError,
    GenerationBackend,
    GenerationParams,
    HTTPBackend,
    MockBackend,
    mock_generate,
    truncate_tokens,
)
from .generate import GenerationIncomplete, derive_seed, generate_dataset
from .prompts import (
    PromptContractError,
    PromptMode,
    PromptSpec,
    ScarcityError,
    build_prompt,
    export_finetune_corpus,
    finetune_sequence,
    instruction_line,
    parse_prompt,
    select_demonstrations,
)
from .quotas import PlanError, QuotaCell, QuotaPlan, plan_quotas

__all__ = [
    "BackendError",
    "GenerationBackend",
    "GenerationIncomplete",
    "GenerationParams",
    "HTTPBackend",
    "MockBackend",
    "PlanError",
    "PromptContractError",
    "PromptMode",
    "PromptSpec",
    "QuotaCell",
    "QuotaPlan",
    "ScarcityError",
    "build_prompt",
    "derive_seed",
    "export_finetune_corpus",
    "finetune_sequence",
    "generate_dataset",
    "instruction_line",
    "mock_generate",
    "parse_prompt",
    "plan_quotas",
    "select_demonstrations",
    "truncate_tokens",
]
