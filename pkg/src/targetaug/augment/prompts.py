"""Label- and target-conditioned prompt construction and its inverse parser."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from ..corpus import HATEFUL, LABELS, Post, TargetIdentity


class PromptMode(str, Enum):
    FINETUNE_EXPORT = "finetune_export"
    FEW_SHOT = "few_shot"


class PromptContractError(ValueError):
    """A PromptSpec violates its structural invariants."""


class ScarcityError(LookupError):
    """Too few gold posts match a (label, target) demonstration cell."""

    def __init__(self, label: str, target: TargetIdentity | None, found: int, needed: int):
        self.label = label
        self.target = target
        super().__init__(
            f"need {needed} demonstrations for cell (label={label}, "
            f"target={target.value if target else None}), found {found}"
        )


@dataclass(frozen=True)
class PromptSpec:
    mode: PromptMode
    intended_label: str
    target: TargetIdentity | None = None
    demonstrations: tuple[Post, ...] = ()

    def __post_init__(self):
        if self.intended_label not in LABELS:
            raise PromptContractError(f"invalid label {self.intended_label!r}")
        if self.mode is PromptMode.FINETUNE_EXPORT and self.demonstrations:
            raise PromptContractError("finetune_export prompts carry no demonstrations")
        if self.mode is PromptMode.FEW_SHOT:
            if len(self.demonstrations) != 3:
                raise PromptContractError(
                    f"few_shot prompts need exactly 3 demonstrations, "
                    f"got {len(self.demonstrations)}"
                )
            for demo in self.demonstrations:
                if demo.label != self.intended_label:
                    raise PromptContractError(
                        f"demonstration {demo.post_id!r} has label {demo.label!r}, "
                        f"expected {self.intended_label!r}"
                    )
                if self.target is not None and self.target not in demo.targets:
                    raise PromptContractError(
                        f"demonstration {demo.post_id!r} is not about {self.target.value!r}"
                    )


def instruction_line(intended_label: str, target_phrase: str | None = None) -> str:
    """The base instruction: `Write a [hateful] social media post [about X]:`."""
    parts = ["Write a"]
    if intended_label == HATEFUL:
        parts.append("hateful")
    parts.append("social media post")
    if target_phrase:
        parts.append(f"about {target_phrase}")
    return " ".join(parts) + ":"


def build_prompt(spec: PromptSpec) -> str:
    """Instantiate the prompt template for a PromptSpec (validating it first)."""
    # frozen dataclass validates in __post_init__; re-validate defensively when
    # callers mutate demonstrations through object.__setattr__ tricks
    spec.__post_init__()
    target_phrase = spec.target.value if spec.target else None
    line = instruction_line(spec.intended_label, target_phrase)
    if spec.mode is PromptMode.FINETUNE_EXPORT:
        return line
    blocks = [f"{line}\n{demo.text}\n" for demo in spec.demonstrations]
    return "\n".join(blocks + [line])


_INSTRUCTION_RE = re.compile(
    r"^Write a (?P<hateful>hateful )?social media post(?: about (?P<targets>.+))?:$"
)


def parse_prompt(prompt: str) -> tuple[str, tuple[str, ...] | None]:
    """Recover (intended label, intended targets) from an emitted prompt.

    The final instruction line determines the cell; few-shot demonstration
    blocks are ignored. Returns target names as written (comma-split), or
    None when the prompt has no target segment.
    """
    lines = prompt.splitlines()
    if not lines:
        raise ValueError("empty prompt")
    match = _INSTRUCTION_RE.match(lines[-1])
    if not match:
        raise ValueError(f"final line is not an instruction line: {lines[-1]!r}")
    label = HATEFUL if match.group("hateful") else "non_hateful"
    raw = match.group("targets")
    if raw is None:
        return label, None
    return label, tuple(t.strip() for t in raw.split(","))


def export_finetune_corpus(gold: Sequence[Post], with_target: bool) -> list[dict]:
    """One {prompt, text} record per gold post for use by an external trainer.

    The training sequence for a record is `prompt + " " + text`. With targets
    enabled, a multi-target post lists all of its targets, alphabetical,
    comma-joined.
    """
    if not gold:
        raise ValueError("gold corpus is empty")
    records = []
    for post in gold:
        phrase = None
        if with_target and post.targets:
            phrase = ", ".join(sorted(t.value for t in post.targets))
        records.append({"prompt": instruction_line(post.label, phrase), "text": post.text})
    return records


def finetune_sequence(record: dict) -> str:
    return f"{record['prompt']} {record['text']}"


def select_demonstrations(
    gold: Sequence[Post],
    label: str,
    target: TargetIdentity | None,
    k: int = 3,
    rng: random.Random | None = None,
) -> list[Post]:
    """Sample k distinct gold posts matching the label (and target, if given)."""
    rng = rng or random.Random()
    matches = [
        p for p in gold if p.label == label and (target is None or target in p.targets)
    ]
    if len(matches) < k:
        raise ScarcityError(label, target, len(matches), k)
    return rng.sample(matches, k)
