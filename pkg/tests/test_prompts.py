import random

import pytest

from targetaug.augment import (
    PromptContractError,
    PromptMode,
    PromptSpec,
    ScarcityError,
    build_prompt,
    export_finetune_corpus,
    finetune_sequence,
    parse_prompt,
    select_demonstrations,
)
from targetaug.corpus import HATEFUL, NON_HATEFUL, TargetIdentity

from conftest import make_post


class TestBuildPrompt:
    def test_hateful_with_target(self):
        spec = PromptSpec(PromptMode.FINETUNE_EXPORT, HATEFUL, TargetIdentity.RELIGION)
        assert build_prompt(spec) == "Write a hateful social media post about religion:"

    def test_non_hateful_no_target(self):
        spec = PromptSpec(PromptMode.FINETUNE_EXPORT, NON_HATEFUL)
        assert build_prompt(spec) == "Write a social media post:"

    def test_hateful_no_target(self):
        spec = PromptSpec(PromptMode.FINETUNE_EXPORT, HATEFUL)
        assert build_prompt(spec) == "Write a hateful social media post:"

    def test_non_hateful_with_target(self):
        spec = PromptSpec(PromptMode.FINETUNE_EXPORT, NON_HATEFUL, TargetIdentity.AGE)
        assert build_prompt(spec) == "Write a social media post about age:"

    def test_few_shot_structure(self):
        g = TargetIdentity.GENDER
        demos = tuple(
            make_post(f"d{i}", text=f"demo text {i}", label=HATEFUL, targets=(g,))
            for i in range(3)
        )
        prompt = build_prompt(PromptSpec(PromptMode.FEW_SHOT, HATEFUL, g, demos))
        lines = prompt.splitlines()
        instruction = "Write a hateful social media post about gender:"
        assert [l for l in lines if l == instruction] == [instruction] * 4
        demo_lines = [l for l in lines if l.startswith("demo text")]
        assert demo_lines == ["demo text 0", "demo text 1", "demo text 2"]
        assert lines[-1] == instruction

    def test_few_shot_needs_three_demos(self):
        with pytest.raises(PromptContractError, match="exactly 3"):
            PromptSpec(PromptMode.FEW_SHOT, HATEFUL, demonstrations=())

    def test_few_shot_demo_label_must_match(self):
        demos = tuple(make_post(f"d{i}", label=NON_HATEFUL) for i in range(3))
        with pytest.raises(PromptContractError, match="label"):
            PromptSpec(PromptMode.FEW_SHOT, HATEFUL, demonstrations=demos)

    def test_few_shot_demo_target_must_match(self):
        demos = tuple(
            make_post(f"d{i}", label=HATEFUL, targets=("race",)) for i in range(3)
        )
        with pytest.raises(PromptContractError, match="not about"):
            PromptSpec(PromptMode.FEW_SHOT, HATEFUL, TargetIdentity.AGE, demos)

    def test_finetune_export_rejects_demos(self):
        demos = (make_post("d0", label=HATEFUL),)
        with pytest.raises(PromptContractError, match="no demonstrations"):
            PromptSpec(PromptMode.FINETUNE_EXPORT, HATEFUL, demonstrations=demos)


class TestParsePrompt:
    def test_round_trip_all_cells(self):
        for label in (HATEFUL, NON_HATEFUL):
            for target in list(TargetIdentity) + [None]:
                prompt = build_prompt(PromptSpec(PromptMode.FINETUNE_EXPORT, label, target))
                parsed_label, parsed_targets = parse_prompt(prompt)
                assert parsed_label == label
                if target is None:
                    assert parsed_targets is None
                else:
                    assert parsed_targets == (target.value,)

    def test_round_trip_few_shot(self, small_gold):
        rng = random.Random(0)
        t = TargetIdentity.RACE
        demos = tuple(select_demonstrations(small_gold, HATEFUL, t, 3, rng))
        prompt = build_prompt(PromptSpec(PromptMode.FEW_SHOT, HATEFUL, t, demos))
        assert parse_prompt(prompt) == (HATEFUL, ("race",))

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_prompt("Write me a poem please")


class TestExportFinetuneCorpus:
    def test_single_target_record(self):
        gold = [make_post("p", text="some text", label=HATEFUL, targets=("race",))]
        (record,) = export_finetune_corpus(gold, with_target=True)
        assert record == {
            "prompt": "Write a hateful social media post about race:",
            "text": "some text",
        }
        assert finetune_sequence(record) == (
            "Write a hateful social media post about race: some text"
        )

    def test_multi_target_alphabetical_join(self):
        gold = [make_post("p", text="x y", label=NON_HATEFUL, targets=("race", "gender"))]
        (record,) = export_finetune_corpus(gold, with_target=True)
        assert "about gender, race:" in record["prompt"]

    def test_without_target_no_about_segment(self):
        gold = [
            make_post("p1", text="x", label=HATEFUL, targets=("race",)),
            make_post("p2", text="y", label=NON_HATEFUL, targets=("age", "gender")),
        ]
        for record in export_finetune_corpus(gold, with_target=False):
            assert "about" not in record["prompt"]

    def test_each_target_listed_exactly_once(self):
        gold = [make_post("p", text="x", label=HATEFUL, targets=("race", "age", "gender"))]
        (record,) = export_finetune_corpus(gold, with_target=True)
        _, targets = parse_prompt(record["prompt"])
        assert sorted(targets) == ["age", "gender", "race"]
        assert len(set(targets)) == len(targets)


class TestSelectDemonstrations:
    def test_exactly_k_matches_forced(self):
        g = TargetIdentity.ORIGIN
        gold = [
            make_post(f"m{i}", label=HATEFUL, targets=(g,)) for i in range(3)
        ] + [make_post("other", label=NON_HATEFUL)]
        rng = random.Random(1)
        selected = select_demonstrations(gold, HATEFUL, g, 3, rng)
        assert sorted(p.post_id for p in selected) == ["m0", "m1", "m2"]

    def test_scarcity_error_names_cell(self, small_gold):
        gold = [p for p in small_gold if TargetIdentity.AGE not in p.targets]
        with pytest.raises(ScarcityError, match="age"):
            select_demonstrations(gold, HATEFUL, TargetIdentity.AGE, 3, random.Random(1))

    def test_deterministic(self, small_gold):
        a = select_demonstrations(small_gold, HATEFUL, None, 3, random.Random(7))
        b = select_demonstrations(small_gold, HATEFUL, None, 3, random.Random(7))
        assert a == b

    def test_demonstrations_match_cell(self, small_gold):
        rng = random.Random(2)
        for target in TargetIdentity:
            for label in (HATEFUL, NON_HATEFUL):
                demos = select_demonstrations(small_gold, label, target, 3, rng)
                assert len(demos) == 3
                assert len({d.post_id for d in demos}) == 3
                for d in demos:
                    assert d.label == label
                    assert target in d.targets
