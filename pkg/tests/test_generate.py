from collections import Counter

import pytest

from targetaug.augment import (
    BackendError,
    GenerationIncomplete,
    GenerationParams,
    MockBackend,
    PromptMode,
    generate_dataset,
    mock_generate,
    parse_prompt,
    plan_quotas,
)
from targetaug.corpus import HATEFUL, NON_HATEFUL, TargetIdentity


def tiny_plan(batch_size=2):
    # 2 labels x 7 targets x 2 per cell
    return plan_quotas(28, with_target=True, batch_size=batch_size)


def params(batch_size=2):
    return GenerationParams(batch_size=batch_size)


class TestAccounting:
    def test_counts_match_plan(self, small_gold):
        plan = tiny_plan()
        posts = generate_dataset(
            small_gold, MockBackend(), PromptMode.FEW_SHOT, True, plan, params(), seed=1
        )
        assert len(posts) == plan.planned
        cells = Counter(
            (p.source_meta["intended_label"], p.source_meta["intended_target"])
            for p in posts
        )
        for cell in plan.cells:
            assert cells[(cell.intended_label, cell.target.value)] == cell.count

    def test_no_target_plan(self, small_gold):
        plan = plan_quotas(8, with_target=False, batch_size=2)
        posts = generate_dataset(
            small_gold, MockBackend(), PromptMode.FINETUNE_EXPORT, False, plan, params(), 3
        )
        assert len(posts) == 8
        labels = Counter(p.source_meta["intended_label"] for p in posts)
        assert labels == {HATEFUL: 4, NON_HATEFUL: 4}
        assert all(p.source_meta["intended_target"] is None for p in posts)
        assert all(p.targets == frozenset() for p in posts)

    def test_metadata_fields(self, small_gold):
        posts = generate_dataset(
            small_gold, MockBackend(), PromptMode.FEW_SHOT, True, tiny_plan(), params(), 5
        )
        for p in posts:
            assert p.provenance == "generated"
            assert p.source_meta["backend"] == "mock"
            assert p.source_meta["mode"] == "few_shot"
            assert len(p.source_meta["prompt_sha256"]) == 64
            assert p.label == p.source_meta["intended_label"]
            if p.source_meta["intended_target"]:
                assert p.targets == frozenset(
                    {TargetIdentity.parse(p.source_meta["intended_target"])}
                )


class TestDeterminism:
    def test_same_seed_identical(self, small_gold):
        run = lambda: generate_dataset(
            small_gold, MockBackend(), PromptMode.FEW_SHOT, True, tiny_plan(), params(), 42
        )
        assert run() == run()

    def test_parallelism_does_not_change_output(self, small_gold):
        base = generate_dataset(
            small_gold, MockBackend(), PromptMode.FEW_SHOT, True, tiny_plan(), params(), 7
        )
        parallel = generate_dataset(
            small_gold,
            MockBackend(),
            PromptMode.FEW_SHOT,
            True,
            tiny_plan(),
            params(),
            7,
            parallelism=4,
        )
        assert base == parallel

    def test_different_seed_differs(self, small_gold):
        a = generate_dataset(
            small_gold, MockBackend(), PromptMode.FEW_SHOT, True, tiny_plan(), params(), 1
        )
        b = generate_dataset(
            small_gold, MockBackend(), PromptMode.FEW_SHOT, True, tiny_plan(), params(), 2
        )
        assert [p.text for p in a] != [p.text for p in b]


class _EmptyOnceBackend:
    """Returns one empty completion on the first call, then behaves."""

    identity = "empty-once"

    def __init__(self):
        self.calls = 0

    def generate(self, prompt, params, count, seed):
        self.calls += 1
        texts = mock_generate(prompt, params, count, seed)
        if self.calls == 1:
            texts[0] = "   "
        return texts


class _FailingBackend:
    identity = "flaky"

    def __init__(self, fail_after):
        self.fail_after = fail_after
        self.calls = 0

    def generate(self, prompt, params, count, seed):
        self.calls += 1
        if self.calls > self.fail_after:
            raise BackendError("backend exploded")
        return mock_generate(prompt, params, count, seed)


class TestRetriesAndFailure:
    def test_empty_completion_retried_to_full_count(self, small_gold):
        backend = _EmptyOnceBackend()
        plan = tiny_plan()
        posts = generate_dataset(
            small_gold, backend, PromptMode.FINETUNE_EXPORT, True, plan, params(), 1
        )
        assert len(posts) == plan.planned
        assert all(p.text.strip() for p in posts)
        # one extra top-up call beyond the 14 planned batches
        assert backend.calls == 15

    def test_partial_error_carries_produced_posts(self, small_gold):
        backend = _FailingBackend(fail_after=5)
        with pytest.raises(GenerationIncomplete) as err:
            generate_dataset(
                small_gold, backend, PromptMode.FINETUNE_EXPORT, True, tiny_plan(), params(), 1
            )
        assert len(err.value.posts) == 5 * 2

    def test_few_shot_demos_resampled_per_call(self, small_gold):
        plan = plan_quotas(8, with_target=False, batch_size=2)

        class Recording:
            identity = "rec"
            prompts = []

            def generate(self, prompt, params, count, seed):
                self.prompts.append(prompt)
                return mock_generate(prompt, params, count, seed)

        backend = Recording()
        generate_dataset(small_gold, backend, PromptMode.FEW_SHOT, False, plan, params(), 1)
        hateful_prompts = [p for p in backend.prompts if parse_prompt(p)[0] == HATEFUL]
        assert len(hateful_prompts) == 2
        assert hateful_prompts[0] != hateful_prompts[1]

    def test_demos_always_match_cell(self, small_gold):
        class Checking:
            identity = "check"

            def generate(self, prompt, params, count, seed):
                label, targets = parse_prompt(prompt)
                lines = prompt.splitlines()
                demo_texts = [l for l in lines if l and not l.startswith("Write a")]
                assert len(demo_texts) == 3
                for text in demo_texts:
                    assert label in text
                    if targets:
                        assert targets[0] in text
                return mock_generate(prompt, params, count, seed)

        generate_dataset(
            small_gold, Checking(), PromptMode.FEW_SHOT, True, tiny_plan(), params(), 3
        )
