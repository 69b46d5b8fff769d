"""Drive a generation backend over a quota plan to produce candidate posts."""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .backends import BackendError, GenerationBackend, GenerationParams, truncate_tokens
from .prompts import PromptMode, PromptSpec, build_prompt, select_demonstrations
from .quotas import QuotaCell, QuotaPlan
from ..corpus import PROVENANCE_GENERATED, Post

RETRY_BUDGET = 3  # extra backend calls per batch to replace empty completions


class GenerationIncomplete(RuntimeError):
    """The backend failed mid-run; .posts carries everything produced so far."""

    def __init__(self, message: str, posts: list[Post]):
        super().__init__(message)
        self.posts = posts


def derive_seed(*parts: object) -> int:
    """Stable 63-bit seed from arbitrary parts (independent of PYTHONHASHSEED)."""
    digest = hashlib.sha256("|".join(str(p) for p in parts).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


@dataclass
class _BatchJob:
    cell_index: int
    batch_index: int
    cell: QuotaCell
    prompt: str
    prompt_sha256: str
    seed: int


def _build_jobs(
    gold: Sequence[Post],
    mode: PromptMode,
    with_target: bool,
    plan: QuotaPlan,
    seed: int,
) -> list[_BatchJob]:
    jobs = []
    for cell_index, cell in enumerate(plan.cells):
        target = cell.target if with_target else None
        n_batches = cell.count // plan.batch_size
        for batch_index in range(n_batches):
            call_seed = derive_seed(seed, cell_index, batch_index)
            demos: tuple[Post, ...] = ()
            if mode is PromptMode.FEW_SHOT:
                # demonstrations are resampled per call for variety
                demo_rng = random.Random(derive_seed(call_seed, "demos"))
                demos = tuple(
                    select_demonstrations(gold, cell.intended_label, target, 3, demo_rng)
                )
            prompt = build_prompt(
                PromptSpec(
                    mode=mode,
                    intended_label=cell.intended_label,
                    target=target,
                    demonstrations=demos,
                )
            )
            jobs.append(
                _BatchJob(
                    cell_index=cell_index,
                    batch_index=batch_index,
                    cell=cell,
                    prompt=prompt,
                    prompt_sha256=hashlib.sha256(prompt.encode("utf-8")).hexdigest(),
                    seed=call_seed,
                )
            )
    return jobs


def _run_job(
    job: _BatchJob, backend: GenerationBackend, params: GenerationParams, batch_size: int
) -> list[str]:
    texts = backend.generate(job.prompt, params, batch_size, job.seed)
    clean = [t for t in texts if t.strip()]
    attempts = 0
    while len(clean) < batch_size and attempts < RETRY_BUDGET:
        retry_seed = derive_seed(job.seed, "retry", attempts)
        extra = backend.generate(job.prompt, params, batch_size - len(clean), retry_seed)
        clean.extend(t for t in extra if t.strip())
        attempts += 1
    # accept a shortfall beyond the retry budget
    return [truncate_tokens(t, params.max_tokens) for t in clean[:batch_size]]


def generate_dataset(
    gold: Sequence[Post],
    backend: GenerationBackend,
    mode: PromptMode,
    with_target: bool,
    plan: QuotaPlan,
    params: GenerationParams,
    seed: int,
    parallelism: int = 1,
) -> list[Post]:
    """Produce candidate posts for every cell of the plan.

    Each batch gets a freshly built prompt and a derived seed, so reruns with
    the same inputs are identical regardless of the parallelism bound. Results
    are assembled in (cell, batch) order. A backend failure raises
    GenerationIncomplete carrying everything produced before the failure.
    """
    if plan.batch_size != params.batch_size:
        raise ValueError(
            f"plan batch size {plan.batch_size} != params batch size {params.batch_size}"
        )
    jobs = _build_jobs(gold, mode, with_target, plan, seed)

    results: dict[tuple[int, int], list[str]] = {}
    failure: BackendError | None = None
    if parallelism <= 1:
        for job in jobs:
            try:
                results[(job.cell_index, job.batch_index)] = _run_job(
                    job, backend, params, plan.batch_size
                )
            except BackendError as exc:
                failure = exc
                break
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            futures = {
                pool.submit(_run_job, job, backend, params, plan.batch_size): job
                for job in jobs
            }
            for future, job in futures.items():
                try:
                    results[(job.cell_index, job.batch_index)] = future.result()
                except BackendError as exc:
                    failure = failure or exc

    posts: list[Post] = []
    for job in jobs:
        texts = results.get((job.cell_index, job.batch_index))
        if texts is None:
            continue
        for i, text in enumerate(texts):
            posts.append(
                Post(
                    post_id=f"gen-{job.cell_index:02d}-{job.batch_index:04d}-{i:02d}",
                    text=text,
                    label=job.cell.intended_label,
                    targets=(
                        frozenset((job.cell.target,))
                        if with_target and job.cell.target
                        else frozenset()
                    ),
                    provenance=PROVENANCE_GENERATED,
                    source_meta={
                        "backend": backend.identity,
                        "mode": mode.value,
                        "intended_label": job.cell.intended_label,
                        "intended_target": job.cell.target.value if job.cell.target else None,
                        "prompt_sha256": job.prompt_sha256,
                    },
                )
            )
    if failure is not None:
        raise GenerationIncomplete(
            f"backend failed after producing {len(posts)} candidates: {failure}", posts
        )
    return posts
