"""Session planning for manual annotation of generated posts.

Each annotator receives a per-setup queue of items, evenly split across
intended labels (and targets, for target-conditioned setups). A seeded
overlap slice is shared by every annotator so agreement can be computed on
the common subset.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from ..augment import derive_seed
from ..corpus import HATEFUL, NON_HATEFUL, Post


class PlanningError(ValueError):
    pass


@dataclass(frozen=True)
class AnnotationItem:
    item_id: str
    text: str
    setup: str
    target_applies: bool
    # intended fields stay server-side; they are never sent to annotators
    intended_label: str = ""
    intended_target: str | None = None


@dataclass
class SessionPlan:
    items: dict[str, AnnotationItem]
    queues: dict[str, list[str]]  # annotator -> ordered item ids
    overlap_ids: list[str]
    setups: list[str]
    warnings: list[str] = field(default_factory=list)

    def queue_for(self, annotator_id: str) -> list[str]:
        try:
            return self.queues[annotator_id]
        except KeyError:
            raise PlanningError(f"unknown annotator {annotator_id!r}") from None


def _setup_key(post: Post) -> str:
    meta = post.source_meta or {}
    backend = meta.get("backend", "unknown")
    mode = meta.get("mode", "unknown")
    conditioned = "target" if meta.get("intended_target") else "no-target"
    return f"{backend}/{mode}/{conditioned}"


def _stratum_key(post: Post) -> tuple[str, str | None]:
    meta = post.source_meta or {}
    label = meta.get("intended_label") or post.label
    return (str(label), meta.get("intended_target"))


def _even_split(total: int, buckets: Sequence[tuple[str, str | None]]) -> dict:
    """Spread `total` as evenly as possible; the remainder walks target-first
    so neither label systematically receives the extra items."""
    base, remainder = divmod(total, len(buckets))
    ordered = sorted(buckets, key=lambda b: (b[1] or "", b[0]))
    return {b: base + (1 if i < remainder else 0) for i, b in enumerate(ordered)}


def build_session_plan(
    generated: Sequence[Post],
    annotators: Sequence[str],
    items_per_setup: int = 70,
    overlap_fraction: float = 0.1,
    seed: int = 0,
) -> SessionPlan:
    """Stratified per-annotator queues with a shared seeded overlap slice.

    Every annotator gets items_per_setup items for each setup present in the
    corpus; round(items_per_setup * overlap_fraction) of those are common to
    all annotators. Strata with too few posts shrink the queue and are
    reported in plan.warnings.
    """
    if not generated:
        raise PlanningError("no generated posts to annotate")
    if not annotators:
        raise PlanningError("no annotators")
    if len(set(annotators)) != len(annotators):
        raise PlanningError("annotator ids must be unique")
    if items_per_setup < 1:
        raise PlanningError("items_per_setup must be >= 1")
    if not 0.0 <= overlap_fraction <= 1.0:
        raise PlanningError("overlap_fraction must be in [0,1]")

    by_setup: dict[str, list[Post]] = defaultdict(list)
    for post in generated:
        by_setup[_setup_key(post)].append(post)
    setups = sorted(by_setup)

    items: dict[str, AnnotationItem] = {}
    queues: dict[str, list[str]] = {a: [] for a in annotators}
    overlap_ids: list[str] = []
    warnings: list[str] = []

    n_overlap = round(items_per_setup * overlap_fraction)

    for setup in setups:
        pool = by_setup[setup]
        by_stratum: dict[tuple[str, str | None], list[Post]] = defaultdict(list)
        for post in pool:
            by_stratum[_stratum_key(post)].append(post)
        strata = sorted(by_stratum, key=lambda b: (b[0], b[1] or ""))

        # stable shuffled order per stratum; consumed front to back
        cursors = {}
        for stratum in strata:
            rng = random.Random(derive_seed(seed, setup, *stratum))
            cursors[stratum] = iter(rng.sample(by_stratum[stratum], len(by_stratum[stratum])))

        def draw(stratum) -> Post | None:
            try:
                return next(cursors[stratum])
            except StopIteration:
                return None

        def draw_quotas(quotas: dict, tag: str) -> tuple[list[Post], dict]:
            batch: list[Post] = []
            drawn: dict = {}
            for stratum in strata:
                got = 0
                while got < quotas.get(stratum, 0):
                    post = draw(stratum)
                    if post is None:
                        warnings.append(
                            f"{setup}: stratum {stratum} exhausted at "
                            f"{got}/{quotas[stratum]} for {tag}"
                        )
                        break
                    batch.append(post)
                    got += 1
                drawn[stratum] = got
            return batch, drawn

        def register(post: Post) -> str:
            item = AnnotationItem(
                item_id=post.post_id,
                text=post.text,
                setup=setup,
                target_applies=bool((post.source_meta or {}).get("intended_target")),
                intended_label=str((post.source_meta or {}).get("intended_label", post.label)),
                intended_target=(post.source_meta or {}).get("intended_target"),
            )
            items[item.item_id] = item
            return item.item_id

        # stratify the full per-annotator quota first, then carve the shared
        # overlap out of it, so each annotator's 70 stay exactly even
        total_quotas = _even_split(items_per_setup, strata)
        overlap_quotas = _even_split(n_overlap, strata)
        overlap_posts, overlap_drawn = draw_quotas(overlap_quotas, "overlap")
        overlap_batch = [register(p) for p in overlap_posts]
        overlap_ids.extend(overlap_batch)

        unique_quotas = {
            stratum: max(total_quotas[stratum] - overlap_drawn.get(stratum, 0), 0)
            for stratum in strata
        }
        for annotator in annotators:
            unique_posts, _ = draw_quotas(unique_quotas, annotator)
            queue = overlap_batch + [register(p) for p in unique_posts]
            order_rng = random.Random(derive_seed(seed, setup, "order", annotator))
            order_rng.shuffle(queue)
            queues[annotator].extend(queue)

    return SessionPlan(
        items=items,
        queues=queues,
        overlap_ids=overlap_ids,
        setups=setups,
        warnings=warnings,
    )
