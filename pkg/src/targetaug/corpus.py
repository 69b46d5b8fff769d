"""Corpus handling: raw annotation rows, aggregation into labeled posts, files, sampling."""

from __future__ import annotations

import csv
import json
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

HATEFUL = "hateful"
NON_HATEFUL = "non_hateful"
LABELS = (HATEFUL, NON_HATEFUL)

PROVENANCE_GOLD = "gold"
PROVENANCE_EDA = "eda"
PROVENANCE_GENERATED = "generated"
PROVENANCES = (PROVENANCE_GOLD, PROVENANCE_EDA, PROVENANCE_GENERATED)

# source_meta keys only synthetic posts may carry
_GENERATOR_META_KEYS = ("backend", "mode", "operation", "prompt_sha256")


class TargetIdentity(str, Enum):
    """The seven target identity categories a post can be about."""

    RACE = "race"
    RELIGION = "religion"
    ORIGIN = "origin"
    GENDER = "gender"
    SEXUALITY = "sexuality"
    AGE = "age"
    DISABILITY = "disability"

    @classmethod
    def parse(cls, value: str) -> "TargetIdentity":
        try:
            return cls(value)
        except ValueError:
            raise ValueError(
                f"unknown target identity {value!r}; expected one of "
                f"{[t.value for t in cls]}"
            ) from None


ALL_TARGETS = tuple(TargetIdentity)


class CorpusError(Exception):
    """Base class for corpus processing failures."""


class SchemaError(CorpusError):
    """Input does not match the expected tabular schema."""


class ConsistencyError(CorpusError):
    """Annotations within one post disagree on immutable fields."""


@dataclass(frozen=True)
class RawAnnotation:
    """One annotator's judgment of one post, before aggregation."""

    post_id: str
    annotator_id: str
    text: str
    hatespeech_score: int  # 0 non-hateful, 1 unclear, 2 hateful
    target_flags: Mapping[TargetIdentity, bool]

    def __post_init__(self):
        if self.hatespeech_score not in (0, 1, 2):
            raise ValueError(
                f"hatespeech_score must be 0, 1 or 2, got {self.hatespeech_score}"
            )


@dataclass(frozen=True)
class Post:
    """An aggregated or synthetic text example with a binary label and target set."""

    post_id: str
    text: str
    label: str
    targets: frozenset[TargetIdentity] = frozenset()
    provenance: str = PROVENANCE_GOLD
    source_meta: Mapping[str, object] | None = None

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError(f"post {self.post_id!r} has empty text")
        if self.label not in LABELS:
            raise ValueError(f"post {self.post_id!r} has invalid label {self.label!r}")
        if self.provenance not in PROVENANCES:
            raise ValueError(
                f"post {self.post_id!r} has invalid provenance {self.provenance!r}"
            )
        if self.provenance == PROVENANCE_GOLD and self.source_meta:
            bad = [k for k in _GENERATOR_META_KEYS if k in self.source_meta]
            if bad:
                raise ValueError(
                    f"gold post {self.post_id!r} carries generator metadata {bad}"
                )

    @property
    def is_hateful(self) -> bool:
        return self.label == HATEFUL


@dataclass
class CorpusStats:
    total_posts: int = 0
    hateful_posts: int = 0
    per_target_counts: dict[TargetIdentity, int] = field(default_factory=dict)
    untargeted_count: int = 0

    def to_dict(self) -> dict:
        return {
            "total_posts": self.total_posts,
            "hateful_posts": self.hateful_posts,
            "per_target_counts": {t.value: n for t, n in self.per_target_counts.items()},
            "untargeted_count": self.untargeted_count,
        }


@dataclass
class ExcludedPost:
    """A post dropped during aggregation because its mean score is exactly 1."""

    post_id: str
    text: str
    n_annotators: int
    mean_score: float


# -- raw annotation ingestion -------------------------------------------------

RAW_REQUIRED_COLUMNS = ("post_id", "annotator_id", "text", "hatespeech") + tuple(
    f"target_{t.value}" for t in ALL_TARGETS
)

_TRUE_STRINGS = {"true", "1", "yes"}
_FALSE_STRINGS = {"false", "0", "no", ""}


def _parse_bool(value: str, column: str, row_index: int) -> bool:
    v = value.strip().lower()
    if v in _TRUE_STRINGS:
        return True
    if v in _FALSE_STRINGS:
        return False
    raise ValueError(f"row {row_index}: column {column!r} has non-boolean value {value!r}")


def parse_annotations(rows: Iterable[Mapping[str, str]]) -> list[RawAnnotation]:
    """Turn raw tabular records into RawAnnotation objects.

    Expects the columns in RAW_REQUIRED_COLUMNS. Additional columns named
    ``target_<category>_<subgroup>`` are OR-ed into their top-level category.
    Malformed rows raise ValueError naming the (0-based) row index.
    """
    annotations: list[RawAnnotation] = []
    seen_keys: set[tuple[str, str]] = set()
    columns_checked = False

    for i, row in enumerate(rows):
        if not columns_checked:
            missing = [c for c in RAW_REQUIRED_COLUMNS if c not in row]
            if missing:
                raise SchemaError(f"missing required columns: {missing}")
            columns_checked = True

        try:
            score = int(str(row["hatespeech"]).strip())
        except ValueError:
            raise ValueError(
                f"row {i}: hatespeech value {row['hatespeech']!r} is not an integer"
            ) from None
        if score not in (0, 1, 2):
            raise ValueError(f"row {i}: hatespeech value {score} outside {{0,1,2}}")

        flags: dict[TargetIdentity, bool] = {}
        for target in ALL_TARGETS:
            prefix = f"target_{target.value}"
            flag = _parse_bool(str(row[prefix]), prefix, i)
            # subgroup columns (e.g. target_race_asian) fold into the category
            for col, value in row.items():
                if col.startswith(prefix + "_"):
                    flag = flag or _parse_bool(str(value), col, i)
            flags[target] = flag

        key = (str(row["post_id"]), str(row["annotator_id"]))
        if key in seen_keys:
            raise ValueError(f"row {i}: duplicate (post_id, annotator_id) pair {key}")
        seen_keys.add(key)

        annotations.append(
            RawAnnotation(
                post_id=str(row["post_id"]),
                annotator_id=str(row["annotator_id"]),
                text=str(row["text"]),
                hatespeech_score=score,
                target_flags=flags,
            )
        )
    return annotations


def read_annotations_csv(path: str | Path) -> list[RawAnnotation]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path}: empty file, header row required")
        return parse_annotations(reader)


# -- aggregation ---------------------------------------------------------------


def aggregate(
    annotations: Sequence[RawAnnotation],
) -> tuple[list[Post], list[ExcludedPost]]:
    """Collapse per-annotator rows into one labeled post per post_id.

    A target belongs to the post when at least half of its annotators flagged
    it (ceil(n/2)). The label is hateful when the mean hatespeech score is
    above 1 and non-hateful when below; posts at exactly 1 are excluded and
    returned in the report.
    """
    groups: dict[str, list[RawAnnotation]] = {}
    order: list[str] = []
    for ann in annotations:
        if ann.post_id not in groups:
            groups[ann.post_id] = []
            order.append(ann.post_id)
        groups[ann.post_id].append(ann)

    posts: list[Post] = []
    excluded: list[ExcludedPost] = []
    for post_id in order:
        group = groups[post_id]
        texts = {a.text for a in group}
        if len(texts) > 1:
            raise ConsistencyError(
                f"post {post_id!r} has {len(texts)} distinct texts across annotators"
            )
        n = len(group)
        majority = math.ceil(n / 2)
        targets = frozenset(
            t for t in ALL_TARGETS if sum(a.target_flags.get(t, False) for a in group) >= majority
        )
        score_sum = sum(a.hatespeech_score for a in group)
        # integer comparison: mean > 1 iff sum > n, avoiding float equality traps
        if score_sum == n:
            excluded.append(ExcludedPost(post_id, group[0].text, n, score_sum / n))
            continue
        label = HATEFUL if score_sum > n else NON_HATEFUL
        posts.append(Post(post_id=post_id, text=group[0].text, label=label, targets=targets))
    return posts, excluded


# -- sampling and statistics ---------------------------------------------------


def sample_gold(corpus: Sequence[Post], n: int, seed: int) -> list[Post]:
    """Uniform sample of n posts without replacement, deterministic in (input, seed)."""
    if n > len(corpus):
        raise ValueError(f"cannot sample {n} posts from a corpus of {len(corpus)}")
    rng = random.Random(seed)
    return rng.sample(list(corpus), n)


def corpus_stats(corpus: Iterable[Post]) -> CorpusStats:
    stats = CorpusStats(per_target_counts={})
    counts: Counter[TargetIdentity] = Counter()
    for post in corpus:
        stats.total_posts += 1
        if post.is_hateful:
            stats.hateful_posts += 1
        if post.targets:
            counts.update(post.targets)
        else:
            stats.untargeted_count += 1
    stats.per_target_counts = {t: counts[t] for t in ALL_TARGETS if counts[t]}
    return stats


# -- corpus files ----------------------------------------------------------------


def post_to_record(post: Post) -> dict:
    return {
        "id": post.post_id,
        "text": post.text,
        "label": post.label,
        "targets": sorted(t.value for t in post.targets),
        "provenance": post.provenance,
        "source_meta": dict(post.source_meta) if post.source_meta else None,
    }


def post_from_record(record: Mapping[str, object]) -> Post:
    targets = frozenset(TargetIdentity.parse(t) for t in record.get("targets") or ())
    meta = record.get("source_meta")
    return Post(
        post_id=str(record["id"]),
        text=str(record["text"]),
        label=str(record["label"]),
        targets=targets,
        provenance=str(record.get("provenance", PROVENANCE_GOLD)),
        source_meta=dict(meta) if meta else None,
    )


def write_corpus(posts: Iterable[Post], path: str | Path) -> None:
    """Write posts as JSON-lines; deterministic byte-for-byte for equal input."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for post in posts:
            fh.write(json.dumps(post_to_record(post), ensure_ascii=False, sort_keys=True))
            fh.write("\n")


def read_corpus(path: str | Path) -> list[Post]:
    posts = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                posts.append(post_from_record(record))
            except (json.JSONDecodeError, KeyError, ValueError) as exc:
                raise CorpusError(f"{path}: line {lineno}: {exc}") from exc
    return posts


def iter_corpus(path: str | Path) -> Iterator[Post]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield post_from_record(json.loads(line))
            except (json.JSONDecodeError, KeyError, ValueError) as exc:
                raise CorpusError(f"{path}: line {lineno}: {exc}") from exc
