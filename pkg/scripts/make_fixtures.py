#!/usr/bin/env python3
"""Generate the deterministic test fixtures committed under tests/fixtures/.

The fixture corpora follow the same vocabulary scheme as the mock generation
backend (see targetaug/data/phrasebank.json): hateful posts carry a
target-specific marker token and sometimes a generic one, non-hateful posts
never carry markers. Texts are synthetic by construction so the repository
contains no real hateful content.

Usage: python scripts/make_fixtures.py [tests/fixtures]
"""

from __future__ import annotations

import csv
import random
import sys
from pathlib import Path

from targetaug.augment.backends import phrasebank
from targetaug.corpus import HATEFUL, NON_HATEFUL, Post, TargetIdentity, write_corpus

GENERIC_MARKER_PROB = 0.4  # chance a hateful fixture text also carries a generic marker

# realistic-ish imbalance: two dominant targets, two rare ones
SKEWED_WEIGHTS = {
    "race": 0.29,
    "gender": 0.26,
    "religion": 0.12,
    "origin": 0.12,
    "sexuality": 0.11,
    "age": 0.05,
    "disability": 0.05,
}


def make_text(rng: random.Random, label: str, targets: list[str]) -> str:
    bank = phrasebank()
    length = rng.randint(8, 16)
    tokens = rng.choices(bank["neutral"], k=length)
    inserts = []
    for t in targets:
        inserts.append(rng.choice(bank["targets"][t]))
    if label == HATEFUL:
        if targets:
            inserts.append(rng.choice(bank["toxic_by_target"][targets[0]]))
            if rng.random() < GENERIC_MARKER_PROB:
                inserts.append(rng.choice(bank["toxic_generic"]))
        else:
            inserts.append(rng.choice(bank["toxic_generic"]))
    positions = rng.sample(range(length), min(len(inserts), length))
    for pos, word in zip(positions, inserts):
        tokens[pos] = word
    return " ".join(tokens)


def build_corpus(
    n: int,
    seed: int,
    prefix: str,
    weights: dict[str, float] | None = None,
    untargeted_frac: float = 0.02,
    multi_frac: float = 0.10,
    hateful_frac: float = 0.5,
) -> list[Post]:
    rng = random.Random(seed)
    weights = weights or SKEWED_WEIGHTS
    names = list(weights)
    probs = [weights[t] for t in names]
    posts = []
    for i in range(n):
        label = HATEFUL if rng.random() < hateful_frac else NON_HATEFUL
        if rng.random() < untargeted_frac:
            targets: list[str] = []
        else:
            targets = [rng.choices(names, weights=probs, k=1)[0]]
            if rng.random() < multi_frac:
                extra = rng.choices(names, weights=probs, k=1)[0]
                if extra != targets[0]:
                    targets.append(extra)
        posts.append(
            Post(
                post_id=f"{prefix}{i:05d}",
                text=make_text(rng, label, targets),
                label=label,
                targets=frozenset(TargetIdentity.parse(t) for t in targets),
            )
        )
    return posts


def build_eval_corpus(per_target: int, untargeted: int, seed: int) -> list[Post]:
    """Balanced per-target support so per-target metrics are stable."""
    rng = random.Random(seed)
    posts = []
    i = 0
    for target in SKEWED_WEIGHTS:
        for k in range(per_target):
            label = HATEFUL if k % 2 == 0 else NON_HATEFUL
            posts.append(
                Post(
                    post_id=f"e{i:05d}",
                    text=make_text(rng, label, [target]),
                    label=label,
                    targets=frozenset({TargetIdentity.parse(target)}),
                )
            )
            i += 1
    for k in range(untargeted):
        label = HATEFUL if k % 2 == 0 else NON_HATEFUL
        posts.append(
            Post(post_id=f"e{i:05d}", text=make_text(rng, label, []), label=label)
        )
        i += 1
    order = rng.sample(range(len(posts)), len(posts))
    return [posts[j] for j in order]


def build_raw_annotations(n_posts: int, seed: int) -> list[dict]:
    """Disaggregated rows whose aggregate is known; includes mean==1 posts."""
    rng = random.Random(seed)
    bank = phrasebank()
    rows = []
    for i in range(n_posts):
        post_id = f"raw{i:04d}"
        n_ann = rng.randint(1, 5)
        # a handful of posts engineered to sit exactly at mean 1
        if i % 17 == 0 and n_ann >= 2:
            n_ann = 2
            scores = [0, 2]
        else:
            scores = [rng.choices([0, 1, 2], weights=[5, 2, 3])[0] for _ in range(n_ann)]
        targets = [t for t in SKEWED_WEIGHTS if rng.random() < 0.25]
        label_guess = HATEFUL if sum(scores) > n_ann else NON_HATEFUL
        text = make_text(rng, label_guess, targets[:1])
        for a in range(n_ann):
            row = {
                "post_id": post_id,
                "annotator_id": f"ann{a}",
                "text": text,
                "hatespeech": scores[a],
            }
            for t in SKEWED_WEIGHTS:
                # annotators agree on targets with some noise
                flagged = t in targets and rng.random() < 0.9
                row[f"target_{t}"] = "true" if flagged else "false"
            rows.append(row)
    return rows


HATECHECK_TEMPLATES = [
    ("derog_neg_emote_h", "I absolutely hate {ident} and everything about them", "hateful"),
    ("derog_neg_attrib_h", "{ident} are really just vile trash honestly", "hateful"),
    ("threat_dir_h", "{ident} are worthless garbage and should all leave now", "hateful"),
    ("ident_neutral_nh", "many {ident} live in this city and this street", "non-hateful"),
    ("ident_pos_nh", "we really respect {ident} around here every day", "non-hateful"),
    ("counter_ref_nh", "claiming that {ident} are trash is never acceptable", "non-hateful"),
]

HATECHECK_IDENTS = [
    "women",
    "trans people",
    "gay people",
    "black people",
    "disabled people",
    "Muslims",
    "immigrants",
]


def build_hatecheck_rows() -> list[list[str]]:
    rows = []
    case = 1
    for functionality, template, label in HATECHECK_TEMPLATES:
        for ident in HATECHECK_IDENTS:
            rows.append(
                [functionality, str(case), template.format(ident=ident), label, ident]
            )
            case += 1
    return rows


def _min_demo_cell(posts, sample_n: int, sample_seed: int) -> int:
    """Smallest (label, target) cell in the seeded gold sample; few-shot
    prompting needs at least 3 everywhere."""
    from collections import Counter

    from targetaug.corpus import sample_gold

    cells: Counter = Counter()
    for post in sample_gold(posts, sample_n, sample_seed):
        for target in post.targets:
            cells[(post.label, target)] += 1
    if len(cells) < 14:
        return 0
    return min(cells.values())


def build_gold_pool(n: int, prefix: str) -> list[Post]:
    """Skewed gold pool whose default-seed sample still feeds every few-shot cell."""
    for seed in range(77, 277):
        posts = build_corpus(n, seed=seed, prefix=prefix)
        if _min_demo_cell(posts, n // 2, sample_seed=522) >= 4:
            return posts
    raise RuntimeError("no generation seed satisfies the demonstration margin")


def main() -> None:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parents[1] / "tests/fixtures"
    )
    out_dir.mkdir(parents=True, exist_ok=True)

    corpus = build_corpus(1200, seed=2024, prefix="c")
    write_corpus(corpus, out_dir / "corpus_1200.jsonl")

    gold = build_gold_pool(400, prefix="g")
    write_corpus(gold, out_dir / "gold_400.jsonl")

    eval_set = build_eval_corpus(per_target=84, untargeted=12, seed=99)
    write_corpus(eval_set, out_dir / "eval_600.jsonl")

    rows = build_raw_annotations(80, seed=5)
    raw_path = out_dir / "raw_annotations.csv"
    with open(raw_path, "w", newline="", encoding="utf-8") as fh:
        fieldnames = ["post_id", "annotator_id", "text", "hatespeech"] + [
            f"target_{t}" for t in SKEWED_WEIGHTS
        ]
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        writer.writerows(rows)

    hc_path = out_dir / "hatecheck_cases.csv"
    with open(hc_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["functionality", "case_id", "test_case", "label_gold", "target_ident"])
        writer.writerows(build_hatecheck_rows())

    print(f"fixtures written to {out_dir}")
    for p in sorted(out_dir.iterdir()):
        print(f"  {p.name}")


if __name__ == "__main__":
    main()
