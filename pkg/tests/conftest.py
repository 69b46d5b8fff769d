import random

import pytest

from targetaug.corpus import HATEFUL, NON_HATEFUL, Post, TargetIdentity


def make_post(
    post_id="p1",
    text="a perfectly ordinary post",
    label=NON_HATEFUL,
    targets=(),
    provenance="gold",
    source_meta=None,
):
    return Post(
        post_id=post_id,
        text=text,
        label=label,
        targets=frozenset(TargetIdentity.parse(t) if isinstance(t, str) else t for t in targets),
        provenance=provenance,
        source_meta=source_meta,
    )


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def small_gold():
    """A gold corpus with at least 3 posts per (label, target) cell."""
    posts = []
    i = 0
    for target in TargetIdentity:
        for label in (HATEFUL, NON_HATEFUL):
            for k in range(4):
                posts.append(
                    make_post(
                        post_id=f"g{i}",
                        text=f"{label} example {k} concerning {target.value} topics",
                        label=label,
                        targets=(target,),
                    )
                )
                i += 1
    posts.append(make_post(post_id=f"g{i}", text="an untargeted note", label=NON_HATEFUL))
    return posts
