"""Token-level perturbation operations and corpus-level augmentation.

Four operations: synonym replacement, random insertion, random swap, random
deletion. Synonyms come from a pluggable lexicon file rather than a lexical
database, so runs are fully reproducible offline.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import PROVENANCE_EDA, Post

OP_SYNONYM_REPLACEMENT = "synonym_replacement"
OP_RANDOM_INSERTION = "random_insertion"
OP_RANDOM_SWAP = "random_swap"
OP_RANDOM_DELETION = "random_deletion"
EDA_OPERATIONS = (
    OP_SYNONYM_REPLACEMENT,
    OP_RANDOM_INSERTION,
    OP_RANDOM_SWAP,
    OP_RANDOM_DELETION,
)


class SynonymLexicon:
    """Case-insensitive token -> synonyms mapping. Stopwords are never keys."""

    def __init__(
        self,
        entries: Mapping[str, Sequence[str]],
        stopwords: frozenset[str] = frozenset(),
    ):
        self._entries: dict[str, list[str]] = {}
        for token, synonyms in entries.items():
            key = token.lower()
            if key in stopwords:
                continue
            syns = [s for s in synonyms if s.lower() != key]
            if not syns:
                raise ValueError(f"lexicon entry {token!r} has no synonym differing from it")
            self._entries[key] = syns

    def lookup(self, token: str) -> list[str]:
        return self._entries.get(token.lower(), [])

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, token: str) -> bool:
        return token.lower() in self._entries

    @classmethod
    def from_json(cls, path: str | Path, stopwords: frozenset[str] = frozenset()):
        with open(path, encoding="utf-8") as fh:
            return cls(json.load(fh), stopwords)


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a stopword list, one token per line; blank lines ignored."""
    with open(path, encoding="utf-8") as fh:
        return frozenset(line.strip().lower() for line in fh if line.strip())


def default_stopwords() -> frozenset[str]:
    text = resources.files("targetaug.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(line.strip().lower() for line in text.splitlines() if line.strip())


def default_lexicon(stopwords: frozenset[str] | None = None) -> SynonymLexicon:
    if stopwords is None:
        stopwords = default_stopwords()
    raw = resources.files("targetaug.data").joinpath("lexicon.json").read_text("utf-8")
    return SynonymLexicon(json.loads(raw), stopwords)


@dataclass
class EdaConfig:
    """Perturbation strength and seeding for corpus-level augmentation.

    alpha controls the per-sentence operation count n = max(1, round(alpha * L))
    for a sequence of L tokens; deletion uses its own probability, defaulting
    to alpha.
    """

    alpha: float = 0.1
    seed: int = 0
    stopwords: frozenset[str] = field(default_factory=frozenset)
    deletion_p: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0,1], got {self.alpha}")
        if self.deletion_p is not None and not 0.0 <= self.deletion_p <= 1.0:
            raise ValueError(f"deletion_p must be in [0,1], got {self.deletion_p}")

    @property
    def effective_deletion_p(self) -> float:
        return self.alpha if self.deletion_p is None else self.deletion_p


def tokenize(text: str) -> list[str]:
    # whitespace split, punctuation stays attached
    return text.split()


def detokenize(tokens: Sequence[str]) -> str:
    return " ".join(tokens)


def synonym_replacement(
    tokens: Sequence[str], n: int, lexicon: SynonymLexicon, rng: random.Random
) -> list[str]:
    """Replace up to n tokens that have lexicon entries with a random synonym."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = list(tokens)
    candidates = [i for i, tok in enumerate(out) if lexicon.lookup(tok)]
    if not candidates or n == 0:
        return out
    for i in rng.sample(candidates, min(n, len(candidates))):
        out[i] = rng.choice(lexicon.lookup(out[i]))
    return out


def random_insertion(
    tokens: Sequence[str], n: int, lexicon: SynonymLexicon, rng: random.Random
) -> list[str]:
    """Insert n synonyms of random in-lexicon tokens at random positions."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = list(tokens)
    for _ in range(n):
        candidates = [tok for tok in out if lexicon.lookup(tok)]
        if not candidates:
            break
        synonym = rng.choice(lexicon.lookup(rng.choice(candidates)))
        out.insert(rng.randint(0, len(out)), synonym)
    return out


def random_swap(tokens: Sequence[str], n: int, rng: random.Random) -> list[str]:
    """Swap n random distinct position pairs; output is a permutation of input."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = list(tokens)
    if len(out) < 2:
        return out
    for _ in range(n):
        i, j = rng.sample(range(len(out)), 2)
        out[i], out[j] = out[j], out[i]
    return out


def random_deletion(tokens: Sequence[str], p: float, rng: random.Random) -> list[str]:
    """Delete each token independently with probability p, never returning empty."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0,1], got {p}")
    if not tokens:
        return []
    out = [tok for tok in tokens if rng.random() >= p]
    if not out:
        out = [tokens[rng.randrange(len(tokens))]]
    return out


def _apply_operation(
    op: str, tokens: Sequence[str], config: EdaConfig, lexicon: SynonymLexicon, rng: random.Random
) -> list[str]:
    n = max(1, round(config.alpha * len(tokens)))
    if op == OP_SYNONYM_REPLACEMENT:
        return synonym_replacement(tokens, n, lexicon, rng)
    if op == OP_RANDOM_INSERTION:
        return random_insertion(tokens, n, lexicon, rng)
    if op == OP_RANDOM_SWAP:
        return random_swap(tokens, n, rng)
    if op == OP_RANDOM_DELETION:
        return random_deletion(tokens, config.effective_deletion_p, rng)
    raise ValueError(f"unknown operation {op!r}")


def eda_augment_corpus(
    gold: Sequence[Post], total: int, config: EdaConfig, lexicon: SynonymLexicon
) -> list[Post]:
    """Produce `total` perturbed posts, total/4 per operation.

    Source posts are cycled round-robin over a seeded shuffle of the gold set.
    Each output inherits its source's label and targets.
    """
    if not gold:
        raise ValueError("gold corpus is empty")
    if total % 4 != 0:
        raise ValueError(f"total must be divisible by 4, got {total}")
    per_op = total // 4
    rng = random.Random(config.seed)
    shuffled = rng.sample(list(gold), len(gold))

    out: list[Post] = []
    for op in EDA_OPERATIONS:
        for k in range(per_op):
            source = shuffled[k % len(shuffled)]
            tokens = _apply_operation(op, tokenize(source.text), config, lexicon, rng)
            out.append(
                Post(
                    post_id=f"eda-{op}-{k:06d}",
                    text=detokenize(tokens),
                    label=source.label,
                    targets=source.targets,
                    provenance=PROVENANCE_EDA,
                    source_meta={"operation": op, "source_id": source.post_id},
                )
            )
    return out
