"""Generation backends: the offline deterministic mock and an HTTP completions client."""

from __future__ import annotations

import json
import os
import random
import time
from dataclasses import dataclass
from importlib import resources
from typing import Protocol, Sequence, runtime_checkable

import requests

from .prompts import parse_prompt
from ..corpus import HATEFUL


@dataclass(frozen=True)
class GenerationParams:
    top_p: float = 0.9
    min_tokens: int = 5
    max_tokens: int = 150
    batch_size: int = 10

    def __post_init__(self):
        if not 0 < self.top_p <= 1:
            raise ValueError(f"top_p must be in (0,1], got {self.top_p}")
        if not 0 < self.min_tokens <= self.max_tokens:
            raise ValueError(
                f"need 0 < min_tokens <= max_tokens, got {self.min_tokens}, {self.max_tokens}"
            )
        if self.batch_size <= 0:
            raise ValueError(f"batch_size must be positive, got {self.batch_size}")


@runtime_checkable
class GenerationBackend(Protocol):
    """Anything that maps (prompt, params, count, seed) to `count` completions."""

    identity: str

    def generate(
        self, prompt: str, params: GenerationParams, count: int, seed: int
    ) -> list[str]: ...


class BackendError(RuntimeError):
    """The backend failed to produce completions after its own retries."""


def truncate_tokens(text: str, max_tokens: int) -> str:
    """Local whitespace-token truncation backstop for backends that overshoot."""
    tokens = text.split()
    if len(tokens) <= max_tokens:
        return text
    return " ".join(tokens[:max_tokens])


# -- mock backend ---------------------------------------------------------------

_GENERIC_TOXIC_PROB = 0.5  # hateful+target texts carry a generic marker half the time


def _load_phrasebank() -> dict:
    raw = resources.files("targetaug.data").joinpath("phrasebank.json").read_text("utf-8")
    return json.loads(raw)


_PHRASEBANK: dict | None = None


def phrasebank() -> dict:
    global _PHRASEBANK
    if _PHRASEBANK is None:
        _PHRASEBANK = _load_phrasebank()
    return _PHRASEBANK


def mock_generate(
    prompt: str, params: GenerationParams, count: int, seed: int
) -> list[str]:
    """Deterministic completions steered by the prompt.

    Every output contains a keyword from the named target's bank iff the
    prompt names a target, and a toxic-marker token iff the prompt asks for a
    hateful post. Token counts stay within [min_tokens, max_tokens].
    """
    bank = phrasebank()
    label, targets = parse_prompt(prompt)
    target = targets[0] if targets else None
    hateful = label == HATEFUL

    # string seeding keeps the stream stable across processes
    rng = random.Random(f"{seed}|{prompt}")
    neutral = bank["neutral"]
    texts = []
    for _ in range(count):
        length = rng.randint(
            params.min_tokens, min(params.max_tokens, params.min_tokens + 13)
        )
        tokens = rng.choices(neutral, k=length)
        inserts: list[str] = []
        if target is not None:
            inserts.append(rng.choice(bank["targets"][target]))
        if hateful:
            if target is not None:
                inserts.append(rng.choice(bank["toxic_by_target"][target]))
                if rng.random() < _GENERIC_TOXIC_PROB:
                    inserts.append(rng.choice(bank["toxic_generic"]))
            else:
                inserts.append(rng.choice(bank["toxic_generic"]))
        if inserts:
            positions = rng.sample(range(len(tokens)), min(len(inserts), len(tokens)))
            for pos, word in zip(positions, inserts):
                tokens[pos] = word
        texts.append(" ".join(tokens))
    return texts


class MockBackend:
    """Offline test backend wrapping mock_generate."""

    identity = "mock"

    def generate(self, prompt, params, count, seed):
        return mock_generate(prompt, params, count, seed)


# -- HTTP backend ----------------------------------------------------------------


class HTTPBackend:
    """Client for an OpenAI-completions-compatible endpoint.

    POSTs {model, prompt, max_tokens, top_p, n, seed} and reads
    {choices: [{text}, ...]}. The API key is read from the environment, never
    from configuration files. Transient failures retry with exponential
    backoff up to max_retries.
    """

    RETRYABLE_STATUS = (429, 500, 502, 503, 504)

    def __init__(
        self,
        url: str,
        model: str,
        api_key_env: str = "TARGETAUG_API_KEY",
        timeout: float = 60.0,
        max_retries: int = 3,
        backoff_base: float = 0.5,
        session: requests.Session | None = None,
    ):
        self.url = url
        self.model = model
        self.api_key_env = api_key_env
        self.timeout = timeout
        self.max_retries = max_retries
        self.backoff_base = backoff_base
        self.session = session or requests.Session()
        self.identity = f"http:{model}"

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.api_key_env)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def generate(self, prompt, params, count, seed):
        body = {
            "model": self.model,
            "prompt": prompt,
            "max_tokens": params.max_tokens,
            "top_p": params.top_p,
            "n": count,
            "seed": seed,
        }
        last_error: Exception | None = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                time.sleep(self.backoff_base * 2 ** (attempt - 1))
            try:
                response = self.session.post(
                    self.url, json=body, headers=self._headers(), timeout=self.timeout
                )
            except requests.RequestException as exc:
                last_error = exc
                continue
            if response.status_code in self.RETRYABLE_STATUS:
                last_error = BackendError(
                    f"{self.url} returned {response.status_code}: {response.text[:200]}"
                )
                continue
            if response.status_code != 200:
                raise BackendError(
                    f"{self.url} returned {response.status_code}: {response.text[:200]}"
                )
            try:
                choices = response.json()["choices"]
                texts = [str(choice["text"]) for choice in choices]
            except (KeyError, TypeError, ValueError) as exc:
                raise BackendError(f"malformed completion response: {exc}") from exc
            return [truncate_tokens(t, params.max_tokens) for t in texts]
        raise BackendError(
            f"backend unreachable after {self.max_retries + 1} attempts: {last_error}"
        )
