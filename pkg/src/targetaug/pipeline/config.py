"""Run configuration: file loading, CLI overrides, canonical digests."""

from __future__ import annotations

import dataclasses
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from ..classifier import TrainConfig
from ..evaluation import AsoConfig

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

STRATEGIES = ("none", "oversample", "eda", "gen", "mix")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    out_dir: str = "run"
    lexicon: str | None = None  # bundled lexicon when unset
    stopwords: str | None = None

    gold_sample_n: int = 1000
    generation_total: int = 100_000
    cap_per_label: int = 15_000
    eda_total: int = 30_000
    mix_eda: int = 15_000
    mix_generated: int = 15_000
    seeds: tuple[int, ...] = (522, 97, 709, 16, 42)

    prompt_mode: str = "few_shot"
    with_target: bool = True
    backend: str = "mock"
    backend_url: str | None = None
    backend_model: str | None = None
    api_key_env: str = "TARGETAUG_API_KEY"
    parallelism: int = 1
    batch_size: int = 10
    top_p: float = 0.9
    min_tokens: int = 5
    max_tokens: int = 150

    hash_dim: int = 2**18
    eda_alpha: float = 0.1
    external_scores: str | None = None

    filter_train: TrainConfig = field(default_factory=lambda: TrainConfig(epochs=5))
    downstream_train: TrainConfig = field(default_factory=lambda: TrainConfig(epochs=3))
    aso: AsoConfig = field(default_factory=AsoConfig)
    aso_metric: str = "hate_f1"
    figures: bool = True

    def __post_init__(self):
        if not self.seeds:
            raise ConfigError("seeds must be non-empty")
        self.seeds = tuple(int(s) for s in self.seeds)
        if self.prompt_mode not in ("few_shot", "finetune_export"):
            raise ConfigError(f"unknown prompt_mode {self.prompt_mode!r}")
        if self.backend not in ("mock", "http"):
            raise ConfigError(f"unknown backend {self.backend!r}")
        if self.backend == "http" and not self.backend_url:
            raise ConfigError("backend_url is required for the http backend")
        if self.aso_metric not in ("hate_f1", "macro_f1"):
            raise ConfigError(f"unknown aso_metric {self.aso_metric!r}")

    @property
    def stage_seed(self) -> int:
        # single-shot stages (sample, eda, generate, filter, mix) use the first seed
        return self.seeds[0]

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["seeds"] = list(self.seeds)
        d["filter_train"] = self.filter_train.to_dict()
        d["downstream_train"] = self.downstream_train.to_dict()
        d["aso"] = self.aso.to_dict()
        return d

    def digest(self) -> str:
        # out_dir is where a run lands, not what it computes; two runs of the
        # same experiment in different directories share a digest
        payload = {k: v for k, v in self.to_dict().items() if k != "out_dir"}
        canonical = json.dumps(payload, sort_keys=True).encode("utf-8")
        return hashlib.sha256(canonical).hexdigest()

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]) -> "RunConfig":
        data = dict(raw)
        unknown = set(data) - {f.name for f in dataclasses.fields(cls)}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "filter_train" in data:
            data["filter_train"] = TrainConfig(**data["filter_train"])
        if "downstream_train" in data:
            data["downstream_train"] = TrainConfig(**data["downstream_train"])
        if "aso" in data:
            aso = dict(data["aso"])
            if "thresholds" in aso:
                aso["thresholds"] = tuple(aso["thresholds"])
            data["aso"] = AsoConfig(**aso)
        if "seeds" in data:
            data["seeds"] = tuple(data["seeds"])
        return cls(**data)

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        path = Path(path)
        if path.suffix == ".toml":
            with open(path, "rb") as fh:
                raw = tomllib.load(fh)
        else:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        return cls.from_dict(raw)

    def with_overrides(self, overrides: Mapping[str, str]) -> "RunConfig":
        """Apply dotted-key overrides (e.g. filter_train.epochs=7), values parsed as JSON
        when possible and kept as strings otherwise."""
        data = self.to_dict()
        for dotted, raw_value in overrides.items():
            try:
                value = json.loads(raw_value)
            except json.JSONDecodeError:
                value = raw_value
            node: Any = data
            *parents, leaf = dotted.split(".")
            for part in parents:
                if part not in node or not isinstance(node[part], dict):
                    raise ConfigError(f"unknown config key {dotted!r}")
                node = node[part]
            if leaf not in node:
                raise ConfigError(f"unknown config key {dotted!r}")
            node[leaf] = value
        return RunConfig.from_dict(data)
