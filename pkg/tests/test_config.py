import json

import pytest

from targetaug.pipeline import ConfigError, RunConfig


class TestRunConfig:
    def test_defaults_mirror_protocol(self):
        config = RunConfig()
        assert config.gold_sample_n == 1000
        assert config.generation_total == 100_000
        assert config.cap_per_label == 15_000
        assert config.eda_total == 30_000
        assert config.mix_eda == 15_000
        assert config.mix_generated == 15_000
        assert config.seeds == (522, 97, 709, 16, 42)
        assert config.filter_train.epochs == 5
        assert config.downstream_train.epochs == 3
        assert config.filter_train.batch_size == 16
        assert config.aso.thresholds == (0.2, 0.5)

    def test_empty_seeds_rejected(self):
        with pytest.raises(ConfigError, match="seeds"):
            RunConfig(seeds=())

    def test_http_backend_needs_url(self):
        with pytest.raises(ConfigError, match="backend_url"):
            RunConfig(backend="http")

    def test_digest_ignores_out_dir(self):
        a = RunConfig(out_dir="/tmp/x")
        b = RunConfig(out_dir="/tmp/y")
        assert a.digest() == b.digest()
        c = RunConfig(out_dir="/tmp/x", gold_sample_n=7)
        assert a.digest() != c.digest()

    def test_json_file_round_trip(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(
            json.dumps(
                {
                    "gold_sample_n": 50,
                    "seeds": [1, 2],
                    "filter_train": {"epochs": 7},
                    "aso": {"bootstrap_iters": 250, "thresholds": [0.2, 0.5]},
                }
            )
        )
        config = RunConfig.from_file(path)
        assert config.gold_sample_n == 50
        assert config.seeds == (1, 2)
        assert config.filter_train.epochs == 7
        assert config.aso.bootstrap_iters == 250

    def test_toml_file(self, tmp_path):
        path = tmp_path / "config.toml"
        path.write_text(
            'gold_sample_n = 25\nseeds = [9]\n\n[downstream_train]\nepochs = 4\n'
        )
        config = RunConfig.from_file(path)
        assert config.gold_sample_n == 25
        assert config.downstream_train.epochs == 4

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text('{"no_such_field": 1}')
        with pytest.raises(ConfigError, match="no_such_field"):
            RunConfig.from_file(path)

    def test_overrides_flat_and_nested(self):
        config = RunConfig().with_overrides(
            {"gold_sample_n": "123", "filter_train.epochs": "9", "backend": '"mock"'}
        )
        assert config.gold_sample_n == 123
        assert config.filter_train.epochs == 9

    def test_override_unknown_key_rejected(self):
        with pytest.raises(ConfigError, match="unknown config key"):
            RunConfig().with_overrides({"nope": "1"})

    def test_string_override_without_quotes(self):
        config = RunConfig().with_overrides({"prompt_mode": "finetune_export"})
        assert config.prompt_mode == "finetune_export"
