import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from targetaug.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    result = runner.invoke(main, [str(a) for a in args], catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result


SMALL = [
    "--set", "gold_sample_n=60",
    "--set", "generation_total=280",
    "--set", "cap_per_label=120",
    "--set", "eda_total=200",
    "--set", "mix_eda=100",
    "--set", "mix_generated=100",
    "--set", "seeds=[522, 97]",
    "--set", "hash_dim=16384",
    "--set", 'prompt_mode="finetune_export"',
]


class TestCli:
    def test_help_lists_stage_commands(self, runner):
        result = invoke(runner, "--help")
        for command in (
            "ingest", "sample", "eda", "generate", "filter", "mix",
            "train", "eval", "hatecheck", "aso", "serve", "export-ft",
        ):
            assert command in result.output

    def test_pipeline_through_cli(self, runner, tmp_path):
        out = tmp_path / "run"
        common = ["--out", out, *SMALL]
        invoke(runner, "ingest", FIXTURES / "raw_annotations.csv", *common)
        invoke(runner, "sample", FIXTURES / "gold_400.jsonl", *common)
        invoke(runner, "eda", out / "gold.jsonl", *common)
        invoke(runner, "generate", out / "gold.jsonl", *common)
        invoke(
            runner, "filter", out / "gold.jsonl", out / "candidates.jsonl", *common
        )
        invoke(
            runner, "mix", "mix", out / "gold.jsonl",
            "--eda", out / "eda.jsonl", "--filtered", out / "filtered.jsonl", *common,
        )
        invoke(runner, "train", out / "train_mix.jsonl", *common)
        result = invoke(runner, "eval", FIXTURES / "eval_600.jsonl", "--tag", "mix", *common)
        assert "macro-F1" in result.output
        invoke(
            runner, "hatecheck", FIXTURES / "hatecheck_cases.csv", "--tag", "mix", *common
        )
        invoke(runner, "export-ft", out / "gold.jsonl", *common)

        manifest = json.loads((out / "manifest.json").read_text())
        for stage in ("ingest", "sample", "eda", "generate", "filter",
                      "mix:mix", "train:mix", "eval:mix", "hatecheck:mix", "export_ft"):
            assert stage in manifest["stages"], stage

    def test_sample_note_on_failure(self, runner, tmp_path):
        # corpus smaller than the requested sample surfaces a clean error
        result = runner.invoke(
            main,
            ["sample", str(FIXTURES / "gold_400.jsonl"), "--out", str(tmp_path / "r"),
             "--set", "gold_sample_n=100000"],
        )
        assert result.exit_code != 0
        assert "cannot sample" in result.output

    def test_config_file_with_cli_override(self, runner, tmp_path):
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps({"gold_sample_n": 30, "seeds": [1]}))
        out = tmp_path / "run"
        invoke(
            runner, "sample", FIXTURES / "gold_400.jsonl",
            "--config", config_path, "--out", out, "--set", "gold_sample_n=25",
        )
        from targetaug.corpus import read_corpus

        assert len(read_corpus(out / "gold.jsonl")) == 25

    def test_aso_command(self, runner, tmp_path):
        out = tmp_path / "run"
        common = ["--out", out, *SMALL]
        invoke(runner, "sample", FIXTURES / "gold_400.jsonl", *common)
        invoke(runner, "mix", "none", out / "gold.jsonl", *common)
        invoke(runner, "train", out / "train_none.jsonl", *common)
        invoke(runner, "eval", FIXTURES / "eval_600.jsonl", "--tag", "none", *common)
        invoke(runner, "eda", out / "gold.jsonl", *common)
        invoke(runner, "mix", "eda", out / "gold.jsonl", "--eda", out / "eda.jsonl", *common)
        invoke(runner, "train", out / "train_eda.jsonl", *common)
        invoke(runner, "eval", FIXTURES / "eval_600.jsonl", "--tag", "eda", *common)
        result = invoke(
            runner, "aso",
            f"none={out / 'eval_summary_none.json'}",
            f"eda={out / 'eval_summary_eda.json'}",
            *common,
        )
        assert "ordered pairs" in result.output
        report = json.loads((out / "aso_report.json").read_text())
        assert report["systems"] == ["none", "eda"]

    def test_bad_set_syntax_rejected(self, runner, tmp_path):
        result = runner.invoke(
            main, ["sample", str(FIXTURES / "gold_400.jsonl"), "--set", "oops"]
        )
        assert result.exit_code != 0
