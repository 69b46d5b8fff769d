"""Command-line interface: one subcommand per pipeline stage plus the
annotation service."""

from __future__ import annotations

import functools
import json
from pathlib import Path

import click

from .pipeline import RunConfig, STRATEGIES
from .pipeline import stages
from .pipeline.config import ConfigError


def _build_config(config_path, out, sets) -> RunConfig:
    config = RunConfig.from_file(config_path) if config_path else RunConfig()
    overrides = {}
    for item in sets:
        if "=" not in item:
            raise click.BadParameter(f"--set expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        overrides[key.strip()] = value.strip()
    if out:
        overrides["out_dir"] = out
    try:
        return config.with_overrides(overrides) if overrides else config
    except ConfigError as exc:
        raise click.ClickException(str(exc)) from exc


def config_options(fn):
    @click.option("--config", "config_path", type=click.Path(exists=True), default=None,
                  help="TOML or JSON run configuration.")
    @click.option("--out", type=click.Path(), default=None, help="Output directory.")
    @click.option("--set", "sets", multiple=True, metavar="KEY=VALUE",
                  help="Override any config field (dotted keys for nested ones).")
    @click.option("--force", is_flag=True, help="Replace an already-recorded stage.")
    @functools.wraps(fn)
    def wrapper(*args, config_path=None, out=None, sets=(), force=False, **kwargs):
        kwargs["config"] = _build_config(config_path, out, sets)
        kwargs["force"] = force
        return fn(*args, **kwargs)

    return wrapper


def _run(stage_fn, *args, **kwargs):
    try:
        return stage_fn(*args, **kwargs)
    except Exception as exc:  # surface domain errors as clean CLI failures
        if isinstance(exc, (click.ClickException, click.Abort)):
            raise
        raise click.ClickException(f"{type(exc).__name__}: {exc}") from exc


@click.group()
@click.version_option()
def main():
    """Augment small target-annotated hate speech corpora and evaluate
    classifiers per target identity."""


@main.command()
@click.argument("raw_csv", type=click.Path(exists=True))
@config_options
def ingest(raw_csv, config, force):
    """Aggregate raw annotation rows into a labeled corpus."""
    result = _run(stages.stage_ingest, config, raw_csv, force=force)
    click.echo(f"ingested {result['posts']} posts ({result['excluded']} excluded)")


@main.command()
@click.argument("corpus", type=click.Path(exists=True))
@config_options
def sample(corpus, config, force):
    """Draw the seeded gold sample."""
    result = _run(stages.stage_sample, config, corpus, force=force)
    click.echo(f"sampled {result['gold']} gold posts")


@main.command()
@click.argument("gold", type=click.Path(exists=True))
@config_options
def eda(gold, config, force):
    """Perturbation-based augmentation of the gold sample."""
    result = _run(stages.stage_eda, config, gold, force=force)
    click.echo(f"wrote {result['total']} perturbed posts {result['per_operation']}")


@main.command()
@click.argument("gold", type=click.Path(exists=True))
@config_options
def generate(gold, config, force):
    """Generate candidate posts with the configured backend."""
    result = _run(stages.stage_generate, config, gold, force=force)
    click.echo(f"generated {result['candidates']} candidates")


@main.command("export-ft")
@click.argument("gold", type=click.Path(exists=True))
@config_options
def export_ft(gold, config, force):
    """Write the {prompt, text} finetuning corpus for an external trainer."""
    result = _run(stages.stage_export_ft, config, gold, force=force)
    click.echo(f"exported {result['records']} finetuning records")


@main.command("filter")
@click.argument("gold", type=click.Path(exists=True))
@click.argument("candidates", type=click.Path(exists=True))
@config_options
def filter_cmd(gold, candidates, config, force):
    """Keep candidates whose predicted label matches the intended one."""
    result = _run(stages.stage_filter, config, gold, candidates, force=force)
    click.echo(f"kept {result['kept']} candidates {result['kept_per_label']}")


@main.command()
@click.argument("strategy", type=click.Choice(STRATEGIES))
@click.argument("gold", type=click.Path(exists=True))
@click.option("--eda", "eda_path", type=click.Path(exists=True), default=None)
@click.option("--filtered", "filtered_path", type=click.Path(exists=True), default=None)
@config_options
def mix(strategy, gold, eda_path, filtered_path, config, force):
    """Assemble a training set for one augmentation strategy."""
    result = _run(
        stages.stage_mix, config, strategy, gold, eda_path, filtered_path, force=force
    )
    click.echo(f"training set {result['path']}: {result['train_size']} posts")


@main.command()
@click.argument("train_set", type=click.Path(exists=True))
@click.option("--tag", default=None, help="System tag (defaults to the train file stem).")
@config_options
def train(train_set, tag, config, force):
    """Train one model per configured seed."""
    tag = tag or Path(train_set).stem.removeprefix("train_")
    result = _run(stages.stage_train, config, train_set, tag, force=force)
    click.echo(f"trained {result['models']} models on {result['n_train']} posts [{tag}]")


@main.command("eval")
@click.argument("eval_set", type=click.Path(exists=True))
@click.option("--tag", required=True, help="System tag used at the train stage.")
@config_options
def eval_cmd(eval_set, tag, config, force):
    """Per-seed evaluation with a mean +/- stdev summary."""
    result = _run(stages.stage_eval, config, eval_set, tag, force=force)
    click.echo(
        f"[{tag}] macro-F1 {result['macro_f1']:.3f} hate-F1 {result['hate_f1']:.3f} "
        f"-> {result['summary']}"
    )


@main.command()
@click.argument("cases", type=click.Path(exists=True))
@click.option("--tag", required=True, help="System tag used at the train stage.")
@config_options
def hatecheck(cases, tag, config, force):
    """Functional diagnostic suite evaluation per target identity."""
    result = _run(stages.stage_hatecheck, config, cases, tag, force=force)
    click.echo(f"[{tag}] evaluated {result['n_cases']} cases -> {result['summary']}")


@main.command()
@click.argument("systems", nargs=-1, required=True, metavar="NAME=SUMMARY_JSON...")
@config_options
def aso(systems, config, force):
    """Pairwise ASO significance report over eval summaries."""
    parsed = []
    for item in systems:
        if "=" not in item:
            raise click.BadParameter(f"expected NAME=SUMMARY_JSON, got {item!r}")
        name, path = item.split("=", 1)
        parsed.append((name, path))
    result = _run(stages.stage_aso, config, parsed, force=force)
    click.echo(f"compared {result['pairs']} ordered pairs -> {result['report']}")


@main.command()
@click.argument("generated", type=click.Path(exists=True))
@click.option("--annotators", required=True, help="Comma-separated annotator ids.")
@click.option("--items-per-setup", default=70, show_default=True)
@click.option("--overlap", default=0.1, show_default=True,
              help="Fraction of each queue shared by all annotators.")
@click.option("--seed", default=0, show_default=True)
@click.option("--data-dir", type=click.Path(), default="annotation-data", show_default=True)
@click.option("--static", "static_dir", type=click.Path(), default=None,
              help="Directory of built UI assets to serve at /.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8321, show_default=True)
def serve(generated, annotators, items_per_setup, overlap, seed, data_dir, static_dir,
          host, port):
    """Serve the annotation API (and UI, when built) for a generated corpus."""
    import uvicorn

    from .annotation import build_session_plan, create_app
    from .corpus import read_corpus

    posts = read_corpus(generated)
    plan = build_session_plan(
        posts,
        [a.strip() for a in annotators.split(",") if a.strip()],
        items_per_setup=items_per_setup,
        overlap_fraction=overlap,
        seed=seed,
    )
    for warning in plan.warnings:
        click.echo(f"warning: {warning}", err=True)
    click.echo(
        f"serving {len(plan.items)} items across {len(plan.setups)} setups "
        f"on http://{host}:{port}"
    )
    app = create_app(plan, data_dir, static_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
