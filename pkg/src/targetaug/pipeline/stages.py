"""Pipeline stages: each is a pure function of (inputs, config, seed) that
writes JSON-lines outputs plus a manifest entry."""

from __future__ import annotations

import json
import random
import statistics
import time
from pathlib import Path
from typing import Sequence

import numpy as np

from . import figures
from .config import RunConfig
from .manifest import Manifest, file_digest
from ..augment import (
    GenerationParams,
    HTTPBackend,
    MockBackend,
    PromptMode,
    derive_seed,
    export_finetune_corpus,
    generate_dataset,
    plan_quotas,
)
from ..classifier import (
    FeatureSpec,
    FileScorer,
    TrainConfig,
    filter_generated,
    load_model,
    predict,
    save_model,
    train,
)
from ..corpus import (
    Post,
    aggregate,
    corpus_stats,
    read_annotations_csv,
    read_corpus,
    sample_gold,
    write_corpus,
)
from ..eda import EdaConfig, SynonymLexicon, default_lexicon, default_stopwords, load_stopwords
from ..evaluation import (
    aso_min_epsilon,
    build_eval_report,
    hatecheck_evaluate,
    read_hatecheck_csv,
)


def _write_json(payload: dict, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _manifest(config: RunConfig) -> Manifest:
    return Manifest(config.out_dir, config.digest())


def _load_lexicon(config: RunConfig) -> tuple[SynonymLexicon, frozenset[str]]:
    stopwords = (
        load_stopwords(config.stopwords) if config.stopwords else default_stopwords()
    )
    lexicon = (
        SynonymLexicon.from_json(config.lexicon, stopwords)
        if config.lexicon
        else default_lexicon(stopwords)
    )
    return lexicon, stopwords


def _timed(manifest: Manifest, stage: str, started: float) -> None:
    manifest.record_timing(stage, time.perf_counter() - started)


def stage_ingest(config: RunConfig, raw_csv: str | Path, force: bool = False) -> dict:
    """Raw annotation CSV -> aggregated corpus + exclusion report + stats."""
    started = time.perf_counter()
    out = Path(config.out_dir)
    annotations = read_annotations_csv(raw_csv)
    posts, excluded = aggregate(annotations)
    stats = corpus_stats(posts)

    corpus_path = out / "corpus.jsonl"
    write_corpus(posts, corpus_path)
    excluded_path = out / "excluded.jsonl"
    excluded_path.parent.mkdir(parents=True, exist_ok=True)
    with open(excluded_path, "w", encoding="utf-8") as fh:
        for e in excluded:
            fh.write(
                json.dumps(
                    {
                        "id": e.post_id,
                        "text": e.text,
                        "n_annotators": e.n_annotators,
                        "mean_score": e.mean_score,
                    },
                    ensure_ascii=False,
                    sort_keys=True,
                )
                + "\n"
            )
    stats_path = out / "stats.json"
    _write_json(stats.to_dict(), stats_path)

    extra = {}
    if config.figures:
        fig_path = out / "targets_distribution.png"
        figures.save_target_distribution(stats, fig_path)
        extra["figures"] = [fig_path.name]

    manifest = _manifest(config)
    manifest.record_stage(
        "ingest",
        inputs={"raw_annotations": raw_csv},
        outputs={"corpus": corpus_path, "excluded": excluded_path, "stats": stats_path},
        counts={
            "annotations": len(annotations),
            "posts": len(posts),
            "excluded": len(excluded),
            "hateful": stats.hateful_posts,
        },
        extra=extra,
        force=force,
    )
    _timed(manifest, "ingest", started)
    return {"posts": len(posts), "excluded": len(excluded)}


def stage_sample(config: RunConfig, corpus_path: str | Path, force: bool = False) -> dict:
    """Seeded uniform gold sample of gold_sample_n posts."""
    started = time.perf_counter()
    out = Path(config.out_dir)
    manifest = _manifest(config)
    manifest.verify_if_recorded("ingest", "corpus", corpus_path)
    corpus = read_corpus(corpus_path)
    gold = sample_gold(corpus, config.gold_sample_n, config.stage_seed)
    gold_path = out / "gold.jsonl"
    write_corpus(gold, gold_path)
    manifest.record_stage(
        "sample",
        inputs={"corpus": corpus_path},
        outputs={"gold": gold_path},
        counts={"gold": len(gold), "seed": config.stage_seed},
        force=force,
    )
    _timed(manifest, "sample", started)
    return {"gold": len(gold)}


def stage_eda(config: RunConfig, gold_path: str | Path, force: bool = False) -> dict:
    """EDA augmentation of the gold sample: eda_total posts, a quarter per operation."""
    started = time.perf_counter()
    out = Path(config.out_dir)
    manifest = _manifest(config)
    manifest.verify_if_recorded("sample", "gold", gold_path)
    gold = read_corpus(gold_path)
    lexicon, stopwords = _load_lexicon(config)
    eda_config = EdaConfig(alpha=config.eda_alpha, seed=config.stage_seed, stopwords=stopwords)
    from ..eda import eda_augment_corpus

    augmented = eda_augment_corpus(gold, config.eda_total, eda_config, lexicon)
    eda_path = out / "eda.jsonl"
    write_corpus(augmented, eda_path)
    per_op: dict[str, int] = {}
    for post in augmented:
        op = str(post.source_meta["operation"])
        per_op[op] = per_op.get(op, 0) + 1
    manifest.record_stage(
        "eda",
        inputs={"gold": gold_path},
        outputs={"eda": eda_path},
        counts={"total": len(augmented), "per_operation": per_op},
        force=force,
    )
    _timed(manifest, "eda", started)
    return {"total": len(augmented), "per_operation": per_op}


def _backend(config: RunConfig):
    if config.backend == "mock":
        return MockBackend()
    return HTTPBackend(
        url=config.backend_url,
        model=config.backend_model or "default",
        api_key_env=config.api_key_env,
    )


def stage_generate(config: RunConfig, gold_path: str | Path, force: bool = False) -> dict:
    """Backend-driven candidate generation over the quota plan."""
    started = time.perf_counter()
    out = Path(config.out_dir)
    manifest = _manifest(config)
    manifest.verify_if_recorded("sample", "gold", gold_path)
    gold = read_corpus(gold_path)
    plan = plan_quotas(config.generation_total, config.with_target, config.batch_size)
    params = GenerationParams(
        top_p=config.top_p,
        min_tokens=config.min_tokens,
        max_tokens=config.max_tokens,
        batch_size=config.batch_size,
    )
    backend = _backend(config)
    candidates = generate_dataset(
        gold,
        backend,
        PromptMode(config.prompt_mode),
        config.with_target,
        plan,
        params,
        seed=config.stage_seed,
        parallelism=config.parallelism,
    )
    candidates_path = out / "candidates.jsonl"
    write_corpus(candidates, candidates_path)
    manifest.record_stage(
        "generate",
        inputs={"gold": gold_path},
        outputs={"candidates": candidates_path},
        counts={"candidates": len(candidates), "planned": plan.planned},
        extra={"backend": backend.identity, "mode": config.prompt_mode},
        force=force,
    )
    _timed(manifest, "generate", started)
    return {"candidates": len(candidates)}


def stage_export_ft(config: RunConfig, gold_path: str | Path, force: bool = False) -> dict:
    """Finetune-export corpus: {prompt, text} JSON-lines for an external trainer."""
    started = time.perf_counter()
    out = Path(config.out_dir)
    manifest = _manifest(config)
    gold = read_corpus(gold_path)
    records = export_finetune_corpus(gold, config.with_target)
    path = out / "finetune_corpus.jsonl"
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")
    manifest.record_stage(
        "export_ft",
        inputs={"gold": gold_path},
        outputs={"finetune_corpus": path},
        counts={"records": len(records)},
        force=force,
    )
    _timed(manifest, "export_ft", started)
    return {"records": len(records)}


def stage_filter(
    config: RunConfig,
    gold_path: str | Path,
    candidates_path: str | Path,
    force: bool = False,
) -> dict:
    """Train the filter model on gold and keep label-consistent candidates."""
    started = time.perf_counter()
    out = Path(config.out_dir)
    manifest = _manifest(config)
    manifest.verify_if_recorded("sample", "gold", gold_path)
    manifest.verify_if_recorded("generate", "candidates", candidates_path)

    gold = read_corpus(gold_path)
    candidates = read_corpus(candidates_path)
    spec = FeatureSpec(hash_dim=config.hash_dim)

    model_path = out / "filter_model.npz"
    if config.external_scores:
        scorer = FileScorer.from_jsonl(config.external_scores)
        filter_inputs = {"gold": gold_path, "candidates": candidates_path,
                         "external_scores": config.external_scores}
        model_outputs = {}
    else:
        filter_train = TrainConfig(**{**config.filter_train.to_dict(), "seed": config.stage_seed})
        model = train(gold, filter_train, spec)
        save_model(model, model_path)
        scorer = model
        filter_inputs = {"gold": gold_path, "candidates": candidates_path}
        model_outputs = {"filter_model": model_path}

    kept, report = filter_generated(
        candidates, scorer, config.cap_per_label, seed=config.stage_seed
    )
    filtered_path = out / "filtered.jsonl"
    write_corpus(kept, filtered_path)
    report_path = out / "filter_report.json"
    _write_json(report.to_dict(), report_path)

    manifest.record_stage(
        "filter",
        inputs=filter_inputs,
        outputs={"filtered": filtered_path, "filter_report": report_path, **model_outputs},
        counts={
            "candidates": len(candidates),
            "kept": len(kept),
            "kept_per_label": report.kept_per_label,
        },
        force=force,
    )
    _timed(manifest, "filter", started)
    return {"kept": len(kept), "kept_per_label": report.kept_per_label}


def stage_mix(
    config: RunConfig,
    strategy: str,
    gold_path: str | Path,
    eda_path: str | Path | None = None,
    filtered_path: str | Path | None = None,
    force: bool = False,
) -> dict:
    """Assemble the training set for one augmentation strategy.

    Strategies: none (gold only), oversample (gold repeated to gold+eda_total),
    eda (gold + the full EDA corpus), gen (gold + everything that passed the
    filter), mix (gold + seeded mix_eda EDA + mix_generated filtered posts).
    """
    started = time.perf_counter()
    out = Path(config.out_dir)
    manifest = _manifest(config)
    gold = read_corpus(gold_path)
    counts: dict[str, object] = {"strategy": strategy, "gold": len(gold)}
    inputs: dict[str, str | Path] = {"gold": gold_path}

    if strategy == "none":
        train_set = list(gold)
    elif strategy == "oversample":
        target_size = len(gold) + config.eda_total
        train_set = [gold[i % len(gold)] for i in range(target_size)]
        counts["copies"] = target_size // len(gold)
    elif strategy == "eda":
        if eda_path is None:
            raise ValueError("eda strategy needs an EDA corpus")
        manifest.verify_if_recorded("eda", "eda", eda_path)
        eda_posts = read_corpus(eda_path)
        inputs["eda"] = eda_path
        counts["eda"] = len(eda_posts)
        train_set = list(gold) + eda_posts
    elif strategy == "gen":
        if filtered_path is None:
            raise ValueError("gen strategy needs a filtered corpus")
        manifest.verify_if_recorded("filter", "filtered", filtered_path)
        gen_posts = read_corpus(filtered_path)
        inputs["filtered"] = filtered_path
        counts["generated"] = len(gen_posts)
        train_set = list(gold) + gen_posts
    elif strategy == "mix":
        if eda_path is None or filtered_path is None:
            raise ValueError("mix strategy needs both EDA and filtered corpora")
        if config.mix_eda + config.mix_generated != config.eda_total:
            raise ValueError(
                f"mixture sizes {config.mix_eda}+{config.mix_generated} must sum "
                f"to eda_total {config.eda_total}"
            )
        manifest.verify_if_recorded("eda", "eda", eda_path)
        manifest.verify_if_recorded("filter", "filtered", filtered_path)
        eda_posts = read_corpus(eda_path)
        gen_posts = read_corpus(filtered_path)
        if len(eda_posts) < config.mix_eda:
            raise ValueError(
                f"EDA corpus has {len(eda_posts)} posts, need {config.mix_eda}"
            )
        eda_rng = random.Random(derive_seed(config.stage_seed, "mix-eda"))
        take_eda = eda_rng.sample(eda_posts, config.mix_eda)
        gen_rng = random.Random(derive_seed(config.stage_seed, "mix-gen"))
        take_gen = gen_rng.sample(gen_posts, min(config.mix_generated, len(gen_posts)))
        counts["eda"] = len(take_eda)
        counts["generated"] = len(take_gen)
        counts["generated_shortfall"] = len(gen_posts) < config.mix_generated
        inputs["eda"] = eda_path
        inputs["filtered"] = filtered_path
        train_set = list(gold) + take_eda + take_gen
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    counts["train_size"] = len(train_set)
    train_path = out / f"train_{strategy}.jsonl"
    write_corpus(train_set, train_path)
    manifest.record_stage(
        f"mix:{strategy}",
        inputs=inputs,
        outputs={"train_set": train_path},
        counts=counts,
        force=force,
    )
    _timed(manifest, f"mix:{strategy}", started)
    return {"train_size": len(train_set), "path": str(train_path)}


def stage_train(
    config: RunConfig, train_path: str | Path, tag: str, force: bool = False
) -> dict:
    """Train one downstream model per configured seed."""
    started = time.perf_counter()
    out = Path(config.out_dir)
    manifest = _manifest(config)
    manifest.verify_if_recorded(f"mix:{tag}", "train_set", train_path)
    dataset = read_corpus(train_path)
    spec = FeatureSpec(hash_dim=config.hash_dim)

    outputs = {}
    losses = {}
    for seed in config.seeds:
        train_config = TrainConfig(**{**config.downstream_train.to_dict(), "seed": seed})
        model = train(dataset, train_config, spec)
        model_path = out / "models" / f"{tag}_seed{seed}.npz"
        save_model(model, model_path)
        outputs[f"model_seed{seed}"] = model_path
        losses[str(seed)] = model.train_meta["final_loss"]

    report_path = out / f"train_report_{tag}.json"
    _write_json(
        {"tag": tag, "n_train": len(dataset), "final_loss_per_seed": losses}, report_path
    )
    outputs["train_report"] = report_path
    manifest.record_stage(
        f"train:{tag}",
        inputs={"train_set": train_path},
        outputs=outputs,
        counts={"n_train": len(dataset), "seeds": list(config.seeds)},
        force=force,
    )
    _timed(manifest, f"train:{tag}", started)
    return {"n_train": len(dataset), "models": len(config.seeds)}


def _summarize(values: Sequence[float]) -> tuple[float, float]:
    mean = statistics.fmean(values)
    stdev = statistics.stdev(values) if len(values) > 1 else 0.0
    return mean, stdev


def stage_eval(
    config: RunConfig, eval_path: str | Path, tag: str, force: bool = False
) -> dict:
    """Per-seed evaluation reports plus a mean +/- stdev summary across seeds."""
    started = time.perf_counter()
    out = Path(config.out_dir)
    manifest = _manifest(config)
    eval_set = read_corpus(eval_path)
    dataset_digest = file_digest(eval_path)

    outputs = {}
    per_seed_macro: list[float] = []
    per_seed_hate: list[float] = []
    per_target_lists: dict[str, list[float]] = {}
    for seed in config.seeds:
        model_path = manifest.verify_upstream(
            f"train:{tag}", f"model_seed{seed}", out / "models" / f"{tag}_seed{seed}.npz"
        )
        model = load_model(model_path)
        predictions = [predict(model, p.text)[0] for p in eval_set]
        report = build_eval_report(
            eval_set,
            predictions,
            run_meta={"seed": seed, "dataset_digest": dataset_digest, "tag": tag},
        )
        report_path = out / f"eval_{tag}_seed{seed}.json"
        _write_json(report.to_dict(), report_path)
        outputs[f"eval_seed{seed}"] = report_path
        per_seed_macro.append(report.macro_f1)
        per_seed_hate.append(report.hate_f1)
        for target, value in report.per_target_hate_f1.items():
            per_target_lists.setdefault(target.value, []).append(value)

    macro_mean, macro_std = _summarize(per_seed_macro)
    hate_mean, hate_std = _summarize(per_seed_hate)
    target_mean = {}
    target_std = {}
    for name, values in sorted(per_target_lists.items()):
        target_mean[name], target_std[name] = _summarize(values)

    summary = {
        "tag": tag,
        "n_eval": len(eval_set),
        "seeds": list(config.seeds),
        "dataset_digest": dataset_digest,
        "per_seed": {
            "macro_f1": per_seed_macro,
            "hate_f1": per_seed_hate,
            "per_target_hate_f1": per_target_lists,
        },
        "mean": {
            "macro_f1": macro_mean,
            "hate_f1": hate_mean,
            "per_target_hate_f1": target_mean,
        },
        "stdev": {
            "macro_f1": macro_std,
            "hate_f1": hate_std,
            "per_target_hate_f1": target_std,
        },
    }
    summary_path = out / f"eval_summary_{tag}.json"
    _write_json(summary, summary_path)
    outputs["eval_summary"] = summary_path

    extra = {}
    if config.figures:
        fig_path = out / f"per_target_f1_{tag}.png"
        figures.save_per_target_f1(
            target_mean, target_std, fig_path, title=f"hate-F1 by target ({tag})"
        )
        extra["figures"] = [fig_path.name]

    manifest.record_stage(
        f"eval:{tag}",
        inputs={"eval_set": eval_path},
        outputs=outputs,
        counts={
            "n_eval": len(eval_set),
            "macro_f1_mean": round(macro_mean, 6),
            "hate_f1_mean": round(hate_mean, 6),
        },
        extra=extra,
        force=force,
    )
    _timed(manifest, f"eval:{tag}", started)
    return {"macro_f1": macro_mean, "hate_f1": hate_mean, "summary": str(summary_path)}


def stage_hatecheck(
    config: RunConfig, cases_path: str | Path, tag: str, force: bool = False
) -> dict:
    """Evaluate each seed's model on the functional suite; summarize across seeds."""
    started = time.perf_counter()
    out = Path(config.out_dir)
    manifest = _manifest(config)
    cases = read_hatecheck_csv(cases_path)

    per_target_lists: dict[str, list[float]] = {}
    rollup_lists: dict[str, list[float]] = {}
    func_lists: dict[str, list[float]] = {}
    for seed in config.seeds:
        model_path = manifest.verify_upstream(
            f"train:{tag}", f"model_seed{seed}", out / "models" / f"{tag}_seed{seed}.npz"
        )
        report = hatecheck_evaluate(cases, load_model(model_path))
        for name, value in report.per_target_hate_f1.items():
            per_target_lists.setdefault(name, []).append(value)
        for target, value in report.category_rollup_hate_f1.items():
            rollup_lists.setdefault(target.value, []).append(value)
        for name, value in report.per_functionality_accuracy.items():
            func_lists.setdefault(name, []).append(value)

    def summarize_map(lists: dict[str, list[float]]) -> tuple[dict, dict]:
        means, stds = {}, {}
        for name, values in sorted(lists.items()):
            means[name], stds[name] = _summarize(values)
        return means, stds

    target_mean, target_std = summarize_map(per_target_lists)
    rollup_mean, rollup_std = summarize_map(rollup_lists)
    func_mean, func_std = summarize_map(func_lists)

    summary = {
        "tag": tag,
        "n_cases": len(cases),
        "seeds": list(config.seeds),
        "per_target_hate_f1": {"mean": target_mean, "stdev": target_std},
        "category_rollup_hate_f1": {"mean": rollup_mean, "stdev": rollup_std},
        "per_functionality_accuracy": {"mean": func_mean, "stdev": func_std},
    }
    summary_path = out / f"hatecheck_{tag}.json"
    _write_json(summary, summary_path)

    extra = {}
    if config.figures:
        fig_path = out / f"hatecheck_{tag}.png"
        figures.save_hatecheck_rollup(target_mean, target_std, fig_path)
        extra["figures"] = [fig_path.name]

    manifest.record_stage(
        f"hatecheck:{tag}",
        inputs={"cases": cases_path},
        outputs={"hatecheck_summary": summary_path},
        counts={"n_cases": len(cases)},
        extra=extra,
        force=force,
    )
    _timed(manifest, f"hatecheck:{tag}", started)
    return {"n_cases": len(cases), "summary": str(summary_path)}


def stage_aso(
    config: RunConfig, summaries: Sequence[tuple[str, str | Path]], force: bool = False
) -> dict:
    """Pairwise ASO comparisons over per-seed scores from eval summaries."""
    started = time.perf_counter()
    out = Path(config.out_dir)
    manifest = _manifest(config)
    if len(summaries) < 2:
        raise ValueError("need at least two systems to compare")

    systems = []
    scores = []
    inputs = {}
    for name, path in summaries:
        payload = json.loads(Path(path).read_text("utf-8"))
        systems.append(name)
        scores.append(payload["per_seed"][config.aso_metric])
        inputs[f"summary:{name}"] = path

    n = len(systems)
    eps_min = np.ones((n, n))
    pairs = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            result = aso_min_epsilon(scores[i], scores[j], config.aso)
            eps_min[i, j] = result.epsilon_min
            marker = (
                "star" if result.highly_significant
                else "diamond" if result.significant
                else ""
            )
            pairs.append(
                {
                    "a": systems[i],
                    "b": systems[j],
                    **result.to_dict(),
                    "marker": marker,
                }
            )

    report = {
        "metric": config.aso_metric,
        "systems": systems,
        "thresholds": list(config.aso.thresholds),
        "config": config.aso.to_dict(),
        "pairs": pairs,
    }
    report_path = out / "aso_report.json"
    _write_json(report, report_path)

    extra = {}
    if config.figures:
        fig_path = out / "aso_matrix.png"
        figures.save_aso_matrix(systems, eps_min, fig_path)
        extra["figures"] = [fig_path.name]

    manifest.record_stage(
        "aso",
        inputs=inputs,
        outputs={"aso_report": report_path},
        counts={"systems": len(systems), "pairs": len(pairs)},
        extra=extra,
        force=force,
    )
    _timed(manifest, "aso", started)
    return {"pairs": len(pairs), "report": str(report_path)}
