"""Batch entry points for reproducible desk-scale experiments.

Every subcommand resolves its flags (command line > SOLICIT_SEED/env >
--config file > defaults), runs deterministically from its seed, and
writes a manifest (resolved flags, input digests, seed, outputs, wall
time) alongside its primary output.
"""

from __future__ import annotations

import hashlib
import json
import sys
import time
from pathlib import Path

import click

from . import features as feats
from .analysis import SUBSET_NAMES, build_subset, significance_report
from .corpus import load_corpus
from .errors import SolicitError
from .lexicon import (
    default_coefficients_path,
    default_lexicon_path,
    load_coefficients,
    load_lexicon,
)
from .model import (
    CostConfig,
    LabeledDataset,
    assign_weights,
    kfold_evaluate,
    load_model,
    make_model,
    save_model,
)
from .recommend import Constraints, interval_size_sweep, rank_candidates, recommend
from .simulator import (
    SimConfig,
    benefit_cost_experiment,
    generate_population,
    run_live_experiment,
)


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _load_config_file(path) -> dict:
    values = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise SolicitError(f"config line without '=': {line!r}")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip().strip('"')
    return values


def _apply_config(ctx: click.Context):
    """Fill parameters still at their defaults from the --config file."""
    path = ctx.params.get("config")
    if not path:
        return
    overrides = _load_config_file(path)
    for name, value in overrides.items():
        if name not in ctx.params or name == "config":
            continue
        if ctx.get_parameter_source(name) is click.core.ParameterSource.DEFAULT:
            param = next(p for p in ctx.command.params if p.name == name)
            ctx.params[name] = param.type.convert(value, param, ctx)


def _write_manifest(primary_output, subcommand, params, inputs, outputs, seed, t0, extra=None):
    manifest = {
        "subcommand": subcommand,
        "flags": {k: (str(v) if isinstance(v, Path) else v) for k, v in params.items()},
        "input_digests": {str(p): _sha256(p) for p in inputs if p and Path(p).exists()},
        "seed": seed,
        "outputs": [str(p) for p in outputs],
        "wall_time_s": round(time.time() - t0, 3),
    }
    manifest.update(extra or {})
    primary = Path(primary_output)
    path = primary / "manifest.json" if primary.is_dir() else primary.with_suffix(
        primary.suffix + ".manifest.json"
    )
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=1, default=str)
        fh.write("\n")
    return path


def _fail(message):
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _feature_config(lexicon_path, coefficients_path, cap=200):
    lex = load_lexicon(lexicon_path or default_lexicon_path())
    coeffs = load_coefficients(coefficients_path or default_coefficients_path(), lex)
    return feats.FeatureConfig(lexicon=lex, coefficients=coeffs, post_cap=cap)


def _read_dataset(features_path, cost):
    ids, qts, names, X, y = feats.read_feature_csv(features_path)
    if y is None:
        raise SolicitError(f"{features_path} has no `responded` column; train needs labels")
    weights = assign_weights(y, cost)
    return ids, qts, LabeledDataset(X=X, y=y, weights=weights, feature_names=list(names))


def _select_columns(X, names, wanted):
    missing = [w for w in wanted if w not in names]
    if missing:
        raise SolicitError(f"features absent from the matrix: {missing[:5]}")
    idx = [names.index(w) for w in wanted]
    return X[:, idx], list(wanted)


seed_option = click.option(
    "--seed", type=int, default=42, envvar="SOLICIT_SEED", show_default=True,
    help="Random seed (SOLICIT_SEED overrides the default).",
)
config_option = click.option(
    "--config", type=click.Path(exists=True, dir_okay=False), default=None,
    help="key=value file supplying defaults for unset flags.",
)


@click.group()
def main():
    """Crowd-solicitation pipeline: simulate, featurize, train, recommend."""


@main.command()
@click.option("--out", type=click.Path(file_okay=False), required=True)
@click.option("--size", type=int, default=200, show_default=True)
@click.option("--days", type=int, default=14, show_default=True)
@click.option("--posts-per-day", type=float, default=4.0, show_default=True)
@click.option("--budget", type=int, default=None, help="Prior solicitations to label (default: population size).")
@seed_option
@config_option
@click.pass_context
def simulate(ctx, out, size, days, posts_per_day, budget, seed, config):
    """Generate a seeded synthetic population as JSONL corpus files."""
    _apply_config(ctx)
    p = ctx.params
    t0 = time.time()
    try:
        cfg = SimConfig(
            population_size=p["size"], days=p["days"], seed=p["seed"],
            mean_posts_per_day=p["posts_per_day"], question_budget=p["budget"],
        )
        bundle = generate_population(cfg, out_dir=p["out"])
    except SolicitError as exc:
        _fail(exc)
    _write_manifest(p["out"], "simulate", p, [], list(bundle.paths.values()), p["seed"], t0)
    click.echo(f"wrote population of {p['size']} agents to {p['out']}")


@main.command()
@click.option("--users", type=click.Path(exists=True), required=True)
@click.option("--posts", type=click.Path(exists=True), required=True)
@click.option("--solicitations", type=click.Path(exists=True), default=None)
@click.option("--exposures", type=click.Path(exists=True), default=None)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--at", "at_time", type=int, default=None,
              help="Query time for unlabeled rows (default: last post timestamp).")
@click.option("--cap", type=int, default=200, show_default=True, help="Most recent posts used per user.")
@click.option("--lexicon", type=click.Path(exists=True), default=None)
@click.option("--coefficients", type=click.Path(exists=True), default=None)
@seed_option
@config_option
@click.pass_context
def featurize(ctx, users, posts, solicitations, exposures, out, at_time, cap, lexicon,
              coefficients, seed, config):
    """Extract feature vectors from a corpus into a CSV matrix."""
    _apply_config(ctx)
    p = ctx.params
    t0 = time.time()
    try:
        corpus = load_corpus(p["users"], p["posts"], p["solicitations"], p["exposures"])
        fc = _feature_config(p["lexicon"], p["coefficients"], p["cap"])
        rows, labels, ids, qts = [], [], [], []
        if corpus.solicitations:
            for s in corpus.solicitations:
                fv = feats.extract_features(corpus.user(s.target_user), corpus, s.sent_at, fc)
                rows.append(fv.as_row())
                labels.append(int(s.responded))
                ids.append(s.target_user)
                qts.append(s.sent_at)
            feats.write_feature_csv(p["out"], rows, fv.names, labels=labels, ids=ids, query_times=qts)
        else:
            at = p["at_time"]
            if at is None:
                at = max((post.timestamp for post in corpus.posts.values()), default=0)
            for uid in sorted(corpus.users):
                fv = feats.extract_features(corpus.user(uid), corpus, at, fc)
                rows.append(fv.as_row())
                ids.append(uid)
                qts.append(at)
            feats.write_feature_csv(p["out"], rows, fv.names, ids=ids, query_times=qts)
    except SolicitError as exc:
        _fail(exc)
    inputs = [p["users"], p["posts"], p["solicitations"], p["exposures"]]
    _write_manifest(p["out"], "featurize", p, inputs, [p["out"]], p["seed"], t0)
    click.echo(f"wrote {len(rows)} feature rows to {p['out']}")


@main.command()
@click.option("--features", "features_path", type=click.Path(exists=True), required=True)
@click.option("--out-dir", type=click.Path(file_okay=False), required=True)
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--bins", type=int, default=4, show_default=True)
@seed_option
@config_option
@click.pass_context
def analyze(ctx, features_path, out_dir, alpha, bins, seed, config):
    """Chi-square significance report and named feature subsets."""
    _apply_config(ctx)
    p = ctx.params
    t0 = time.time()
    outputs = []
    try:
        ids, qts, names, X, y = feats.read_feature_csv(p["features_path"])
        if y is None:
            raise SolicitError("significance analysis needs a labeled feature CSV")
        report = significance_report(X, y, names, alpha=p["alpha"], bins=p["bins"])
        out = Path(p["out_dir"])
        out.mkdir(parents=True, exist_ok=True)
        report.write_csv(out / "report.csv")
        report.write_json(out / "report.json")
        outputs += [out / "report.csv", out / "report.json"]
        for subset_name in SUBSET_NAMES:
            if subset_name == "top10_significant" and len(report.significant_names) < 10:
                continue
            subset = build_subset(subset_name, report, names)
            subset.write(out / f"subset_{subset_name}.txt")
            outputs.append(out / f"subset_{subset_name}.txt")
    except SolicitError as exc:
        _fail(exc)
    _write_manifest(p["out_dir"], "analyze", p, [p["features_path"]], outputs, p["seed"], t0)
    click.echo(
        f"{len(report.significant_names)} of {report.tested_count} features significant "
        f"(threshold {report.threshold:.3e}); reports in {p['out_dir']}"
    )


@main.command()
@click.option("--features", "features_path", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--kind", type=click.Choice(["logistic", "linear_svm"]), default="logistic",
              show_default=True)
@click.option("--benefit", type=float, default=2.0, show_default=True)
@click.option("--cost", type=float, default=1.0, show_default=True)
@click.option("--subset", type=str, default=None,
              help="Feature subset: a file of names, or all/top4/common_significant.")
@click.option("--lam", type=float, default=None, help="Override the regularization strength.")
@seed_option
@config_option
@click.pass_context
def train(ctx, features_path, out, kind, benefit, cost, subset, lam, seed, config):
    """Train a cost-weighted classifier from a labeled feature CSV."""
    _apply_config(ctx)
    p = ctx.params
    t0 = time.time()
    try:
        cost_cfg = CostConfig(benefit=p["benefit"], cost=p["cost"])
        ids, qts, dataset = _read_dataset(p["features_path"], cost_cfg)
        X, names = dataset.X, dataset.feature_names
        if p["subset"]:
            if Path(p["subset"]).exists():
                wanted = [
                    line.strip()
                    for line in Path(p["subset"]).read_text(encoding="utf-8").splitlines()
                    if line.strip()
                ]
            elif p["subset"] in ("all", "top4", "common_significant"):
                wanted = list(build_subset(p["subset"], None, names).features)
            else:
                raise SolicitError(f"--subset {p['subset']!r} is neither a file nor a fixed subset")
            X, names = _select_columns(X, names, wanted)
        hyper = {"lam": p["lam"]} if p["lam"] is not None else {}
        model = make_model(p["kind"], seed=p["seed"], **hyper)
        model.fit(X, dataset.y, sample_weight=dataset.weights)
        save_model(model, p["out"], feature_names=names)
    except SolicitError as exc:
        _fail(exc)
    _write_manifest(
        p["out"], "train", p, [p["features_path"]], [p["out"]], p["seed"], t0,
        extra={
            "positive_weight": cost_cfg.benefit - cost_cfg.cost,
            "negative_weight": cost_cfg.cost,
        },
    )
    click.echo(
        f"trained {p['kind']} on {X.shape[0]} examples x {X.shape[1]} features "
        f"(weights {cost_cfg.benefit - cost_cfg.cost:g}/{cost_cfg.cost:g}); model at {p['out']}"
    )


@main.command("eval")
@click.option("--features", "features_path", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--k", type=int, default=5, show_default=True)
@click.option("--kind", type=click.Choice(["logistic", "linear_svm"]), default="logistic",
              show_default=True)
@click.option("--benefit", type=float, default=2.0, show_default=True)
@click.option("--cost", type=float, default=1.0, show_default=True)
@seed_option
@config_option
@click.pass_context
def eval_cmd(ctx, features_path, out, k, kind, benefit, cost, seed, config):
    """k-fold cross-validated precision/recall/F1/AUC."""
    _apply_config(ctx)
    p = ctx.params
    t0 = time.time()
    try:
        cost_cfg = CostConfig(benefit=p["benefit"], cost=p["cost"])
        ids, qts, dataset = _read_dataset(p["features_path"], cost_cfg)
        report = kfold_evaluate(dataset, k=p["k"], kind=p["kind"], cost=cost_cfg, seed=p["seed"])
        with open(p["out"], "w", encoding="utf-8") as fh:
            json.dump(report.as_dict(), fh, indent=1)
            fh.write("\n")
    except SolicitError as exc:
        _fail(exc)
    _write_manifest(p["out"], "eval", p, [p["features_path"]], [p["out"]], p["seed"], t0)
    click.echo(report.to_text_table())


@main.command("recommend")
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@click.option("--train-features", type=click.Path(exists=True), required=True,
              help="Labeled feature CSV that defines the training ranking.")
@click.option("--candidates", type=click.Path(exists=True), required=True,
              help="Feature CSV of the candidate pool.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--min-fraction", type=float, default=0.05, show_default=True)
@click.option("--min-length", type=int, default=1, show_default=True)
@seed_option
@config_option
@click.pass_context
def recommend_cmd(ctx, model_path, train_features, candidates, out, min_fraction, min_length,
                  seed, config):
    """Select the candidate subset that maximizes expected response rate."""
    _apply_config(ctx)
    p = ctx.params
    t0 = time.time()
    try:
        model, model_names = load_model(p["model_path"])
        train_ids, _, train_names, train_X, train_y = feats.read_feature_csv(p["train_features"])
        cand_ids, _, cand_names, cand_X, _ = feats.read_feature_csv(p["candidates"])
        if train_y is None:
            raise SolicitError("--train-features must carry a `responded` column")
        if model_names:
            train_X, _ = _select_columns(train_X, list(train_names), model_names)
            cand_X, _ = _select_columns(cand_X, list(cand_names), model_names)
        constraints = Constraints(min_fraction=p["min_fraction"], min_length=p["min_length"])
        selection = recommend(model, train_X, train_y, train_ids, cand_X, cand_ids, constraints)
        selection.write_json(p["out"])
    except SolicitError as exc:
        _fail(exc)
    _write_manifest(
        p["out"], "recommend", p,
        [p["model_path"], p["train_features"], p["candidates"]], [p["out"]], p["seed"], t0,
    )
    sel = selection
    click.echo(
        f"train interval [{sel.train_interval[0]}, {sel.train_interval[1]}] "
        f"rate {sel.train_rate:.3f} -> selected {len(sel.selected_ids)} candidates "
        f"(ranks {sel.test_interval[0]}..{sel.test_interval[1]}); written to {p['out']}"
    )


@main.command()
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--sweep", type=click.Choice(["arms", "interval", "benefit-cost"]), default="arms",
              show_default=True)
@click.option("--size", type=int, default=1000, show_default=True)
@click.option("--days", type=int, default=14, show_default=True)
@click.option("--budget", type=int, default=100, show_default=True)
@click.option("--seeds", type=str, default=None, help="Comma list of seeds (default: the single --seed).")
@click.option("--sizes", type=str, default="25,50,75,100", show_default=True,
              help="Interval sizes in percent for --sweep interval.")
@click.option("--ratios", type=str, default="2,5,10", show_default=True,
              help="Benefit/cost ratios for --sweep benefit-cost.")
@click.option("--kind", type=click.Choice(["logistic", "linear_svm"]), default="logistic",
              show_default=True)
@seed_option
@config_option
@click.pass_context
def experiment(ctx, out, sweep, size, days, budget, seeds, sizes, ratios, kind, seed, config):
    """Live-experiment arm comparisons and Table-style sweeps on the simulator."""
    _apply_config(ctx)
    p = ctx.params
    t0 = time.time()
    try:
        seed_list = (
            [int(s) for s in p["seeds"].split(",")] if p["seeds"] else [p["seed"]]
        )
        document = {"sweep": p["sweep"], "seeds": seed_list, "rows": []}
        if p["sweep"] == "arms":
            for s in seed_list:
                cfg = SimConfig(population_size=p["size"], days=p["days"], seed=s)
                rep = run_live_experiment(cfg, budget=p["budget"], kind=p["kind"])
                document["rows"].append(rep.as_dict())
            arms = {}
            for row in document["rows"]:
                for arm in row["arms"]:
                    arms.setdefault(arm["name"], []).append(arm["response_rate"])
            document["mean_rates"] = {name: sum(v) / len(v) for name, v in sorted(arms.items())}
        elif p["sweep"] == "interval":
            fractions = [float(v) / 100.0 for v in p["sizes"].split(",")]
            for s in seed_list:
                ranked = _benchmark_training_ranking(p["size"], p["days"], s, p["kind"])
                for row in interval_size_sweep(ranked, sizes=fractions):
                    n = len(ranked)
                    document["rows"].append(
                        {
                            "seed": s,
                            "interval_size": row.size_fraction,
                            "optimal_interval": [
                                round(100.0 * (row.interval[0] - 1) / n),
                                round(100.0 * row.interval[1] / n),
                            ],
                            "response_rate": row.response_rate,
                            "recall": row.recall,
                        }
                    )
        else:
            ratios = [float(v) for v in p["ratios"].split(",")]
            by_ratio = {r: [] for r in ratios}
            for s in seed_list:
                cfg = SimConfig(population_size=p["size"], days=p["days"], seed=s)
                rates = benefit_cost_experiment(cfg, ratios=ratios, kind=p["kind"])
                for r in ratios:
                    by_ratio[r].append(rates[r])
            for r in ratios:
                document["rows"].append(
                    {"benefit_to_cost": r, "mean_rate": sum(by_ratio[r]) / len(by_ratio[r])}
                )
        with open(p["out"], "w", encoding="utf-8") as fh:
            json.dump(document, fh, indent=1, sort_keys=True)
            fh.write("\n")
    except SolicitError as exc:
        _fail(exc)
    _write_manifest(p["out"], "experiment", p, [], [p["out"]], p["seed"], t0)
    click.echo(_experiment_table(document))


def _benchmark_training_ranking(size, days, seed, kind):
    """Train on the population's labeled solicitations and rank them."""
    from .simulator import prepare_benchmark_features

    cfg = SimConfig(population_size=size, days=days, seed=seed)
    X, y, ids = prepare_benchmark_features(cfg)
    model = make_model(kind, seed=seed)
    model.fit(X, y, sample_weight=assign_weights(y, CostConfig()))
    return rank_candidates(model, X, ids, labels=y)


def _experiment_table(document) -> str:
    rows = document["rows"]
    if not rows:
        return "(no rows)"
    if document["sweep"] == "arms":
        lines = ["arm      mean_rate"]
        for name, rate in document["mean_rates"].items():
            lines.append(f"{name:8s} {rate:.3f}")
        return "\n".join(lines)
    if document["sweep"] == "interval":
        lines = ["seed  size  optimal_interval  rate   recall"]
        for r in rows:
            lines.append(
                f"{r['seed']:<5d} {int(r['interval_size']*100):>3d}%  "
                f"[{r['optimal_interval'][0]:>3d}%, {r['optimal_interval'][1]:>3d}%]      "
                f"{r['response_rate']:.3f}  {r['recall']:.3f}"
            )
        return "\n".join(lines)
    lines = ["benefit/cost  mean_rate"]
    for r in rows:
        lines.append(f"{r['benefit_to_cost']:<13g} {r['mean_rate']:.3f}")
    return "\n".join(lines)


@main.command()
@click.option("--population", type=click.Path(exists=True, file_okay=False), required=True)
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", type=str, default="127.0.0.1", show_default=True)
@click.option("--mode", type=str, default="manual", show_default=True)
@click.option("--rules", type=str, default=",".join(("airport", "terminal", "gate", "station", "flight", "boarding")),
              show_default=True, help="Comma-separated keyword rules for the candidate filter.")
@seed_option
@config_option
@click.pass_context
def serve(ctx, population, model_path, port, host, mode, rules, seed, config):
    """Serve the operator API over a simulated deployment."""
    _apply_config(ctx)
    p = ctx.params
    try:
        session = build_session(
            p["population"], p["model_path"], mode=p["mode"],
            rules=tuple(r.strip() for r in p["rules"].split(",") if r.strip()), seed=p["seed"],
        )
    except SolicitError as exc:
        _fail(exc)
    from .service import create_app
    import uvicorn

    app = create_app(session)
    try:
        uvicorn.run(app, host=p["host"], port=p["port"], log_level="warning")
    except (OSError, SystemExit) as exc:
        _fail(f"service failed to start: {exc}")


DEFAULT_SERVE_RULES = ("airport", "terminal", "gate", "station", "flight", "boarding")


def build_session(population_dir, model_path, mode="manual", rules=DEFAULT_SERVE_RULES, seed=42):
    """Reconstruct a deployment from a simulate output directory + model file."""
    from .service import EngagementSession, ServiceConfig
    from .simulator import PopulationBundle, AgentSpec, SimConfig as _SimConfig

    pop_dir = Path(population_dir)
    corpus = load_corpus(
        pop_dir / "users.jsonl",
        pop_dir / "posts.jsonl",
        pop_dir / "solicitations.jsonl" if (pop_dir / "solicitations.jsonl").exists() else None,
        pop_dir / "exposures.jsonl" if (pop_dir / "exposures.jsonl").exists() else None,
    )
    agents = []
    agents_path = pop_dir / "agents.jsonl"
    if not agents_path.exists():
        raise SolicitError(f"{agents_path} not found; `serve` needs a simulated population")
    for line in agents_path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        doc = json.loads(line)
        doc["diurnal_weights"] = tuple(doc["diurnal_weights"])
        doc["weekday_weights"] = tuple(doc["weekday_weights"])
        agents.append(AgentSpec(**doc))
    manifest_path = pop_dir / "manifest.json"
    sim_seed = seed
    days = 14
    size = len(agents)
    if manifest_path.exists():
        flags = json.loads(manifest_path.read_text())["flags"]
        sim_seed = int(flags.get("seed", seed))
        days = int(flags.get("days", days))
    sim_cfg = _SimConfig(population_size=size, days=days, seed=sim_seed)
    bundle = PopulationBundle(config=sim_cfg, corpus=corpus, agents=agents)
    model, model_names = load_model(model_path)
    fc = _feature_config(None, None)
    if model_names and model_names != fc.feature_names():
        raise SolicitError("model was trained on a feature subset; serve requires a full-feature model")
    cfg = ServiceConfig(rules=tuple(rules), mode=mode, seed=seed)
    return EngagementSession(bundle, model, fc, cfg)


if __name__ == "__main__":
    main()
