"""Command-line front end for sample-size."""

from __future__ import annotations

import json
import logging
import os
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional, Sequence

import click

from . import __version__
from .analysis import SizeGrid, find_saturation, l1_at_reference, mae, predict_curve, required_size
from .curves import BASE_KINDS, CurveModel, ModelKind, evaluate
from .dataio import (
    CurveDataset,
    Role,
    SplitSchedule,
    assign_roles,
    parse_points,
    read_fit_report,
    write_fit_report,
    write_points,
)
from .dataio.models import count_for_fraction, normalize_fraction
from .errors import DataFormatError, SampleSizeError
from .experiments import format_ablation_tsv, function_comparison, sample_size_effect, weighting_comparison
from .fitting import EnsembleWeighting, FitConfig, Optimizer, Weighting, fit
from .synth import NoiseSpec, SynthSpec, generate

logger = logging.getLogger("samplesize.cli")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"
MODEL_CHOICES = ["exp", "inverse", "inv", "pow4", "ensemble"]
TRAIN_STEP = 0.01
TEST_STEP = 0.05


def _configure_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, os.getenv("SAMPLESIZE_LOG_LEVEL", "WARNING").upper(), logging.WARNING)
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    log_path = os.getenv("SAMPLESIZE_LOG_PATH")
    if log_path:
        handlers.append(logging.FileHandler(log_path, encoding="utf-8"))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


@contextmanager
def _computation() -> Iterator[None]:
    """Turn library errors into a one-line diagnostic and exit status 1."""
    try:
        yield
    except (SampleSizeError, ValueError, OSError) as exc:
        logger.debug("command failed", exc_info=True)
        click.echo(f"error: {exc}", err=True)
        raise click.exceptions.Exit(1)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        click.echo(text, nl=False)
        return
    Path(out).write_text(text, encoding="utf-8")
    logger.info("wrote %s", out)


def _detect_format(path: str, fmt: Optional[str]) -> str:
    if fmt:
        return fmt
    return "jsonl" if path.lower().endswith((".jsonl", ".ndjson")) else "csv"


def _load_dataset(path: str, fmt: Optional[str], total_size: Optional[int]) -> CurveDataset:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return parse_points(text, _detect_format(path, fmt), total_size=total_size)
    except DataFormatError as exc:
        raise DataFormatError(f"{path}: {exc}") from exc


def _schedule(train_max: float, test_min: float) -> SplitSchedule:
    return SplitSchedule.from_ranges(train_max, TRAIN_STEP, test_min, TEST_STEP)


def _fit_config(ctx_params: dict) -> FitConfig:
    return FitConfig(
        optimizer=Optimizer(ctx_params["optimizer"]),
        weighting=Weighting(ctx_params["weighting"]),
        max_iterations=ctx_params["max_iterations"],
        learning_rate=ctx_params["learning_rate"],
        restarts=ctx_params["restarts"],
        rng_seed=ctx_params["seed"],
        ensemble_weighting=EnsembleWeighting(ctx_params["ensemble_weighting"]),
    )


def _reference_from(dataset: CurveDataset) -> Optional[float]:
    for point in dataset.points:
        if normalize_fraction(point.fraction) == 1.0:
            return point.accuracy
    return None


INPUT_OPTIONS = (
    click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False)),
    click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]), default=None, help="Points format (default: from extension)"),
    click.option("--total-size", type=click.IntRange(min=1), default=None, help="Full training-set size"),
)

FIT_OPTIONS = (
    click.option("--optimizer", type=click.Choice([o.value for o in Optimizer]), default="nls", show_default=True),
    click.option("--weighting", type=click.Choice([w.value for w in Weighting]), default="unweighted", show_default=True),
    click.option(
        "--ensemble-weighting",
        type=click.Choice([w.value for w in EnsembleWeighting]),
        default="inverse-rss",
        show_default=True,
    ),
    click.option("--max-iterations", type=click.IntRange(min=0), default=None, help="Default: 500 (nls) or 200 (gd)"),
    click.option("--learning-rate", type=click.FloatRange(min=0, min_open=True), default=1e-5, show_default=True),
    click.option("--restarts", type=click.IntRange(min=1), default=5, show_default=True),
    click.option("--seed", type=click.IntRange(min=0), default=0, envvar="SAMPLESIZE_SEED", show_default=True),
    click.option("--train-max-fraction", type=click.FloatRange(0, 1, min_open=True), default=0.10, show_default=True),
    click.option("--test-min-fraction", type=click.FloatRange(0, 1, min_open=True), default=0.55, show_default=True),
)


def _with_options(options):
    def decorate(func):
        for option in reversed(options):
            func = option(func)
        return func

    return decorate


input_options = _with_options(INPUT_OPTIONS)
fit_options = _with_options(FIT_OPTIONS)


def _fit_points(dataset: CurveDataset, schedule: SplitSchedule) -> CurveDataset:
    dataset = assign_roles(dataset, schedule)
    if not dataset.train_points():
        raise ValueError(f"{dataset.name} has no points at or below fraction {schedule.train_max:g}")
    return dataset


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for info, -vv for debug logging")
@click.version_option(__version__, prog_name="samplesize")
def cli(verbose: int):
    """Fit learning curves on small data fractions and plan sample sizes."""
    _configure_logging(verbose)


@cli.command("fit")
@input_options
@fit_options
@click.option("--model", "model_name", type=click.Choice(MODEL_CHOICES), default="ensemble", show_default=True)
@click.option("--alpha", type=click.FloatRange(min=0, min_open=True), default=0.2, show_default=True, help="Percentage points")
@click.option("--reference", type=click.FloatRange(0, 1), default=None, help="Full-data accuracy for the L1 distance")
@click.option("--target", type=click.FloatRange(0, 1), default=None, help="Target accuracy for the required size")
@click.option("--out", default=None, help="Report path (default: stdout)")
@click.pass_context
def fit_command(ctx, input_path, fmt, total_size, model_name, alpha, reference, target, out, **_):
    """Fit a curve to the train points and write a JSON fit report."""
    with _computation():
        schedule = _schedule(ctx.params["train_max_fraction"], ctx.params["test_min_fraction"])
        config = _fit_config(ctx.params)
        dataset = _fit_points(_load_dataset(input_path, fmt, total_size), schedule)
        train = dataset.train_points()
        result = fit(ModelKind.parse(model_name), train, config)

        test = dataset.test_points()
        evaluation = mae(result.model, test, [p.fraction for p in train]) if test else None
        grid = SizeGrid.uniform(dataset.total_size)
        saturation = find_saturation(result.model, grid, alpha)
        reference = reference if reference is not None else _reference_from(dataset)
        if reference is not None:
            saturation = l1_at_reference(result.model, saturation, reference)
        required = required_size(result.model, target, grid) if target is not None else None
        _emit(write_fit_report(result, config, dataset, schedule, evaluation, saturation, required), out)


def _report_model(input_path: str, total_size: Optional[int]):
    report = read_fit_report(Path(input_path).read_text(encoding="utf-8"))
    total = total_size or report.total_size
    if not total:
        raise click.UsageError("the report names no total size; pass --total-size")
    return report, int(total)


@cli.command("predict")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Fit report")
@click.option("--total-size", type=click.IntRange(min=1), default=None)
@click.option("--start", type=click.FloatRange(0, 1, min_open=True), default=0.01, show_default=True)
@click.option("--stop", type=click.FloatRange(0, 1, min_open=True), default=1.0, show_default=True)
@click.option("--step", type=click.FloatRange(min=0, min_open=True), default=0.01, show_default=True)
@click.option("--out", default=None)
def predict_command(input_path, total_size, start, stop, step, out):
    """Predicted accuracy over a uniform fraction grid, as TSV."""
    with _computation():
        report, total = _report_model(input_path, total_size)
        rows = predict_curve(report.model, SizeGrid.uniform(total, start, stop, step))
        lines = ["fraction\tcount\tpredicted\tclamped"]
        lines.extend(f"{r.fraction!r}\t{r.count}\t{r.accuracy!r}\t{str(r.clamped).lower()}" for r in rows)
        _emit("\n".join(lines) + "\n", out)


@cli.command("saturate")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Fit report")
@click.option("--total-size", type=click.IntRange(min=1), default=None)
@click.option("--alpha", type=click.FloatRange(min=0, min_open=True), default=0.2, show_default=True, help="Percentage points")
@click.option("--reference", type=click.FloatRange(0, 1), default=None)
def saturate_command(input_path, total_size, alpha, reference):
    """Find where the predicted curve gains less than alpha points per 1% of data."""
    with _computation():
        report, total = _report_model(input_path, total_size)
        saturation = find_saturation(report.model, SizeGrid.uniform(total), alpha)
        if reference is not None:
            saturation = l1_at_reference(report.model, saturation, reference)
        click.echo(f"saturated: {str(saturation.saturated).lower()}")
        click.echo(f"saturation fraction: {saturation.saturation_fraction:g}")
        click.echo(f"saturation count: {saturation.saturation_count}")
        click.echo(f"predicted accuracy: {saturation.predicted_accuracy_at_saturation:.4f}")
        if saturation.l1_distance is not None:
            click.echo(f"L1: {saturation.l1_distance:.2f}")


@cli.command("required-size")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Fit report")
@click.option("--total-size", type=click.IntRange(min=1), default=None)
@click.option("--target", type=click.FloatRange(0, 1), required=True)
def required_size_command(input_path, total_size, target):
    """Smallest 1%-grid size whose predicted accuracy reaches the target."""
    with _computation():
        report, total = _report_model(input_path, total_size)
        required = required_size(report.model, target, SizeGrid.uniform(total))
        if required.reachable:
            click.echo(f"required fraction: {required.fraction:g}")
            click.echo(f"required count: {required.count}")
            click.echo(f"predicted accuracy: {required.predicted_accuracy:.4f}")
        elif required.asymptote is not None:
            click.echo(f"unreachable (asymptote {required.asymptote:.4f})")
        else:
            click.echo("unreachable")


@cli.command("evaluate")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Fit report")
@click.option("--points", "points_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]), default=None)
@click.option("--test-min-fraction", type=click.FloatRange(0, 1, min_open=True), default=0.55, show_default=True)
@click.option("--out", default=None, help="Write the per-point report as JSON")
def evaluate_command(input_path, points_path, fmt, test_min_fraction, out):
    """MAE of a fitted model on the held-out points of a points file."""
    with _computation():
        report = read_fit_report(Path(input_path).read_text(encoding="utf-8"))
        dataset = _load_dataset(points_path, fmt, report.total_size)
        limit = normalize_fraction(test_min_fraction)
        test = [p for p in dataset.points if p.role is Role.TEST or normalize_fraction(p.fraction) >= limit]
        evaluation = mae(report.model, test)
        if out:
            _emit(json.dumps(evaluation.to_dict(), sort_keys=True, indent=2) + "\n", out)
        click.echo(f"mae: {evaluation.mae!r}")


@cli.command("synth")
@click.option("--model", "model_name", type=click.Choice(MODEL_CHOICES), required=True)
@click.option("--params", required=True, help="Comma-separated generator parameters")
@click.option("--total-size", type=click.IntRange(min=1), required=True)
@click.option("--sigma0", type=click.FloatRange(min=0), default=0.0, show_default=True)
@click.option("--size-decay/--no-size-decay", default=False)
@click.option("--seed", type=click.IntRange(min=0), default=0, envvar="SAMPLESIZE_SEED", show_default=True)
@click.option("--train-max-fraction", type=click.FloatRange(0, 1, min_open=True), default=0.10, show_default=True)
@click.option("--test-min-fraction", type=click.FloatRange(0, 1, min_open=True), default=0.55, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]), default="csv", show_default=True)
@click.option("--out", default=None)
def synth_command(model_name, params, total_size, sigma0, size_decay, seed, train_max_fraction, test_min_fraction, fmt, out):
    """Generate a synthetic learning curve from a known model."""
    try:
        values = tuple(float(v) for v in params.split(","))
    except ValueError:
        raise click.BadParameter(f"{params!r} is not a comma-separated list of numbers", param_hint="--params")
    with _computation():
        spec = SynthSpec(
            generator=CurveModel(ModelKind.parse(model_name), values),
            total_size=total_size,
            schedule=_schedule(train_max_fraction, test_min_fraction),
            noise=NoiseSpec(sigma0, size_decay),
            rng_seed=seed,
        )
        _emit(write_points(generate(spec), fmt), out)


@cli.command("plot")
@input_options
@fit_options
@click.option(
    "--model",
    "model_names",
    type=click.Choice(MODEL_CHOICES),
    multiple=True,
    help="Repeat for several models (default: all four)",
)
@click.option("--out", default=None)
@click.pass_context
def plot_command(ctx, input_path, fmt, total_size, model_names, out, **_):
    """Observed and predicted accuracy per schedule fraction, as TSV."""
    with _computation():
        schedule = _schedule(ctx.params["train_max_fraction"], ctx.params["test_min_fraction"])
        config = _fit_config(ctx.params)
        dataset = _fit_points(_load_dataset(input_path, fmt, total_size), schedule)
        kinds = _unique_kinds(model_names) or list(BASE_KINDS) + [ModelKind.ENSEMBLE]
        train = dataset.train_points()
        models = [fit(kind, train, config).model for kind in kinds]
        _emit(_plot_table(dataset, schedule, kinds, models), out)


def _unique_kinds(names: Sequence[str]) -> List[ModelKind]:
    kinds: List[ModelKind] = []
    for name in names:
        kind = ModelKind.parse(name)
        if kind not in kinds:
            kinds.append(kind)
    return kinds


def _plot_table(
    dataset: CurveDataset, schedule: SplitSchedule, kinds: Sequence[ModelKind], models: Sequence[CurveModel]
) -> str:
    observed = {}
    for point in dataset.points:
        observed.setdefault(normalize_fraction(point.fraction), point.accuracy)
    header = ["fraction", "count", "observed"] + [f"predicted_{k.value}" for k in kinds] + ["role"]
    lines = ["\t".join(header)]
    for fraction in schedule.all_fractions:
        count = count_for_fraction(fraction, dataset.total_size)
        role = schedule.role_for(fraction)
        value = observed.get(fraction)
        cells = [repr(fraction), str(count), "" if value is None else repr(value)]
        cells.extend(repr(float(evaluate(model, count))) for model in models)
        cells.append(role.value if role else "")
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


@cli.command("ablate")
@input_options
@fit_options
@click.option("--experiment", type=click.Choice(["sample-size", "functions", "weighting"]), required=True)
@click.option("--out", default=None)
@click.pass_context
def ablate_command(ctx, input_path, fmt, total_size, experiment, out, **_):
    """Run an ablation on a points file and write a TSV table."""
    with _computation():
        config = _fit_config(ctx.params)
        dataset = _load_dataset(input_path, fmt, total_size)
        train_max = ctx.params["train_max_fraction"]
        test_min = ctx.params["test_min_fraction"]
        if experiment == "sample-size":
            rows = sample_size_effect(dataset, (train_max, 0.50), config, test_min)
        elif experiment == "functions":
            rows = function_comparison(dataset, config, train_max, test_min)
        else:
            rows = weighting_comparison(dataset, config.optimizer, (train_max,), config, test_min)
        _emit(format_ablation_tsv(rows), out)


def main(argv: Optional[Sequence[str]] = None) -> None:
    cli.main(args=list(argv) if argv is not None else None, prog_name="samplesize")


if __name__ == "__main__":
    main()
