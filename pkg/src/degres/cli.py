"""Command-line front end.

Config precedence everywhere: built-in defaults < config file sections
(metric / sweep / generator / portfolio) < command-line flags. A default
config file can be pointed at with the DEGRES_CONFIG environment variable.

Exit codes: 0 success, 1 validation error (the offending key or value is
named), 2 I/O error (missing or unreadable file).
"""

from __future__ import annotations

import functools
import sys
from datetime import datetime, timezone

import click

from . import io as dio
from ._backend import BACKEND_NAME
from ._version import __version__
from .arq import arq_report
from .errors import ValidationError
from .fixtures import FIXTURES, five_algorithm_portfolio
from .fss import fss_weighted
from .generate import (
    GeneratorConfig,
    PortfolioConfig,
    generate_instance,
    generate_portfolio,
    resample_operational,
)
from .mldi import mldi_report, propagate_failures
from .model import MetricConfig
from .sweep import SweepConfig, run_sweep

DEFAULT_Q_LIST = (0.0, 0.05, 0.10, 0.20, 0.30, 0.40, 0.50)


def _catching(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValidationError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _now(timestamp: str | None) -> str:
    return timestamp or datetime.now(timezone.utc).isoformat()


def _sections(config_path: str | None) -> dict:
    return dio.load_config_file(config_path) if config_path else {}


def _report_path(input_file: str, command: str, output: str | None) -> str:
    """Metric commands always write a JSON report; default path sits next
    to the input as <input stem>.<command>.json."""
    if output:
        return output
    stem = input_file[:-5] if input_file.endswith(".json") else input_file
    return f"{stem}.{command}.json"


def _metric_config(sections: dict, flags: dict) -> MetricConfig:
    merged = dict(sections.get("metric", {}))
    for key, value in flags.items():
        if value is not None:
            merged[key] = value
    return MetricConfig.from_dict(merged)


def config_option(fn):
    return click.option(
        "--config",
        "config_path",
        envvar="DEGRES_CONFIG",
        default=None,
        help="Structured config file (YAML); DEGRES_CONFIG sets the default path.",
    )(fn)


def metric_options(fn):
    opts = [
        click.option("--delta", type=float, default=None, help="Structural distinctness threshold."),
        click.option("--a-min", "a_min", type=float, default=None, help="Availability admission threshold."),
        click.option("--r-min", "r_min", type=float, default=None, help="Reliability admission threshold."),
        click.option("--mission-time", "mission_time", type=float, default=None, help="Mission horizon in hours."),
        click.option(
            "--weight-mode",
            "weight_mode",
            type=click.Choice(["none", "availability", "reliability", "joint"]),
            default=None,
            help="Node-weight regime for the weighted substitution score.",
        ),
        click.option("--epsilon", type=float, default=None, help="Kernel similarity threshold (hard quotient)."),
        click.option("--sigma", type=float, default=None, help="Gaussian kernel width."),
        click.option("--m", type=int, default=None, help="Function count for entropy normalization."),
        click.option("--k", type=int, default=None, help="Layer count (echoed into manifests)."),
        click.option("--gamma", type=float, default=None, help="Cross-layer weighting factor (echoed only)."),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _collect_metric_flags(delta, a_min, r_min, mission_time, weight_mode, epsilon, sigma, m, k, gamma):
    return {
        "delta": delta,
        "a_min": a_min,
        "r_min": r_min,
        "mission_time": mission_time,
        "weight_mode": weight_mode,
        "epsilon": epsilon,
        "sigma": sigma,
        "m": m,
        "k": k,
        "gamma": gamma,
    }


@click.group()
@click.version_option(__version__, message=f"degres %(version)s (kernel backend: {BACKEND_NAME})")
def main():
    """Degeneracy-aware resilience metrics and targeted-removal sweeps."""


@main.group()
def generate():
    """Emit synthetic instance or portfolio files."""


@generate.command("instance")
@config_option
@click.option("--seed", type=int, default=None, help="Master seed for the generator stream.")
@click.option("--elements", "element_count", type=int, default=None, help="Total element count.")
@click.option("--functions", "function_count", type=int, default=None, help="Function catalog size.")
@click.option("--layer-sizes", default=None, help="Comma-separated L1,L2,L3 sizes.")
@click.option("--fixture", type=click.Choice(sorted(FIXTURES)), default=None, help="Emit a shipped reference fixture instead of sampling.")
@click.option("--timestamp", default=None, help="Manifest timestamp override (for replayable outputs).")
@click.option("-o", "--output", required=True, type=click.Path(), help="Instance file to write.")
@_catching
def generate_instance_cmd(config_path, seed, element_count, function_count, layer_sizes, fixture, timestamp, output):
    """Write a deployment instance file with its manifest."""
    if fixture is not None:
        instance = FIXTURES[fixture]()
        manifest = dio.RunManifest(timestamp=_now(timestamp), master_seed=None)
        dio.save_instance(instance, output, manifest)
        click.echo(f"wrote fixture {fixture} ({instance.n} elements) to {output}")
        return
    sections = _sections(config_path)
    merged = dict(sections.get("generator", {}))
    for key, value in (
        ("seed", seed),
        ("element_count", element_count),
        ("function_count", function_count),
    ):
        if value is not None:
            merged[key] = value
    if layer_sizes is not None:
        try:
            merged["layer_sizes"] = tuple(int(s) for s in layer_sizes.split(","))
        except ValueError:
            raise ValidationError(f"layer_sizes must be comma-separated integers, got {layer_sizes!r}") from None
    for required in ("seed", "element_count"):
        if required not in merged:
            raise ValidationError(f"generator config missing required key: {required}")
    config = GeneratorConfig.from_dict(merged)
    instance = generate_instance(config)
    manifest = dio.RunManifest(
        timestamp=_now(timestamp), master_seed=config.seed, generator=config.to_dict()
    )
    dio.save_instance(instance, output, manifest)
    click.echo(
        f"wrote instance with {instance.n} elements, {len(instance.functions)} functions to {output}"
    )


@generate.command("portfolio")
@config_option
@click.option("--seed", type=int, default=None, help="Master seed for the portfolio stream.")
@click.option("--count", type=int, default=None, help="Number of algorithms.")
@click.option("--families", type=int, default=None, help="Number of structural families.")
@click.option("--fixture", type=click.Choice(["five-algorithm"]), default=None, help="Emit the shipped five-algorithm fixture.")
@click.option("--timestamp", default=None, help="Manifest timestamp override.")
@click.option("-o", "--output", required=True, type=click.Path(), help="Portfolio file to write.")
@_catching
def generate_portfolio_cmd(config_path, seed, count, families, fixture, timestamp, output):
    """Write an algorithm portfolio file with its manifest."""
    if fixture is not None:
        portfolio = five_algorithm_portfolio()
        manifest = dio.RunManifest(timestamp=_now(timestamp), master_seed=None)
        dio.save_portfolio(portfolio, output, manifest)
        click.echo(f"wrote fixture portfolio ({len(portfolio)} algorithms) to {output}")
        return
    sections = _sections(config_path)
    merged = dict(sections.get("portfolio", {}))
    for key, value in (("seed", seed), ("count", count), ("families", families)):
        if value is not None:
            merged[key] = value
    for required in ("seed", "count"):
        if required not in merged:
            raise ValidationError(f"portfolio config missing required key: {required}")
    config = PortfolioConfig.from_dict(merged)
    portfolio = generate_portfolio(config)
    manifest = dio.RunManifest(
        timestamp=_now(timestamp), master_seed=config.seed, portfolio=config.to_dict()
    )
    dio.save_portfolio(portfolio, output, manifest)
    click.echo(f"wrote portfolio with {len(portfolio)} algorithms to {output}")


@main.command()
@click.argument("instance_file", type=click.Path())
@click.option("--function", "function_id", default=None, help="Function id; omit for all functions.")
@metric_options
@config_option
@click.option("--timestamp", default=None)
@click.option("-o", "--output", type=click.Path(), default=None,
              help="JSON report path (default: <instance>.fss.json).")
@_catching
def fss(instance_file, function_id, config_path, timestamp, output, **metric_flags):
    """Substitution scores for one or all functions of an instance."""
    sections = _sections(config_path)
    config = _metric_config(sections, _collect_metric_flags(**metric_flags))
    instance, _ = dio.load_instance(instance_file)
    targets = [function_id] if function_id else list(instance.functions)
    reports = [fss_weighted(instance, fid, config) for fid in targets]
    for rep in reports:
        click.echo(
            f"FSS({rep.function_id}): baseline={rep.baseline:.6f} weighted={rep.weighted:.6f} "
            f"(n={rep.n}, admissible={rep.admissible_count})"
        )
    output = _report_path(instance_file, "fss", output)
    manifest = dio.RunManifest(timestamp=_now(timestamp), metric=config.to_dict())
    dio.write_report(output, "fss_report", manifest, {"reports": [r.to_dict() for r in reports]})
    click.echo(f"wrote report to {output}")


@main.command()
@click.argument("portfolio_file", type=click.Path())
@metric_options
@config_option
@click.option("--timestamp", default=None)
@click.option("--heatmap-csv", type=click.Path(), default=None, help="Long-form kernel/separation matrix CSV.")
@click.option("-o", "--output", type=click.Path(), default=None,
              help="JSON report path (default: <portfolio>.arq.json).")
@_catching
def arq(portfolio_file, config_path, timestamp, heatmap_csv, output, **metric_flags):
    """Hard and soft resilience quotients for an algorithm portfolio."""
    sections = _sections(config_path)
    config = _metric_config(sections, _collect_metric_flags(**metric_flags))
    portfolio, _ = dio.load_portfolio(portfolio_file)
    report = arq_report(portfolio, config)
    click.echo(
        f"ARQ: hard={report.hard:.6f} soft={report.soft:.6f} "
        f"(n={len(report.ids)}, epsilon={config.epsilon}, delta={config.delta}, sigma={config.sigma})"
    )
    if heatmap_csv:
        dio.write_matrix_csv(
            heatmap_csv,
            {"kernel": (report.ids, report.kernel), "separation": (report.ids, report.separation)},
        )
        click.echo(f"wrote matrices to {heatmap_csv}")
    output = _report_path(portfolio_file, "arq", output)
    manifest = dio.RunManifest(timestamp=_now(timestamp), metric=config.to_dict())
    dio.write_report(output, "arq_report", manifest, {"report": report.to_dict()})
    click.echo(f"wrote report to {output}")


@main.command()
@click.argument("instance_file", type=click.Path())
@click.option("--fail", "failed", multiple=True, help="Directly failed element id (repeatable).")
@metric_options
@config_option
@click.option("--timestamp", default=None)
@click.option("--layers-csv", type=click.Path(), default=None, help="Long-form per-layer table CSV.")
@click.option("-o", "--output", type=click.Path(), default=None,
              help="JSON report path (default: <instance>.mldi.json).")
@_catching
def mldi(instance_file, failed, config_path, timestamp, layers_csv, output, **metric_flags):
    """Layer degeneracy indices after propagating the given failures."""
    sections = _sections(config_path)
    config = _metric_config(sections, _collect_metric_flags(**metric_flags))
    instance, _ = dio.load_instance(instance_file)
    by_layer = {"L1": [], "L2": [], "L3": []}
    for eid in failed:
        by_layer[instance.element(eid).layer].append(eid)
    state = propagate_failures(instance, by_layer["L1"], by_layer["L2"], by_layer["L3"])
    report = mldi_report(instance, state, config)
    click.echo(f"MLDI: baseline={report.baseline:.6f} enhanced={report.enhanced:.6f}")
    for diag in report.per_layer:
        click.echo(
            f"  {diag.layer}: tau={diag.tau:.6f} entropy_norm={diag.entropy_norm:.6f} "
            f"active={diag.active_count}/{diag.size}"
        )
    if layers_csv:
        dio.write_layer_csv(layers_csv, report)
        click.echo(f"wrote layer table to {layers_csv}")
    output = _report_path(instance_file, "mldi", output)
    manifest = dio.RunManifest(timestamp=_now(timestamp), metric=config.to_dict())
    dio.write_report(
        output,
        "mldi_report",
        manifest,
        {"failed": sorted(failed), "report": report.to_dict()},
    )
    click.echo(f"wrote report to {output}")


@main.command()
@click.argument("subject_file", type=click.Path())
@click.option("--target", type=click.Choice(["fss", "arq", "mldi"]), default=None, help="Metric under attack.")
@click.option("--function", "function_id", default=None, help="Function id for fss sweeps.")
@click.option("--q", "q_spec", default=None, help="Comma-separated removal fractions.")
@click.option("--trials", type=int, default=None, help="Trials per removal fraction.")
@click.option("--seed", type=int, default=None, help="Sweep master seed.")
@click.option("--attack", type=click.Choice(["targeted", "random"]), default=None)
@click.option(
    "--resample/--no-resample",
    "resample",
    default=True,
    help="Redraw availability/MTBF per trial when the instance manifest carries generator laws.",
)
@metric_options
@config_option
@click.option("--timestamp", default=None)
@click.option("-o", "--output", "out_prefix", required=True, help="Output prefix: writes PREFIX.csv and PREFIX.json.")
@_catching
def sweep(subject_file, target, function_id, q_spec, trials, seed, attack, resample,
          config_path, timestamp, out_prefix, **metric_flags):
    """Targeted-removal sweep; aggregates to CSV, full detail to JSON."""
    sections = _sections(config_path)
    metric_config = _metric_config(sections, _collect_metric_flags(**metric_flags))
    merged = dict(sections.get("sweep", {}))
    for key, value in (
        ("target", target),
        ("function_id", function_id),
        ("trials", trials),
        ("seed", seed),
        ("attack", attack),
    ):
        if value is not None:
            merged[key] = value
    if q_spec is not None:
        try:
            merged["q_list"] = tuple(float(v) for v in q_spec.split(","))
        except ValueError:
            raise ValidationError(f"q must be comma-separated fractions, got {q_spec!r}") from None
    merged.setdefault("q_list", DEFAULT_Q_LIST)
    merged.setdefault("trials", 10)
    for required in ("seed", "target"):
        if required not in merged:
            raise ValidationError(f"sweep config missing required key: {required}")
    sweep_config = SweepConfig.from_dict(merged)

    resampler = None
    gen_dict = None
    if sweep_config.target == "arq":
        subject, _ = dio.load_portfolio(subject_file)
    else:
        subject, manifest_dict = dio.load_instance(subject_file)
        if resample and manifest_dict and manifest_dict.get("generator"):
            gen_config = GeneratorConfig.from_dict(manifest_dict["generator"])
            gen_dict = gen_config.to_dict()

            def resampler(instance, rng, _config=gen_config):
                return resample_operational(instance, _config, rng)

    result = run_sweep(subject, sweep_config, metric_config, resampler=resampler)
    manifest = dio.RunManifest(
        timestamp=_now(timestamp),
        master_seed=sweep_config.seed,
        metric=metric_config.to_dict(),
        sweep=sweep_config.to_dict(),
        generator=gen_dict,
    )
    csv_path = f"{out_prefix}.csv"
    json_path = f"{out_prefix}.json"
    dio.write_sweep_csv(result, csv_path)
    dio.write_sweep_detail(result, json_path, manifest)
    click.echo(
        f"swept {sweep_config.target} ({result.target_label}) over "
        f"{len(sweep_config.q_list)} removal fractions x {sweep_config.trials} trials"
    )
    click.echo(f"wrote {len(result.aggregates)} aggregate rows to {csv_path}; detail in {json_path}")


@main.command()
@click.argument("inputs", nargs=-1, required=True, type=click.Path())
@click.option("-o", "--output", required=True, type=click.Path(), help="Merged CSV path.")
@_catching
def report(inputs, output):
    """Merge sweep CSVs into one table; values pass through unchanged."""
    count = dio.merge_sweep_csvs(inputs, output)
    click.echo(f"merged {len(inputs)} files, {count} rows, into {output}")


if __name__ == "__main__":
    main()
