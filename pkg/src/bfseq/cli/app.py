"""The ``bfseq`` command line program.

Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 target
unreachable, 5 output not writable. Reports go to stdout, logs and errors to stderr.
"""

import argparse
import dataclasses
import sys
import time
from collections.abc import Callable, Sequence
from pathlib import Path

from bfseq.__meta__ import version
from bfseq._internal import MissingDependencyError
from bfseq.bayesfactor import (
    JZS_SCALE,
    DirectionalDirectional,
    InformedT,
    PointDirectional,
    PointPoint,
    PointTwoSided,
    ZObservation,
    ZPriorSpec,
    bf01_t,
    bf01_z,
)
from bfseq.design import (
    Hypothesis,
    LabelledPrior,
    TTestApprox,
    TTestDesign,
    characteristics,
    find_max_n,
    sweep,
)
from bfseq.errors import ConfigError, DesignError, NumericalError, TargetUnreachableError
from bfseq.logging import LoggingCollector, LoggingConfig, get_logger
from bfseq.metadata import RunInfo
from bfseq.metrics import ComputeMetrics, MetricsCollector, MetricsConfig, use_metrics
from bfseq.simulate import SimConfig, compare_reports, simulate
from bfseq.tracing import TracingConfig, configure_tracing

from .config import DesignConfig
from .report import (
    CsvRow,
    render_bf,
    render_characteristics,
    render_samplesize,
    render_simulation,
    report_rows,
    simulation_rows,
    sweep_rows,
    to_csv,
    to_json,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_UNREACHABLE = 4
EXIT_IO = 5

DEFAULT_REPLICATIONS = 100_000


def _looks(value: str) -> tuple[int, ...]:
    try:
        looks = tuple(int(v) for v in value.split(",") if v.strip())
    except ValueError as exc:
        msg = f"expected a comma separated list of integers, got {value!r}"
        raise argparse.ArgumentTypeError(msg) from exc
    if any(m < 1 for m in looks):
        msg = f"numbers of analyses must be positive, got {value!r}"
        raise argparse.ArgumentTypeError(msg)
    return looks


def _n_max_range(value: str) -> tuple[float, ...]:
    """Parse ``START:STOP[:STEP]``; STOP is included."""
    parts = value.split(":")
    try:
        numbers = [float(p) for p in parts]
    except ValueError as exc:
        msg = f"expected START:STOP[:STEP], got {value!r}"
        raise argparse.ArgumentTypeError(msg) from exc
    if len(numbers) not in (2, 3) or (len(numbers) == 3 and numbers[2] <= 0):
        msg = f"expected START:STOP[:STEP] with a positive step, got {value!r}"
        raise argparse.ArgumentTypeError(msg)
    start, stop = numbers[0], numbers[1]
    step = numbers[2] if len(numbers) == 3 else 1.0
    count = int((stop - start) / step + 1e-9) + 1 if stop >= start else 0
    return tuple(start + i * step for i in range(count))


def build_parser() -> argparse.ArgumentParser:
    metrics_parent = argparse.ArgumentParser(add_help=False)
    metrics_parent.add_argument(
        "--metrics-out", type=Path, help="write compute metrics in Prometheus text format"
    )

    design_parent = argparse.ArgumentParser(add_help=False, parents=[metrics_parent])
    design_parent.add_argument("--config", type=Path, required=True, help="JSON design file")
    design_parent.add_argument("--out", type=Path, help="write machine readable results here")
    design_parent.add_argument("--format", choices=("json", "csv"), default="json")
    design_parent.add_argument("--seed", type=int, help="override the seed of the design file")
    design_parent.add_argument("--tol", type=float, help="absolute tolerance of MVN integrals")

    parser = argparse.ArgumentParser(
        prog="bfseq", description="Design calculations for sequential Bayes factor designs."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {version}")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser(
        "characteristics",
        parents=[design_parent],
        help="stopping probabilities and sample size distribution",
    )

    sweep_cmd = commands.add_parser(
        "sweep", parents=[design_parent], help="characteristics over n_max and looks grids"
    )
    sweep_cmd.add_argument("--looks", type=_looks, help="numbers of analyses, e.g. 1,2,3,5")
    sweep_cmd.add_argument("--n-max", type=_n_max_range, help="START:STOP[:STEP] per arm")

    size_cmd = commands.add_parser(
        "samplesize", parents=[design_parent], help="smallest maximum sample size for a target"
    )
    size_cmd.add_argument("--target", type=float, help="required probability of evidence")
    size_cmd.add_argument("--hypothesis", choices=[h.value for h in Hypothesis])
    size_cmd.add_argument("--n-lo", type=float, help="lower end of the n_max bracket")
    size_cmd.add_argument("--n-hi", type=float, help="upper end of the n_max bracket")

    bf_cmd = commands.add_parser(
        "bf", parents=[metrics_parent], help="Bayes factor of a single z- or t-statistic"
    )
    bf_cmd.add_argument(
        "--family",
        choices=[
            DirectionalDirectional.family,
            PointPoint.family,
            PointTwoSided.family,
            PointDirectional.family,
            InformedT.family,
        ],
        help=f"prior family (default: {PointTwoSided.family}, or {InformedT.family} with --t)",
    )
    bf_cmd.add_argument("--mu", type=float, default=0.0, help="prior location")
    bf_cmd.add_argument("--tau", type=float, help="prior scale")
    bf_cmd.add_argument("--kappa", type=float, default=1.0, help="t prior degrees of freedom")
    bf_cmd.add_argument("--a", type=float, default=float("-inf"), help="lower truncation")
    bf_cmd.add_argument("--b", type=float, default=float("inf"), help="upper truncation")
    bf_cmd.add_argument("--z", type=float, help="observed z-statistic")
    bf_cmd.add_argument("--sigma", type=float, help="standard error of the estimate")
    bf_cmd.add_argument("--t", type=float, help="observed t-statistic")
    bf_cmd.add_argument("--n", type=float, nargs="+", help="sample size(s) of the t-test")
    bf_cmd.add_argument(
        "--design", choices=[d.value for d in TTestDesign], default=TTestDesign.TWO_SAMPLE.value
    )

    sim_cmd = commands.add_parser(
        "simulate", parents=[design_parent], help="Monte Carlo check of the analytic report"
    )
    sim_cmd.add_argument("--reps", type=int, default=DEFAULT_REPLICATIONS)
    return parser


def _load(args: argparse.Namespace) -> DesignConfig:
    config = DesignConfig.load(args.config)
    if args.seed is not None:
        if args.seed < 0:
            msg = f"--seed must be non-negative, got {args.seed}"
            raise ConfigError(msg)
        config = dataclasses.replace(config, seed=args.seed)
    if args.tol is not None:
        config = dataclasses.replace(config, mvn=dataclasses.replace(config.mvn, abs_tol=args.tol))
    return config


def _write_results(
    args: argparse.Namespace,
    config: DesignConfig,
    rows: Sequence[CsvRow],
    **results: object,
) -> None:
    if args.out is None:
        return
    if args.format == "csv":
        args.out.write_text(to_csv(rows), encoding="utf-8")
    else:
        run = RunInfo.for_config(config.name, config.to_dict(), config.seed, args.command)
        args.out.write_bytes(to_json(run, config, **results))
    logger.info("results_written", path=str(args.out), format=args.format)


def cmd_characteristics(args: argparse.Namespace) -> int:
    config = _load(args)
    design = config.design()
    report = characteristics(design, config.mvn, config.seed)
    sys.stdout.write(render_characteristics(config, design.schedule, report))
    _write_results(args, config, report_rows(config.name, report), report=report)
    return EXIT_OK


def _default_truth(config: DesignConfig) -> Hypothesis:
    prior = config.design_prior
    return Hypothesis.H0 if prior.is_point and prior.mu_d == 0 else Hypothesis.H1


def cmd_sweep(args: argparse.Namespace) -> int:
    config = _load(args)
    saved = config.sweep
    n_max = args.n_max if args.n_max is not None else (saved.n_max if saved else ())
    looks = args.looks if args.looks is not None else (saved.looks if saved else ())
    if saved is not None and saved.design_priors:
        priors = saved.design_priors
    else:
        priors = (LabelledPrior("design", config.design_prior, _default_truth(config)),)

    points = sweep(config.design(), n_max, looks, priors, config.mvn, config.seed)
    if not points:
        msg = "no valid design in the sweep grid"
        raise ConfigError(msg)
    rows = sweep_rows(config.name, points)
    if args.out is None:
        sys.stdout.write(to_csv(rows))
    else:
        _write_results(args, config, rows, sweep=points)
        sys.stdout.write(f"{len(points)} design(s) evaluated, {len(rows)} rows\n")
    return EXIT_OK


def cmd_samplesize(args: argparse.Namespace) -> int:
    config = _load(args)
    saved = config.search
    target = args.target if args.target is not None else (saved.target if saved else None)
    hyp = args.hypothesis or (saved.hypothesis.value if saved else None)
    n_lo = args.n_lo if args.n_lo is not None else (saved.n_lo if saved else None)
    n_hi = args.n_hi if args.n_hi is not None else (saved.n_hi if saved else None)
    if target is None or hyp is None or n_lo is None or n_hi is None:
        msg = "samplesize needs --target, --hypothesis, --n-lo and --n-hi or a search section"
        raise ConfigError(msg)

    hypothesis = Hypothesis(hyp)
    design = config.design()
    schedule = find_max_n(design, target, hypothesis, (n_lo, n_hi), config.mvn, config.seed)
    report = characteristics(design.with_schedule(schedule), config.mvn, config.seed)
    sys.stdout.write(render_samplesize(config, schedule, report, target, hypothesis))
    _write_results(
        args,
        config,
        report_rows(config.name, report, hypothesis),
        schedule=[s.n_report for s in schedule.stages],
        report=report,
    )
    return EXIT_OK


def _z_prior(args: argparse.Namespace) -> ZPriorSpec:
    family = args.family or PointTwoSided.family
    if family == PointPoint.family:
        return PointPoint(args.mu)
    if args.tau is None:
        msg = f"--tau is required for the {family} family"
        raise ConfigError(msg)
    match family:
        case DirectionalDirectional.family:
            return DirectionalDirectional(args.mu, args.tau)
        case PointDirectional.family:
            return PointDirectional(args.mu, args.tau)
        case _:
            return PointTwoSided(args.mu, args.tau)


def cmd_bf(args: argparse.Namespace) -> int:
    if args.t is not None:
        if args.family not in (None, InformedT.family):
            msg = f"--t needs the {InformedT.family} family, got --family {args.family}"
            raise ConfigError(msg)
        if args.n is None:
            msg = "--n is required with --t"
            raise ConfigError(msg)
        model = TTestApprox(TTestDesign(args.design))
        sizes = tuple(args.n) * model.arms if len(args.n) == 1 else tuple(args.n)
        tau = args.tau if args.tau is not None else JZS_SCALE
        prior = InformedT(args.mu, tau, args.kappa, args.a, args.b)
        bf01 = bf01_t(args.t, model.effective_n(sizes), model.degrees_of_freedom(sizes), prior)
    else:
        if args.family == InformedT.family:
            msg = "the informed-t family needs --t and --n"
            raise ConfigError(msg)
        if args.z is None or args.sigma is None:
            msg = "--z and --sigma are required for z-based Bayes factors"
            raise ConfigError(msg)
        bf01 = bf01_z(ZObservation(args.z, args.sigma), _z_prior(args))
    sys.stdout.write(render_bf(bf01))
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _load(args)
    sim_config = SimConfig(n_replications=args.reps, seed=config.seed)
    design = config.design()
    analytic = characteristics(design, config.mvn, config.seed)
    empirical = simulate(design, sim_config)
    rows = compare_reports(analytic, empirical)
    sys.stdout.write(render_simulation(empirical, rows))
    _write_results(
        args,
        config,
        simulation_rows(config.name, empirical),
        empirical=empirical,
        comparison=rows,
    )
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "characteristics": cmd_characteristics,
    "sweep": cmd_sweep,
    "samplesize": cmd_samplesize,
    "bf": cmd_bf,
    "simulate": cmd_simulate,
}


def _fail(message: str, code: int) -> int:
    sys.stderr.write(f"bfseq: {message}\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    """Run the program and return its exit code."""
    args = build_parser().parse_args(argv)
    try:
        LoggingCollector(LoggingConfig.from_env()).configure()
        tracing = TracingConfig.from_env()
        metrics_config = MetricsConfig.from_env()
        if tracing.enabled:
            configure_tracing(tracing, "bfseq", version)
    except (ValueError, MissingDependencyError) as exc:
        return _fail(str(exc), EXIT_CONFIG)

    collector = MetricsCollector(metrics_config)
    metrics = ComputeMetrics.create(collector) if metrics_config.enabled else None
    start = time.perf_counter()
    try:
        with use_metrics(metrics):
            code = COMMANDS[args.command](args)
    except (ConfigError, DesignError) as exc:
        code = _fail(f"error: {exc}", EXIT_CONFIG)
    except TargetUnreachableError as exc:
        code = _fail(f"target unreachable: {exc}", EXIT_UNREACHABLE)
    except NumericalError as exc:
        logger.exception("numerical_failure", command=args.command)
        code = _fail(f"numerical failure: {exc}", EXIT_NUMERICAL)
    except OSError as exc:
        code = _fail(f"cannot write results: {exc}", EXIT_IO)

    try:
        if metrics is not None:
            metrics.command_seconds.labels(command=args.command).observe(
                time.perf_counter() - start
            )
            if args.metrics_out is not None:
                collector.write_textfile(args.metrics_out)
    except OSError as exc:
        code = _fail(f"cannot write metrics: {exc}", EXIT_IO)
    finally:
        collector.clear()
    return code
