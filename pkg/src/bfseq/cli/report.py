"""Text, CSV and JSON renderings of design results.

Numbers are formatted with f-strings only, so output never depends on the locale.
"""

import csv
import io
import math
from collections.abc import Iterable, Sequence
from typing import assert_never

import orjson

from bfseq.bayesfactor import (
    AnalysisPriorSpec,
    DirectionalDirectional,
    InformedT,
    PointDirectional,
    PointPoint,
    PointTwoSided,
    interpret_bf01,
)
from bfseq.design import (
    DesignReport,
    Hypothesis,
    Schedule,
    SweepPoint,
    evidence_probabilities,
)
from bfseq.metadata import RunInfo
from bfseq.simulate import ComparisonRow, EmpiricalReport

from .config import DesignConfig

CSV_COLUMNS = ("design_id", "m", "stage", "n1", "n2", "metric", "value", "err_est")
NOTE = "NOTE:  BF01 < 1 indicates evidence for H1 over H0"

CsvRow = tuple[str, ...]


def _num(value: float) -> str:
    if math.isinf(value):
        return "Inf" if value > 0 else "-Inf"
    return f"{value:.4g}"


def _size(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else f"{value:.2f}"


def format_threshold(k: float) -> str:
    """``1/10`` style for thresholds below one that invert to an integer."""
    if k < 1 and abs(1 / k - round(1 / k)) < 1e-9:
        return f"1/{round(1 / k)}"
    return f"{k:g}"


def _hypotheses(prior: AnalysisPriorSpec) -> tuple[str, str]:
    match prior:
        case DirectionalDirectional():
            return "theta <= 0", "theta > 0"
        case PointPoint(mu=mu):
            return "theta = 0", f"theta = {_num(mu)}"
        case PointTwoSided():
            return "theta = 0", "theta != 0"
        case PointDirectional():
            return "theta = 0", "theta > 0"
        case InformedT(a=a, b=b):
            if a >= 0 and math.isinf(b):
                return "theta = 0", "theta > 0"
            if b <= 0 and math.isinf(a):
                return "theta = 0", "theta < 0"
            if math.isinf(a) and math.isinf(b):
                return "theta = 0", "theta != 0"
            return "theta = 0", f"theta in [{_num(a)}, {_num(b)}]"
        case _:
            assert_never(prior)


def _analysis_prior(prior: AnalysisPriorSpec) -> str:
    match prior:
        case DirectionalDirectional(mu=mu, tau=tau):
            return f"theta ~ N(mean = {_num(mu)}, sd = {_num(tau)})"
        case PointPoint(mu=mu):
            return f"theta|H1 = {_num(mu)}"
        case PointTwoSided(mu=mu, tau=tau):
            return f"theta|H1 ~ N(mean = {_num(mu)}, sd = {_num(tau)})"
        case PointDirectional(mu=mu, tau=tau):
            return f"theta|H1 ~ N(mean = {_num(mu)}, sd = {_num(tau)})_+"
        case InformedT(mu=mu, tau=tau, kappa=kappa, a=a, b=b):
            base = f"theta|H1 ~ t(location = {_num(mu)}, scale = {_num(tau)}, df = {_num(kappa)})"
            if a == 0 and math.isinf(b):
                return f"{base}_+"
            if b == 0 and math.isinf(a):
                return f"{base}_-"
            if math.isinf(a) and math.isinf(b):
                return base
            return f"{base} truncated to [{_num(a)}, {_num(b)}]"
        case _:
            assert_never(prior)


def design_summary(config: DesignConfig, schedule: Schedule) -> list[str]:
    h0, h1 = _hypotheses(config.analysis_prior)
    prior = config.design_prior
    k0, k1 = config.thresholds.k0, config.thresholds.k1
    lines = [
        "Sequential Bayes Factor Design",
        "--------------------------------",
        f"Design:           {config.name}",
        f"H0:               {h0}",
        f"H1:               {h1}",
        f"Analysis prior:   {_analysis_prior(config.analysis_prior)}",
        f"Design prior:     theta ~ N(mean = {_num(prior.mu_d)}, sd = {_num(prior.tau_d)})",
        f"BF thresholds:    H1 if BF01 <= {format_threshold(k1)}, "
        f"H0 if BF01 >= {format_threshold(k0)}",
        f"Information:      {config.info_model.kind}",
        f"Number of looks:  {schedule.m}",
    ]
    sizes = schedule.n_report
    for arm in range(schedule.arms):
        label = f"Sample sizes {arm + 1}:"
        lines.append(f"{label:<18}{', '.join(_size(v) for v in sizes[:, arm])}")
    return lines


def report_table(report: DesignReport) -> list[str]:
    lines = [
        "Stagewise cumulative probabilities:",
        " Stage Pr(H1 stop) Pr(H0 stop) Pr(inconclusive)",
    ]
    lines.extend(
        f"{s.stage:>6} {s.cum_h1:>11.4f} {s.cum_h0:>11.4f} {s.cum_inconclusive:>16.4f}"
        for s in report.stages
    )
    lines.append("")
    arms = len(report.expected_n)
    lines.extend(f"Expected sample size {i + 1}: {report.expected_n[i]:.4f}" for i in range(arms))
    lines.extend(
        f"Standard deviation of sample size {i + 1}: {report.sd_n[i]:.4f}" for i in range(arms)
    )
    lines.extend(
        f"Coefficient of variation of sample size {i + 1}: {report.cov_n[i]:.4f}"
        for i in range(arms)
    )
    return lines


def render_characteristics(config: DesignConfig, schedule: Schedule, report: DesignReport) -> str:
    """Human readable design summary with its stagewise probabilities."""
    lines = [*design_summary(config, schedule), "", "", *report_table(report), ""]
    if report.warnings:
        lines.extend(f"WARNING: {w}" for w in report.warnings)
        lines.append("")
    lines.append(NOTE)
    return "\n".join(lines) + "\n"


def render_samplesize(
    config: DesignConfig,
    schedule: Schedule,
    report: DesignReport,
    target: float,
    hypothesis: Hypothesis,
) -> str:
    final = schedule.stages[-1].n_report
    achieved = evidence_probabilities(report, hypothesis).correct
    head = [
        f"Target:           Pr(evidence for {hypothesis.value.upper()}) >= {target:.4f}",
        f"Achieved:         {achieved:.4f}",
        f"Maximum sample size per arm: {', '.join(_size(v) for v in final)}",
        "",
    ]
    return "\n".join(head) + "\n" + render_characteristics(config, schedule, report)


def render_bf(bf01: float) -> str:
    """Two lines: the Bayes factor and its verbal interpretation."""
    if 0 < bf01 < 0.9995:
        value = f"BF01 = {bf01:.3f} (1/{1 / bf01:.1f})"
    else:
        value = f"BF01 = {bf01:.3f}"
    return f"{value}\n{interpret_bf01(bf01)}\n"


def render_simulation(empirical: EmpiricalReport, rows: Sequence[ComparisonRow]) -> str:
    lines = [
        f"Simulated trials: {empirical.n_replications}",
        "",
        "Stagewise cumulative proportions:",
        " Stage Pr(H1 stop)      SE Pr(H0 stop)      SE",
    ]
    lines.extend(
        f"{s.stage:>6} {s.cum_h1:>11.4f} {s.se_h1:>7.4f} {s.cum_h0:>11.4f} {s.se_h0:>7.4f}"
        for s in empirical.stages
    )
    lines.append("")
    lines.extend(
        f"Expected sample size {i + 1}: {v:.4f}" for i, v in enumerate(empirical.expected_n)
    )
    lines.extend(["", "Comparison with the analytic report (3 SE):"])
    lines.append(" Stage Metric           Analytic  Empirical        SE Result")
    lines.extend(
        f"{r.stage:>6} {r.metric:<14} {r.analytic:>10.4f} {r.empirical:>10.4f} "
        f"{r.combined_se:>9.5f} {'PASS' if r.passed else 'FAIL'}"
        for r in rows
    )
    return "\n".join(lines) + "\n"


def _fmt(value: float | None) -> str:
    if value is None:
        return ""
    return repr(float(value)) if math.isfinite(value) else ("inf" if value > 0 else "-inf")


def _sizes(n_report: Sequence[float]) -> tuple[str, str]:
    n1 = _fmt(n_report[0])
    n2 = _fmt(n_report[1]) if len(n_report) > 1 else ""
    return n1, n2


def report_rows(
    design_id: str,
    report: DesignReport,
    truth: Hypothesis | None = None,
) -> list[CsvRow]:
    """Long-format rows of a report; evidence rows need the true hypothesis."""
    m = str(len(report.stages))
    rows: list[CsvRow] = []
    for s in report.stages:
        n1, n2 = _sizes(s.n_report)
        base = (design_id, m, str(s.stage), n1, n2)
        rows.append((*base, "pr_h1", _fmt(s.cum_h1), _fmt(s.err_h1)))
        rows.append((*base, "pr_h0", _fmt(s.cum_h0), _fmt(s.err_h0)))
        err = math.hypot(s.err_h1, s.err_h0)
        rows.append((*base, "pr_inconclusive", _fmt(s.cum_inconclusive), _fmt(err)))
    final = report.final
    n1, n2 = _sizes(final.n_report)
    base = (design_id, m, str(final.stage), n1, n2)
    if truth is not None:
        evidence = evidence_probabilities(report, truth)
        ok, bad = (
            (final.err_h1, final.err_h0) if truth is Hypothesis.H1 else (final.err_h0, final.err_h1)
        )
        rows.append((*base, "pr_correct", _fmt(evidence.correct), _fmt(ok)))
        rows.append((*base, "pr_misleading", _fmt(evidence.misleading), _fmt(bad)))
    rows.append((*base, "expected_n", _fmt(report.expected_n[0]), ""))
    rows.append((*base, "sd_n", _fmt(report.sd_n[0]), ""))
    rows.append((*base, "cov_n", _fmt(report.cov_n[0]), ""))
    if len(report.expected_n) > 1:
        rows.append((*base, "expected_total_n", _fmt(report.expected_total_n), ""))
    return rows


def sweep_rows(name: str, points: Iterable[SweepPoint]) -> list[CsvRow]:
    rows: list[CsvRow] = []
    for point in points:
        design_id = f"{name}/n{_size(point.n_max)}/m{point.m}/{point.label}"
        rows.extend(report_rows(design_id, point.report, point.truth))
    return rows


def simulation_rows(design_id: str, empirical: EmpiricalReport) -> list[CsvRow]:
    m = str(len(empirical.stages))
    rows: list[CsvRow] = []
    for s in empirical.stages:
        n1, n2 = _sizes(s.n_report)
        base = (design_id, m, str(s.stage), n1, n2)
        rows.append((*base, "pr_h1", _fmt(s.cum_h1), _fmt(s.se_h1)))
        rows.append((*base, "pr_h0", _fmt(s.cum_h0), _fmt(s.se_h0)))
        rows.append((*base, "pr_inconclusive", _fmt(s.cum_inconclusive), ""))
    n1, n2 = _sizes(empirical.stages[-1].n_report)
    base = (design_id, m, m, n1, n2)
    se_mean = _fmt(empirical.se_expected_n[0])
    rows.append((*base, "expected_n", _fmt(empirical.expected_n[0]), se_mean))
    rows.append((*base, "sd_n", _fmt(empirical.sd_n[0]), ""))
    rows.append((*base, "cov_n", _fmt(empirical.cov_n[0]), ""))
    return rows


def to_csv(rows: Iterable[CsvRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(rows)
    return buffer.getvalue()


def to_json(run: RunInfo, config: DesignConfig, **results: object) -> bytes:
    """JSON document with provenance, the design and the named results.

    Dataclass results are serialized field by field.
    """
    document = {"run": run.asdict(), "design": config.to_dict(), **results}
    return orjson.dumps(
        document,
        option=orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_APPEND_NEWLINE,
    )
