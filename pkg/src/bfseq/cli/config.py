"""JSON design files.

Every section is validated before any computation; unknown keys are rejected
and error messages name the offending key path.
"""

import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Self, TypeVar

import orjson

from bfseq.bayesfactor import (
    JZS_SCALE,
    AnalysisPriorSpec,
    DirectionalDirectional,
    InformedT,
    PointDirectional,
    PointPoint,
    PointTwoSided,
)
from bfseq.design import (
    DesignPrior,
    Hypothesis,
    InformationModel,
    LabelledPrior,
    SequentialDesign,
    Thresholds,
    TTestApprox,
    TTestDesign,
    TwoProportionsDelta,
    TwoSampleZ,
    UnitVariance,
    build_schedule,
)
from bfseq.design.model import DEFAULT_MAX_PAIR_ANALYSES
from bfseq.errors import ConfigError
from bfseq.mvn import MvnConfig

JsonDict = dict[str, Any]
T = TypeVar("T")
StageSizes = float | tuple[float, ...]


class _Section:
    """Reads typed values out of one JSON object and tracks the keys it used."""

    def __init__(self, data: object, path: str) -> None:
        if not isinstance(data, Mapping):
            msg = f"{path}: expected an object, got {type(data).__name__}"
            raise ConfigError(msg)
        self._data: Mapping[str, object] = data
        self._path = path
        self._seen: set[str] = set()

    @property
    def path(self) -> str:
        return self._path or "config"

    def _key(self, key: str) -> str:
        return f"{self._path}.{key}" if self._path else key

    def has(self, key: str) -> bool:
        return key in self._data

    def raw(self, key: str) -> object:
        self._seen.add(key)
        return self._data.get(key)

    def require(self, key: str) -> object:
        return self._value(key, None)

    def _value(self, key: str, default: object) -> object:
        value = self.raw(key)
        if value is not None:
            return value
        if default is None:
            msg = f"{self._key(key)}: missing required key"
            raise ConfigError(msg)
        return default

    def number(self, key: str, default: float | None = None, *, infinite: bool = False) -> float:
        if default is not None and self.raw(key) is None:
            return default
        return _as_number(self._value(key, None), self._key(key), infinite=infinite)

    def integer(self, key: str, default: int | None = None) -> int:
        value = self._value(key, default)
        if isinstance(value, bool) or not isinstance(value, int):
            msg = f"{self._key(key)}: expected an integer, got {value!r}"
            raise ConfigError(msg)
        return value

    def string(self, key: str, default: str | None = None) -> str:
        value = self._value(key, default)
        if not isinstance(value, str):
            msg = f"{self._key(key)}: expected a string, got {value!r}"
            raise ConfigError(msg)
        return value

    def section(self, key: str) -> "_Section":
        return _Section(self.require(key), self._key(key))

    def items(self, key: str) -> list[object]:
        value = self.require(key)
        if not isinstance(value, list):
            msg = f"{self._key(key)}: expected a list, got {type(value).__name__}"
            raise ConfigError(msg)
        return value

    def child_path(self, key: str, index: int | None = None) -> str:
        path = self._key(key)
        return path if index is None else f"{path}[{index}]"

    def finish(self) -> None:
        unknown = sorted(set(self._data) - self._seen)
        if unknown:
            msg = f"{self.path}: unknown key(s) {', '.join(unknown)}"
            raise ConfigError(msg)


def _as_number(value: object, path: str, *, infinite: bool = False) -> float:
    if infinite and value in ("inf", "+inf", "-inf"):
        return float(str(value))
    if isinstance(value, bool) or not isinstance(value, int | float):
        msg = f"{path}: expected a number, got {value!r}"
        raise ConfigError(msg)
    result = float(value)
    if not math.isfinite(result):
        msg = f"{path}: expected a finite number, got {value!r}"
        raise ConfigError(msg)
    return result


def _dump_number(value: float) -> float | str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def _checked(path: str, build: Callable[[], T]) -> T:
    try:
        return build()
    except ConfigError as exc:
        msg = f"{path}: {exc}"
        raise ConfigError(msg) from exc


_FAMILIES = (
    DirectionalDirectional.family,
    PointPoint.family,
    PointTwoSided.family,
    PointDirectional.family,
    InformedT.family,
)


def _parse_prior(section: _Section) -> AnalysisPriorSpec:
    family = section.string("family")
    if family not in _FAMILIES:
        msg = (
            f"{section.child_path('family')}: unknown family {family!r}, "
            f"expected one of {', '.join(_FAMILIES)}"
        )
        raise ConfigError(msg)
    path = section.path
    prior: AnalysisPriorSpec
    match family:
        case DirectionalDirectional.family:
            mu, tau = section.number("mu"), section.number("tau")
            prior = _checked(path, lambda: DirectionalDirectional(mu, tau))
        case PointPoint.family:
            mu = section.number("mu")
            prior = _checked(path, lambda: PointPoint(mu))
        case PointTwoSided.family:
            mu, tau = section.number("mu"), section.number("tau")
            prior = _checked(path, lambda: PointTwoSided(mu, tau))
        case PointDirectional.family:
            mu, tau = section.number("mu"), section.number("tau")
            prior = _checked(path, lambda: PointDirectional(mu, tau))
        case _:
            mu = section.number("mu", 0.0)
            tau = section.number("tau", JZS_SCALE)
            kappa = section.number("kappa", 1.0)
            a = section.number("a", -math.inf, infinite=True)
            b = section.number("b", math.inf, infinite=True)
            prior = _checked(path, lambda: InformedT(mu, tau, kappa, a, b))
    section.finish()
    return prior


def _dump_prior(prior: AnalysisPriorSpec) -> JsonDict:
    out: JsonDict = {"family": prior.family}
    match prior:
        case PointPoint(mu=mu):
            out["mu"] = mu
        case InformedT():
            out |= {
                "mu": prior.mu,
                "tau": prior.tau,
                "kappa": prior.kappa,
                "a": _dump_number(prior.a),
                "b": _dump_number(prior.b),
            }
        case _:
            out |= {"mu": prior.mu, "tau": prior.tau}
    return out


def _parse_info_model(section: _Section) -> InformationModel:
    kind = section.string("kind")
    path = section.path
    model: InformationModel
    match kind:
        case UnitVariance.kind:
            lambda2 = section.number("lambda2", 1.0)
            model = _checked(path, lambda: UnitVariance(lambda2))
        case TwoSampleZ.kind:
            model = TwoSampleZ()
        case TwoProportionsDelta.kind:
            pi0, pi1 = section.number("pi0"), section.number("pi1")
            model = _checked(path, lambda: TwoProportionsDelta(pi0, pi1))
        case TTestApprox.kind:
            design = section.string("design", TTestDesign.TWO_SAMPLE.value)
            try:
                model = TTestApprox(TTestDesign(design))
            except ValueError as exc:
                choices = ", ".join(d.value for d in TTestDesign)
                msg = f"{section.child_path('design')}: expected one of {choices}, got {design!r}"
                raise ConfigError(msg) from exc
        case _:
            kinds = ", ".join(
                k.kind for k in (UnitVariance, TwoSampleZ, TwoProportionsDelta, TTestApprox)
            )
            msg = f"{section.child_path('kind')}: unknown kind {kind!r}, expected one of {kinds}"
            raise ConfigError(msg)
    section.finish()
    return model


def _dump_info_model(model: InformationModel) -> JsonDict:
    out: JsonDict = {"kind": model.kind}
    match model:
        case UnitVariance(lambda2=lambda2):
            out["lambda2"] = lambda2
        case TwoProportionsDelta(pi0=pi0, pi1=pi1):
            out |= {"pi0": pi0, "pi1": pi1}
        case TTestApprox(design=design):
            out["design"] = design.value
        case _:
            pass
    return out


def _parse_sizes(section: _Section, arms: int) -> tuple[StageSizes, ...]:
    sizes: list[StageSizes] = []
    for i, entry in enumerate(section.items("n")):
        path = section.child_path("n", i)
        if isinstance(entry, list):
            sizes.append(tuple(_as_number(v, f"{path}[{j}]") for j, v in enumerate(entry)))
        else:
            sizes.append(_as_number(entry, path))
    if section.has("arms"):
        declared = section.integer("arms")
        if declared != arms:
            msg = f"{section.child_path('arms')}: info model has {arms} arm(s), got {declared}"
            raise ConfigError(msg)
    section.finish()
    return tuple(sizes)


def _parse_labelled(data: object, path: str) -> LabelledPrior:
    section = _Section(data, path)
    label = section.string("label")
    mu = section.number("mu")
    sd = section.number("sd", 0.0)
    truth = section.string("truth")
    if truth not in {h.value for h in Hypothesis}:
        msg = f"{section.child_path('truth')}: expected h0 or h1, got {truth!r}"
        raise ConfigError(msg)
    prior = _checked(path, lambda: DesignPrior(mu, sd))
    section.finish()
    return LabelledPrior(label=label, prior=prior, truth=Hypothesis(truth))


@dataclass(frozen=True)
class SweepConfig:
    n_max: tuple[float, ...]
    looks: tuple[int, ...]
    design_priors: tuple[LabelledPrior, ...]

    @classmethod
    def parse(cls, section: _Section) -> Self:
        n_max = tuple(
            _as_number(v, section.child_path("n_max", i))
            for i, v in enumerate(section.items("n_max"))
        )
        looks: list[int] = []
        for i, v in enumerate(section.items("looks")):
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                msg = f"{section.child_path('looks', i)}: expected a positive integer, got {v!r}"
                raise ConfigError(msg)
            looks.append(v)
        priors = tuple(
            _parse_labelled(v, section.child_path("design_priors", i))
            for i, v in enumerate(section.items("design_priors"))
        )
        section.finish()
        return cls(n_max=n_max, looks=tuple(looks), design_priors=priors)

    def to_dict(self) -> JsonDict:
        return {
            "n_max": list(self.n_max),
            "looks": list(self.looks),
            "design_priors": [
                {"label": p.label, "mu": p.prior.mu_d, "sd": p.prior.tau_d, "truth": p.truth.value}
                for p in self.design_priors
            ],
        }


@dataclass(frozen=True)
class SearchConfig:
    target: float
    hypothesis: Hypothesis
    n_lo: float
    n_hi: float

    @classmethod
    def parse(cls, section: _Section) -> Self:
        target = section.number("target")
        hypothesis = section.string("hypothesis")
        if hypothesis not in {h.value for h in Hypothesis}:
            msg = f"{section.child_path('hypothesis')}: expected h0 or h1, got {hypothesis!r}"
            raise ConfigError(msg)
        n_lo = section.number("n_lo")
        n_hi = section.number("n_hi")
        section.finish()
        if not 0.0 < target < 1.0:
            msg = f"{section.child_path('target')}: must lie strictly between 0 and 1"
            raise ConfigError(msg)
        if not 0.0 < n_lo < n_hi:
            msg = f"{section.child_path('n_lo')}: expected 0 < n_lo < n_hi, got {n_lo}, {n_hi}"
            raise ConfigError(msg)
        return cls(target=target, hypothesis=Hypothesis(hypothesis), n_lo=n_lo, n_hi=n_hi)

    def to_dict(self) -> JsonDict:
        return {
            "target": self.target,
            "hypothesis": self.hypothesis.value,
            "n_lo": self.n_lo,
            "n_hi": self.n_hi,
        }


@dataclass(frozen=True)
class DesignConfig:
    """A parsed design file.

    Attributes:
        name: Identifier used in reports and CSV output.
        analysis_prior: Prior under H1 used for the Bayes factor.
        thresholds: Stopping thresholds.
        design_prior: Distribution of the true effect.
        info_model: Map from sample sizes to information.
        n_per_stage: Per-arm sample sizes of each analysis.
        mvn: Accuracy of the rectangle integrals.
        seed: Integration and simulation seed.
        max_pair_analyses: Cap on analyses for priors with two critical values.
        sweep: Optional grid for ``bfseq sweep``.
        search: Optional settings for ``bfseq samplesize``.
    """

    name: str
    analysis_prior: AnalysisPriorSpec
    thresholds: Thresholds
    design_prior: DesignPrior
    info_model: InformationModel
    n_per_stage: tuple[StageSizes, ...]
    mvn: MvnConfig = field(default_factory=MvnConfig)
    seed: int = 0
    max_pair_analyses: int = DEFAULT_MAX_PAIR_ANALYSES
    sweep: SweepConfig | None = None
    search: SearchConfig | None = None

    @classmethod
    def from_dict(cls, data: object) -> Self:
        """Validate and convert a decoded design file.

        Raises:
            ConfigError: On any schema or invariant violation.
        """
        root = _Section(data, "")
        name = root.string("name", "design")
        analysis_prior = _parse_prior(root.section("analysis_prior"))

        thresholds_section = root.section("thresholds")
        k0, k1 = thresholds_section.number("k0"), thresholds_section.number("k1")
        thresholds_section.finish()
        thresholds = _checked("thresholds", lambda: Thresholds(k0=k0, k1=k1))

        prior_section = root.section("design_prior")
        mu, sd = prior_section.number("mu"), prior_section.number("sd", 0.0)
        prior_section.finish()
        design_prior = _checked("design_prior", lambda: DesignPrior(mu, sd))

        info_model = _parse_info_model(root.section("info_model"))
        n_per_stage = _parse_sizes(root.section("schedule"), info_model.arms)

        mvn = MvnConfig()
        if root.has("tolerances"):
            tol = root.section("tolerances")
            abs_tol = tol.number("mvn_abs_tol", mvn.abs_tol)
            n_rand = tol.integer("n_randomizations", mvn.n_randomizations)
            initial = tol.integer("initial_points", mvn.initial_points)
            max_points = tol.integer("max_points", mvn.max_points)
            tol.finish()
            mvn = _checked("tolerances", lambda: MvnConfig(abs_tol, n_rand, initial, max_points))

        seed = root.integer("seed", 0)
        if seed < 0:
            msg = f"seed: must be non-negative, got {seed}"
            raise ConfigError(msg)
        max_pair = root.integer("max_pair_analyses", DEFAULT_MAX_PAIR_ANALYSES)
        sweep = SweepConfig.parse(root.section("sweep")) if root.has("sweep") else None
        search = SearchConfig.parse(root.section("search")) if root.has("search") else None
        root.finish()

        config = cls(
            name=name,
            analysis_prior=analysis_prior,
            thresholds=thresholds,
            design_prior=design_prior,
            info_model=info_model,
            n_per_stage=n_per_stage,
            mvn=mvn,
            seed=seed,
            max_pair_analyses=max_pair,
            sweep=sweep,
            search=search,
        )
        config.design()
        return config

    @classmethod
    def load(cls, path: Path) -> Self:
        """Read and validate a design file.

        Raises:
            ConfigError: If the file cannot be read, is not valid JSON or fails validation.
        """
        try:
            raw = path.read_bytes()
        except OSError as exc:
            msg = f"cannot read {path}: {exc.strerror}"
            raise ConfigError(msg) from exc
        try:
            data = orjson.loads(raw)
        except orjson.JSONDecodeError as exc:
            msg = f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            raise ConfigError(msg) from exc
        try:
            return cls.from_dict(data)
        except ConfigError as exc:
            msg = f"{path}: {exc}"
            raise ConfigError(msg) from exc

    def to_dict(self) -> JsonDict:
        out: JsonDict = {
            "name": self.name,
            "analysis_prior": _dump_prior(self.analysis_prior),
            "thresholds": {"k0": self.thresholds.k0, "k1": self.thresholds.k1},
            "design_prior": {"mu": self.design_prior.mu_d, "sd": self.design_prior.tau_d},
            "info_model": _dump_info_model(self.info_model),
            "schedule": {
                "n": [list(n) if isinstance(n, tuple) else n for n in self.n_per_stage],
                "arms": self.info_model.arms,
            },
            "tolerances": {
                "mvn_abs_tol": self.mvn.abs_tol,
                "n_randomizations": self.mvn.n_randomizations,
                "initial_points": self.mvn.initial_points,
                "max_points": self.mvn.max_points,
            },
            "seed": self.seed,
            "max_pair_analyses": self.max_pair_analyses,
        }
        if self.sweep is not None:
            out["sweep"] = self.sweep.to_dict()
        if self.search is not None:
            out["search"] = self.search.to_dict()
        return out

    def design(self) -> SequentialDesign:
        """Assemble the sequential design described by this file.

        Raises:
            ConfigError: If the schedule is invalid.
            DesignError: If the parts cannot be combined.
        """
        schedule = _checked("schedule", lambda: build_schedule(self.info_model, self.n_per_stage))
        return SequentialDesign(
            schedule=schedule,
            thresholds=self.thresholds,
            analysis_prior=self.analysis_prior,
            design_prior=self.design_prior,
            info_model=self.info_model,
            max_pair_analyses=self.max_pair_analyses,
        )

