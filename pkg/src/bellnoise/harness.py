"""Monte Carlo orchestration and report emission.

Runs repeated noise estimations (Bell-measurement protocol or the
tomography baseline) over a grid of noise weights, aggregates empirical
mean/std against the theoretical bound, and writes CSV or JSON reports.
Every trial is a pure function of a seed derived from
(master seed, experiment tag, grid index, trial index), so reports are
byte-reproducible and independent of execution order.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field

import numpy as np

from ._version import __version__
from .channel import TimingConfig, timing_to_probs
from .estimation import dc_std_bound, estimate_dc
from .measurement import (
    SAMPLING_MODES,
    SamplingConfig,
    bell_outcome_probs,
    derive_seed,
    sample_counts,
    two_outcome_probs,
)
from .qcore import BellLabel
from .tomography import aaqpt_pipeline

EXPERIMENTS = ("bell-probs", "optimal-dc", "aaqpt", "compare")

_EXPERIMENT_TAGS = {name: tag for tag, name in enumerate(EXPERIMENTS)}

#: Count-budget multiples probed when comparing the two protocols.
COMPARISON_LADDER = (1, 10, 100)

#: Tomography std within this factor of the optimal std counts as "matched".
CROSSOVER_FACTOR = 1.2

CSV_HEADER = "p_true,estimator,counts,trials,mean,std,bound,seed"

BELL_PROBS_CSV_HEADER = "t1,t2,t3,period,outcome,probability"


@dataclass(frozen=True)
class ExperimentConfig:
    """A full experiment description; validated on construction.

    ``p_values`` holds noise weights in [0, 1] for the estimation
    experiments, or TimingConfig entries for "bell-probs".
    """

    experiment: str
    p_values: tuple = ()
    trials: int = 100
    counts: float = 1600.0
    mode: str = "multinomial"
    seed: int = 0
    output_path: str | None = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"experiment must be one of {EXPERIMENTS}, got {self.experiment!r}")
        if not self.p_values:
            raise ValueError("p_values must be nonempty")
        if self.experiment == "bell-probs":
            if not all(isinstance(t, TimingConfig) for t in self.p_values):
                raise ValueError("bell-probs takes TimingConfig entries")
        else:
            for p in self.p_values:
                if not 0.0 <= float(p) <= 1.0:
                    raise ValueError(f"p={p} outside [0, 1]")
        if self.trials < 1:
            raise ValueError(f"trials={self.trials} must be >= 1")
        if self.counts <= 0:
            raise ValueError(f"counts={self.counts} must be positive")
        if self.mode not in SAMPLING_MODES:
            raise ValueError(f"mode must be one of {SAMPLING_MODES}, got {self.mode!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed={self.seed} outside the 64-bit range")


@dataclass
class ReportRow:
    """Aggregates for one (noise weight, estimator, count budget) cell."""

    p_true: float
    estimator: str
    counts: float
    trials: int
    mean: float
    std: float
    bound: float
    seed: int
    estimates: list = field(default_factory=list)


@dataclass
class MonteCarloReport:
    """Report rows sorted by noise weight, plus run metadata.

    ``comparison`` is populated only by run_comparison: one entry per noise
    weight with the equal-budget std ratio and the smallest ladder multiple
    at which the tomography baseline matches the optimal protocol.
    """

    rows: list
    metadata: dict
    comparison: list | None = None

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "MonteCarloReport":
        return cls(
            rows=[ReportRow(**row) for row in data["rows"]],
            metadata=dict(data["metadata"]),
            comparison=data.get("comparison"),
        )


def _metadata(cfg: ExperimentConfig) -> dict:
    if cfg.experiment == "bell-probs":
        echoed = [[t.t1, t.t2, t.t3, t.period] for t in cfg.p_values]
    else:
        echoed = [float(p) for p in cfg.p_values]
    return {
        "experiment": cfg.experiment,
        "p_values": echoed,
        "trials": cfg.trials,
        "counts": cfg.counts,
        "mode": cfg.mode,
        "seed": cfg.seed,
        "output_path": cfg.output_path,
        "version": __version__,
    }


def optimal_dc_trial(p: float, counts: float, mode: str, seed: int) -> float:
    """One run of the two-outcome protocol: sample counts, return the ratio."""
    outcome_counts = sample_counts(two_outcome_probs(p), SamplingConfig(mode, counts, seed))
    return estimate_dc(n_ss=int(outcome_counts[1]), c_int=int(outcome_counts[0])).p_hat


def aaqpt_trial(p: float, counts: float, mode: str, seed: int) -> float:
    """One run of the tomography baseline at the given total count budget."""
    return aaqpt_pipeline(p, SamplingConfig(mode, counts, seed)).p_fit


_TRIAL_FUNCTIONS = {"optimal-dc": optimal_dc_trial, "aaqpt": aaqpt_trial}


def _aggregate(estimates: list) -> tuple[float, float]:
    mean = float(np.mean(estimates))
    std = float(np.std(estimates, ddof=1)) if len(estimates) > 1 else 0.0
    return mean, std


def run_montecarlo(cfg: ExperimentConfig) -> MonteCarloReport:
    """Run the configured estimator over the noise-weight grid.

    For each weight, ``cfg.trials`` independent estimations run on seeds
    derived from (seed, experiment tag, grid index, trial index); the report
    aggregates empirical mean/std next to the theoretical bound.
    """
    trial = _TRIAL_FUNCTIONS.get(cfg.experiment)
    if trial is None:
        raise ValueError(f"run_montecarlo handles {tuple(_TRIAL_FUNCTIONS)}, got {cfg.experiment!r}")
    tag = _EXPERIMENT_TAGS[cfg.experiment]
    rows = []
    for p_index, p in enumerate(sorted(float(p) for p in cfg.p_values)):
        estimates = [
            trial(p, cfg.counts, cfg.mode, derive_seed(cfg.seed, tag, p_index, t))
            for t in range(cfg.trials)
        ]
        mean, std = _aggregate(estimates)
        rows.append(
            ReportRow(
                p_true=p,
                estimator=cfg.experiment,
                counts=cfg.counts,
                trials=cfg.trials,
                mean=mean,
                std=std,
                bound=dc_std_bound(p, max(1, int(round(cfg.counts)))),
                seed=cfg.seed,
                estimates=estimates,
            )
        )
    return MonteCarloReport(rows=rows, metadata=_metadata(cfg))


def run_comparison(cfg: ExperimentConfig) -> MonteCarloReport:
    """Equal-budget comparison of the two protocols with a count ladder.

    For each noise weight: the optimal protocol runs at cfg.counts, the
    tomography baseline at {1x, 10x, 100x} cfg.counts; the comparison
    records the std ratio at equal budget and the smallest multiple at
    which the baseline's std falls within CROSSOVER_FACTOR of the optimal
    protocol's.
    """
    if cfg.experiment != "compare":
        raise ValueError(f"run_comparison requires the compare experiment, got {cfg.experiment!r}")
    if cfg.trials < 2:
        raise ValueError("compare needs trials >= 2 for a standard deviation")
    tag = _EXPERIMENT_TAGS["compare"]
    rows = []
    comparison = []
    for p_index, p in enumerate(sorted(float(p) for p in cfg.p_values)):
        optimal_estimates = [
            optimal_dc_trial(p, cfg.counts, cfg.mode, derive_seed(cfg.seed, tag, p_index, 0, t))
            for t in range(cfg.trials)
        ]
        optimal_mean, optimal_std = _aggregate(optimal_estimates)
        rows.append(
            ReportRow(
                p_true=p,
                estimator="optimal-dc",
                counts=cfg.counts,
                trials=cfg.trials,
                mean=optimal_mean,
                std=optimal_std,
                bound=dc_std_bound(p, max(1, int(round(cfg.counts)))),
                seed=cfg.seed,
                estimates=optimal_estimates,
            )
        )
        ratio = None
        crossover = None
        for rung, multiple in enumerate(COMPARISON_LADDER, start=1):
            budget = cfg.counts * multiple
            estimates = [
                aaqpt_trial(p, budget, cfg.mode, derive_seed(cfg.seed, tag, p_index, rung, t))
                for t in range(cfg.trials)
            ]
            mean, std = _aggregate(estimates)
            rows.append(
                ReportRow(
                    p_true=p,
                    estimator="aaqpt",
                    counts=budget,
                    trials=cfg.trials,
                    mean=mean,
                    std=std,
                    bound=dc_std_bound(p, max(1, int(round(budget)))),
                    seed=cfg.seed,
                    estimates=estimates,
                )
            )
            if multiple == 1 and optimal_std > 0.0:
                ratio = std / optimal_std
            if crossover is None and std <= CROSSOVER_FACTOR * optimal_std:
                crossover = multiple
        comparison.append({"p_true": p, "std_ratio": ratio, "crossover_multiple": crossover})
    return MonteCarloReport(rows=rows, metadata=_metadata(cfg), comparison=comparison)


def bell_probs_report(cfg: ExperimentConfig) -> dict:
    """Bell outcome distributions for each timing configuration."""
    if cfg.experiment != "bell-probs":
        raise ValueError(f"bell_probs_report requires bell-probs, got {cfg.experiment!r}")
    rows = []
    for timing in cfg.p_values:
        dist = bell_outcome_probs(timing_to_probs(timing))
        rows.append(
            {
                "t1": timing.t1,
                "t2": timing.t2,
                "t3": timing.t3,
                "period": timing.period,
                "probabilities": {label.name.lower(): float(dist[label]) for label in BellLabel},
            }
        )
    return {"rows": rows, "metadata": _metadata(cfg)}


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def report_payload(report: MonteCarloReport, format: str = "csv") -> str:
    """Render a Monte Carlo report as CSV (aggregates only) or JSON (verbatim).

    CSV rows follow the fixed header, decimal-point floats, no separators,
    newline-terminated.
    """
    if format not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {format!r}")
    if format == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    lines = [CSV_HEADER]
    for row in report.rows:
        lines.append(
            ",".join(
                (
                    _fmt(float(row.p_true)),
                    row.estimator,
                    _fmt(float(row.counts)),
                    str(row.trials),
                    _fmt(float(row.mean)),
                    _fmt(float(row.std)),
                    _fmt(float(row.bound)),
                    str(row.seed),
                )
            )
        )
    return "\n".join(lines) + "\n"


def bell_probs_payload(report: dict, format: str = "csv") -> str:
    """Render a bell-probs distribution report as CSV or JSON."""
    if format not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {format!r}")
    if format == "json":
        return json.dumps(report, indent=2) + "\n"
    lines = [BELL_PROBS_CSV_HEADER]
    for row in report["rows"]:
        for outcome, probability in row["probabilities"].items():
            lines.append(
                ",".join(
                    (
                        _fmt(float(row["t1"])),
                        _fmt(float(row["t2"])),
                        _fmt(float(row["t3"])),
                        _fmt(float(row["period"])),
                        outcome,
                        _fmt(float(probability)),
                    )
                )
            )
    return "\n".join(lines) + "\n"


def emit_report(report: MonteCarloReport, path: str, format: str = "csv") -> None:
    """Write a Monte Carlo report; I/O errors carry the target path."""
    _write_text(path, report_payload(report, format))


def emit_bell_probs(report: dict, path: str, format: str = "csv") -> None:
    """Write a bell-probs distribution report as CSV or JSON."""
    _write_text(path, bell_probs_payload(report, format))


def _write_text(path: str, payload: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(payload)
    except OSError as exc:
        raise OSError(f"failed writing report to {path}: {exc}") from exc
