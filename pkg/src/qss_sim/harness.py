"""Batch scenario runner and report aggregation.

Trials are embarrassingly parallel: trial t runs with master seed
``seed_base + t`` and owns its register, transcript and random streams
exclusively.  Aggregation is a deterministic fold in trial order no
matter how many workers ran the trials, and the structured JSON-lines
output contains nothing time-dependent, so identical batch specs yield
byte-identical output.
"""

from __future__ import annotations

import dataclasses
import json
import math
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any

from . import __version__
from .protocol import ConfigError, RunReport, ScenarioConfig, run_trial, validate_config

_Z95 = 1.959963984540054


@dataclass(frozen=True)
class BatchSpec:
    scenario: ScenarioConfig
    trials: int = 100
    seed_base: int = 0
    out_path: str | None = None
    output_format: str = "jsonl"
    workers: int = 1


@dataclass
class CheckStats:
    total_samples: int = 0
    total_mismatches: int = 0
    trials_seen: int = 0

    @property
    def mean_error_rate(self) -> float:
        if self.total_samples == 0:
            return 0.0
        return self.total_mismatches / self.total_samples

    def confidence_interval(self) -> tuple[float, float]:
        """95% interval for the per-sample error probability, normal
        approximation with continuity correction."""
        n = self.total_samples
        if n == 0:
            return (0.0, 0.0)
        p = self.mean_error_rate
        half = _Z95 * math.sqrt(p * (1.0 - p) / n) + 0.5 / n
        return (max(0.0, p - half), min(1.0, p + half))

    def to_dict(self) -> dict[str, Any]:
        lo, hi = self.confidence_interval()
        return {
            "total_samples": self.total_samples,
            "total_mismatches": self.total_mismatches,
            "mean_error_rate": self.mean_error_rate,
            "ci95_low": lo,
            "ci95_high": hi,
        }


@dataclass
class AggregateStats:
    trials: int
    detection_frequency: float
    check_stats: dict[str, CheckStats]
    recovery_frequency: dict[str, float]
    eavesdropper_exact_frequency: float | None
    mutual_information_bits: float | None
    wall_clock_seconds: float = 0.0  # table output only, never in JSON lines

    def to_dict(self) -> dict[str, Any]:
        return {
            "trials": self.trials,
            "detection_frequency": self.detection_frequency,
            "checks": {cid: cs.to_dict() for cid, cs in sorted(self.check_stats.items())},
            "recovery_frequency": dict(sorted(self.recovery_frequency.items())),
            "eavesdropper_exact_frequency": self.eavesdropper_exact_frequency,
            "mutual_information_bits": self.mutual_information_bits,
        }


def empirical_mutual_information(pairs: list[tuple[Any, Any]]) -> float:
    """Plug-in estimate of I(X;Y) in bits from observed (x, y) pairs."""
    if not pairs:
        return 0.0
    n = len(pairs)
    joint = Counter(pairs)
    px = Counter(x for x, _ in pairs)
    py = Counter(y for _, y in pairs)
    info = 0.0
    for (x, y), c in joint.items():
        p = c / n
        info += p * math.log2(p * n * n / (px[x] * py[y]))
    return info


def validate_batch(spec: BatchSpec) -> None:
    if spec.trials < 1:
        raise ConfigError("trials must be at least 1")
    if spec.output_format not in ("jsonl", "table"):
        raise ConfigError(f"unknown output format {spec.output_format!r}")
    if spec.workers < 1:
        raise ConfigError("workers must be at least 1")
    validate_config(spec.scenario)


def _trial_config(spec: BatchSpec, t: int) -> ScenarioConfig:
    return dataclasses.replace(spec.scenario, master_seed=spec.seed_base + t)


def run_batch(spec: BatchSpec) -> tuple[AggregateStats, list[RunReport]]:
    """Run all trials and fold their reports into aggregate statistics."""
    validate_batch(spec)
    start = time.perf_counter()
    configs = [_trial_config(spec, t) for t in range(spec.trials)]
    if spec.workers > 1:
        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            reports = list(pool.map(run_trial, configs))
    else:
        reports = [run_trial(c) for c in configs]
    stats = aggregate(reports)
    stats.wall_clock_seconds = time.perf_counter() - start
    return stats, reports


def aggregate(reports: list[RunReport]) -> AggregateStats:
    check_stats: dict[str, CheckStats] = {}
    detected = 0
    recovery_hits: Counter = Counter()
    recovery_seen: Counter = Counter()
    eav_seen = 0
    eav_exact = 0
    symbol_pairs: list[tuple[int, int]] = []
    for report in reports:
        if report.detected:
            detected += 1
        for check in report.checks:
            cs = check_stats.setdefault(check.check_id, CheckStats())
            cs.total_samples += check.samples
            cs.total_mismatches += check.mismatches
            cs.trials_seen += 1
        for party, bits in report.recovered.items():
            recovery_seen[party] += 1
            if bits is not None and bits == report.dealer_message:
                recovery_hits[party] += 1
        if report.eavesdropper_message is not None:
            eav_seen += 1
            if report.eavesdropper_message == report.dealer_message:
                eav_exact += 1
            dealer, eav = report.dealer_message, report.eavesdropper_message
            for i in range(0, min(len(dealer), len(eav)) - 1, 2):
                symbol_pairs.append(
                    (2 * dealer[i] + dealer[i + 1], 2 * eav[i] + eav[i + 1])
                )
    n = len(reports)
    return AggregateStats(
        trials=n,
        detection_frequency=detected / n if n else 0.0,
        check_stats=check_stats,
        recovery_frequency={
            party: recovery_hits[party] / seen
            for party, seen in sorted(recovery_seen.items())
        },
        eavesdropper_exact_frequency=(eav_exact / eav_seen) if eav_seen else None,
        mutual_information_bits=(
            empirical_mutual_information(symbol_pairs) if symbol_pairs else None
        ),
    )


# ---------------------------------------------------------------------------
# serialization


def _json(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=False)


def jsonl_report(spec: BatchSpec, stats: AggregateStats, reports: list[RunReport]) -> str:
    """UTF-8 JSON lines: one object per trial plus one summary object.
    Deterministic byte-for-byte for a given BatchSpec."""
    lines = []
    for t, report in enumerate(reports):
        line = {
            "record": "trial",
            "trial": t,
            "seed": spec.seed_base + t,
        }
        line.update(report.to_dict())
        line["recovery_exact"] = {
            party: (bits is not None and bits == report.dealer_message)
            for party, bits in report.recovered.items()
        }
        lines.append(_json(line))
    summary = {
        "record": "summary",
        "version": __version__,
        "config": spec.scenario.to_dict(),
        "trials": spec.trials,
        "seed_base": spec.seed_base,
        "ci_method": "normal approximation with continuity correction, 95%",
    }
    summary.update(stats.to_dict())
    lines.append(_json(summary))
    return "\n".join(lines) + "\n"


def table_report(spec: BatchSpec, stats: AggregateStats) -> str:
    """Fixed-width human-readable summary table."""
    out = []
    out.append(f"qss-sim {__version__}")
    cfg = spec.scenario
    out.append(
        f"protocol={cfg.protocol} n_pairs={cfg.n_pairs} agents={cfg.agent_count} "
        f"adversary={cfg.adversary.kind} trials={spec.trials} seed_base={spec.seed_base}"
    )
    out.append("")
    out.append(f"{'check':<22}{'samples':>9}{'mismatch':>9}{'error':>9}  95% CI")
    for cid, cs in sorted(stats.check_stats.items()):
        lo, hi = cs.confidence_interval()
        out.append(
            f"{cid:<22}{cs.total_samples:>9}{cs.total_mismatches:>9}"
            f"{cs.mean_error_rate:>9.4f}  [{lo:.4f}, {hi:.4f}]"
        )
    out.append("")
    out.append(f"detection frequency     {stats.detection_frequency:.4f}")
    for party, freq in sorted(stats.recovery_frequency.items()):
        out.append(f"exact recovery ({party:<8}) {freq:.4f}")
    if stats.eavesdropper_exact_frequency is not None:
        out.append(
            f"eavesdropper exact      {stats.eavesdropper_exact_frequency:.4f}"
        )
    if stats.mutual_information_bits is not None:
        out.append(
            f"eavesdropper MI         {stats.mutual_information_bits:.4f} bits/symbol"
        )
    out.append(f"wall clock              {stats.wall_clock_seconds:.2f} s")
    return "\n".join(out) + "\n"


def emit_report(
    spec: BatchSpec, stats: AggregateStats, reports: list[RunReport]
) -> str:
    if spec.output_format == "table":
        return table_report(spec, stats)
    return jsonl_report(spec, stats, reports)
