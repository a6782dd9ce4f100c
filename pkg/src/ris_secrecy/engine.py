"""Seeded Monte-Carlo sweeps over scenario parameters.

Every trial owns its RNG substream, so the sample multiset -- and therefore
every byte of the emitted table -- is identical for any worker count.  With
common random numbers (CRN) on, trial t reuses substream (seed, t) at every
axis point, making curves directly comparable; with CRN off the substream is
(seed, point index, t).
"""

from __future__ import annotations

import hashlib
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Mapping, Optional, Sequence

import numpy as np

from . import __version__
from .channel import draw_channels, trial_stream
from .errors import ConfigError
from .ris import leakage_ratio, quantize_phases
from .scenario import (
    AnPartitionDesign,
    IdealAmplitude,
    PracticalAmplitude,
    PrenullDesign,
    Scenario,
    validate,
)
from .secrecy import SecrecySample, SecrecyStats, aggregate, design_profile, evaluate_trial

SWEEP_AXES = ("n_elements", "d_tr", "rho", "mu", "b", "gamma", "model")


@dataclass(frozen=True)
class Variant:
    """A named set of scenario overrides run at every axis point (one curve)."""

    label: str
    overrides: tuple[tuple[str, object], ...] = ()

    @classmethod
    def make(cls, label: str, overrides: Mapping[str, object] | None = None) -> "Variant":
        return cls(label=label, overrides=tuple(sorted((overrides or {}).items())))


@dataclass(frozen=True)
class SweepSpec:
    """One experiment: which scenario field varies, its values, trial budget,
    seed policy, aggregation target, and the curve variants."""

    axis: str
    values: tuple
    trials: Optional[int] = None  # None -> scenario.trials
    crn: bool = True
    c_target: float = 1.0
    variants: tuple[Variant, ...] = ()


def apply_axis(s: Scenario, axis: str, value) -> Scenario:
    """Instantiate the scenario at one sweep point."""
    if axis == "n_elements":
        return replace(s, ris=replace(s.ris, n_elements=int(value)))
    if axis == "d_tr":
        return replace(s, topology=replace(s.topology, d_tr=float(value)))
    if axis == "gamma":
        return replace(s, radio=replace(s.radio, gamma=float(value)))
    if axis == "b":
        bits = None if value in (None, "inf", math.inf) else int(value)
        return replace(s, ris=replace(s.ris, quantization_bits=bits))
    if axis == "model":
        if value == "ideal":
            return replace(s, ris=replace(s.ris, amplitude=IdealAmplitude()))
        if value == "practical":
            amp = s.ris.amplitude if isinstance(s.ris.amplitude, PracticalAmplitude) else PracticalAmplitude()
            return replace(s, ris=replace(s.ris, amplitude=amp))
        raise ConfigError(f"model axis value must be 'ideal' or 'practical', got {value!r}")
    if axis == "rho":
        if not isinstance(s.strategy, AnPartitionDesign):
            raise ConfigError("axis 'rho' needs the an_partition strategy")
        return replace(s, strategy=replace(s.strategy, rho=float(value)))
    if axis == "mu":
        if not isinstance(s.strategy, AnPartitionDesign):
            raise ConfigError("axis 'mu' needs the an_partition strategy")
        return replace(s, strategy=replace(s.strategy, mu=float(value)))
    raise ConfigError(f"unknown sweep axis '{axis}' (expected one of {SWEEP_AXES})")


def apply_overrides(s: Scenario, overrides: Mapping[str, object] | Sequence[tuple[str, object]]) -> Scenario:
    """Apply dotted-path overrides (the --set / variant mechanism)."""
    from .config import apply_scenario_override  # local import to avoid a cycle

    items = overrides.items() if isinstance(overrides, Mapping) else overrides
    for key, value in items:
        s = apply_scenario_override(s, key, value)
    return s


@dataclass
class TrialResults:
    """Per-trial outputs for one (axis point, variant), in trial-index order."""

    samples: list[SecrecySample]
    prenull_failures: int
    mean_prenull_leakage: Optional[float]


def _simulate_trial(s: Scenario, rng) -> tuple[SecrecySample, int, float]:
    ch = draw_channels(s, rng)
    strat = s.strategy
    failed = 0
    leak = math.nan
    if isinstance(strat, PrenullDesign):
        from .ris import design_prenull

        res = design_prenull(ch, s.ris.amplitude, strat.tolerance, strat.max_iters, strat.init)
        profile = res.profile
        failed = 0 if res.converged else 1
    else:
        profile = design_profile(s, ch)
    if s.ris.quantization_bits is not None:
        profile = quantize_phases(profile, s.ris.quantization_bits)
    if isinstance(strat, PrenullDesign):
        # Final leakage of the emitted profile, including amplitude model and
        # quantization re-growth.
        leak = leakage_ratio(profile.psi, ch.h * ch.k)
    return evaluate_trial(s, ch, profile), failed, leak


def _run_chunk(args) -> tuple[int, list[tuple[float, float, float, float, float]], int, list[float]]:
    s, point_index, lo, hi = args
    rows = []
    failures = 0
    leaks = []
    for t in range(lo, hi):
        sample, failed, leak = _simulate_trial(s, trial_stream(s.seed, t, point_index))
        rows.append((sample.c_l, sample.c_e, sample.c_s, sample.sinr_l, sample.sinr_e))
        failures += failed
        leaks.append(leak)
    return lo, rows, failures, leaks


def run_trials_parallel(
    s: Scenario,
    trials: int,
    workers: int = 1,
    point_index: Optional[int] = None,
) -> TrialResults:
    """Run `trials` independent trials of one scenario point.

    The sample list is identical to sequential execution for any worker
    count: chunks are assembled back in trial-index order before anything is
    aggregated.
    """
    prenull = isinstance(s.strategy, PrenullDesign)
    if workers <= 1 or trials < 2 * workers:
        lo, rows, failures, leaks = _run_chunk((s, point_index, 0, trials))
        ordered = rows
    else:
        bounds = np.linspace(0, trials, workers + 1, dtype=int)
        tasks = [(s, point_index, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if a < b]
        ordered = [None] * trials
        failures = 0
        leaks_by_lo = {}
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for lo, rows, fails, leaks in pool.map(_run_chunk, tasks):
                ordered[lo : lo + len(rows)] = rows
                failures += fails
                leaks_by_lo[lo] = leaks
        leaks = [x for lo in sorted(leaks_by_lo) for x in leaks_by_lo[lo]]
    samples = [SecrecySample(*row) for row in ordered]
    mean_leak = float(np.mean(leaks)) if prenull and trials > 0 else None
    return TrialResults(samples=samples, prenull_failures=failures, mean_prenull_leakage=mean_leak)


@dataclass(frozen=True)
class ResultRow:
    """One table row: an axis point under one variant."""

    axis: str
    axis_value: object
    variant: str
    strategy: str
    model: str
    bits: Optional[int]
    gamma: float
    mu: Optional[float]
    rho: Optional[float]
    stats: SecrecyStats
    prenull_failures: int
    mean_prenull_leakage: Optional[float]


@dataclass(frozen=True)
class ResultTable:
    rows: tuple[ResultRow, ...]
    metadata: Mapping[str, object] = field(default_factory=dict)

    def to_csv(self) -> str:
        return render_csv(self)


CSV_COLUMNS = (
    "axis",
    "axis_value",
    "variant",
    "strategy",
    "model",
    "bits",
    "gamma",
    "mu",
    "rho",
    "mean_cs",
    "ci_low",
    "ci_high",
    "sop",
    "intercept",
    "spsc",
    "coverage",
    "see",
    "prenull_failures",
    "prenull_leakage",
    "trials",
    "seed",
)


def _fmt(value) -> str:
    """Numeric fields carry 9 significant digits; counts stay integral."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return format(value, ".9g")
    return str(value)


def render_csv(table: ResultTable) -> str:
    seed = table.metadata.get("seed", "")
    lines = [",".join(CSV_COLUMNS)]
    for r in table.rows:
        st = r.stats
        cells = (
            r.axis,
            _fmt(r.axis_value),
            r.variant,
            r.strategy,
            r.model,
            "inf" if r.bits is None else str(r.bits),
            _fmt(r.gamma),
            _fmt(r.mu),
            _fmt(r.rho),
            _fmt(st.mean_secrecy_rate),
            _fmt(st.ci_low),
            _fmt(st.ci_high),
            _fmt(st.sop),
            _fmt(st.intercept_prob),
            _fmt(st.spsc_prob),
            _fmt(st.coverage_prob),
            _fmt(st.see),
            _fmt(r.prenull_failures),
            _fmt(r.mean_prenull_leakage),
            _fmt(st.trials),
            _fmt(seed),
        )
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _row_identity(s: Scenario) -> dict:
    ris = s.ris
    strat = s.strategy
    return {
        "strategy": strat.kind,
        "model": ris.amplitude.kind,
        "bits": ris.quantization_bits,
        "gamma": s.radio.gamma,
        "mu": strat.mu if isinstance(strat, AnPartitionDesign) else None,
        "rho": strat.rho if isinstance(strat, AnPartitionDesign) else None,
    }


def scenario_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def run_sweep(base: Scenario, spec: SweepSpec, workers: int = 1) -> ResultTable:
    """Run the whole sweep: for each axis value and variant, draw channels,
    design the profile, quantize if configured, evaluate, aggregate.

    Pre-null convergence misses are counted per point and reported in the
    table, never dropped.  Validation problems raise immediately.
    """
    from .config import serialize_config  # local import to avoid a cycle

    validate(base)
    if not spec.values:
        raise ConfigError("sweep.values must be non-empty")
    variants = spec.variants or (Variant.make("base"),)
    trials = spec.trials if spec.trials is not None else base.trials

    rows = []
    for pi, value in enumerate(spec.values):
        point = apply_axis(base, spec.axis, value)
        for variant in variants:
            sc = validate(apply_overrides(point, variant.overrides))
            results = run_trials_parallel(sc, trials, workers, None if spec.crn else pi)
            stats = aggregate(results.samples, spec.c_target, sc)
            ident = _row_identity(sc)
            rows.append(
                ResultRow(
                    axis=spec.axis,
                    axis_value=value,
                    variant=variant.label,
                    stats=stats,
                    prenull_failures=results.prenull_failures,
                    mean_prenull_leakage=results.mean_prenull_leakage,
                    **ident,
                )
            )
    metadata = {
        "seed": base.seed,
        "trials": trials,
        "crn": spec.crn,
        "axis": spec.axis,
        "c_target": spec.c_target,
        "scenario_hash": scenario_digest(serialize_config(base, spec)),
        "tool_version": __version__,
    }
    return ResultTable(rows=tuple(rows), metadata=metadata)
