"""Per-trial SINRs / secrecy rate and the aggregated secrecy metrics.

Rates are spectral efficiencies in bits/s/Hz; SINRs are linear.  The secrecy
rate is the clamped capacity difference max(C_l - C_e, 0); the unclamped
difference is kept (via c_l, c_e) for intercept / SPSC accounting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np
from scipy import stats

from .channel import ChannelRealization, draw_channels, trial_stream
from .errors import EmptySamplesError, LengthMismatchError
from .ris import (
    RisProfile,
    cascaded_gain,
    design_an_partition,
    design_matched,
    design_prenull,
    quantize_phases,
)
from .scenario import AnPartitionDesign, MatchedDesign, PrenullDesign, Scenario, ValidatedScenario, dbm_to_watts

_Z95 = float(stats.norm.ppf(0.975))


@dataclass(frozen=True)
class SecrecySample:
    """One trial: legitimate / eavesdropper rates and SINRs, clamped secrecy rate."""

    c_l: float
    c_e: float
    c_s: float
    sinr_l: float
    sinr_e: float


def evaluate_trial(s: ValidatedScenario, ch: ChannelRealization, p: RisProfile) -> SecrecySample:
    """Rates for one fading draw under the configured strategy.

    Matched / pre-null: SINR = P |gain|^2 / sigma^2 at each node.  AN
    partition: the info antenna carries mu*P and the AN antenna (1-mu)*P; AN
    is interference at both nodes unless an_nulls_receiver is set.
    """
    if p.n != ch.n:
        raise LengthMismatchError(f"profile has {p.n} elements, channels have {ch.n}")
    tx_p = dbm_to_watts(s.radio.tx_power_dbm)
    noise = dbm_to_watts(s.radio.noise_power_dbm)
    psi = p.psi

    strat = s.strategy
    if isinstance(strat, AnPartitionDesign):
        mu = strat.mu
        g_info_l = cascaded_gain(psi, ch.h, ch.g)
        g_info_e = cascaded_gain(psi, ch.h, ch.k)
        g_an_l = cascaded_gain(psi, ch.h_an, ch.g)
        g_an_e = cascaded_gain(psi, ch.h_an, ch.k)
        an_at_rx = 0.0 if strat.an_nulls_receiver else (1.0 - mu) * tx_p * abs(g_an_l) ** 2
        sinr_l = mu * tx_p * abs(g_info_l) ** 2 / (an_at_rx + noise)
        sinr_e = mu * tx_p * abs(g_info_e) ** 2 / ((1.0 - mu) * tx_p * abs(g_an_e) ** 2 + noise)
    else:
        sinr_l = tx_p * abs(cascaded_gain(psi, ch.h, ch.g)) ** 2 / noise
        sinr_e = tx_p * abs(cascaded_gain(psi, ch.h, ch.k)) ** 2 / noise

    c_l = math.log2(1.0 + sinr_l)
    c_e = math.log2(1.0 + sinr_e)
    return SecrecySample(c_l=c_l, c_e=c_e, c_s=max(c_l - c_e, 0.0), sinr_l=sinr_l, sinr_e=sinr_e)


@dataclass(frozen=True)
class SecrecyStats:
    """Monte-Carlo secrecy metrics over a trial set.

    coverage_prob is defined as the exact complement 1 - sop on the same
    samples; intercept counts the boundary (c_l - c_e <= 0), so
    spsc_prob = 1 - intercept_prob exactly.  see is the mean secrecy spectral
    efficiency per watt of total transmit power (bits/s/Hz/W).
    """

    mean_secrecy_rate: float
    ci_low: float
    ci_high: float
    sop: float
    intercept_prob: float
    spsc_prob: float
    coverage_prob: float
    see: float
    c_target: float
    trials: int
    secure_power_dbm: Optional[float] = None  # populated by secure_power(), None otherwise


def aggregate(samples: Sequence[SecrecySample], c_target: float, s: Scenario) -> SecrecyStats:
    """Fold trial samples into the metric set with a normal-approximation 95% CI.

    Deterministic for a given sample sequence; the engine always supplies
    samples in trial-index order so results do not depend on worker count.
    """
    n = len(samples)
    if n == 0:
        raise EmptySamplesError("aggregate needs at least one sample")
    cs = np.fromiter((x.c_s for x in samples), dtype=float, count=n)
    diff_nonpos = np.fromiter((x.c_l - x.c_e <= 0.0 for x in samples), dtype=bool, count=n)

    mean = float(np.mean(cs))
    half = _Z95 * float(np.std(cs, ddof=1)) / math.sqrt(n) if n > 1 else 0.0
    sop = float(np.count_nonzero(cs < c_target)) / n
    intercept = float(np.count_nonzero(diff_nonpos)) / n
    return SecrecyStats(
        mean_secrecy_rate=mean,
        ci_low=mean - half,
        ci_high=mean + half,
        sop=sop,
        intercept_prob=intercept,
        spsc_prob=1.0 - intercept,
        coverage_prob=1.0 - sop,
        see=mean / dbm_to_watts(s.radio.tx_power_dbm),
        c_target=c_target,
        trials=n,
    )


def design_profile(s: ValidatedScenario, ch: ChannelRealization) -> RisProfile:
    """Build the reflection profile the scenario's strategy prescribes
    (without quantization; the engine applies that separately)."""
    strat = s.strategy
    if isinstance(strat, MatchedDesign):
        return design_matched(ch, s.ris.amplitude)
    if isinstance(strat, PrenullDesign):
        return design_prenull(ch, s.ris.amplitude, strat.tolerance, strat.max_iters, strat.init).profile
    if isinstance(strat, AnPartitionDesign):
        return design_an_partition(ch, strat.rho, s.ris.amplitude, strat.an_phase_reference)
    raise TypeError(f"unknown strategy {strat!r}")


def default_channel_set(s: ValidatedScenario, trials: int) -> list[ChannelRealization]:
    """Fixed channel sample set on the scenario's own substreams."""
    return [draw_channels(s, trial_stream(s.seed, t)) for t in range(trials)]


POWER_BRACKET_DBM = (-20.0, 50.0)
POWER_TOL_DB = 0.1


def secure_power(
    s: ValidatedScenario,
    c_target: float,
    channel_set: Sequence[ChannelRealization],
) -> Optional[float]:
    """Smallest transmit power (dBm) whose mean secrecy rate over the fixed
    channel set reaches c_target; None when unattainable at the 50 dBm cap.

    The same channel realizations (and hence profiles) are reused at every
    probed power -- common random numbers -- and the answer comes from
    bisection on [-20, 50] dBm to a 0.1 dB tolerance.
    """
    profiles = [design_profile(s, ch) for ch in channel_set]
    if s.ris.quantization_bits is not None:
        profiles = [quantize_phases(p, s.ris.quantization_bits) for p in profiles]

    def mean_rate(p_dbm: float) -> float:
        sp = replace(s, radio=replace(s.radio, tx_power_dbm=p_dbm))
        return float(np.mean([evaluate_trial(sp, ch, pr).c_s for ch, pr in zip(channel_set, profiles)]))

    lo, hi = POWER_BRACKET_DBM
    if mean_rate(lo) >= c_target:
        return lo
    if mean_rate(hi) < c_target:
        return None
    while hi - lo > POWER_TOL_DB:
        mid = 0.5 * (lo + hi)
        if mean_rate(mid) >= c_target:
            hi = mid
        else:
            lo = mid
    return hi
