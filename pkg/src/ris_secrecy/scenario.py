"""Experiment description: geometry, radio constants, RIS configuration, design strategy.

A Scenario is immutable once built and, after :func:`validate`, safe to share
across trial workers.  The direct transmitter->receiver and
transmitter->eavesdropper paths are blocked by an obstruction and never enter
any rate expression: without a RIS both links have zero capacity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import ValidationError, ValidationIssue


def dbm_to_mw(x_dbm: float) -> float:
    """Exact dBm -> milliwatt conversion: 10^(x/10)."""
    return 10.0 ** (x_dbm / 10.0)


def dbm_to_watts(x_dbm: float) -> float:
    return dbm_to_mw(x_dbm) / 1000.0


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


@dataclass(frozen=True)
class Topology:
    """Line topology: transmitter, eavesdropper, receiver on one line, RIS on a
    parallel line at vertical offset d_v.  All distances in meters."""

    d_v: float
    d_tl: float
    d_te: float
    d_tr: float
    # Allowed horizontal placement range for the RIS; sweeps must stay inside.
    d_tr_domain: tuple[float, float] = (5.0, 19.0)


@dataclass(frozen=True)
class GeometryDistances:
    """Euclidean link distances derived from a Topology, meters."""

    d_t_ris: float
    d_ris_rx: float
    d_ris_ev: float


def derive_geometry(t: Topology) -> GeometryDistances:
    """Link distances by Pythagoras from the line topology."""
    return GeometryDistances(
        d_t_ris=math.hypot(t.d_tr, t.d_v),
        d_ris_rx=math.hypot(t.d_tl - t.d_tr, t.d_v),
        d_ris_ev=math.hypot(t.d_te - t.d_tr, t.d_v),
    )


@dataclass(frozen=True)
class RadioParams:
    """Transmit power / noise in dBm, power-law path loss constants.

    c0_db is the path loss at the reference distance d0 (dB), gamma the
    path-loss exponent.
    """

    tx_power_dbm: float = 20.0
    noise_power_dbm: float = -100.0
    c0_db: float = -30.0
    d0: float = 1.0
    gamma: float = 3.0


@dataclass(frozen=True)
class IdealAmplitude:
    """Unit reflection amplitude at every phase."""

    kind: str = field(default="ideal", init=False)


@dataclass(frozen=True)
class PracticalAmplitude:
    """Phase-dependent reflection amplitude
    beta(theta) = (1 - beta_min) * ((sin(theta - phi) + 1) / 2)^alpha + beta_min.

    beta_min = 1 or alpha = 0 collapses to the ideal model exactly.
    """

    beta_min: float = 0.5
    phi: float = math.pi / 2
    alpha: float = 2.0
    kind: str = field(default="practical", init=False)


AmplitudeModel = Union[IdealAmplitude, PracticalAmplitude]


@dataclass(frozen=True)
class RisConfig:
    n_elements: int = 50
    amplitude: AmplitudeModel = IdealAmplitude()
    quantization_bits: Optional[int] = None  # None = continuous phases


@dataclass(frozen=True)
class MatchedDesign:
    """Co-phase every reflected path at the legitimate receiver
    (eavesdropper channel unknown)."""

    kind: str = field(default="matched", init=False)


@dataclass(frozen=True)
class PrenullDesign:
    """Null the information signal at the eavesdropper under the unit-modulus
    constraint (eavesdropper channel known).

    tolerance is on the leakage ratio |xi^T psi|^2 / (||xi||^2 N).  init
    selects the solver start: "neutral" (channel-agnostic phase ramp) or
    "matched" (receiver-aligned; converges to nulls that keep the legitimate
    link coherent, giving much higher secrecy rates).
    """

    tolerance: float = 1e-6
    max_iters: int = 500
    init: str = "neutral"
    kind: str = field(default="prenull", init=False)


@dataclass(frozen=True)
class AnPartitionDesign:
    """Two-antenna artificial-noise scheme: info power mu*P, AN power (1-mu)*P;
    the first round(rho*N) elements beam AN at the eavesdropper, the rest beam
    information at the receiver.

    an_phase_reference picks which transmit-antenna channel steers the AN
    group ("an_antenna" or "info_antenna"); an_nulls_receiver drops the AN
    interference term at the legitimate receiver.
    """

    mu: float = 0.5
    rho: float = 0.5
    an_phase_reference: str = "an_antenna"
    an_nulls_receiver: bool = False
    kind: str = field(default="an_partition", init=False)


DesignStrategy = Union[MatchedDesign, PrenullDesign, AnPartitionDesign]


def an_group_size(rho: float, n_elements: int) -> int:
    """round(rho*N) with ties toward the larger AN group."""
    return int(math.floor(rho * n_elements + 0.5))


@dataclass(frozen=True)
class UnitGainOverride:
    """Test hook: fading factor forced to 1+0j, so each gain is sqrt(L(d))."""

    mode: str = field(default="unit_gain", init=False)


@dataclass(frozen=True)
class ExplicitChannels:
    """Test hook: fixed channel vectors used for every trial."""

    h: tuple[complex, ...]
    g: tuple[complex, ...]
    k: tuple[complex, ...]
    h_an: Optional[tuple[complex, ...]] = None
    mode: str = field(default="explicit", init=False)


ChannelOverride = Union[UnitGainOverride, ExplicitChannels]

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class Scenario:
    topology: Topology = Topology(d_v=10.0, d_tl=20.0, d_te=15.0, d_tr=10.0)
    radio: RadioParams = RadioParams()
    ris: RisConfig = RisConfig()
    strategy: DesignStrategy = MatchedDesign()
    trials: int = 10000
    seed: int = 1
    channel_override: Optional[ChannelOverride] = None


# validate() returns the scenario unchanged; the alias documents intent.
ValidatedScenario = Scenario


def validate(s: Scenario) -> ValidatedScenario:
    """Check every invariant and report all violations together.

    Raises ValidationError carrying one ValidationIssue per violation;
    returns the scenario unchanged when everything holds (idempotent).
    """
    issues: list[ValidationIssue] = []

    t = s.topology
    for name in ("d_v", "d_tl", "d_te", "d_tr"):
        if getattr(t, name) <= 0:
            issues.append(ValidationIssue(f"topology.{name}", "must be positive"))
    if t.d_te >= t.d_tl:
        issues.append(
            ValidationIssue("topology.d_te", "eavesdropper must sit between transmitter and receiver (d_te < d_tl)")
        )
    lo, hi = t.d_tr_domain
    if not (0 < lo <= hi):
        issues.append(ValidationIssue("topology.d_tr_domain", "must satisfy 0 < lo <= hi"))
    elif not (lo <= t.d_tr <= hi):
        issues.append(ValidationIssue("topology.d_tr", f"outside declared sweep domain [{lo}, {hi}]"))

    r = s.radio
    if r.gamma < 2.0:
        issues.append(ValidationIssue("radio.gamma", "below free-space lower bound 2.0"))
    if r.d0 <= 0:
        issues.append(ValidationIssue("radio.d0", "must be positive"))

    ris = s.ris
    if ris.n_elements < 1:
        issues.append(ValidationIssue("ris.n_elements", "must be a positive integer"))
    if isinstance(ris.amplitude, PracticalAmplitude):
        a = ris.amplitude
        if not (0.0 <= a.beta_min <= 1.0):
            issues.append(ValidationIssue("ris.amplitude.beta_min", "outside [0,1]"))
        if a.alpha < 0:
            issues.append(ValidationIssue("ris.amplitude.alpha", "must be >= 0"))
    b = ris.quantization_bits
    if b is not None and not (1 <= b <= 8):
        issues.append(ValidationIssue("ris.quantization_bits", "outside {1..8}"))

    st = s.strategy
    if isinstance(st, PrenullDesign):
        if st.tolerance <= 0:
            issues.append(ValidationIssue("strategy.tolerance", "must be positive"))
        if st.max_iters < 1:
            issues.append(ValidationIssue("strategy.max_iters", "must be >= 1"))
        if st.init not in ("neutral", "matched"):
            issues.append(ValidationIssue("strategy.init", "must be 'neutral' or 'matched'"))
        if ris.n_elements < 2:
            issues.append(ValidationIssue("ris.n_elements", "pre-nulling needs at least 2 elements"))
    elif isinstance(st, AnPartitionDesign):
        if not (0.0 < st.mu < 1.0):
            issues.append(ValidationIssue("strategy.mu", "outside (0,1)"))
        if not (0.0 <= st.rho <= 1.0):
            issues.append(ValidationIssue("strategy.rho", "outside [0,1]"))
        if st.an_phase_reference not in ("an_antenna", "info_antenna"):
            issues.append(ValidationIssue("strategy.an_phase_reference", "must be 'an_antenna' or 'info_antenna'"))

    if s.trials < 1:
        issues.append(ValidationIssue("trials", "must be a positive integer"))
    if not (0 <= s.seed <= MAX_SEED):
        issues.append(ValidationIssue("seed", "must fit in 64 bits"))

    if isinstance(s.channel_override, ExplicitChannels):
        ov = s.channel_override
        n = ris.n_elements
        for name in ("h", "g", "k"):
            if len(getattr(ov, name)) != n:
                issues.append(ValidationIssue(f"channel_override.{name}", f"length must equal n_elements ({n})"))
        if ov.h_an is not None and len(ov.h_an) != n:
            issues.append(ValidationIssue("channel_override.h_an", f"length must equal n_elements ({n})"))

    if issues:
        raise ValidationError(issues)
    return s
