"""Per-trial fading realizations: Rayleigh links scaled by power-law path loss.

Each trial owns the RNG substream keyed by (seed, trial index) -- or
(seed, point index, trial index) when common random numbers are off -- so
generation is a pure function of the scenario and the trial index, and results
do not depend on scheduling order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .scenario import (
    AnPartitionDesign,
    ExplicitChannels,
    RadioParams,
    UnitGainOverride,
    ValidatedScenario,
    db_to_linear,
    derive_geometry,
)

_SQRT_HALF = np.sqrt(0.5)


@dataclass(frozen=True)
class PathLossModel:
    """Power-law loss L(d) = c0_linear * (d/d0)^(-gamma), linear scale."""

    c0_linear: float
    d0: float
    gamma: float

    @classmethod
    def from_radio(cls, radio: RadioParams) -> "PathLossModel":
        return cls(c0_linear=db_to_linear(radio.c0_db), d0=radio.d0, gamma=radio.gamma)


def path_loss(m: PathLossModel, d: float) -> float:
    """Linear power gain of a link of length d meters."""
    if d <= 0:
        raise DomainError(f"path_loss needs d > 0, got {d}")
    return m.c0_linear * (d / m.d0) ** (-m.gamma)


@dataclass(frozen=True)
class ChannelRealization:
    """One fading draw.  h: transmitter(info antenna)->RIS, g: RIS->receiver,
    k: RIS->eavesdropper; h_an is the AN antenna's transmitter->RIS vector and
    is populated only under the AN partition strategy.  Path loss is folded
    into the coefficients: E|h_i|^2 = L(d_t_ris), etc."""

    h: np.ndarray
    g: np.ndarray
    k: np.ndarray
    h_an: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return self.h.shape[0]


def trial_stream(seed: int, trial_index: int, point_index: Optional[int] = None) -> np.random.Generator:
    """Deterministic per-trial substream.

    point_index=None gives the common-random-numbers keying (same draws for a
    given trial at every sweep point); otherwise streams are also separated
    per point.
    """
    key = (seed, trial_index) if point_index is None else (seed, point_index, trial_index)
    return np.random.default_rng(key)


def draw_channels(s: ValidatedScenario, rng: np.random.Generator) -> ChannelRealization:
    """Draw the trial's link vectors: sqrt(L(d)) * z with z circularly-symmetric
    unit-variance complex Gaussian; h, h_an, g, k mutually independent."""
    dist = derive_geometry(s.topology)
    pl = PathLossModel.from_radio(s.radio)
    n = s.ris.n_elements
    amp_t_ris = np.sqrt(path_loss(pl, dist.d_t_ris))
    amp_ris_rx = np.sqrt(path_loss(pl, dist.d_ris_rx))
    amp_ris_ev = np.sqrt(path_loss(pl, dist.d_ris_ev))
    needs_an = isinstance(s.strategy, AnPartitionDesign)

    ov = s.channel_override
    if isinstance(ov, UnitGainOverride):
        ones = np.ones(n, dtype=np.complex128)
        return ChannelRealization(
            h=amp_t_ris * ones,
            g=amp_ris_rx * ones,
            k=amp_ris_ev * ones,
            h_an=amp_t_ris * ones if needs_an else None,
        )
    if isinstance(ov, ExplicitChannels):
        return ChannelRealization(
            h=np.asarray(ov.h, dtype=np.complex128),
            g=np.asarray(ov.g, dtype=np.complex128),
            k=np.asarray(ov.k, dtype=np.complex128),
            h_an=np.asarray(ov.h_an, dtype=np.complex128) if ov.h_an is not None else None,
        )

    # Four vectors are always drawn in a fixed order so that h, g, k stay
    # identical across strategies sharing a substream.
    z = rng.standard_normal((4, 2, n))
    unit = (z[:, 0, :] + 1j * z[:, 1, :]) * _SQRT_HALF
    return ChannelRealization(
        h=amp_t_ris * unit[0],
        g=amp_ris_rx * unit[2],
        k=amp_ris_ev * unit[3],
        h_an=amp_t_ris * unit[1] if needs_an else None,
    )
