"""Reflection-vector design: matched phases, unit-modulus pre-nulling,
AN element partitioning, phase-dependent amplitude, discrete-phase quantization.

All operations are pure functions of their inputs and safe to run concurrently
across trials.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

import numpy as np

from .channel import ChannelRealization
from .errors import DomainError, LengthMismatchError
from .scenario import AmplitudeModel, IdealAmplitude, an_group_size


def wrap_angle(theta: np.ndarray) -> np.ndarray:
    """Wrap phases into (-pi, pi]."""
    w = np.mod(np.asarray(theta, dtype=float) + np.pi, 2.0 * np.pi) - np.pi
    return np.where(w == -np.pi, np.pi, w)


def amplitude(model: AmplitudeModel, theta) -> np.ndarray:
    """Reflection amplitude at phase theta.

    Ideal model: 1.  Practical model:
    (1 - beta_min) * ((sin(theta - phi) + 1) / 2)^alpha + beta_min,
    which dips to beta_min at theta = phi - pi/2 and returns to 1 at phi + pi/2.
    """
    theta = np.asarray(theta, dtype=float)
    if isinstance(model, IdealAmplitude):
        return np.ones_like(theta)
    base = (np.sin(theta - model.phi) + 1.0) / 2.0
    return (1.0 - model.beta_min) * base**model.alpha + model.beta_min


def cascaded_gain(psi: np.ndarray, a: np.ndarray, b: np.ndarray) -> complex:
    """End-to-end gain through the surface: sum_i a_i * psi_i * b_i."""
    psi = np.asarray(psi)
    a = np.asarray(a)
    b = np.asarray(b)
    if not (psi.shape == a.shape == b.shape):
        raise LengthMismatchError(f"psi/a/b lengths differ: {psi.shape}, {a.shape}, {b.shape}")
    return complex(np.dot(a * b, psi))


def leakage_ratio(psi: np.ndarray, xi: np.ndarray) -> float:
    """Normalized residual power at the nulled node: |xi^T psi|^2 / (||xi||^2 N)."""
    xi = np.asarray(xi)
    norm2 = float(np.vdot(xi, xi).real)
    if norm2 == 0.0:
        return 0.0
    return abs(np.dot(xi, np.asarray(psi))) ** 2 / (norm2 * xi.shape[0])


@dataclass(frozen=True)
class DesignInfo:
    """Provenance of a profile: which strategy built it and with what settings."""

    strategy: str
    quantization_bits: Optional[int] = None
    degenerate_elements: int = 0  # zero channel products forced to theta = 0
    an_group_size: Optional[int] = None
    prenull_iterations: Optional[int] = None
    prenull_residual: Optional[float] = None
    prenull_converged: Optional[bool] = None


@dataclass(frozen=True)
class RisProfile:
    """Reflection vector psi_i = beta_i * exp(j * theta_i), theta in (-pi, pi],
    beta in [0,1], plus the amplitude model and provenance that produced it."""

    theta: np.ndarray
    beta: np.ndarray
    amplitude_model: AmplitudeModel
    info: DesignInfo

    @property
    def psi(self) -> np.ndarray:
        return self.beta * np.exp(1j * self.theta)

    @property
    def n(self) -> int:
        return self.theta.shape[0]


def _profile_from_phases(theta: np.ndarray, model: AmplitudeModel, info: DesignInfo) -> RisProfile:
    theta = wrap_angle(theta)
    return RisProfile(theta=theta, beta=amplitude(model, theta), amplitude_model=model, info=info)


def design_matched(ch: ChannelRealization, model: AmplitudeModel = IdealAmplitude()) -> RisProfile:
    """Phase each element to cancel arg(h_i g_i), co-phasing every reflected
    path at the legitimate receiver.  Elements with an exactly zero product
    (measure-zero) get theta = 0 and are counted in the provenance."""
    prod = ch.h * ch.g
    zero = prod == 0
    theta = np.where(zero, 0.0, -np.angle(prod))
    info = DesignInfo(strategy="matched", degenerate_elements=int(np.count_nonzero(zero)))
    return _profile_from_phases(theta, model, info)


@dataclass(frozen=True)
class PrenullResult:
    """Solver outcome; profile is always usable, converged says whether the
    leakage tolerance was met (callers decide whether to accept a miss)."""

    profile: RisProfile
    converged: bool
    iterations: int
    residual: float
    residual_history: tuple[float, ...]


def _neutral_phases(n: int) -> np.ndarray:
    return wrap_angle(2.0 * np.pi * np.arange(n) / n)


def design_prenull(
    ch: ChannelRealization,
    model: AmplitudeModel = IdealAmplitude(),
    tolerance: float = 1e-6,
    max_iters: int = 500,
    init: str = "neutral",
) -> PrenullResult:
    """Unit-modulus nulling of xi = h * k by alternating projection.

    Repeats (a) orthogonal projection onto the hyperplane xi^T psi = 0,
    psi <- psi - conj(xi) (xi^T psi) / ||xi||^2, and (b) per-element
    renormalization psi_i <- psi_i/|psi_i| (an element whose magnitude lands
    exactly on 0 keeps its previous phase).  Stops when the leakage ratio
    |xi^T psi|^2 / (||xi||^2 N) reaches `tolerance`, or at `max_iters` with
    converged=False.

    init="neutral" starts from a channel-agnostic linear phase ramp
    exp(j 2 pi i / N) (an all-equal start would be exactly parallel to a
    real-symmetric xi and stall the projection); init="matched" starts from
    the receiver-aligned phases, which converges to nulls preserving the
    legitimate link's coherent gain.
    """
    n = ch.n
    if n < 2:
        raise DomainError("pre-nulling needs at least 2 elements")
    xi = ch.h * ch.k
    norm2 = float(np.vdot(xi, xi).real)
    if norm2 == 0.0:
        # Degenerate eavesdropper cascade: nothing to null.
        theta = _neutral_phases(n) if init == "neutral" else design_matched(ch, model).theta
        info = DesignInfo(
            strategy="prenull", prenull_iterations=0, prenull_residual=0.0, prenull_converged=True
        )
        return PrenullResult(_profile_from_phases(theta, model, info), True, 0, 0.0, (0.0,))
    xi_conj = np.conj(xi)

    if init == "matched":
        psi = np.exp(1j * design_matched(ch, IdealAmplitude()).theta)
    elif init == "neutral":
        psi = np.exp(1j * _neutral_phases(n))
    else:
        raise DomainError(f"unknown prenull init '{init}'")

    def residual(v: np.ndarray) -> float:
        return abs(np.dot(xi, v)) ** 2 / (norm2 * n)

    res = residual(psi)
    history = [res]
    iterations = 0
    for iterations in range(1, max_iters + 1):
        if res <= tolerance:
            iterations -= 1
            break
        projected = psi - xi_conj * (np.dot(xi, psi) / norm2)
        mag = np.abs(projected)
        zero = mag == 0.0
        psi = np.where(zero, psi, projected / np.where(zero, 1.0, mag))
        res = residual(psi)
        history.append(res)

    converged = res <= tolerance
    info = DesignInfo(
        strategy="prenull",
        prenull_iterations=iterations,
        prenull_residual=res,
        prenull_converged=converged,
    )
    profile = _profile_from_phases(np.angle(psi), model, info)
    return PrenullResult(profile, converged, iterations, res, tuple(history))


def design_an_partition(
    ch: ChannelRealization,
    rho: float,
    model: AmplitudeModel = IdealAmplitude(),
    an_phase_reference: str = "an_antenna",
) -> RisProfile:
    """Split the surface: the first round(rho*N) elements beam the AN signal at
    the eavesdropper (phases cancel arg(h_an_i k_i)), the rest beam the
    information signal at the receiver (phases cancel arg(h_i g_i))."""
    n = ch.n
    n_an = an_group_size(rho, n)
    if an_phase_reference == "an_antenna":
        if ch.h_an is None:
            raise DomainError("AN partition with an_antenna reference needs h_an")
        an_src = ch.h_an
    elif an_phase_reference == "info_antenna":
        an_src = ch.h
    else:
        raise DomainError(f"unknown an_phase_reference '{an_phase_reference}'")

    prod = np.empty(n, dtype=np.complex128)
    prod[:n_an] = an_src[:n_an] * ch.k[:n_an]
    prod[n_an:] = ch.h[n_an:] * ch.g[n_an:]
    zero = prod == 0
    theta = np.where(zero, 0.0, -np.angle(prod))
    info = DesignInfo(
        strategy="an_partition",
        degenerate_elements=int(np.count_nonzero(zero)),
        an_group_size=n_an,
    )
    return _profile_from_phases(theta, model, info)


@lru_cache(maxsize=None)
def quantization_codebook(bits: int) -> np.ndarray:
    """Uniform midpoint codebook {-pi + (2k+1) pi / 2^b : k = 0..2^b - 1}.
    For b=1 this is exactly {-pi/2, pi/2}."""
    if not (1 <= bits <= 8):
        raise DomainError(f"quantization bits must be in 1..8, got {bits}")
    k = np.arange(2**bits)
    cb = -np.pi + (2 * k + 1) * np.pi / 2**bits
    cb.setflags(write=False)
    return cb


def quantize_phases(p: RisProfile, bits: int) -> RisProfile:
    """Snap each phase to the nearest codeword in wrapped angular distance
    (ties go to the smaller codeword index) and recompute amplitudes from the
    quantized phase."""
    cb = quantization_codebook(bits)
    diff = p.theta[:, None] - cb[None, :]
    dist = np.abs(np.mod(diff + np.pi, 2.0 * np.pi) - np.pi)
    theta_q = cb[np.argmin(dist, axis=1)]  # argmin takes the first (smaller) index on ties
    info = replace(p.info, quantization_bits=bits)
    return RisProfile(
        theta=theta_q,
        beta=amplitude(p.amplitude_model, theta_q),
        amplitude_model=p.amplitude_model,
        info=info,
    )
