"""Monte-Carlo simulator for physical-layer security in RIS-assisted wiretap channels."""

__version__ = "0.1.0"

from .channel import ChannelRealization, PathLossModel, draw_channels, path_loss, trial_stream
from .errors import (
    ConfigError,
    DomainError,
    EmptySamplesError,
    LengthMismatchError,
    SimulationError,
    ValidationError,
    ValidationIssue,
)
from .ris import (
    PrenullResult,
    RisProfile,
    amplitude,
    cascaded_gain,
    design_an_partition,
    design_matched,
    design_prenull,
    quantization_codebook,
    quantize_phases,
)
from .scenario import (
    AnPartitionDesign,
    IdealAmplitude,
    MatchedDesign,
    PracticalAmplitude,
    PrenullDesign,
    RadioParams,
    RisConfig,
    Scenario,
    Topology,
    derive_geometry,
    validate,
)
from .secrecy import SecrecySample, SecrecyStats, aggregate, evaluate_trial, secure_power

__all__ = [
    "__version__",
    "AnPartitionDesign",
    "ChannelRealization",
    "ConfigError",
    "DomainError",
    "EmptySamplesError",
    "IdealAmplitude",
    "LengthMismatchError",
    "MatchedDesign",
    "PathLossModel",
    "PracticalAmplitude",
    "PrenullDesign",
    "PrenullResult",
    "RadioParams",
    "RisConfig",
    "RisProfile",
    "Scenario",
    "SecrecySample",
    "SecrecyStats",
    "SimulationError",
    "Topology",
    "ValidationError",
    "ValidationIssue",
    "aggregate",
    "amplitude",
    "cascaded_gain",
    "derive_geometry",
    "design_an_partition",
    "design_matched",
    "design_prenull",
    "draw_channels",
    "evaluate_trial",
    "path_loss",
    "quantization_codebook",
    "quantize_phases",
    "secure_power",
    "trial_stream",
    "validate",
]
