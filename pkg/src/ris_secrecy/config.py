"""Scenario file format: strict YAML with nested sections.

Unknown keys are fatal, not warnings -- radio constants are easy to typo and a
silently wrong curve is the worst failure mode.  parse -> serialize -> parse
is the identity on valid files.
"""

from __future__ import annotations

import math
from dataclasses import replace
from typing import Any, Mapping

import yaml

from .engine import SWEEP_AXES, SweepSpec, Variant
from .errors import ConfigError
from .scenario import (
    AnPartitionDesign,
    ExplicitChannels,
    IdealAmplitude,
    MatchedDesign,
    PracticalAmplitude,
    PrenullDesign,
    RadioParams,
    RisConfig,
    Scenario,
    Topology,
    UnitGainOverride,
)

SCHEMA_VERSION = 1


def _require_mapping(node: Any, path: str) -> Mapping:
    if not isinstance(node, Mapping):
        raise ConfigError(f"'{path}' must be a mapping")
    return node


def _check_keys(node: Mapping, path: str, allowed: set[str]) -> None:
    unknown = [k for k in node if k not in allowed]
    if unknown:
        raise ConfigError(f"unknown key '{path}.{unknown[0]}'" if path else f"unknown key '{unknown[0]}'")


_REQUIRED = object()


def _get(node: Mapping, key: str, path: str, default=_REQUIRED):
    if key in node:
        return node[key]
    if default is _REQUIRED:
        raise ConfigError(f"missing key '{path}.{key}'")
    return default


def _float(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"'{path}' must be a number")
    return float(value)


def _int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"'{path}' must be an integer")
    return value


def _parse_topology(node: Mapping) -> Topology:
    path = "scenario.topology"
    _check_keys(node, path, {"d_v", "d_tl", "d_te", "d_tr", "d_tr_domain"})
    domain = _get(node, "d_tr_domain", path, list(Topology.d_tr_domain))
    if not (isinstance(domain, (list, tuple)) and len(domain) == 2):
        raise ConfigError(f"'{path}.d_tr_domain' must be a [lo, hi] pair")
    return Topology(
        d_v=_float(_get(node, "d_v", path), f"{path}.d_v"),
        d_tl=_float(_get(node, "d_tl", path), f"{path}.d_tl"),
        d_te=_float(_get(node, "d_te", path), f"{path}.d_te"),
        d_tr=_float(_get(node, "d_tr", path), f"{path}.d_tr"),
        d_tr_domain=(_float(domain[0], f"{path}.d_tr_domain[0]"), _float(domain[1], f"{path}.d_tr_domain[1]")),
    )


def _parse_radio(node: Mapping) -> RadioParams:
    path = "scenario.radio"
    _check_keys(node, path, {"tx_power_dbm", "noise_power_dbm", "c0_db", "d0", "gamma"})
    return RadioParams(
        tx_power_dbm=_float(_get(node, "tx_power_dbm", path), f"{path}.tx_power_dbm"),
        noise_power_dbm=_float(_get(node, "noise_power_dbm", path), f"{path}.noise_power_dbm"),
        c0_db=_float(_get(node, "c0_db", path), f"{path}.c0_db"),
        d0=_float(_get(node, "d0", path), f"{path}.d0"),
        gamma=_float(_get(node, "gamma", path), f"{path}.gamma"),
    )


def _parse_amplitude(node: Any):
    path = "scenario.ris.amplitude"
    node = _require_mapping(node, path)
    model = _get(node, "model", path)
    if model == "ideal":
        _check_keys(node, path, {"model"})
        return IdealAmplitude()
    if model == "practical":
        _check_keys(node, path, {"model", "beta_min", "phi", "alpha"})
        return PracticalAmplitude(
            beta_min=_float(_get(node, "beta_min", path, 0.5), f"{path}.beta_min"),
            phi=_float(_get(node, "phi", path, math.pi / 2), f"{path}.phi"),
            alpha=_float(_get(node, "alpha", path, 2.0), f"{path}.alpha"),
        )
    raise ConfigError(f"'{path}.model' must be 'ideal' or 'practical'")


def _parse_bits(value, path: str):
    if value is None or value == "inf" or (isinstance(value, float) and math.isinf(value)):
        return None
    return _int(value, path)


def _parse_ris(node: Mapping) -> RisConfig:
    path = "scenario.ris"
    _check_keys(node, path, {"n_elements", "amplitude", "quantization_bits"})
    return RisConfig(
        n_elements=_int(_get(node, "n_elements", path), f"{path}.n_elements"),
        amplitude=_parse_amplitude(_get(node, "amplitude", path, {"model": "ideal"})),
        quantization_bits=_parse_bits(_get(node, "quantization_bits", path, None), f"{path}.quantization_bits"),
    )


def _parse_strategy(node: Mapping):
    path = "scenario.strategy"
    kind = _get(node, "kind", path)
    if kind == "matched":
        _check_keys(node, path, {"kind"})
        return MatchedDesign()
    if kind == "prenull":
        _check_keys(node, path, {"kind", "tolerance", "max_iters", "init"})
        return PrenullDesign(
            tolerance=_float(_get(node, "tolerance", path, 1e-6), f"{path}.tolerance"),
            max_iters=_int(_get(node, "max_iters", path, 500), f"{path}.max_iters"),
            init=str(_get(node, "init", path, "neutral")),
        )
    if kind == "an_partition":
        _check_keys(node, path, {"kind", "mu", "rho", "an_phase_reference", "an_nulls_receiver"})
        return AnPartitionDesign(
            mu=_float(_get(node, "mu", path), f"{path}.mu"),
            rho=_float(_get(node, "rho", path), f"{path}.rho"),
            an_phase_reference=str(_get(node, "an_phase_reference", path, "an_antenna")),
            an_nulls_receiver=bool(_get(node, "an_nulls_receiver", path, False)),
        )
    raise ConfigError(f"'{path}.kind' must be 'matched', 'prenull' or 'an_partition'")


def _parse_complex_vector(node, path: str) -> tuple[complex, ...]:
    if not isinstance(node, (list, tuple)):
        raise ConfigError(f"'{path}' must be a list of [re, im] pairs")
    out = []
    for i, pair in enumerate(node):
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise ConfigError(f"'{path}[{i}]' must be a [re, im] pair")
        out.append(complex(_float(pair[0], f"{path}[{i}][0]"), _float(pair[1], f"{path}[{i}][1]")))
    return tuple(out)


def _parse_override(node):
    if node is None:
        return None
    path = "scenario.channel_override"
    node = _require_mapping(node, path)
    mode = _get(node, "mode", path)
    if mode == "unit_gain":
        _check_keys(node, path, {"mode"})
        return UnitGainOverride()
    if mode == "explicit":
        _check_keys(node, path, {"mode", "h", "g", "k", "h_an"})
        h_an = _get(node, "h_an", path, None)
        return ExplicitChannels(
            h=_parse_complex_vector(_get(node, "h", path), f"{path}.h"),
            g=_parse_complex_vector(_get(node, "g", path), f"{path}.g"),
            k=_parse_complex_vector(_get(node, "k", path), f"{path}.k"),
            h_an=None if h_an is None else _parse_complex_vector(h_an, f"{path}.h_an"),
        )
    raise ConfigError(f"'{path}.mode' must be 'unit_gain' or 'explicit'")


def _parse_scenario(node: Mapping) -> Scenario:
    path = "scenario"
    _check_keys(node, path, {"topology", "radio", "ris", "strategy", "trials", "seed", "channel_override"})
    return Scenario(
        topology=_parse_topology(_require_mapping(_get(node, "topology", path), "scenario.topology")),
        radio=_parse_radio(_require_mapping(_get(node, "radio", path), "scenario.radio")),
        ris=_parse_ris(_require_mapping(_get(node, "ris", path), "scenario.ris")),
        strategy=_parse_strategy(_require_mapping(_get(node, "strategy", path), "scenario.strategy")),
        trials=_int(_get(node, "trials", path), "scenario.trials"),
        seed=_int(_get(node, "seed", path), "scenario.seed"),
        channel_override=_parse_override(_get(node, "channel_override", path, None)),
    )


def _parse_axis_value(axis: str, value):
    if axis == "b":
        return _parse_bits(value, "sweep.values")
    if axis == "model":
        if value not in ("ideal", "practical"):
            raise ConfigError("sweep.values for axis 'model' must be 'ideal' or 'practical'")
        return value
    if axis == "n_elements":
        return _int(value, "sweep.values")
    return _float(value, "sweep.values")


def _parse_sweep(node: Mapping) -> SweepSpec:
    path = "sweep"
    _check_keys(node, path, {"axis", "values", "trials", "crn", "c_target", "variants"})
    axis = _get(node, "axis", path)
    if axis not in SWEEP_AXES:
        raise ConfigError(f"'sweep.axis' must be one of {SWEEP_AXES}, got {axis!r}")
    raw_values = _get(node, "values", path)
    if not isinstance(raw_values, (list, tuple)) or not raw_values:
        raise ConfigError("'sweep.values' must be a non-empty list")
    values = tuple(_parse_axis_value(axis, v) for v in raw_values)
    trials = _get(node, "trials", path, None)
    variants = []
    for i, vnode in enumerate(_get(node, "variants", path, [])):
        vpath = f"sweep.variants[{i}]"
        vnode = _require_mapping(vnode, vpath)
        _check_keys(vnode, vpath, {"label", "set"})
        overrides = _require_mapping(_get(vnode, "set", vpath, {}), f"{vpath}.set")
        variants.append(Variant.make(str(_get(vnode, "label", vpath)), dict(overrides)))
    return SweepSpec(
        axis=axis,
        values=values,
        trials=None if trials is None else _int(trials, "sweep.trials"),
        crn=bool(_get(node, "crn", path, True)),
        c_target=_float(_get(node, "c_target", path, 1.0), "sweep.c_target"),
        variants=tuple(variants),
    )


def parse_config(text: str) -> tuple[Scenario, SweepSpec]:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError(f"not valid YAML: {e}") from e
    doc = _require_mapping(doc, "(document)")
    _check_keys(doc, "", {"schema_version", "scenario", "sweep"})
    version = _get(doc, "schema_version", "")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {version!r} (this tool reads {SCHEMA_VERSION})")
    scenario = _parse_scenario(_require_mapping(_get(doc, "scenario", ""), "scenario"))
    sweep = _parse_sweep(_require_mapping(_get(doc, "sweep", ""), "sweep"))
    return scenario, sweep


def load_config(path) -> tuple[Scenario, SweepSpec]:
    with open(path, "r", encoding="utf-8") as f:
        return parse_config(f.read())


def _amplitude_doc(model) -> dict:
    if isinstance(model, IdealAmplitude):
        return {"model": "ideal"}
    return {"model": "practical", "beta_min": model.beta_min, "phi": model.phi, "alpha": model.alpha}


def _strategy_doc(strategy) -> dict:
    if isinstance(strategy, MatchedDesign):
        return {"kind": "matched"}
    if isinstance(strategy, PrenullDesign):
        return {"kind": "prenull", "tolerance": strategy.tolerance, "max_iters": strategy.max_iters, "init": strategy.init}
    return {
        "kind": "an_partition",
        "mu": strategy.mu,
        "rho": strategy.rho,
        "an_phase_reference": strategy.an_phase_reference,
        "an_nulls_receiver": strategy.an_nulls_receiver,
    }


def _override_doc(ov):
    if ov is None:
        return None
    if isinstance(ov, UnitGainOverride):
        return {"mode": "unit_gain"}
    doc = {
        "mode": "explicit",
        "h": [[z.real, z.imag] for z in ov.h],
        "g": [[z.real, z.imag] for z in ov.g],
        "k": [[z.real, z.imag] for z in ov.k],
    }
    doc["h_an"] = None if ov.h_an is None else [[z.real, z.imag] for z in ov.h_an]
    return doc


def _axis_value_doc(axis: str, value):
    if axis == "b" and value is None:
        return "inf"
    return value


def serialize_config(scenario: Scenario, sweep: SweepSpec) -> str:
    """Canonical YAML for a (scenario, sweep) pair; also the hashing input."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "scenario": {
            "topology": {
                "d_v": scenario.topology.d_v,
                "d_tl": scenario.topology.d_tl,
                "d_te": scenario.topology.d_te,
                "d_tr": scenario.topology.d_tr,
                "d_tr_domain": list(scenario.topology.d_tr_domain),
            },
            "radio": {
                "tx_power_dbm": scenario.radio.tx_power_dbm,
                "noise_power_dbm": scenario.radio.noise_power_dbm,
                "c0_db": scenario.radio.c0_db,
                "d0": scenario.radio.d0,
                "gamma": scenario.radio.gamma,
            },
            "ris": {
                "n_elements": scenario.ris.n_elements,
                "amplitude": _amplitude_doc(scenario.ris.amplitude),
                "quantization_bits": scenario.ris.quantization_bits,
            },
            "strategy": _strategy_doc(scenario.strategy),
            "trials": scenario.trials,
            "seed": scenario.seed,
            "channel_override": _override_doc(scenario.channel_override),
        },
        "sweep": {
            "axis": sweep.axis,
            "values": [_axis_value_doc(sweep.axis, v) for v in sweep.values],
            "trials": sweep.trials,
            "crn": sweep.crn,
            "c_target": sweep.c_target,
            "variants": [{"label": v.label, "set": dict(v.overrides)} for v in sweep.variants],
        },
    }
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=False)


_AMPLITUDE_FIELDS = {"beta_min", "phi", "alpha"}


def apply_scenario_override(s: Scenario, key: str, value) -> Scenario:
    """Apply one dotted-path override (the --set / variant mechanism).

    Unknown paths are fatal and name the offending key.
    """
    parts = key.split(".")
    head = parts[0]
    if head == "topology" and len(parts) == 2 and parts[1] in ("d_v", "d_tl", "d_te", "d_tr"):
        return replace(s, topology=replace(s.topology, **{parts[1]: _float(value, key)}))
    if head == "topology" and len(parts) == 2 and parts[1] == "d_tr_domain":
        if not (isinstance(value, (list, tuple)) and len(value) == 2):
            raise ConfigError(f"'{key}' needs a [lo, hi] pair")
        return replace(s, topology=replace(s.topology, d_tr_domain=(float(value[0]), float(value[1]))))
    if head == "radio" and len(parts) == 2 and parts[1] in ("tx_power_dbm", "noise_power_dbm", "c0_db", "d0", "gamma"):
        return replace(s, radio=replace(s.radio, **{parts[1]: _float(value, key)}))
    if head == "ris" and len(parts) == 2:
        if parts[1] == "n_elements":
            return replace(s, ris=replace(s.ris, n_elements=_int(value, key)))
        if parts[1] == "quantization_bits":
            return replace(s, ris=replace(s.ris, quantization_bits=_parse_bits(value, key)))
    if head == "ris" and len(parts) == 3 and parts[1] == "amplitude":
        leaf = parts[2]
        if leaf == "model":
            if value == "ideal":
                return replace(s, ris=replace(s.ris, amplitude=IdealAmplitude()))
            if value == "practical":
                amp = s.ris.amplitude
                if not isinstance(amp, PracticalAmplitude):
                    amp = PracticalAmplitude()
                return replace(s, ris=replace(s.ris, amplitude=amp))
            raise ConfigError(f"'{key}' must be 'ideal' or 'practical'")
        if leaf in _AMPLITUDE_FIELDS:
            amp = s.ris.amplitude
            if not isinstance(amp, PracticalAmplitude):
                amp = PracticalAmplitude()  # setting a shape parameter implies the practical model
            return replace(s, ris=replace(s.ris, amplitude=replace(amp, **{leaf: _float(value, key)})))
    if head == "strategy" and len(parts) == 2:
        leaf = parts[1]
        if leaf == "kind":
            kinds = {"matched": MatchedDesign, "prenull": PrenullDesign, "an_partition": AnPartitionDesign}
            if value not in kinds:
                raise ConfigError(f"'{key}' must be one of {sorted(kinds)}")
            return replace(s, strategy=kinds[value]())
        strat = s.strategy
        if isinstance(strat, PrenullDesign) and leaf in ("tolerance", "max_iters", "init"):
            val = _float(value, key) if leaf == "tolerance" else (_int(value, key) if leaf == "max_iters" else str(value))
            return replace(s, strategy=replace(strat, **{leaf: val}))
        if isinstance(strat, AnPartitionDesign) and leaf in ("mu", "rho", "an_phase_reference", "an_nulls_receiver"):
            if leaf in ("mu", "rho"):
                val = _float(value, key)
            elif leaf == "an_nulls_receiver":
                val = bool(value)
            else:
                val = str(value)
            return replace(s, strategy=replace(strat, **{leaf: val}))
        raise ConfigError(f"override '{key}' does not apply to the {strat.kind} strategy")
    if head == "trials" and len(parts) == 1:
        return replace(s, trials=_int(value, key))
    if head == "seed" and len(parts) == 1:
        return replace(s, seed=_int(value, key))
    raise ConfigError(f"unknown override key '{key}'")


def apply_sweep_override(spec: SweepSpec, key: str, value) -> SweepSpec:
    """Overrides addressed to the sweep section ('sweep.trials=2000' etc.)."""
    parts = key.split(".")
    if len(parts) != 2 or parts[0] != "sweep":
        raise ConfigError(f"unknown override key '{key}'")
    leaf = parts[1]
    if leaf == "trials":
        return replace(spec, trials=_int(value, key))
    if leaf == "crn":
        return replace(spec, crn=bool(value))
    if leaf == "c_target":
        return replace(spec, c_target=_float(value, key))
    if leaf == "values":
        if not isinstance(value, (list, tuple)) or not value:
            raise ConfigError(f"'{key}' needs a non-empty list")
        return replace(spec, values=tuple(_parse_axis_value(spec.axis, v) for v in value))
    raise ConfigError(f"unknown override key '{key}'")
