import math

import pytest

from ris_secrecy.config import (
    apply_scenario_override,
    apply_sweep_override,
    parse_config,
    serialize_config,
)
from ris_secrecy.errors import ConfigError
from ris_secrecy.presets import PRESET_NAMES, preset_text
from ris_secrecy.scenario import PracticalAmplitude, PrenullDesign

MINIMAL = """
schema_version: 1
scenario:
  topology: {d_v: 10.0, d_tl: 20.0, d_te: 15.0, d_tr: 10.0}
  radio: {tx_power_dbm: 20.0, noise_power_dbm: -100.0, c0_db: -30.0, d0: 1.0, gamma: 3.0}
  ris:
    n_elements: 8
    amplitude: {model: practical, beta_min: 0.5, phi: 1.5707963267948966, alpha: 2.0}
    quantization_bits: 3
  strategy: {kind: matched}
  trials: 100
  seed: 12345
sweep:
  axis: n_elements
  values: [4, 8]
  crn: false
  c_target: 1.0
  variants:
    - label: plain
      set: {}
    - label: coarse
      set: {ris.quantization_bits: 1}
"""


class TestParse:
    def test_minimal_document(self):
        scenario, sweep = parse_config(MINIMAL)
        assert scenario.ris.n_elements == 8
        assert isinstance(scenario.ris.amplitude, PracticalAmplitude)
        assert scenario.ris.amplitude.phi == pytest.approx(math.pi / 2)
        assert sweep.values == (4, 8)
        assert [v.label for v in sweep.variants] == ["plain", "coarse"]

    def test_unknown_key_is_fatal_and_named(self):
        bad = MINIMAL.replace("beta_min: 0.5", "beta_mim: 0.5")
        with pytest.raises(ConfigError, match="beta_mim"):
            parse_config(bad)

    def test_unknown_top_level_key(self):
        with pytest.raises(ConfigError, match="extra"):
            parse_config(MINIMAL + "\nextra: 1\n")

    def test_missing_required_key(self):
        bad = MINIMAL.replace("  trials: 100\n", "")
        with pytest.raises(ConfigError, match="trials"):
            parse_config(bad)

    def test_wrong_schema_version(self):
        with pytest.raises(ConfigError, match="schema_version"):
            parse_config(MINIMAL.replace("schema_version: 1", "schema_version: 99"))

    def test_bad_strategy_kind(self):
        with pytest.raises(ConfigError, match="kind"):
            parse_config(MINIMAL.replace("kind: matched", "kind: mystery"))

    def test_inf_bits_parse_to_none(self):
        text = MINIMAL.replace("quantization_bits: 3", "quantization_bits: inf")
        scenario, _ = parse_config(text)
        assert scenario.ris.quantization_bits is None

    def test_b_axis_values_accept_inf(self):
        text = MINIMAL.replace("axis: n_elements", "axis: b").replace("values: [4, 8]", "values: [1, 3, inf]")
        _, sweep = parse_config(text)
        assert sweep.values == (1, 3, None)


class TestRoundTrip:
    @pytest.mark.parametrize("name", PRESET_NAMES)
    def test_presets_round_trip(self, name):
        first = parse_config(preset_text(name))
        text = serialize_config(*first)
        second = parse_config(text)
        assert second == first
        assert serialize_config(*second) == text  # serialization is canonical

    def test_minimal_round_trip(self):
        first = parse_config(MINIMAL)
        assert parse_config(serialize_config(*first)) == first

    def test_explicit_override_round_trip(self):
        doc = MINIMAL.replace(
            "  channel_override: null\n", ""
        ).replace(
            "  trials: 100",
            "  trials: 100\n  channel_override:\n"
            "    mode: explicit\n"
            "    h: [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [0.5, -0.5], [1,0], [0,1], [1,0], [0,1]]\n"
            "    g: [[1.0, 0.0], [1.0, 0.0], [1,0], [1,0], [1,0], [1,0], [1,0], [1,0]]\n"
            "    k: [[0.5, 0.0], [0.5, 0.0], [1,0], [1,0], [1,0], [1,0], [1,0], [1,0]]\n"
            "    h_an: null",
        )
        first = parse_config(doc)
        assert first[0].channel_override.h[1] == 1j
        assert parse_config(serialize_config(*first)) == first


class TestOverrides:
    def test_gamma_override(self):
        scenario, _ = parse_config(MINIMAL)
        assert apply_scenario_override(scenario, "radio.gamma", 3.5).radio.gamma == 3.5

    def test_strategy_kind_switch(self):
        scenario, _ = parse_config(MINIMAL)
        switched = apply_scenario_override(scenario, "strategy.kind", "prenull")
        assert isinstance(switched.strategy, PrenullDesign)

    def test_amplitude_field_promotes_to_practical(self):
        scenario, _ = parse_config(MINIMAL.replace("model: practical, beta_min: 0.5, phi: 1.5707963267948966, alpha: 2.0", "model: ideal"))
        promoted = apply_scenario_override(scenario, "ris.amplitude.beta_min", 0.7)
        assert isinstance(promoted.ris.amplitude, PracticalAmplitude)
        assert promoted.ris.amplitude.beta_min == 0.7

    def test_unknown_override_is_fatal(self):
        scenario, _ = parse_config(MINIMAL)
        with pytest.raises(ConfigError, match="beta_mim"):
            apply_scenario_override(scenario, "ris.amplitude.beta_mim", 0.7)

    def test_strategy_field_mismatch_is_fatal(self):
        scenario, _ = parse_config(MINIMAL)
        with pytest.raises(ConfigError, match="matched"):
            apply_scenario_override(scenario, "strategy.mu", 0.5)

    def test_quantization_bits_override_accepts_inf(self):
        scenario, _ = parse_config(MINIMAL)
        assert apply_scenario_override(scenario, "ris.quantization_bits", "inf").ris.quantization_bits is None

    def test_sweep_overrides(self):
        _, sweep = parse_config(MINIMAL)
        assert apply_sweep_override(sweep, "sweep.trials", 5).trials == 5
        assert apply_sweep_override(sweep, "sweep.c_target", 2.0).c_target == 2.0
        assert apply_sweep_override(sweep, "sweep.values", [2, 4]).values == (2, 4)
        with pytest.raises(ConfigError):
            apply_sweep_override(sweep, "sweep.nope", 1)
