import math
from dataclasses import replace

import numpy as np
import pytest

from ris_secrecy.channel import PathLossModel, draw_channels, path_loss, trial_stream
from ris_secrecy.errors import DomainError
from ris_secrecy.scenario import (
    AnPartitionDesign,
    UnitGainOverride,
    derive_geometry,
    validate,
)

from conftest import explicit_scenario


class TestPathLoss:
    def test_reference_constants_at_10m(self):
        # C0=-30 dB, d0=1 m, gamma=3: 10^-3 * 10^-3 = 10^-6.
        m = PathLossModel(c0_linear=1e-3, d0=1.0, gamma=3.0)
        assert path_loss(m, 10.0) == pytest.approx(1e-6, rel=1e-12)

    def test_reference_distance_identity(self):
        m = PathLossModel(c0_linear=1e-3, d0=1.0, gamma=3.0)
        assert path_loss(m, 1.0) == 1e-3

    def test_gamma_3_5_at_10m(self):
        m = PathLossModel(c0_linear=1e-3, d0=1.0, gamma=3.5)
        assert path_loss(m, 10.0) == pytest.approx(10.0**-6.5, rel=1e-12)

    @pytest.mark.parametrize("d", [0.0, -1.0])
    def test_nonpositive_distance_rejected(self, d):
        m = PathLossModel(c0_linear=1e-3, d0=1.0, gamma=3.0)
        with pytest.raises(DomainError):
            path_loss(m, d)

    def test_strictly_decreasing_in_distance(self):
        m = PathLossModel(c0_linear=1e-3, d0=1.0, gamma=2.7)
        ds = np.linspace(0.5, 40.0, 80)
        ls = [path_loss(m, d) for d in ds]
        assert all(a > b for a, b in zip(ls, ls[1:]))

    def test_doubling_gamma_never_increases_loss_beyond_d0(self):
        for gamma in (2.0, 2.5, 3.0, 3.5):
            lo = PathLossModel(c0_linear=1e-3, d0=1.0, gamma=gamma)
            hi = PathLossModel(c0_linear=1e-3, d0=1.0, gamma=2 * gamma)
            for d in np.linspace(1.0, 50.0, 40):
                assert path_loss(hi, d) <= path_loss(lo, d)


class TestDrawChannels:
    def test_unit_gain_override(self, baseline):
        sc = validate(replace(baseline, channel_override=UnitGainOverride()))
        dist = derive_geometry(sc.topology)
        pl = PathLossModel.from_radio(sc.radio)
        ch = draw_channels(sc, trial_stream(sc.seed, 0))
        assert np.all(ch.h == math.sqrt(path_loss(pl, dist.d_t_ris)))
        assert np.all(ch.g == math.sqrt(path_loss(pl, dist.d_ris_rx)))
        assert np.all(ch.k == math.sqrt(path_loss(pl, dist.d_ris_ev)))
        assert ch.h_an is None  # matched strategy has no AN antenna

    def test_unit_gain_override_populates_h_an_for_an_strategy(self, baseline):
        sc = validate(
            replace(baseline, strategy=AnPartitionDesign(mu=0.5, rho=0.5), channel_override=UnitGainOverride())
        )
        ch = draw_channels(sc, trial_stream(sc.seed, 0))
        assert ch.h_an is not None and np.all(ch.h_an == ch.h)

    def test_explicit_override_passthrough(self):
        sc = explicit_scenario(h=[1 + 2j, 3j], g=[1, 1], k=[0.5, -0.5j])
        ch = draw_channels(sc, trial_stream(sc.seed, 0))
        assert np.array_equal(ch.h, np.array([1 + 2j, 3j]))
        assert np.array_equal(ch.k, np.array([0.5, -0.5j]))

    def test_same_substream_reproduces_realization(self, baseline):
        for trial in (0, 17, 999):
            a = draw_channels(baseline, trial_stream(baseline.seed, trial))
            b = draw_channels(baseline, trial_stream(baseline.seed, trial))
            assert np.array_equal(a.h, b.h) and np.array_equal(a.g, b.g) and np.array_equal(a.k, b.k)

    def test_different_trials_differ(self, baseline):
        a = draw_channels(baseline, trial_stream(baseline.seed, 0))
        b = draw_channels(baseline, trial_stream(baseline.seed, 1))
        assert not np.array_equal(a.h, b.h)

    def test_point_keyed_streams_differ_from_crn(self, baseline):
        crn = draw_channels(baseline, trial_stream(baseline.seed, 3))
        keyed = draw_channels(baseline, trial_stream(baseline.seed, 3, point_index=0))
        assert not np.array_equal(crn.h, keyed.h)

    def test_vector_lengths_match_n(self, baseline):
        ch = draw_channels(baseline, trial_stream(baseline.seed, 0))
        assert ch.h.shape == ch.g.shape == ch.k.shape == (baseline.ris.n_elements,)


class TestChannelStatistics:
    def test_mean_power_matches_path_loss(self, baseline):
        # 2000 trials x N=50 -> 1e5 coefficient draws; |g_i|^2 is exponential
        # with mean L(d_ris_rx), so a +-3 standard-error band is the oracle.
        dist = derive_geometry(baseline.topology)
        pl = PathLossModel.from_radio(baseline.radio)
        expected = path_loss(pl, dist.d_ris_rx)
        assert expected == pytest.approx(3.5355339059327378e-07, rel=1e-9)
        powers = np.concatenate(
            [np.abs(draw_channels(baseline, trial_stream(baseline.seed, t)).g) ** 2 for t in range(2000)]
        )
        se = powers.std(ddof=1) / math.sqrt(powers.size)
        assert abs(powers.mean() - expected) <= 3 * se

    def test_real_parts_uncorrelated_across_links(self, baseline):
        hs, gs = [], []
        for t in range(2000):
            ch = draw_channels(baseline, trial_stream(baseline.seed, t))
            hs.append(ch.h.real)
            gs.append(ch.g.real)
        h = np.concatenate(hs)
        g = np.concatenate(gs)
        corr = np.corrcoef(h, g)[0, 1]
        assert abs(corr) <= 3.0 / math.sqrt(h.size)

    def test_real_and_imag_split_variance_evenly(self, baseline):
        ch = draw_channels(baseline, trial_stream(baseline.seed, 0))
        samples = np.concatenate(
            [draw_channels(baseline, trial_stream(baseline.seed, t)).h for t in range(2000)]
        )
        re_var = samples.real.var()
        im_var = samples.imag.var()
        assert re_var == pytest.approx(im_var, rel=0.1)
        assert ch.h.dtype == np.complex128
