import pytest

from ris_secrecy.scenario import (
    ExplicitChannels,
    MatchedDesign,
    RadioParams,
    RisConfig,
    Scenario,
    Topology,
    validate,
)


@pytest.fixture
def baseline() -> Scenario:
    """Line-topology baseline: d_v=10, d_tl=20, d_te=15, d_tr=10, P=20 dBm,
    noise -100 dBm, C0=-30 dB at d0=1 m, gamma=3.0, N=50, matched design."""
    return validate(
        Scenario(
            topology=Topology(d_v=10.0, d_tl=20.0, d_te=15.0, d_tr=10.0),
            radio=RadioParams(tx_power_dbm=20.0, noise_power_dbm=-100.0, c0_db=-30.0, d0=1.0, gamma=3.0),
            ris=RisConfig(n_elements=50),
            strategy=MatchedDesign(),
            trials=1000,
            seed=42,
        )
    )


def explicit_scenario(h, g, k, h_an=None, **kwargs) -> Scenario:
    """Scenario pinned to fixed channel vectors (path loss bypassed)."""
    defaults = dict(
        topology=Topology(d_v=10.0, d_tl=20.0, d_te=15.0, d_tr=10.0),
        radio=RadioParams(),
        ris=RisConfig(n_elements=len(h)),
        strategy=MatchedDesign(),
        trials=10,
        seed=7,
        channel_override=ExplicitChannels(
            h=tuple(complex(z) for z in h),
            g=tuple(complex(z) for z in g),
            k=tuple(complex(z) for z in k),
            h_an=None if h_an is None else tuple(complex(z) for z in h_an),
        ),
    )
    defaults.update(kwargs)
    return validate(Scenario(**defaults))
