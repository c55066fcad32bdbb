import pytest
from hypothesis import given, strategies as st

from darknode.config import ConfigError, RunConfig, emit_config, parse_config, parse_config_text
from darknode.units import default_params


def test_empty_params_gives_defaults():
    assert parse_config_text("[params]\n").params == default_params()
    assert parse_config_text("").params == default_params()


def test_g0_round_trip():
    cfg = parse_config_text("[params]\ng0 = 9.6525\n")
    assert cfg.params.g0 == 9.6525
    assert parse_config_text(emit_config(cfg)) == cfg


def test_si_time():
    cfg = parse_config_text("[params]\nT0_si = 3.0e-7\n")
    assert cfg.params.T0 == pytest.approx(3.0e-7 / 30.70e-9, rel=1e-12)
    assert cfg.params.T0 == pytest.approx(9.77, abs=5e-3)


def test_si_uses_section_scales():
    cfg = parse_config_text("[params]\ngamma_si = 1.0e7\nT0_si = 1.0e-6\n")
    assert cfg.params.T0 == pytest.approx(10.0)


def test_scenario_section():
    cfg = parse_config_text(
        "[scenario.fig7_harmonic]\nomega_T = 0.05\npoints = 11\nalpha0 = 20.0\n"
        "[scenario.fig3_energies]\nv_si = 4.0\n"
    )
    sc = cfg.scenario("fig7_harmonic")
    assert (sc.options, sc.points, sc.overrides) == ({"omega_T": 0.05}, 11, {"alpha0": 20.0})
    assert cfg.scenario("fig3_energies").options["v"] == pytest.approx(4.0 / default_params().velocity_unit_si)
    assert cfg.scenario("fig6_constv").options == {}


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("[params]\nfoo = 1\n", "foo"),
        ("[params]\nT0 = 1.0\nT0_si = 1e-7\n", "both"),
        ("[params]\nr0_si = 1.0\n", "dimensionless"),
        ("[params]\ng0 = -1.0\n", "g0"),
        ("[scenario.nope]\n", "nope"),
        ("[scenario.fig6_constv]\nomega_T = 1.0\n", "omega_T"),
        ("[scenario.fig6_constv]\npoints = 1\n", "points"),
        ("[params\n", "malformed"),
        ("[other]\n", "other"),
    ],
)
def test_errors_name_the_problem(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_config_text(text)


def test_parse_file(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text("[params]\nalpha0 = 25.0\n")
    assert parse_config(path).params.alpha0 == 25.0


@given(
    st.floats(min_value=1e-3, max_value=1e3, allow_nan=False),
    st.floats(min_value=0.0, max_value=100.0),
    st.floats(min_value=-50, max_value=50),
)
def test_emit_parse_identity(g0, alpha0, delta):
    cfg = RunConfig(default_params().replace(g0=g0, alpha0=alpha0, delta=delta))
    assert parse_config_text(emit_config(cfg)) == cfg
