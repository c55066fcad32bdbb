import math

import pytest
from hypothesis import given, strategies as st

from darknode.units import KINDS, PhysicalParams, PulseShape, default_params, to_natural, to_si


def test_defaults():
    p = default_params()
    assert p.alpha0 == 30.0
    assert p.tW == pytest.approx(p.T0 / 3)
    assert p.T0 == 10.0
    assert p.protocol_end == 20.0


def test_g0_is_ratio_of_rabi_to_linewidth():
    # (2 pi 50 MHz) / (2 pi 5.18 MHz)
    assert default_params().g0 == pytest.approx(50.0 / 5.18, rel=1e-12)
    assert default_params().g0 == pytest.approx(9.6525, abs=1e-4)


def test_velocity_unit():
    oracle = 852.35e-9 / 30.70e-9
    assert default_params().velocity_unit_si == pytest.approx(oracle, rel=1e-12)
    assert oracle == pytest.approx(27.76, abs=0.01)
    # 1 m/s quoted as 0.036 lambda*gamma
    assert 1.0 / oracle == pytest.approx(0.036, abs=5e-4)


def test_conversions():
    assert to_natural(3e-7, "time") == pytest.approx(3e-7 / 30.70e-9, rel=1e-12)
    assert to_natural(3e-7, "time") == pytest.approx(9.77, abs=5e-3)
    assert to_natural(0.0, "velocity") == 0.0
    assert to_si(0.036, "velocity") == pytest.approx(1.0, abs=0.01)


def test_unknown_kind():
    with pytest.raises(ValueError):
        to_natural(1.0, "mass")


@given(st.sampled_from(KINDS), st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
def test_round_trip(kind, value):
    back = to_natural(to_si(value, kind), kind)
    assert back == pytest.approx(value, rel=1e-12, abs=1e-300)


def test_default_round_trip_through_si():
    p = default_params()
    for name, kind in (("g0", "frequency"), ("T0", "time"), ("tW", "time"), ("waist0", "length")):
        value = getattr(p, name)
        assert to_natural(to_si(value, kind, p), kind, p) == pytest.approx(value, rel=1e-12)


@pytest.mark.parametrize(
    "changes",
    [{"g0": 0.0}, {"tW": 0.0}, {"T0": -1.0}, {"alpha0": -1.0}, {"waist0": 0.0}, {"g0": float("nan")}],
)
def test_invalid_params(changes):
    with pytest.raises(ValueError):
        default_params().replace(**changes)


def test_pulse_rejects_complex():
    with pytest.raises(TypeError):
        PulseShape(30.0 + 1j, 10.0, 3.0)


def test_params_frozen_and_pulse_view():
    p = PhysicalParams()
    assert p.pulse == PulseShape(30.0, 10.0, 10.0 / 3.0)
    with pytest.raises(Exception):
        p.g0 = 1.0
    assert math.isclose(p.as_dict()["g0"], p.g0)
