import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from darknode.trajectory import DEFAULT_OMEGA_T, Trajectory, axial_velocity, find_node_crossings, position
from darknode.units import default_params

P = default_params()


def test_constant_velocity_reaches_node():
    assert position(Trajectory.constant_v(0.05, 0.25), 5.0).z == pytest.approx(0.5)


def test_harmonic_initial_condition():
    tr = Trajectory.harmonic(0.03, DEFAULT_OMEGA_T)
    assert tr.z(0.0) == 0.25
    assert axial_velocity(tr, 0.0) == pytest.approx(0.03)


def test_harmonic_slower_at_node():
    v, w = 0.03, DEFAULT_OMEGA_T
    [ev] = [e for e in find_node_crossings(Trajectory.harmonic(v, w), P) if e.node == 0.5]
    dz = 0.25
    assert ev.v_axial == pytest.approx(v * math.sqrt(1 - (w * dz / v) ** 2), rel=1e-8)
    assert ev.v_axial < v


def test_single_crossing_time():
    events = find_node_crossings(Trajectory.constant_v(0.017, 0.25), P)
    assert len(events) == 1
    assert events[0].t_star == pytest.approx(0.25 / 0.017, abs=1e-8)


@pytest.mark.parametrize("v,count", [(0.005, 0), (0.017, 1), (0.055, 2)])
def test_crossing_counts(v, count):
    assert len(find_node_crossings(Trajectory.constant_v(v, 0.25), P)) == count


def test_crossing_count_formula_over_grid():
    for v in np.linspace(0.001, 0.1, 397):
        expected = math.floor((v * 20 + 0.25) / 0.5)
        assert len(find_node_crossings(Trajectory.constant_v(float(v), 0.25), P)) == expected


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.002, max_value=0.08), st.floats(min_value=0.0, max_value=1.4))
def test_line_crossings_are_axial_projection(v, theta):
    line = find_node_crossings(Trajectory.line3d(v, theta), P)
    axial = find_node_crossings(Trajectory.constant_v(v * math.cos(theta)), P)
    assert [e.t_star for e in line] == [e.t_star for e in axial]
    assert [e.node for e in line] == [e.node for e in axial]


def test_harmonic_pairs_symmetric_about_turning_point():
    w, v = 0.5, 0.2  # amplitude 0.4 exceeds the 0.25 distance; 1.6 periods fit in 20
    events = [e for e in find_node_crossings(Trajectory.harmonic(v, w), P) if e.node == 0.5]
    assert len(events) == 4
    # turning points above the node at pi/(2w) and 5pi/(2w)
    for (a, b), turn in zip((events[:2], events[2:]), (math.pi / (2 * w), 5 * math.pi / (2 * w))):
        assert a.t_star + b.t_star == pytest.approx(2 * turn, abs=1e-8)
        assert a.v_axial == pytest.approx(b.v_axial, rel=1e-8)


def test_turning_point_touch_is_tangential():
    w = 0.5
    tr = Trajectory.harmonic(0.25 * w, w)  # amplitude exactly reaches z = 1/2
    events = find_node_crossings(tr, P)
    assert len(events) >= 1
    assert all(e.tangential and e.v_axial == 0.0 and e.p_i == 0.0 for e in events)


def test_direction_option():
    events = find_node_crossings(Trajectory.constant_v(0.017, 0.25, direction=-1), P)
    assert [e.node for e in events] == [0.0]


@pytest.mark.parametrize(
    "kwargs", [dict(kind="constant_v", v=-1.0), dict(kind="harmonic", v=0.1), dict(kind="line3d", v=0.1, theta=2.0)]
)
def test_invalid_trajectories(kwargs):
    with pytest.raises(ValueError):
        Trajectory(**kwargs)
