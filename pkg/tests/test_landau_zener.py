import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from darknode.dynamics import survival
from darknode.landau_zener import (
    bright_population,
    crossing_strength,
    lz_constant_v,
    node_distances,
    predict,
    survival_single,
)
from darknode.dressed import lz_h
from darknode.trajectory import Trajectory
from darknode.units import default_params

P = default_params()


def test_limits():
    assert survival_single(0.0, 0.02, P.g0) == 1.0
    assert survival_single(0.3, 1e12, P.g0) == pytest.approx(1.0)
    assert survival_single(0.3, 0.0, P.g0) == 0.0
    with pytest.raises(ValueError):
        survival_single(-1.0, 0.02, P.g0)


def test_bright_population_splits_loss():
    p = survival_single(0.1, 0.02, P.g0)
    assert bright_population(0.1, 0.02, P.g0) == pytest.approx((1 - p) / 2)


def test_crossing_strength_is_h():
    t = np.linspace(0, 20, 101)
    assert crossing_strength(t, P.pulse) == pytest.approx(lz_h(t, P.pulse), rel=1e-12)


def test_first_valley_point_against_integration():
    v = 0.017
    p_formula = survival_single(float(lz_h(0.25 / v, P.pulse)), v, P.g0)
    assert abs(p_formula - survival(Trajectory.constant_v(v), P)) <= 0.1


def test_no_crossing():
    pred = predict(Trajectory.constant_v(0.005), P)
    assert pred.p_total == 1.0 and pred.n_nodes == 0


def test_two_node_product_against_integration():
    traj = Trajectory.constant_v(0.055)
    pred = predict(traj, P)
    assert pred.n_nodes == 2
    assert abs(pred.p_total - survival(traj, P)) <= 0.1


def test_oblique_line_uses_axial_speed():
    v, theta = 0.05, math.radians(60)
    line = predict(Trajectory.line3d(v, theta), P)
    axial = predict(Trajectory.constant_v(v * math.cos(theta)), P)
    assert line.p_total == pytest.approx(axial.p_total, abs=1e-3)


@given(st.floats(0.1, 19.9), st.floats(1e-3, 0.2), st.floats(1e-3, 0.2))
def test_faster_survives_better(t_star, v1, v2):
    h = float(lz_h(t_star, P.pulse))
    lo, hi = sorted((v1, v2))
    # speeds a few ulp apart give the same rounded exponent
    if h == 0 or hi - lo < 1e-9 * hi:
        return
    assert survival_single(h, lo, P.g0) <= survival_single(h, hi, P.g0)
    if survival_single(h, hi, P.g0) < 1.0:
        assert survival_single(h, lo, P.g0) < survival_single(h, hi, P.g0)


@given(st.floats(0.001, 0.1))
def test_product_of_own_factors(v):
    pred = predict(Trajectory.constant_v(v), P)
    assert pred.p_total == math.prod(e.p_i for e in pred.per_node)


@given(st.floats(0.001, 0.1), st.sampled_from([0.25, 1 / 3, 5 / 12]))
def test_vectorised_matches_predict(v, z0):
    assert lz_constant_v(v, z0, P)[0] == pytest.approx(predict(Trajectory.constant_v(v, z0), P).p_total, rel=1e-9)


def test_node_distances():
    assert node_distances(0.25, 1.1).tolist() == [0.25, 0.75]
    assert node_distances(0.5, 0.6).tolist() == [0.5]


def test_valley_ordering(sweeps):
    res = sweeps["fig6_constv"]
    n = res.column("nodes")
    for col in ("P_ode", "P_lz"):
        p = res.column(col)
        assert p[n == 1].min() < p[n == 2].min()


@pytest.mark.slow
def test_agreement_band():
    vs = np.linspace(0.005, 0.055, 101)
    diff = np.array([abs(lz_constant_v(v, 0.25, P)[0] - survival(Trajectory.constant_v(v), P)) for v in vs])
    assert diff.max() <= 0.1 and diff.mean() <= 0.05, f"max {diff.max():.3f} at v = {vs[diff.argmax()]:.4f}, mean {diff.mean():.3f}"
