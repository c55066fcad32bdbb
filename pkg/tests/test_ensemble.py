import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from darknode.ensemble import (
    DEFAULT_DV,
    SurvivalTable,
    VelocityDistribution,
    ensemble_survival,
    node_count,
    normalization_A,
    pdf_unnormalized,
    segment_boundaries,
)
from darknode.landau_zener import lz_constant_v
from darknode.dynamics import survival
from darknode.trajectory import Trajectory
from darknode.units import default_params

P = default_params()


def test_pdf_peak_and_support():
    d = VelocityDistribution(0.02, DEFAULT_DV)
    assert pdf_unnormalized(0.02, d) == 1.0
    assert pdf_unnormalized(-1e-3, d) == 0.0


@pytest.mark.parametrize("v0", [0.0, 1e-3, 0.03])
def test_normalization_against_quadrature(v0):
    d = VelocityDistribution(v0, DEFAULT_DV)
    oracle = quad(lambda v: math.exp(-((v - v0) ** 2) / d.dv**2), 0, np.inf, epsabs=1e-14)[0]
    assert normalization_A(d) == pytest.approx(oracle, rel=1e-9)


def test_normalization_limits():
    dv = DEFAULT_DV
    assert normalization_A(VelocityDistribution(0.0, dv)) == pytest.approx(math.sqrt(math.pi) * dv / 2)
    assert normalization_A(VelocityDistribution(1.0, dv)) == pytest.approx(math.sqrt(math.pi) * dv)


def test_at_rest_ensemble_survives():
    assert ensemble_survival(VelocityDistribution(0.0, DEFAULT_DV), P) > 0.99


def test_segment_boundaries():
    assert segment_boundaries(0.25, 0.06, P) == pytest.approx([0.0125, 0.0375])
    assert node_count(0.055, 0.25, P) == 2


def test_at_most_three_nodes_near_top_of_range():
    v_max = 5.3e-2 + 2 * DEFAULT_DV
    assert v_max == pytest.approx(5.5e-2, abs=1e-3)
    assert node_count(v_max, 0.25, P) <= 3


@pytest.mark.parametrize("v0", [0.005, 0.017, 0.03, 0.049])
def test_narrow_distribution_limit(v0):
    d = VelocityDistribution(v0, 1e-6)
    assert ensemble_survival(d, P) == pytest.approx(float(lz_constant_v(v0, 0.25, P)[0]), abs=1e-3)
    numeric = ensemble_survival(d, P, mode="numeric")
    assert numeric == pytest.approx(survival(Trajectory.constant_v(v0), P), abs=1e-3)


@settings(max_examples=25, deadline=None)
@given(st.floats(0, 0.06), st.sampled_from([0.25, 1 / 3, 5 / 12]))
def test_gauss_point_convergence(v0, z0):
    d = VelocityDistribution(v0, DEFAULT_DV)
    assert abs(ensemble_survival(d, P, z0, n_gauss=64) - ensemble_survival(d, P, z0, n_gauss=128)) < 1e-6


def test_table_interpolation_error():
    table = SurvivalTable.build(0.25, P, 0.022, v_min=0.012)
    mids = 0.5 * (table.v[1:] + table.v[:-1])[::7]
    exact = np.array([survival(Trajectory.constant_v(float(v)), P) for v in mids])
    assert np.abs(table(mids) - exact).max() < 2e-3


def test_mode_validation():
    d = VelocityDistribution(0.02, DEFAULT_DV)
    with pytest.raises(ValueError):
        ensemble_survival(d, P, mode="bogus")
    table = SurvivalTable(np.array([0.0, 0.01]), np.array([1.0, 1.0]), 0.25)
    with pytest.raises(ValueError):
        ensemble_survival(d, P, mode="numeric", table=table)
    with pytest.raises(ValueError):
        VelocityDistribution(0.02, 0.0)


@pytest.mark.slow
def test_sweep_bounds_and_mode_consistency(sweeps):
    res = sweeps["fig8_ensemble"]
    num, ana = res.column("P_numeric"), res.column("P_analytic")
    assert ((num >= 0) & (num <= 1 + 1e-9)).all() and ((ana >= 0) & (ana <= 1 + 1e-9)).all()
    diff = np.abs(num - ana)
    i = diff.argmax()
    assert diff.max() <= 0.1, f"max |analytic - numeric| = {diff[i]:.3f} at z0 = {res.rows[i][0]:.4f}, v0 = {res.rows[i][1]:.4f}"
