"""The twelve end-to-end physics checks behind ``sim check``.

Each check returns a :class:`CriterionResult`; the heavy sweeps are shared
through :class:`Sweeps`, which runs each scenario at most once.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from scipy.integrate import quad
from scipy.signal import find_peaks

from . import ensemble, scenarios
from .diagnostics import linearization_error, small_term_lower_limit, small_term_S, small_term_trace
from .dressed import adiabaticity_f, eigenvalues, hamiltonian_matrix, lz_h
from .dynamics import integrate
from .landau_zener import lz_constant_v, predict
from .trajectory import Trajectory
from .units import PhysicalParams, default_params

#: Minimum depth for a dip in P(v) to count as a valley.
VALLEY_PROMINENCE = 0.05
VALLEY_WINDOWS = ((0.0145, 0.0196), (0.0417, 0.0564))


@dataclass(frozen=True)
class CriterionResult:
    number: str
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.title}: {self.detail}"


class Sweeps:
    """Lazily evaluated, cached scenario runs at default resolution."""

    def __init__(self, params: PhysicalParams | None = None, map_fn: Callable[..., Iterable] = map):
        self.params = params or default_params()
        self.map_fn = map_fn
        self._cache: dict[str, scenarios.SweepResult] = {}
        self.runtime: dict[str, float] = {}

    def __getitem__(self, name: str) -> scenarios.SweepResult:
        if name not in self._cache:
            start = time.perf_counter()
            self._cache[name] = scenarios.run(name, self.params, map_fn=self.map_fn)
            self.runtime[name] = time.perf_counter() - start
        return self._cache[name]


def valleys(v: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Speeds of the local minima of ``p`` deeper than :data:`VALLEY_PROMINENCE`."""
    idx, _ = find_peaks(-p, prominence=VALLEY_PROMINENCE)
    return v[idx]


def valley_minima(result: scenarios.SweepResult) -> dict[int, float]:
    """Lowest P_ode among the sweep points that cross exactly n nodes, keyed by n."""
    p, n = result.column("P_ode"), result.column("nodes").astype(int)
    return {k: float(p[n == k].min()) for k in sorted(set(n)) if k > 0}


def _lz_agreement(result: scenarios.SweepResult) -> tuple[float, float]:
    keep = result.column("tangential") == 0
    diff = np.abs(result.column("P_lz") - result.column("P_ode"))[keep]
    return float(diff.max()), float(diff.mean())


# ---------------------------------------------------------------- criteria


def c1_eigen_oracle(sweeps: Sweeps) -> CriterionResult:
    rng = np.random.default_rng(20240601)
    start = time.perf_counter()
    worst = 0.0
    for g, om, d in rng.uniform(-20, 20, size=(1000, 3)):
        ours = np.sort(eigenvalues(g, om, d))
        ref = np.linalg.eigvalsh(hamiltonian_matrix(g, om, d))
        worst = max(worst, float(np.abs(ours - ref).max()))
    elapsed = time.perf_counter() - start
    return CriterionResult(
        "1", "eigenvalues vs diagonalisation", worst < 1e-10 and elapsed < 1.0,
        f"max error {worst:.2e} (< 1e-10), {elapsed:.2f} s (< 1 s)",
    )


def c2_norm(sweeps: Sweeps) -> CriterionResult:
    worst = 0.0
    for name in ("fig6_constv", "fig7_harmonic", "fig9_angle30", "fig10_angle60", "appxA_detuning"):
        res = sweeps[name]
        for col in res.columns:
            if col.startswith("norm_drift"):
                worst = max(worst, float(res.column(col).max()))
    return CriterionResult("2", "norm conservation", worst <= 1e-8, f"max |norm - 1| = {worst:.2e} (<= 1e-8)")


def c3_constv_landmarks(sweeps: Sweeps) -> CriterionResult:
    res = sweeps["fig6_constv"]
    v, p = res.column("v"), res.column("P_ode")
    low = float(p[v < 0.01].min())
    found = valleys(v, p)
    inside = [any(a <= x <= b for x in found) for a, b in VALLEY_WINDOWS]
    mins = valley_minima(res)
    a_ok = low > 0.99
    b_ok = len(found) == 2 and all(inside)
    c_ok = mins[1] < mins[2]
    detail = (
        f"(a) min P(v<0.01) = {low:.4f} {'ok' if a_ok else 'FAIL'}; "
        f"(b) minima at {np.round(found, 4).tolist()} {'ok' if b_ok else 'FAIL'}; "
        f"(c) valley minima {mins[1]:.3f} < {mins[2]:.3f} {'ok' if c_ok else 'FAIL'}; "
        f"{sweeps.runtime['fig6_constv']:.1f} s"
    )
    return CriterionResult("3", "constant-velocity landmarks", a_ok and b_ok and c_ok, detail)


def c4_lz_vs_ode(sweeps: Sweeps) -> CriterionResult:
    mx, mean = _lz_agreement(sweeps["fig6_constv"])
    return CriterionResult(
        "4", "Landau-Zener vs integration, constant velocity", mx <= 0.1 and mean <= 0.05,
        f"max {mx:.3f} (<= 0.1), mean {mean:.3f} (<= 0.05)",
    )


def c5_harmonic(sweeps: Sweeps) -> CriterionResult:
    h, c = valley_minima(sweeps["fig7_harmonic"]), valley_minima(sweeps["fig6_constv"])
    deeper = all(h.get(k, 1.0) < c[k] for k in (1, 2))
    mx, mean = _lz_agreement(sweeps["fig7_harmonic"])
    ok = deeper and mx <= 0.1 and mean <= 0.05
    detail = (
        f"valley minima {h.get(1, float('nan')):.3f}/{h.get(2, float('nan')):.3f} vs "
        f"{c[1]:.3f}/{c[2]:.3f} {'ok' if deeper else 'FAIL'}; LZ max {mx:.3f}, mean {mean:.3f}"
    )
    return CriterionResult("5", "harmonic trap", ok, detail)


def c6_oblique(sweeps: Sweeps) -> CriterionResult:
    r30 = sweeps["fig9_angle30"]
    diff = float(np.abs(r30.column("P_ode") - r30.column("P_1d_axial")).max())
    r60 = sweeps["fig10_angle60"]
    n60 = len(valleys(r60.column("v"), r60.column("P_ode")))
    return CriterionResult(
        "6", "oblique lines", diff <= 0.02 and n60 == 1,
        f"30 deg vs 1D at v cos30: max diff {diff:.4f} (<= 0.02); 60 deg valleys: {n60} (== 1)",
    )


def c7_detuning(sweeps: Sweeps) -> CriterionResult:
    params = sweeps.params
    worst, where = 0.0, None
    for v in (0.02, 0.03, 0.05):
        traj = Trajectory.constant_v(v, scenarios.ANTINODE)
        p0 = integrate(traj, params).p_dark
        for f in (0.2, 1.0):
            pd = integrate(traj, params.replace(delta=f * params.g0)).p_dark
            if abs(pd - p0) >= worst:
                worst, where = abs(pd - p0), (v, f)
    return CriterionResult(
        "7", "detuning equivalence", worst <= 0.05,
        f"max |P(delta) - P(0)| = {worst:.3f} at v = {where[0]}, delta = {where[1]} g0 (<= 0.05)",
    )


def c8_linearization(sweeps: Sweeps) -> CriterionResult:
    err = linearization_error(0.7)
    return CriterionResult("8", "linearisation error", abs(err - 0.1077) <= 5e-4, f"error(0.7) = {err:.5f}")


def small_term_quadrature(x: float, v: float, params: PhysicalParams) -> float:
    """S(x) by direct adaptive quadrature of 2 |int_{-a}^{x} exp(-i tau^2) tau dtau|."""
    a = small_term_lower_limit(v, params)
    opts = dict(limit=2000, epsabs=1e-12, epsrel=1e-12)
    re = quad(lambda s: math.cos(s * s) * s, -a, x, **opts)[0]
    im = quad(lambda s: -math.sin(s * s) * s, -a, x, **opts)[0]
    return 2.0 * math.hypot(re, im)


def c9_small_term(sweeps: Sweeps) -> CriterionResult:
    v = 1.2e-2
    params = sweeps.params
    max_s = small_term_trace(v, params).max_S
    a = small_term_lower_limit(v, params)
    xs = np.random.default_rng(7).uniform(-a, a, 50)
    diff = max(abs(float(small_term_S(x, v, params)) - small_term_quadrature(float(x), v, params)) for x in xs)
    ok = abs(max_s - 2.0) <= 1e-9 and diff <= 1e-8
    return CriterionResult("9", "small-term amplitude", ok, f"max S = {max_s:.12f}; closed form vs quadrature {diff:.1e}")


def c10_diagnostic_peaks(sweeps: Sweeps) -> CriterionResult:
    pulse = sweeps.params.pulse
    t = np.linspace(0.0, sweeps.params.protocol_end, 20001)
    found = {}
    for name, y in (("f", adiabaticity_f(t, pulse, sweeps.params.g0)), ("h", lz_h(t, pulse))):
        idx, _ = find_peaks(y)
        found[name] = t[idx]
    ok = all(len(p) == 2 and abs(p[0] - 3.3) <= 0.6 and abs(p[1] - 16.7) <= 0.6 for p in found.values())
    return CriterionResult(
        "10", "f and h peak times", ok,
        "; ".join(f"{k} peaks at {np.round(p, 2).tolist()}" for k, p in found.items()),
    )


def c11_multinode(sweeps: Sweeps) -> CriterionResult:
    parts, ok = [], True
    for v in (0.055, 0.06):
        traj = Trajectory.constant_v(v, scenarios.ANTINODE)
        lz = predict(traj, sweeps.params)
        p = integrate(traj, sweeps.params).p_dark
        ok &= lz.n_nodes == 2 and abs(lz.p_total - p) <= 0.1
        parts.append(f"v={v}: {lz.n_nodes} nodes, |prod - P| = {abs(lz.p_total - p):.3f}")
    return CriterionResult("11", "multi-node product", ok, "; ".join(parts))


def c12_ensemble(sweeps: Sweeps) -> CriterionResult:
    params = sweeps.params
    rest = ensemble.ensemble_survival(ensemble.VelocityDistribution(0.0, ensemble.DEFAULT_DV), params)
    narrow = max(
        abs(
            ensemble.ensemble_survival(ensemble.VelocityDistribution(v0, 1e-6), params)
            - float(lz_constant_v(v0, scenarios.ANTINODE, params)[0])
        )
        for v0 in (0.005, 0.017, 0.03, 0.049, 0.058)
    )
    sweeps["fig8_ensemble"]
    elapsed = sweeps.runtime["fig8_ensemble"]
    ok = rest > 0.99 and narrow <= 1e-3 and elapsed < 300
    return CriterionResult(
        "12", "ensemble sanity", ok,
        f"P(v0=0) = {rest:.5f} (> 0.99); narrow-width diff {narrow:.1e} (<= 1e-3); fig8 sweep {elapsed:.1f} s (< 300 s)",
    )


CRITERIA = (
    c1_eigen_oracle,
    c2_norm,
    c3_constv_landmarks,
    c4_lz_vs_ode,
    c5_harmonic,
    c6_oblique,
    c7_detuning,
    c8_linearization,
    c9_small_term,
    c10_diagnostic_peaks,
    c11_multinode,
    c12_ensemble,
)


def run_all(sweeps: Sweeps | None = None, report: Callable[[str], None] | None = None) -> list[CriterionResult]:
    sweeps = sweeps or Sweeps()
    results = []
    for check in CRITERIA:
        r = check(sweeps)
        results.append(r)
        if report:
            report(r.line())
    return results
