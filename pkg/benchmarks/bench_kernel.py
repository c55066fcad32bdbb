"""Compare the compiled and pure-Python integration kernels.

    python benchmarks/bench_kernel.py [--repeat N]

Times full-protocol integrations for a few trajectories and single
right-hand-side evaluations, and checks that both kernels agree.
"""

import argparse
import timeit

from darknode import _backend
from darknode.dynamics import AmplitudeState, integrate, model_vector
from darknode.trajectory import DEFAULT_OMEGA_T, Trajectory
from darknode.units import default_params

CASES = {
    "constant v=0.017": Trajectory.constant_v(0.017),
    "constant v=0.055": Trajectory.constant_v(0.055),
    "harmonic v=0.03": Trajectory.harmonic(0.03, DEFAULT_OMEGA_T),
    "line 30deg v=0.04": Trajectory.line3d(0.04, 0.5235987755982988),
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    params = default_params()
    backends = ["python"] + (["cython"] if _backend.compiled_available() else [])
    if len(backends) == 1:
        print("compiled kernel not built; timing the pure-Python kernel only")

    print(f"{'case':22s} " + " ".join(f"{b + ' [s]':>12s}" for b in backends) + f" {'speedup':>9s} {'|dP|':>9s}")
    for label, traj in CASES.items():
        times, p = {}, {}
        for b in backends:
            times[b] = min(timeit.repeat(lambda: integrate(traj, params, backend=b), number=1, repeat=args.repeat))
            p[b] = integrate(traj, params, backend=b).p_dark
        speedup = times["python"] / times["cython"] if "cython" in times else float("nan")
        dp = abs(p["python"] - p.get("cython", p["python"]))
        print(f"{label:22s} " + " ".join(f"{times[b]:12.4f}" for b in backends) + f" {speedup:9.1f} {dp:9.1e}")

    y = AmplitudeState(0.6 + 0.1j, 0.3j, -0.2, 0.4).to_array()
    model = model_vector(CASES["line 30deg v=0.04"], params)
    n = 20000
    for b in backends:
        kern, _ = _backend.load(b)
        per_call = min(timeit.repeat(lambda: kern.rhs(7.0, y, model), number=n, repeat=args.repeat)) / n
        print(f"rhs evaluation, {b:6s}: {per_call * 1e6:8.2f} us")


if __name__ == "__main__":
    main()
