"""CSV and gnuplot writers for scenario results."""

from __future__ import annotations

import csv
import datetime
import hashlib
import io
import json
import os
import subprocess

from .scenarios import SweepResult, get


def params_hash(result: SweepResult) -> str:
    payload = json.dumps(
        {"params": result.params.as_dict(), "options": result.options, "tol": result.tol},
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def git_describe() -> str:
    here = os.path.dirname(os.path.abspath(__file__))
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            cwd=here,
            capture_output=True,
            text=True,
            timeout=5,
        )
    except (OSError, subprocess.SubprocessError):
        return "unknown"
    return out.stdout.strip() or "unknown"


def _fmt(x) -> str:
    return str(x) if isinstance(x, int) else format(x, ".12g")


def csv_body(result: SweepResult) -> str:
    """Column header plus rows; identical for identical inputs."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def csv_text(result: SweepResult, backend: str, runtime: float | None = None) -> str:
    meta = {
        "scenario": result.scenario,
        "description": get(result.scenario).description,
        "params_hash": params_hash(result),
        "params": json.dumps(result.params.as_dict(), sort_keys=True),
        "options": json.dumps(result.options, sort_keys=True),
        "git": git_describe(),
        "tol": _fmt(result.tol),
        "backend": backend,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
    }
    if runtime is not None:
        meta["runtime_s"] = f"{runtime:.2f}"
    header = "".join(f"# {k}: {v}\n" for k, v in meta.items())
    return header + csv_body(result)


def gnuplot_script(result: SweepResult, csv_name: str) -> str:
    x = result.columns[0]
    ys = get(result.scenario).plot or result.columns[1:2]
    lines = [
        "set datafile separator ','",
        "set datafile commentschars '#'",
        "set key autotitle columnhead",
        f"set xlabel '{x}'",
        "set terminal pngcairo size 800,600",
        f"set output '{os.path.splitext(csv_name)[0]}.png'",
    ]
    plots = [f"'{csv_name}' using '{x}':'{y}' with lines" for y in ys]
    if result.scenario == "fig8_ensemble":
        # one block per z0, separated by the z0 column value
        plots = [
            f"'{csv_name}' using (column('z0') == {z0!r} ? column('v0') : 1/0):'{y}' with lines title '{y} z0={z0:.4g}'"
            for z0 in result.options["z0"]
            for y in ys
        ]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"


def write(result: SweepResult, out_path: str, backend: str, runtime: float | None = None) -> tuple[str, str]:
    """Write ``<out_path>`` (CSV) and the matching ``.gp`` script; return both paths."""
    directory = os.path.dirname(out_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(out_path, "w", newline="") as fh:
        fh.write(csv_text(result, backend, runtime))
    gp_path = os.path.splitext(out_path)[0] + ".gp"
    with open(gp_path, "w") as fh:
        fh.write(gnuplot_script(result, os.path.basename(out_path)))
    return out_path, gp_path
