"""TOML run configuration.

::

    [params]
    g0 = 9.6525
    T0_si = 3.0e-7          # converted with the lambda/gamma of this section

    [scenario.fig7_harmonic]
    omega_T = 0.05
    points = 100
    alpha0 = 25.0           # per-scenario parameter override

Keys are natural-unit values. A dimensional key may instead be given with an
``_si`` suffix; giving both spellings is an error.
"""

from __future__ import annotations

import dataclasses
import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import scenarios
from .units import PhysicalParams, default_params, to_natural


class ConfigError(ValueError):
    pass


PARAM_FIELDS = tuple(f.name for f in dataclasses.fields(PhysicalParams))

#: Unit kind of each dimensional key, for ``_si`` conversion.
UNIT_KINDS = {
    "g0": "frequency",
    "delta": "frequency",
    "T0": "time",
    "tW": "time",
    "waist0": "length",
    "omega_T": "frequency",
    "v": "velocity",
    "dv": "velocity",
}

RUN_KEYS = ("points", "tol", "output_path")


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    overrides: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    points: int | None = None
    tol: float | None = None
    output_path: str | None = None


@dataclass(frozen=True)
class RunConfig:
    params: PhysicalParams
    scenarios: list[ScenarioConfig] = field(default_factory=list)

    def scenario(self, name: str) -> ScenarioConfig:
        for sc in self.scenarios:
            if sc.name == name:
                return sc
        return ScenarioConfig(name)


def _natural(section: dict, allowed: tuple[str, ...], scale: PhysicalParams, where: str) -> dict:
    out = {}
    for key, value in section.items():
        base = key[:-3] if key.endswith("_si") and key not in allowed else key
        if base not in allowed:
            raise ConfigError(f"unknown key {key!r} in {where}")
        if base != key:
            if base not in UNIT_KINDS:
                raise ConfigError(f"{key!r} in {where}: {base} is dimensionless, no SI form")
            if base in section:
                raise ConfigError(f"both {base!r} and {key!r} given in {where}")
            value = to_natural(value, UNIT_KINDS[base], scale)
        out[base] = value
    return out


def parse_config_text(text: str) -> RunConfig:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed TOML: {exc}") from exc
    unknown = set(doc) - {"params", "scenario"}
    if unknown:
        raise ConfigError(f"unknown top-level key {sorted(unknown)[0]!r}")

    raw = doc.get("params", {})
    # SI keys are converted with the SI scales of the same section
    si_scales = {k: raw[k] for k in ("lambda_si", "gamma_si", "mass_si") if k in raw}
    scale = default_params().replace(**si_scales)
    try:
        params = default_params().replace(**_natural(raw, PARAM_FIELDS, scale, "[params]"))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"[params]: {exc}") from exc

    entries = []
    for name, section in doc.get("scenario", {}).items():
        where = f"[scenario.{name}]"
        try:
            scenario_def = scenarios.get(name)
        except KeyError as exc:
            raise ConfigError(str(exc.args[0])) from None
        allowed = PARAM_FIELDS + tuple(scenario_def.options) + RUN_KEYS
        values = _natural(section, allowed, params, where)
        if "points" in values and (type(values["points"]) is not int or values["points"] < 2):
            raise ConfigError(f"{where}: points must be an integer >= 2")
        if "tol" in values and not (isinstance(values["tol"], (int, float)) and values["tol"] > 0):
            raise ConfigError(f"{where}: tol must be a positive number")
        overrides = {k: v for k, v in values.items() if k in PARAM_FIELDS}
        try:
            params.replace(**overrides)
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from exc
        entries.append(
            ScenarioConfig(
                name,
                overrides,
                {k: v for k, v in values.items() if k in scenario_def.options},
                values.get("points"),
                values.get("tol"),
                values.get("output_path"),
            )
        )
    return RunConfig(params, entries)


def parse_config(path) -> RunConfig:
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ConfigError(f"{path}: not UTF-8") from exc
    return parse_config_text(text)


def _toml_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return repr(value)
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_toml_value(v) for v in value) + "]"
    raise TypeError(f"cannot write {type(value).__name__} to TOML")


def emit_config(config: RunConfig) -> str:
    """Serialise ``config`` in natural units; parsing the output returns an equal config."""
    lines = ["[params]"]
    lines += [f"{k} = {_toml_value(v)}" for k, v in config.params.as_dict().items()]
    for sc in config.scenarios:
        lines += ["", f"[scenario.{sc.name}]"]
        items = {**sc.overrides, **sc.options}
        items.update({k: getattr(sc, k) for k in RUN_KEYS if getattr(sc, k) is not None})
        lines += [f"{k} = {_toml_value(v)}" for k, v in items.items()]
    return "\n".join(lines) + "\n"
