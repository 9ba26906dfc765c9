"""
System configuration and its text format.

Configs are INI files with the sections ``[geometry]``, ``[ground_users]``,
``[aerial]``, ``[hop1]``, ``[hop2]``, ``[sim]`` and an optional ``[sweep]``.
Densities are given per km^2 and thresholds in dB; both are converted on
ingestion. A JSON object with the same section/key layout is accepted too,
which is what the CLI echoes back.

Every transformation (sweeps, seed overrides) is applied to the
boundary-unit mapping and re-parsed, so an emitted config reproduces the
run bit for bit.
"""
from __future__ import annotations

import configparser
import copy
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Optional, Tuple

from .channel import HopConfig, db_to_linear
from .errors import ConfigError
from .geom3d import ShellGeometry, beamwidth, hop1_cap, hop2_cap
from .pointproc import DeploymentConfig
from .simcore import MODES, TrialPlan

PER_KM2 = 1e-6

_HOP_KEYS = {
    "power_w": ("tx_power", float),
    "freq_hz": ("carrier_freq", float),
    "illumination": ("illumination_coeff", float),
    "antenna_diameter_m": ("dish_diameter", float),
    "extra_loss": ("extra_loss", float),
    "nakagami_m": ("nakagami_m", int),
    "nakagami_omega": ("nakagami_omega", float),
    "noise_w": ("noise_power", float),
    "sinr_threshold_db": ("sinr_threshold", float),
}

SCHEMA = {
    "geometry": {"earth_radius_m": float, "av_altitude_m": float, "sat_altitude_m": float},
    "ground_users": {"density_per_km2": float, "tx_probability": float},
    "aerial": {"parent_density_per_km2": float, "hardcore_distance_m": float},
    "hop1": {k: t for k, (_, t) in _HOP_KEYS.items()},
    "hop2": {**{k: t for k, (_, t) in _HOP_KEYS.items()}, "beamwidth_coeff": float},
    "sim": {"trials": int, "seed": int, "mode": str},
    "sweep": {"variable": str, "values": str},
}

SWEEP_VARIABLES = {
    "av_parent_density": ("aerial", "parent_density_per_km2"),
    "hardcore_distance": ("aerial", "hardcore_distance_m"),
    "gu_density": ("ground_users", "density_per_km2"),
    "sinr_threshold_1": ("hop1", "sinr_threshold_db"),
    "sinr_threshold_2": ("hop2", "sinr_threshold_db"),
}

# Placeholder radio settings. The published results defer these to earlier
# work, so they are chosen to put every hop in a non-trivial regime.
DEFAULTS = {
    "geometry": {"earth_radius_m": 6_371_000.0, "av_altitude_m": 1_000.0, "sat_altitude_m": 600_000.0},
    "ground_users": {"density_per_km2": 50.0, "tx_probability": 0.05},
    "aerial": {"parent_density_per_km2": 5.0, "hardcore_distance_m": 100.0},
    "hop1": {
        "power_w": 0.1, "freq_hz": 2.0e9, "illumination": 0.6, "antenna_diameter_m": 0.5,
        "extra_loss": 1.0, "nakagami_m": 3, "nakagami_omega": 1.0, "noise_w": 4.0e-14,
        "sinr_threshold_db": 0.0,
    },
    "hop2": {
        "power_w": 1.0, "freq_hz": 30.0e9, "illumination": 0.6, "antenna_diameter_m": 20.0,
        "extra_loss": 0.5, "nakagami_m": 3, "nakagami_omega": 1.0, "noise_w": 4.0e-13,
        "sinr_threshold_db": -5.0, "beamwidth_coeff": 70.0,
    },
    "sim": {"trials": 10_000, "seed": 20240101, "mode": "cap_approx"},
}


@dataclass(frozen=True)
class SystemConfig:
    """Geometry, deployment and both hops' radio settings in SI units."""

    shell: ShellGeometry = field(default_factory=ShellGeometry)
    deployment: DeploymentConfig = field(default_factory=DeploymentConfig)
    hop1: HopConfig = field(default_factory=HopConfig)
    hop2: HopConfig = field(default_factory=HopConfig)

    def hop(self, i: int) -> HopConfig:
        if i not in (1, 2):
            raise ValueError(f"hop index must be 1 or 2, got {i}")
        return self.hop1 if i == 1 else self.hop2

    @property
    def beamwidth(self) -> float:
        return beamwidth(self.hop2.carrier_freq, self.hop2.dish_diameter, self.hop2.beamwidth_coeff)

    @cached_property
    def _caps(self):
        return {1: hop1_cap(self.shell, self.deployment.av_density), 2: hop2_cap(self.shell, self.beamwidth)}

    def cap(self, i: int):
        return self._caps[i]

    def interferer_density(self, i: int) -> float:
        return self.deployment.gu_tx_density if i == 1 else self.deployment.av_density


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    values: Tuple[float, ...]

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ConfigError("sweep.variable", f"unknown sweep variable {self.variable!r}; "
                              f"choose from {sorted(SWEEP_VARIABLES)}")
        if not self.values:
            raise ConfigError("sweep.values", "must be non-empty")
        diffs = [b - a for a, b in zip(self.values, self.values[1:])]
        if not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
            raise ConfigError("sweep.values", "must be strictly monotone")


@dataclass(frozen=True)
class RunConfig:
    mapping: dict
    system: SystemConfig
    plan: TrialPlan
    sweep: Optional[SweepSpec] = None

    def with_value(self, variable: str, value: float) -> "RunConfig":
        section, key = SWEEP_VARIABLES[variable]
        mapping = copy.deepcopy(self.mapping)
        mapping[section][key] = float(value)
        return parse_mapping(mapping)

    def with_sim(self, **entries) -> "RunConfig":
        """Override ``[sim]`` keys (``trials``, ``seed``, ``mode``)."""
        mapping = copy.deepcopy(self.mapping)
        mapping["sim"].update(entries)
        return parse_mapping(mapping)

    def to_json(self) -> str:
        return json.dumps(self.mapping, indent=2, sort_keys=True)


def parse_values(text: str) -> Tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.replace(";", ",").split(",") if v.strip())
    except ValueError as exc:
        raise ConfigError("sweep.values", f"not a comma-separated list of numbers: {text!r}") from exc


def _coerce(section, key, raw, kind):
    name = f"{section}.{key}"
    if kind is str:
        if isinstance(raw, (list, tuple)):
            return ", ".join(repr(float(v)) for v in raw)
        return str(raw).strip()
    try:
        if kind is int:
            value = float(raw)
            if not value.is_integer():
                raise ValueError
            return int(value)
        value = float(raw)
    except (TypeError, ValueError):
        raise ConfigError(name, f"expected {kind.__name__}, got {raw!r}") from None
    return value


def normalize(raw: dict) -> dict:
    """Validate section/key names, coerce types and fill defaults."""
    out = copy.deepcopy(DEFAULTS)
    for section, entries in raw.items():
        if section.upper() == "DEFAULT":
            continue
        if section not in SCHEMA:
            raise ConfigError(section, "unknown section")
        out.setdefault(section, {})
        for key, value in entries.items():
            kind = SCHEMA[section].get(key)
            if kind is None:
                raise ConfigError(f"{section}.{key}", "unknown key")
            out[section][key] = _coerce(section, key, value, kind)
    if "sweep" in out and set(out["sweep"]) != {"variable", "values"}:
        raise ConfigError("sweep", "needs both 'variable' and 'values'")
    return out


def _build_hop(section: str, entries: dict) -> HopConfig:
    kwargs = {}
    for key, value in entries.items():
        if key == "beamwidth_coeff":
            kwargs["beamwidth_coeff"] = value
            continue
        target, _ = _HOP_KEYS[key]
        kwargs[target] = float(db_to_linear(value)) if key == "sinr_threshold_db" else value
    try:
        return HopConfig(**kwargs)
    except ConfigError as exc:
        src = {target: key for key, (target, _) in _HOP_KEYS.items()}
        raise ConfigError(f"{section}.{src.get(exc.key, exc.key)}", str(exc).split(": ", 1)[-1]) from None


def parse_mapping(raw: dict) -> RunConfig:
    m = normalize(raw)
    g, gu, av, sim = m["geometry"], m["ground_users"], m["aerial"], m["sim"]
    for section, key in (("geometry", "earth_radius_m"), ("geometry", "av_altitude_m"),
                         ("geometry", "sat_altitude_m")):
        if not m[section][key] > 0:
            raise ConfigError(f"{section}.{key}", f"must be positive, got {m[section][key]}")
    if not g["av_altitude_m"] < g["sat_altitude_m"]:
        raise ConfigError("geometry.av_altitude_m", "must be below sat_altitude_m")
    shell = ShellGeometry(g["earth_radius_m"], g["av_altitude_m"], g["sat_altitude_m"])

    checks = [("ground_users", "density_per_km2"), ("aerial", "parent_density_per_km2"),
              ("aerial", "hardcore_distance_m")]
    for section, key in checks:
        if not m[section][key] >= 0:
            raise ConfigError(f"{section}.{key}", f"must be non-negative, got {m[section][key]}")
    if not m["aerial"]["parent_density_per_km2"] > 0:
        raise ConfigError("aerial.parent_density_per_km2", "must be positive")
    if not 0 <= gu["tx_probability"] <= 1:
        raise ConfigError("ground_users.tx_probability", "must lie in [0, 1]")
    deployment = DeploymentConfig(
        gu_density=gu["density_per_km2"] * PER_KM2,
        gu_tx_probability=gu["tx_probability"],
        av_parent_density=av["parent_density_per_km2"] * PER_KM2,
        hardcore_distance=av["hardcore_distance_m"],
    )
    hop1 = _build_hop("hop1", m["hop1"])
    hop2 = _build_hop("hop2", m["hop2"])

    if sim["trials"] < 1:
        raise ConfigError("sim.trials", "must be >= 1")
    if not 0 <= sim["seed"] < 2**64:
        raise ConfigError("sim.seed", "must be an unsigned 64-bit integer")
    if sim["mode"] not in MODES:
        raise ConfigError("sim.mode", f"must be one of {MODES}")
    plan = TrialPlan(trials=sim["trials"], master_seed=sim["seed"], mode=sim["mode"])

    sweep = None
    if "sweep" in m:
        sweep = SweepSpec(m["sweep"]["variable"], parse_values(m["sweep"]["values"]))
    system = SystemConfig(shell, deployment, hop1, hop2)
    try:
        system.cap(1), system.cap(2)
    except ValueError as exc:
        raise ConfigError("geometry", str(exc)) from None
    return RunConfig(m, system, plan, sweep)


def load_config(path) -> RunConfig:
    """Read an INI (or JSON) config file."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(str(path), f"invalid JSON: {exc}") from None
        if "config" in raw and isinstance(raw["config"], dict):
            raw = raw["config"]
    else:
        parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
        parser.optionxform = str
        try:
            parser.read_string(text, source=str(path))
        except configparser.Error as exc:
            raise ConfigError(str(path), f"cannot parse: {exc}") from None
        raw = {s: dict(parser.items(s)) for s in parser.sections()}
    return parse_mapping(raw)


def default_config() -> RunConfig:
    return parse_mapping({})
