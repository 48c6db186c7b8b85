"""Sweep configuration: INI-style key/value files plus command-line overrides.

Grammar (see README for the full reference)::

    [run]            mode, rdp_tol, thermal_probe, oracle, out
    [system]         eta | cooperativity, zeta_m, zeta_a, temperature,
                     omega_m, omega_o, kappa
    [axis.<name>]    min, max, points, spacing   (name: C_g, G, G_prime, omega)
    [slice]          G_db | G_prime
    [resonant]       zetas, temperatures
    [bandwidth]      cooperativities, G_db, G_prime (number or "pl")
    [boundary]       tolerance
    [oracle]         draws, seed

Lines starting with ``#`` or ``;`` are comments.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Tuple

import numpy as np

from .channel import DEFAULT_RDP_TOL, TransferCoefficients, gain_from_db
from .errors import ConfigError, DomainError
from .physics import (
    DEFAULT_OMEGA_M,
    DEFAULT_OMEGA_O,
    TWO_PI,
    EOParams,
    cooperativity_for_eta,
    transfer_coefficients,
)

MODES = ("resonant", "grid", "slice", "bandwidth", "boundary", "oracle-check")
AXIS_NAMES = ("C_g", "G", "G_prime", "omega")
SPACINGS = ("linear", "log", "db")
DEFAULT_POINTS = 201


@dataclass(frozen=True)
class AxisSpec:
    """Grid along one parameter.

    With ``spacing='db'`` the bounds are in dB and points are uniform in dB;
    :meth:`values` returns linear gains.  ``omega`` is measured in units of
    the cavity linewidth ``kappa``.
    """

    name: str
    min: float
    max: float
    points: int = DEFAULT_POINTS
    spacing: str = "linear"

    def __post_init__(self):
        where = f"[axis.{self.name}]"
        if self.name not in AXIS_NAMES:
            raise ConfigError(f"{where}: unknown axis, expected one of {AXIS_NAMES}")
        if self.spacing not in SPACINGS:
            raise ConfigError(f"{where} spacing: expected one of {SPACINGS}, got {self.spacing!r}")
        if self.spacing == "db" and self.name not in ("G", "G_prime"):
            raise ConfigError(f"{where} spacing: dB spacing is only allowed for G and G_prime")
        if self.points < 2:
            raise ConfigError(f"{where} points: need at least 2, got {self.points}")
        if not self.min < self.max:
            raise ConfigError(f"{where}: min ({self.min}) must be below max ({self.max})")
        if self.spacing == "log" and self.min <= 0:
            raise ConfigError(f"{where} min: log spacing needs a positive lower bound")

    def values(self) -> np.ndarray:
        if self.spacing == "linear":
            return np.linspace(self.min, self.max, self.points)
        if self.spacing == "log":
            return np.geomspace(self.min, self.max, self.points)
        return 10.0 ** (np.linspace(self.min, self.max, self.points) / 10.0)


@dataclass(frozen=True)
class SystemSpec:
    """Either a fixed resonant efficiency ``eta`` or a cooperativity."""

    eta: Optional[float] = None
    cooperativity: Optional[float] = None
    zeta_m: float = 1.0
    zeta_a: float = 1.0
    temperature: float = 0.0
    omega_m: float = DEFAULT_OMEGA_M
    omega_o: float = DEFAULT_OMEGA_O
    kappa: float = TWO_PI * 1e6

    def params(self, cooperativity: Optional[float] = None, temperature: Optional[float] = None) -> EOParams:
        C = cooperativity if cooperativity is not None else self.cooperativity
        if C is None:
            C = cooperativity_for_eta(self.eta if self.eta is not None else 0.1, self.zeta_m, self.zeta_a)
        return EOParams.from_dimensionless(
            C, self.zeta_m, self.zeta_a, self.kappa, self.omega_m, self.omega_o,
            self.temperature if temperature is None else temperature,
        )

    def resonant_transfer(self) -> TransferCoefficients:
        if self.cooperativity is None:
            return TransferCoefficients.resonant(self.eta if self.eta is not None else 0.1,
                                                 self.zeta_m, self.zeta_a)
        return transfer_coefficients(self.params(), 0.0)


@dataclass(frozen=True)
class SweepConfig:
    mode: str
    system: SystemSpec = field(default_factory=SystemSpec)
    axes: Dict[str, AxisSpec] = field(default_factory=dict)
    rdp_tol: float = DEFAULT_RDP_TOL
    thermal_probe: bool = False
    oracle: bool = False
    out: Optional[str] = None
    slice_G_db: Optional[float] = None
    slice_G_prime: Optional[float] = None
    zetas: Tuple[float, ...] = (1.0, 0.95, 0.9)
    temperatures: Tuple[float, ...] = (0.0, 0.01, 0.3)
    cooperativities: Tuple[float, ...] = (0.2, 0.5, 1.0)
    bandwidth_G_db: float = 20.0
    bandwidth_G_prime: Optional[float] = None  # None: pure-loss setting at every detuning
    boundary_tol: float = 1e-10
    draws: int = 1000
    seed: int = 0

    def axis(self, name: str) -> AxisSpec:
        if name in self.axes:
            return self.axes[name]
        return default_axis(self.mode, name)

    def validate(self) -> "SweepConfig":
        if self.mode not in MODES:
            raise ConfigError(f"[run] mode: expected one of {MODES}, got {self.mode!r}")
        if not self.rdp_tol > 0:
            raise ConfigError("[run] rdp_tol: must be positive")
        s = self.system
        if s.eta is not None and s.cooperativity is not None:
            raise ConfigError("[system]: give either eta or cooperativity, not both")
        try:
            if s.eta is not None:
                cooperativity_for_eta(s.eta, s.zeta_m, s.zeta_a)
            s.params()
        except DomainError as exc:
            raise ConfigError(f"[system]: {exc}") from exc
        if self.mode == "slice" and (self.slice_G_db is None) == (self.slice_G_prime is None):
            raise ConfigError("[slice]: fix exactly one of G_db or G_prime")
        if self.slice_G_db is not None and self.slice_G_db < 0:
            raise ConfigError("[slice] G_db: must be >= 0")
        if self.slice_G_prime is not None and self.slice_G_prime < 1:
            raise ConfigError("[slice] G_prime: must be >= 1")
        if self.bandwidth_G_db < 0:
            raise ConfigError("[bandwidth] G_db: must be >= 0")
        if self.bandwidth_G_prime is not None and self.bandwidth_G_prime < 1:
            raise ConfigError("[bandwidth] G_prime: must be >= 1 or 'pl'")
        if any(not 0 <= z <= 1 for z in self.zetas):
            raise ConfigError("[resonant] zetas: coupling ratios must lie in [0, 1]")
        if any(t < 0 for t in self.temperatures):
            raise ConfigError("[resonant] temperatures: must be >= 0")
        if self.draws < 1:
            raise ConfigError("[oracle] draws: must be >= 1")
        for name, ax in self.axes.items():
            if name in ("G", "G_prime") and ax.spacing != "db" and ax.min < 1:
                raise ConfigError(f"[axis.{name}] min: gains must be >= 1")
        return self


def default_system(mode: str) -> SystemSpec:
    """Bandwidth spectra default to the lossy coupling ratios (0.999, 0.8)."""
    if mode == "bandwidth":
        return SystemSpec(zeta_m=0.999, zeta_a=0.8)
    return SystemSpec()


def default_config(mode: str) -> SweepConfig:
    return SweepConfig(mode=mode, system=default_system(mode))


def default_axis(mode: str, name: str) -> AxisSpec:
    if name == "C_g":
        return AxisSpec("C_g", 1e-2, 1e2, DEFAULT_POINTS, "log")
    if name == "G":
        upper = 60.0 if mode == "slice" else 40.0
        return AxisSpec("G", 0.0, upper, DEFAULT_POINTS, "db")
    if name == "G_prime":
        return AxisSpec("G_prime", 1.0, 20.0, DEFAULT_POINTS, "linear")
    if name == "omega":
        return AxisSpec("omega", -3.0, 3.0, DEFAULT_POINTS, "linear")
    raise ConfigError(f"unknown axis {name!r}")


def _float(section: str, key: str, raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: expected a number, got {raw!r}") from None
    if math.isnan(value):
        raise ConfigError(f"[{section}] {key}: NaN is not allowed")
    return value


def _int(section: str, key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: expected an integer, got {raw!r}") from None


def _bool(section: str, key: str, raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"[{section}] {key}: expected a boolean, got {raw!r}")


def _floats(section: str, key: str, raw: str) -> Tuple[float, ...]:
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    if not parts:
        raise ConfigError(f"[{section}] {key}: empty list")
    return tuple(_float(section, key, p) for p in parts)


_KNOWN = {
    "run": {"mode", "rdp_tol", "thermal_probe", "oracle", "out"},
    "system": {"eta", "cooperativity", "zeta_m", "zeta_a", "temperature", "omega_m", "omega_o", "kappa"},
    "slice": {"g_db", "g_prime"},
    "resonant": {"zetas", "temperatures"},
    "bandwidth": {"cooperativities", "g_db", "g_prime"},
    "boundary": {"tolerance"},
    "oracle": {"draws", "seed"},
}
_AXIS_KEYS = {"min", "max", "points", "spacing"}


def parse_config_text(text: str, source: str = "<config>", mode: Optional[str] = None) -> SweepConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from exc

    for section in parser.sections():
        if section.startswith("axis."):
            keys = _AXIS_KEYS
        elif section in _KNOWN:
            keys = _KNOWN[section]
        else:
            raise ConfigError(f"{source}: unknown section [{section}]")
        for key in parser[section]:
            if key not in keys:
                raise ConfigError(f"{source}: [{section}] unknown key {key!r}")

    def get(section, key):
        return parser[section][key] if parser.has_option(section, key) else None

    run_mode = get("run", "mode") or mode
    if run_mode is None:
        raise ConfigError(f"{source}: [run] mode is required")
    if mode is not None and run_mode != mode:
        raise ConfigError(f"{source}: [run] mode is {run_mode!r} but subcommand is {mode!r}")

    sys_kwargs = {}
    for key in _KNOWN["system"]:
        raw = get("system", key)
        if raw is not None:
            sys_kwargs[key] = _float("system", key, raw)
    system = replace(default_system(run_mode), **sys_kwargs)

    axes = {}
    for section in parser.sections():
        if not section.startswith("axis."):
            continue
        name = section[len("axis."):]
        base = default_axis(run_mode, name) if name in AXIS_NAMES else None
        if base is None:
            raise ConfigError(f"{source}: [{section}] unknown axis, expected one of {AXIS_NAMES}")
        sec = parser[section]
        axes[name] = AxisSpec(
            name,
            _float(section, "min", sec["min"]) if "min" in sec else base.min,
            _float(section, "max", sec["max"]) if "max" in sec else base.max,
            _int(section, "points", sec["points"]) if "points" in sec else base.points,
            sec.get("spacing", base.spacing).strip(),
        )

    kw = dict(mode=run_mode, system=system, axes=axes)
    if get("run", "rdp_tol") is not None:
        kw["rdp_tol"] = _float("run", "rdp_tol", get("run", "rdp_tol"))
    if get("run", "thermal_probe") is not None:
        kw["thermal_probe"] = _bool("run", "thermal_probe", get("run", "thermal_probe"))
    if get("run", "oracle") is not None:
        kw["oracle"] = _bool("run", "oracle", get("run", "oracle"))
    if get("run", "out") is not None:
        kw["out"] = get("run", "out").strip()
    if get("slice", "g_db") is not None:
        kw["slice_G_db"] = _float("slice", "G_db", get("slice", "g_db"))
    if get("slice", "g_prime") is not None:
        kw["slice_G_prime"] = _float("slice", "G_prime", get("slice", "g_prime"))
    if get("resonant", "zetas") is not None:
        kw["zetas"] = _floats("resonant", "zetas", get("resonant", "zetas"))
    if get("resonant", "temperatures") is not None:
        kw["temperatures"] = _floats("resonant", "temperatures", get("resonant", "temperatures"))
    if get("bandwidth", "cooperativities") is not None:
        kw["cooperativities"] = _floats("bandwidth", "cooperativities", get("bandwidth", "cooperativities"))
    if get("bandwidth", "g_db") is not None:
        kw["bandwidth_G_db"] = _float("bandwidth", "G_db", get("bandwidth", "g_db"))
    raw_gp = get("bandwidth", "g_prime")
    if raw_gp is not None and raw_gp.strip().lower() != "pl":
        kw["bandwidth_G_prime"] = _float("bandwidth", "G_prime", raw_gp)
    if get("boundary", "tolerance") is not None:
        kw["boundary_tol"] = _float("boundary", "tolerance", get("boundary", "tolerance"))
    if get("oracle", "draws") is not None:
        kw["draws"] = _int("oracle", "draws", get("oracle", "draws"))
    if get("oracle", "seed") is not None:
        kw["seed"] = _int("oracle", "seed", get("oracle", "seed"))
    return SweepConfig(**kw)


def load_config(path: str, mode: Optional[str] = None) -> SweepConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text, source=path, mode=mode)


def with_overrides(cfg: SweepConfig, **overrides) -> SweepConfig:
    """Apply command-line overrides; ``None`` values are ignored."""
    sys_fields = {"eta", "cooperativity", "zeta_m", "zeta_a", "temperature"}
    sys_kw = {k: v for k, v in overrides.items() if k in sys_fields and v is not None}
    system = replace(cfg.system, **sys_kw) if sys_kw else cfg.system
    if sys_kw.get("eta") is not None:
        system = replace(system, cooperativity=None)
    top = {k: v for k, v in overrides.items() if k not in sys_fields and v is not None}
    return replace(cfg, system=system, **top)


__all__ = [
    "AxisSpec", "SystemSpec", "SweepConfig", "MODES", "default_axis", "default_config",
    "parse_config_text", "load_config", "with_overrides", "gain_from_db",
]
