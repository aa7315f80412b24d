"""Run-configuration parsing: INI sections with key = value lines.

Unknown sections or keys are hard errors so typos fail fast.  Temperatures
may be given either as absolute inverse temperatures (beta_h, beta_c) or as
the ratio parameters alpha_h, alpha_c natural for sweeps; supplying both
is an error.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass

from .cycles import EngineSpec, FridgeSpec
from .errors import ConfigError, OrderingError, ParameterError
from .performance import Mode
from .quadrature import QuadratureConfig
from .relaxation import GevaKosloff, ThermalField
from .statistics import Statistics
from .timing import LinearEngineRegenerator, LinearFridgeRegenerator

_SCHEMA = {
    "working_medium": {"statistics"},
    "cycle": {"kind", "omega1", "omega2", "beta1", "beta2", "beta1p", "beta2p",
              "beta_h", "beta_c", "alpha_h", "alpha_c"},
    "bath": {"a", "q", "rho0", "m"},
    "regenerator": {"gamma1", "gamma2", "b", "bp"},
    "numerics": {"rel_tol", "abs_tol", "max_subdivisions", "regime_mode",
                 "x_low_threshold", "x_high_threshold"},
    "output": {"format", "path", "particle_count"},
}


@dataclass
class RunConfig:
    """Fully resolved configuration ready for the pipelines."""

    statistics: Statistics
    kind: str
    spec: EngineSpec | FridgeSpec
    model: GevaKosloff | ThermalField
    regen: LinearEngineRegenerator | LinearFridgeRegenerator
    quad: QuadratureConfig
    mode: Mode
    x_low_threshold: float
    x_high_threshold: float
    out_format: str
    out_path: str | None
    particle_count: int


def _read_ini(path: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(strict=True, interpolation=None)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config file: {exc}") from exc
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        for key in parser[section]:
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key {section}.{key}")
    return parser


class _Section:
    """Typed accessors over one section with section.key error messages."""

    def __init__(self, parser: configparser.ConfigParser, name: str):
        if not parser.has_section(name):
            raise ConfigError(f"missing section [{name}]")
        self._name = name
        self._section = parser[name]

    def has(self, key: str) -> bool:
        return key in self._section

    def raw(self, key: str) -> str:
        if key not in self._section:
            raise ConfigError(f"missing key {self._name}.{key}")
        return self._section[key].strip()

    def text(self, key: str, default: str | None = None) -> str:
        if key not in self._section:
            if default is None:
                raise ConfigError(f"missing key {self._name}.{key}")
            return default
        return self.raw(key)

    def number(self, key: str, default: float | None = None) -> float:
        if key not in self._section and default is not None:
            return default
        raw = self.raw(key)
        try:
            return float(raw)
        except ValueError as exc:
            raise ConfigError(f"{self._name}.{key}: invalid number {raw!r}") from exc

    def integer(self, key: str, default: int | None = None) -> int:
        if key not in self._section and default is not None:
            return default
        raw = self.raw(key)
        try:
            return int(raw)
        except ValueError as exc:
            raise ConfigError(f"{self._name}.{key}: invalid integer {raw!r}") from exc


def _exactly_one(section: _Section, name: str, first: tuple, second: tuple):
    has_first = all(section.has(k) for k in first)
    has_second = all(section.has(k) for k in second)
    any_first = any(section.has(k) for k in first)
    any_second = any(section.has(k) for k in second)
    if any_first and any_second:
        raise ConfigError(f"{name}: give either {'/'.join(first)} or "
                          f"{'/'.join(second)}, not both")
    if has_first:
        return "first"
    if has_second:
        return "second"
    raise ConfigError(f"{name}: requires either {'/'.join(first)} or {'/'.join(second)}")


def _statistics(raw: str) -> Statistics:
    try:
        return Statistics(raw.lower())
    except ValueError as exc:
        raise ConfigError(
            f"working_medium.statistics: expected bosonic or fermionic, got {raw!r}") from exc


def load_run_config(path: str) -> RunConfig:
    """Parse and resolve a configuration file into pipeline-ready objects."""
    parser = _read_ini(path)
    medium = _Section(parser, "working_medium")
    cycle = _Section(parser, "cycle")
    bath = _Section(parser, "bath")
    regen_section = _Section(parser, "regenerator")

    stat = _statistics(medium.raw("statistics"))
    kind = cycle.raw("kind").lower()
    if kind not in ("engine", "fridge"):
        raise ConfigError(f"cycle.kind: expected engine or fridge, got {kind!r}")
    omega1 = cycle.number("omega1")
    omega2 = cycle.number("omega2")

    try:
        if kind == "engine":
            beta1 = cycle.number("beta1")
            beta2 = cycle.number("beta2")
            which = _exactly_one(cycle, "cycle", ("beta_h", "beta_c"), ("alpha_h", "alpha_c"))
            if which == "first":
                beta_h = cycle.number("beta_h")
                beta_c = cycle.number("beta_c")
            else:
                beta_h = cycle.number("alpha_h") * beta1
                beta_c = cycle.number("alpha_c") * beta2
            spec = EngineSpec(stat, omega1, omega2, beta_h, beta1, beta2, beta_c)
            regen = _build(LinearEngineRegenerator, "regenerator",
                           regen_section.number("gamma1"), regen_section.number("gamma2"))
        else:
            beta1p = cycle.number("beta1p")
            beta2p = cycle.number("beta2p")
            which = _exactly_one(cycle, "cycle", ("beta_h", "beta_c"), ("alpha_h", "alpha_c"))
            if which == "first":
                beta_h = cycle.number("beta_h")
                beta_c = cycle.number("beta_c")
            else:
                beta_h = cycle.number("alpha_h") * beta1p
                beta_c = cycle.number("alpha_c") * beta2p
            spec = FridgeSpec(stat, omega1, omega2, beta1p, beta_h, beta_c, beta2p)
            regen = _build(LinearFridgeRegenerator, "regenerator",
                           regen_section.number("b"), regen_section.number("bp"))
    except ParameterError as exc:
        raise ConfigError(f"cycle: {exc}") from exc
    except OrderingError:
        raise  # physics validation error, distinct exit code

    which_bath = _exactly_one(bath, "bath", ("a", "q"), ("rho0", "m"))
    if which_bath == "first":
        model = _build(GevaKosloff, "bath", bath.number("a"), bath.number("q"))
    else:
        model = _build(ThermalField, "bath", bath.number("rho0"), bath.number("m"))

    if parser.has_section("numerics"):
        numerics = _Section(parser, "numerics")
        try:
            quad = QuadratureConfig(
                rel_tol=numerics.number("rel_tol", 1e-10),
                abs_tol=numerics.number("abs_tol", 1e-14),
                max_subdivisions=numerics.integer("max_subdivisions", 200),
            )
        except ParameterError as exc:
            raise ConfigError(f"numerics: {exc}") from exc
        mode_raw = numerics.text("regime_mode", "exact").lower()
        try:
            mode = Mode(mode_raw)
        except ValueError as exc:
            raise ConfigError(
                f"numerics.regime_mode: expected exact, low_temp or high_temp, "
                f"got {mode_raw!r}") from exc
        x_low = numerics.number("x_low_threshold", 8.0)
        x_high = numerics.number("x_high_threshold", 0.1)
    else:
        quad = QuadratureConfig()
        mode = Mode.EXACT
        x_low, x_high = 8.0, 0.1

    if parser.has_section("output"):
        output = _Section(parser, "output")
        out_format = output.text("format", "csv").lower()
        if out_format not in ("csv", "json"):
            raise ConfigError(f"output.format: expected csv or json, got {out_format!r}")
        out_path = output.text("path", "") or None
        particle_count = output.integer("particle_count", 1)
        if particle_count < 1:
            raise ConfigError("output.particle_count: must be at least 1")
    else:
        out_format, out_path, particle_count = "csv", None, 1

    return RunConfig(stat, kind, spec, model, regen, quad, mode,
                     x_low, x_high, out_format, out_path, particle_count)


def _build(factory, section: str, *args):
    try:
        return factory(*args)
    except ParameterError as exc:
        raise ConfigError(f"{section}: {exc}") from exc
