"""JSON run configuration with strict schema validation.

Values carry explicit unit suffixes ("0.76mK", "12.6um") or are plain numbers.
A plain number is SI for absolute kinds; for the *_scaled kinds it is a
multiple of the natural scale instead (trap a_max for accelerations, trap
depth for energies, trap width for lengths), which is how those controls are
quoted everywhere in the interface. Unknown sections or keys are rejected.
"""

import json
from importlib import resources

from .core import TrapParams
from .thermal import ThermalSpec
from .units import RB87_MASS, UnitError, parse_quantity

BUNDLED_CONFIG = "rb87.json"


class ConfigError(ValueError):
    pass


# kind tags: unit-table kinds parse absolutely; *_scaled kinds treat bare
# numbers as multiples of a trap-derived scale; the rest are plain JSON types.
_SCHEMA = {
    "trap": {"mass": "mass", "depth": "energy", "width": "length"},
    "geometry": {"length": "length", "lattice_spacing": "length"},
    "thermal": {"temperature": "temperature", "n_samples": "int", "seed": "int"},
    "profile": {
        "accel": "accel_scaled",
        "fractions": "number_list",
        "flight_depth": "energy_scaled",
        "gravity": "number_list",
        "sample_points": "int",
    },
    "sweep": {
        "kind": "str",
        "start": "sweep_value",
        "stop": "sweep_value",
        "points": "int",
        "scale": "str",
        "mode": "str",
        "accel": "accel_scaled",
        "static_depth": "energy_scaled",
        "occupied": "bool",
    },
    "repair": {
        "n_trials": "int",
        "seed": "int",
        "temperature": "temperature",
        "accel_fraction": "float",
        "dynamic_depth": "energy",
        "static_depth": "energy",
        "include_statics": "bool",
    },
    "plan": {
        "strategy": "str",
        "f_p": "frequency",
        "accel_fraction": "float",
        "problem": "problem",
    },
    "scaling": {
        "dims": "int",
        "n_list": "number_list",
        "n_trials": "int",
        "strategy": "str",
        "f_p": "frequency",
        "accel_fraction": "float",
    },
    "crossover": {
        "dims": "int",
        "f_p": "frequency",
        "path_length": "length",
        "hologram_width": "length",
        "n_lo": "int",
        "n_hi": "int",
        "n_trials": "int",
        "accel_fraction": "float",
    },
    "output": {"plot": "bool", "stem": "str"},
}

_PROBLEM_KEYS = {"kind", "n_atoms", "dims", "seed", "occupancy", "target"}
_UNIT_KINDS = ("mass", "energy", "length", "temperature", "time", "frequency",
               "acceleration")


def _check_value(path, kind, value):
    if kind in _UNIT_KINDS:
        try:
            parse_quantity(value, kind)
        except UnitError as exc:
            raise ConfigError(f"{path}: {exc}") from None
    elif kind in ("accel_scaled", "energy_scaled", "length_scaled", "sweep_value"):
        if isinstance(value, bool):
            raise ConfigError(f"{path}: expected a number or unit string")
        if isinstance(value, (int, float)):
            return
        base = {"accel_scaled": "acceleration", "energy_scaled": "energy",
                "length_scaled": "length", "sweep_value": None}[kind]
        try:
            if base is None:  # grid bounds: unit decides the dimension
                _parse_any_unit(value)
            else:
                parse_quantity(value, base)
        except UnitError as exc:
            raise ConfigError(f"{path}: {exc}") from None
    elif kind == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{path}: expected an integer, got {value!r}")
    elif kind == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{path}: expected a number, got {value!r}")
    elif kind == "bool":
        if not isinstance(value, bool):
            raise ConfigError(f"{path}: expected true/false, got {value!r}")
    elif kind == "str":
        if not isinstance(value, str):
            raise ConfigError(f"{path}: expected a string, got {value!r}")
    elif kind == "number_list":
        if not isinstance(value, list) or any(
                isinstance(v, bool) or not isinstance(v, (int, float)) for v in value):
            raise ConfigError(f"{path}: expected a list of numbers, got {value!r}")
    elif kind == "problem":
        if not isinstance(value, dict):
            raise ConfigError(f"{path}: expected a mapping, got {value!r}")
        bad = set(value) - _PROBLEM_KEYS
        if bad:
            raise ConfigError(f"{path}: unknown problem keys {sorted(bad)}")
    else:  # pragma: no cover - schema typo guard
        raise ConfigError(f"{path}: unhandled kind {kind!r}")


def _parse_any_unit(text):
    """Parse a suffixed string whose unit table is inferred from the suffix."""
    last = None
    for kind in ("acceleration", "energy", "length", "temperature", "time", "frequency"):
        try:
            return parse_quantity(text, kind), kind
        except UnitError as exc:
            last = exc
    raise last


class RunConfig:
    """Validated view over the raw JSON mapping."""

    def __init__(self, raw):
        if not isinstance(raw, dict):
            raise ConfigError(f"config root must be a mapping, got {type(raw).__name__}")
        for section, body in raw.items():
            if section not in _SCHEMA:
                raise ConfigError(f"unknown config section {section!r}")
            if not isinstance(body, dict):
                raise ConfigError(f"section {section!r} must be a mapping")
            for key, value in body.items():
                if key not in _SCHEMA[section]:
                    raise ConfigError(f"unknown key {section}.{key}")
                _check_value(f"{section}.{key}", _SCHEMA[section][key], value)
        self.raw = raw

    @classmethod
    def from_file(cls, path):
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON in {path}: {exc}") from None
        return cls(raw)

    def to_file(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.raw, fh, indent=2, sort_keys=True)
            fh.write("\n")

    def merged(self, overrides):
        """New config with override keys replacing existing ones, one level deep."""
        raw = {k: dict(v) for k, v in self.raw.items()}
        for section, body in overrides.items():
            raw.setdefault(section, {})
            raw[section].update(body)
        return RunConfig(raw)

    def _get(self, section, key, default):
        return self.raw.get(section, {}).get(key, default)

    def quantity(self, section, key, kind, default=None):
        v = self._get(section, key, None)
        if v is None:
            if default is None:
                raise ConfigError(f"missing required config value {section}.{key}")
            return default
        try:
            return parse_quantity(v, kind)
        except UnitError as exc:
            raise ConfigError(f"{section}.{key}: {exc}") from None

    def scaled_quantity(self, section, key, kind, scale, default=None):
        """Bare numbers are multiples of scale; strings parse as absolute."""
        v = self._get(section, key, None)
        if v is None:
            if default is None:
                raise ConfigError(f"missing required config value {section}.{key}")
            return default
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            return float(v) * scale
        try:
            return parse_quantity(v, kind)
        except UnitError as exc:
            raise ConfigError(f"{section}.{key}: {exc}") from None

    def plain(self, section, key, default=None):
        v = self._get(section, key, default)
        if v is None:
            raise ConfigError(f"missing required config value {section}.{key}")
        return v

    def build_trap(self):
        return TrapParams(
            mass=self.quantity("trap", "mass", "mass", RB87_MASS),
            depth=self.quantity("trap", "depth", "energy"),
            width=self.quantity("trap", "width", "length"),
        )

    def build_thermal(self, dims="1d"):
        return ThermalSpec(
            temperature=self.quantity("thermal", "temperature", "temperature", 0.0),
            n_samples=int(self.plain("thermal", "n_samples", 2000)),
            seed=int(self.plain("thermal", "seed", 0)),
            dims=dims,
        )


def default_config():
    """The bundled rubidium config with the published operating point."""
    text = resources.files("atomtoss").joinpath(BUNDLED_CONFIG).read_text("utf-8")
    return RunConfig(json.loads(text))
