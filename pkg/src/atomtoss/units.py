"""Unit constants and quantity parsing.

All internal computation is SI. Config files and CLI flags accept short
unit-suffixed strings ("0.76mK", "12.6um", "40uK"); a bare number is taken
as already-SI. Trap depths quoted in temperature units are converted to
joules through the Boltzmann constant.
"""

import re

KB = 1.380649e-23        # J/K (exact)
RB87_MASS = 1.4431609e-25  # kg

_LENGTH = {"m": 1.0, "mm": 1e-3, "um": 1e-6, "μm": 1e-6, "nm": 1e-9}
_TEMPERATURE = {"K": 1.0, "mK": 1e-3, "uK": 1e-6, "μK": 1e-6, "nK": 1e-9}
_TIME = {"s": 1.0, "ms": 1e-3, "us": 1e-6, "μs": 1e-6, "ns": 1e-9}
_FREQUENCY = {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6}
_ACCEL = {"m/s2": 1.0, "m/s^2": 1.0}
_MASS = {"kg": 1.0}

# energy accepts joules or a temperature suffix via kB
_ENERGY = {"J": 1.0}
_ENERGY.update({suf: scale * KB for suf, scale in _TEMPERATURE.items()})

_TABLES = {
    "length": _LENGTH,
    "temperature": _TEMPERATURE,
    "time": _TIME,
    "frequency": _FREQUENCY,
    "acceleration": _ACCEL,
    "mass": _MASS,
    "energy": _ENERGY,
}

_QTY_RE = re.compile(r"^\s*([-+]?[0-9.]+(?:[eE][-+]?[0-9]+)?)\s*(\S*)\s*$")


class UnitError(ValueError):
    pass


def parse_quantity(value, kind):
    """Parse a config value into SI float. kind selects the unit table."""
    if isinstance(value, bool):
        raise UnitError(f"expected a {kind} quantity, got boolean {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise UnitError(f"expected number or string for {kind}, got {type(value).__name__}")
    m = _QTY_RE.match(value)
    if m is None:
        raise UnitError(f"cannot parse {kind} quantity {value!r}")
    num, suffix = m.groups()
    try:
        x = float(num)
    except ValueError:
        raise UnitError(f"bad number in {kind} quantity {value!r}") from None
    if suffix == "":
        return x
    table = _TABLES.get(kind)
    if table is None:
        raise UnitError(f"unknown quantity kind {kind!r}")
    if suffix not in table:
        allowed = ", ".join(sorted(table))
        raise UnitError(f"unknown {kind} unit {suffix!r} in {value!r} (allowed: {allowed})")
    return x * table[suffix]
