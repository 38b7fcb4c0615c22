"""Config schema, unit suffixes, and natural-scale number conventions."""

import json

import pytest

from atomtoss import KB, RB87_MASS
from atomtoss.config import ConfigError, RunConfig, default_config
from atomtoss.units import UnitError, parse_quantity

OMEGA_REF = 762668.929643334


@pytest.mark.parametrize(
    "text,kind,want",
    [
        ("0.76mK", "energy", 0.76e-3 * KB),
        ("1.2uK", "energy", 1.2e-6 * KB),
        ("12.6um", "length", 12.6e-6),
        ("12.6μm", "length", 12.6e-6),
        ("500nm", "length", 0.5e-6),
        ("40uK", "temperature", 40e-6),
        ("40μK", "temperature", 40e-6),
        ("40Hz", "frequency", 40.0),
        ("2.5kHz", "frequency", 2500.0),
        ("15us", "time", 15e-6),
        ("2m/s2", "acceleration", 2.0),
        ("2m/s^2", "acceleration", 2.0),
    ],
)
def test_unit_suffixes(text, kind, want):
    assert parse_quantity(text, kind) == pytest.approx(want, rel=1e-12)


def test_bare_numbers_are_si():
    assert parse_quantity(1.26e-5, "length") == 1.26e-5
    assert parse_quantity(3, "time") == 3.0


def test_unit_rejections():
    with pytest.raises(UnitError):
        parse_quantity("40parsec", "length")
    with pytest.raises(UnitError):
        parse_quantity("fast", "acceleration")
    with pytest.raises(UnitError):
        parse_quantity(True, "length")
    with pytest.raises(UnitError):
        parse_quantity("40uK", "length")  # right syntax, wrong dimension


def test_default_config_builds_published_trap():
    c = default_config()
    trap = c.build_trap()
    assert trap.mass == RB87_MASS
    assert trap.omega == pytest.approx(OMEGA_REF, rel=1e-12)
    th = c.build_thermal()
    assert th.temperature == pytest.approx(40e-6, rel=1e-12)
    assert th.n_samples == 2000 and th.seed == 7


def test_scaled_values_bare_vs_suffixed():
    c = default_config()
    a_max = c.build_trap().a_max
    # bare numbers ride the natural scale, unit strings are absolute
    assert c.scaled_quantity("profile", "accel", "acceleration", a_max) == pytest.approx(
        0.33 * a_max, rel=1e-12)
    c2 = c.merged({"profile": {"accel": "5e4m/s2"}})
    assert c2.scaled_quantity("profile", "accel", "acceleration", a_max) == pytest.approx(5e4)
    c3 = c.merged({"repair": {"static_depth": 0.5}})
    depth = c3.build_trap().depth
    assert c3.scaled_quantity("repair", "static_depth", "energy", depth) == pytest.approx(
        0.5 * depth, rel=1e-12)


def test_schema_rejections():
    with pytest.raises(ConfigError):
        RunConfig({"warp": {}})
    with pytest.raises(ConfigError):
        RunConfig({"trap": {"bogus": 1}})
    with pytest.raises(ConfigError):
        RunConfig({"sweep": {"points": "many"}})
    with pytest.raises(ConfigError):
        RunConfig({"scaling": {"n_list": 64}})
    with pytest.raises(ConfigError):
        RunConfig({"plan": {"problem": {"kind": "chain", "zz": 1}}})
    with pytest.raises(ConfigError):
        RunConfig({"thermal": {"temperature": "40banana"}})
    with pytest.raises(ConfigError):
        default_config().merged({"trap": {"bogus": 1}})


def test_error_messages_name_the_path():
    with pytest.raises(ConfigError, match="sweep.points"):
        RunConfig({"sweep": {"points": "many"}})
    with pytest.raises(ConfigError, match="thermal.temperature"):
        RunConfig({"thermal": {"temperature": "40banana"}})


def test_file_round_trip(tmp_path):
    c = default_config()
    path = tmp_path / "run.json"
    c.to_file(path)
    again = RunConfig.from_file(path)
    assert again.raw == c.raw
    on_disk = json.loads(path.read_text())
    assert on_disk == c.raw


def test_merged_leaves_original_untouched():
    c = default_config()
    before = json.dumps(c.raw, sort_keys=True)
    m = c.merged({"thermal": {"seed": 99}, "output": {"plot": False}})
    assert m.plain("thermal", "seed") == 99
    assert m.plain("output", "plot") is False
    assert c.plain("thermal", "seed") == 7
    assert json.dumps(c.raw, sort_keys=True) == before
