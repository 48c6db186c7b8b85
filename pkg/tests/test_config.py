import numpy as np
import pytest

from eotransducer.config import (
    AxisSpec,
    SweepConfig,
    SystemSpec,
    default_config,
    load_config,
    parse_config_text,
    with_overrides,
)
from eotransducer.errors import ConfigError

FULL = """
[run]
mode = grid
rdp_tol = 1e-8
thermal_probe = yes
oracle = off

[system]
eta = 0.2
zeta_m = 0.99   # inline comment
zeta_a = 0.9
temperature = 0.3

[axis.G]
min = 0
max = 30
points = 31
spacing = db

[axis.G_prime]
min = 1
max = 100
points = 5
spacing = log
"""


def test_full_file():
    cfg = parse_config_text(FULL)
    assert cfg.mode == "grid"
    assert cfg.rdp_tol == 1e-8 and cfg.thermal_probe and not cfg.oracle
    assert cfg.system == SystemSpec(eta=0.2, zeta_m=0.99, zeta_a=0.9, temperature=0.3)
    assert cfg.axis("G") == AxisSpec("G", 0.0, 30.0, 31, "db")
    assert np.allclose(cfg.axis("G_prime").values(), [1, 10**0.5, 10, 10**1.5, 100])
    cfg.validate()


def test_defaults_per_mode():
    assert default_config("slice").axis("G").max == 60.0
    assert default_config("grid").axis("G").max == 40.0
    bw = default_config("bandwidth").system
    assert (bw.zeta_m, bw.zeta_a) == (0.999, 0.8)
    assert default_config("grid").system.resonant_transfer().eta == 0.1


def test_db_axis_values_are_linear_gains():
    vals = AxisSpec("G", 0, 20, 3, "db").values()
    assert np.allclose(vals, [1, 10, 100])


def test_slice_and_bandwidth_sections():
    cfg = parse_config_text("[slice]\nG_prime = 7\n[bandwidth]\ng_prime = pl\n", mode="slice")
    assert cfg.slice_G_prime == 7.0 and cfg.slice_G_db is None
    assert cfg.bandwidth_G_prime is None
    cfg.validate()


def test_lists():
    cfg = parse_config_text("[resonant]\nzetas = 1, 0.5\ntemperatures = 0,0.3\n", mode="resonant")
    assert cfg.zetas == (1.0, 0.5) and cfg.temperatures == (0.0, 0.3)


@pytest.mark.parametrize("text, fragment", [
    ("[bogus]\nx = 1\n", "unknown section"),
    ("[system]\nfoo = 1\n", "unknown key"),
    ("[system]\neta = abc\n", "expected a number"),
    ("[system]\neta = nan\n", "NaN"),
    ("[axis.tau]\nmin = 1\n", "unknown axis"),
    ("[axis.G]\npoints = 1\n", "points"),
    ("[axis.G]\nspacing = cubic\n", "spacing"),
    ("[axis.C_g]\nspacing = db\n", "dB spacing"),
    ("[run]\nmode = slice\n", "subcommand"),
    ("[run]\nthermal_probe = maybe\n", "boolean"),
    ("[oracle]\ndraws = 1.5\n", "integer"),
    ("not an ini file", "config"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_config_text(text, mode="grid")


@pytest.mark.parametrize("kw, fragment", [
    (dict(system=SystemSpec(eta=0.1, cooperativity=0.5)), "either"),
    (dict(system=SystemSpec(eta=0.95, zeta_m=0.9, zeta_a=0.9)), "system"),
    (dict(rdp_tol=0.0), "rdp_tol"),
    (dict(draws=0), "draws"),
    (dict(zetas=(1.2,)), "zetas"),
    (dict(axes={"G_prime": AxisSpec("G_prime", 0.5, 3, 5, "linear")}), "gains"),
])
def test_validation_errors(kw, fragment):
    with pytest.raises(ConfigError, match=fragment):
        SweepConfig(mode="grid", **kw).validate()


def test_slice_needs_exactly_one_fixed_gain():
    with pytest.raises(ConfigError):
        SweepConfig(mode="slice").validate()
    with pytest.raises(ConfigError):
        SweepConfig(mode="slice", slice_G_db=20, slice_G_prime=7).validate()
    SweepConfig(mode="slice", slice_G_db=20).validate()


def test_overrides_ignore_none_and_eta_replaces_cooperativity():
    cfg = SweepConfig(mode="grid", system=SystemSpec(cooperativity=0.5))
    out = with_overrides(cfg, eta=0.3, temperature=None, rdp_tol=None, seed=4)
    assert out.system.eta == 0.3 and out.system.cooperativity is None
    assert out.rdp_tol == cfg.rdp_tol and out.seed == 4


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(str(tmp_path / "nope.ini"))
    path = tmp_path / "c.ini"
    path.write_text("[run]\nmode = boundary\n")
    assert load_config(str(path)).mode == "boundary"
