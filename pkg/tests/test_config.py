import json
from importlib.resources import files

import pytest

from gass.analytic import overall_connectivity
from gass.config import DEFAULTS, SweepSpec, default_config, load_config, parse_mapping, parse_values
from gass.errors import ConfigError

DATA = files("gass") / "data"


def test_defaults_round_trip():
    rc = default_config()
    assert rc.mapping == DEFAULTS
    assert rc.system.deployment.gu_density == pytest.approx(50e-6)
    assert rc.system.hop2.sinr_threshold == pytest.approx(10 ** -0.5)
    assert rc.plan.trials == 10_000 and rc.sweep is None


@pytest.mark.parametrize("name,var,n", [
    ("fig2a.ini", "av_parent_density", 10),
    ("fig2b.ini", "gu_density", 10),
    ("fig2c_theta1.ini", "sinr_threshold_1", 11),
    ("fig2c_theta2.ini", "sinr_threshold_2", 11),
])
def test_bundled_configs_load(name, var, n):
    rc = load_config(DATA / name)
    assert rc.sweep.variable == var
    assert len(rc.sweep.values) == n


def test_json_round_trip(tmp_path):
    rc = load_config(DATA / "fig2a.ini")
    path = tmp_path / "echo.json"
    path.write_text(json.dumps({"config": rc.mapping}))
    again = load_config(path)
    assert again.mapping == rc.mapping
    assert overall_connectivity(again.system) == overall_connectivity(rc.system)


def test_with_value_changes_one_key():
    rc = default_config()
    moved = rc.with_value("hardcore_distance", 200)
    assert moved.system.deployment.hardcore_distance == 200.0
    assert moved.system.hop1 == rc.system.hop1
    assert rc.system.deployment.hardcore_distance == 100.0


@pytest.mark.parametrize("raw,key", [
    ({"hop1": {"nakagami_m": "2.5"}}, "hop1.nakagami_m"),
    ({"hop1": {"colour": "1"}}, "hop1.colour"),
    ({"radar": {}}, "radar"),
    ({"ground_users": {"tx_probability": "1.5"}}, "ground_users.tx_probability"),
    ({"hop2": {"extra_loss": "2"}}, "hop2.extra_loss"),
    ({"aerial": {"parent_density_per_km2": "0"}}, "aerial.parent_density_per_km2"),
    ({"geometry": {"av_altitude_m": "7e5"}}, "geometry.av_altitude_m"),
    ({"sim": {"mode": "exact"}}, "sim.mode"),
    ({"hop2": {"beamwidth_coeff": "1e6"}}, "geometry"),
])
def test_bad_values_name_the_key(raw, key):
    with pytest.raises(ConfigError) as info:
        parse_mapping(raw)
    assert info.value.key == key
    assert str(info.value).startswith(key)


def test_sweep_validation():
    with pytest.raises(ConfigError):
        SweepSpec("temperature", (1.0,))
    with pytest.raises(ConfigError):
        SweepSpec("gu_density", ())
    with pytest.raises(ConfigError):
        SweepSpec("gu_density", (1.0, 3.0, 2.0))
    assert SweepSpec("gu_density", (3.0, 2.0)).values == (3.0, 2.0)
    assert parse_values("0, 100;200") == (0.0, 100.0, 200.0)
    with pytest.raises(ConfigError):
        parse_values("a,b")


def test_unparseable_ini(tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("no section header\n")
    with pytest.raises(ConfigError):
        load_config(path)
