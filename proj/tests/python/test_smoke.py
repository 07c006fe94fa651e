import math
import os
from pathlib import Path

import pytest

import agrifoot

FIXTURES = Path(os.environ.get("AGRIFOOT_FIXTURE_DIR", Path(__file__).resolve().parents[2] / "fixtures"))


def test_distribution_and_densify():
    d = agrifoot.FarmSizeDistribution([10, 20, 40], [3, 2, 1])
    assert d.total_farms() == 6
    assert d.total_size() == 110
    dense = agrifoot.densify([20, 50, 100, 200, 400], [16000, 22000, 20500, 6723], 65223, 7358412)
    assert abs(dense.total_farms() - 65223) / 65223 < 1e-3
    assert min(dense.counts) >= 0


def test_allocation():
    a = agrifoot.AllocationEntry("A", 0, 100, 1.0)
    b = agrifoot.AllocationEntry("B", 50, 300, 0.5)
    assert agrifoot.raw_weight(a, 50) == 1.0
    assert agrifoot.raw_weight(a, 100) == 0.0
    shares = dict(agrifoot.mass_function([a, b], 75))
    assert math.isclose(sum(shares.values()), 1.0, abs_tol=1e-12)
    with pytest.raises(agrifoot.EngineError):
        agrifoot.mass_function([a], 150)


def test_device_formulas():
    cam = agrifoot.DeviceSpec()
    cam.name = "camera"
    cam.kind = agrifoot.DeviceKind.capacity_scaled
    cam.capacity = 40
    cam.active_power = 6
    cam.active_hours_per_day = 24
    cam.embodied_ghg = 30
    cam.lifetime_years = 6
    assert agrifoot.device_quantity(cam, 81) == 3
    assert agrifoot.annual_energy_nonrobotic(cam, 3) == 3 * 365 * 144
    assert agrifoot.embodied_annual(cam, 3) == 15
    assert agrifoot.use_annual(1e6) == 68
    assert math.isclose(agrifoot.derive_capacity(3, 5, 0.2), 0.3)
    assert math.isclose(agrifoot.thermal_baseline(1, [(6.5, 2), (3.78, 7)], 3.17), 125.0882)


def test_run_scenario(tmp_path):
    out = tmp_path / "out"
    res = agrifoot.run_scenario(FIXTURES / "minimal" / "scenario.json", out=out)
    assert res["name"] == "minimal"
    assert res["totals"]["total_kg"] > 0
    assert (out / "inventory.csv").exists()
    assert len(res["files"]) >= 4
    assert agrifoot.validate_scenario(FIXTURES / "cattle" / "low_pc.json") == []


def test_config_error_is_value_error():
    with pytest.raises(ValueError):
        agrifoot.run_scenario(FIXTURES / "missing.json")
