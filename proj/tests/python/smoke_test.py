"""Smoke tests for the _halite extension module.

Run via ctest (which sets PYTHONPATH to the built module directory) or by
hand: PYTHONPATH=build/bindings python3 tests/python/smoke_test.py
"""

import json
import math
import os
import tempfile

import _halite as h


def approx(a, b, rel=1e-9):
    return math.isclose(a, b, rel_tol=rel)


def test_pressures():
    p_lith = h.lithostatic_pressure_pa(1000.0)
    assert p_lith == 2550.0 * 9.81 * 1000.0
    p_min, p_max = h.operating_pressures_pa(p_lith)
    assert approx(p_max, 0.8 * p_lith)
    assert approx(p_min, 0.24 * p_lith)


def test_compressibility_and_capacity():
    table = h.CompressibilityTable.load_csv(os.environ["HALITE_Z_TABLE"])
    assert abs(table.z(0.1e6, 310.0) - 1.0) < 0.005
    assert abs(table.z(20e6, 310.0) - 1.12) < 0.02
    cap = h.cavern_capacity_gwh(1000.0, 300.0, 750000.0, 0.0, table)
    assert 100.0 < cap < 1000.0  # order 1e2 GWh
    assert approx(h.cavern_capacity_gwh(1000.0, 300.0, 750000.0, 0.25, table), cap * 0.75)
    try:
        table.z(70e6, 310.0)
    except ValueError:
        pass
    else:
        raise AssertionError("out-of-hull query must raise")


def test_classification():
    assert h.classify_deposit(800, 1200, 300, 0.10, 20) == "guaranteed"
    assert h.classify_deposit(300, 450, 300, 0.10, 20) == "unsuitable"
    assert h.classify_deposit(400, 1500, 300, 0.10, 20) == "partial"
    assert h.classify_deposit(800, 1200, None, 0.10, 20) == "partial"


def test_packing():
    full = [[True] * 10 for _ in range(10)]
    assert h.pack_cavern_count(full, 100.0, "domal", 4) == 25
    assert h.pack_cavern_count(full, 100.0, "domal", 5) == 16
    assert h.pack_cavern_count([[False] * 10] * 10, 100.0, "domal", 4) == 0


def test_ledger_scalars():
    assert h.storage_need_twh(1000.0, 0.10) == 100.0
    assert approx(h.sufficiency_pct(10.0, 2.0), 500.0)
    assert h.sufficiency_pct(5.0, 0.0) == "unbounded"
    assert approx(h.transport_increment_pct(207.0, 1325.0), 15.622641509433963)
    assert approx(h.expansion_rate_twh_per_a(4942.0, 25.0), 197.68)


def test_scenario_roundtrip():
    data = os.environ["HALITE_TEST_DATA"]
    out_dir = tempfile.mkdtemp(prefix="halite_py_")
    config = {
        "geology_case": "guaranteed_only",
        "separation_factor": 4,
        "inputs": {
            "deposits": os.path.join(data, "deposits_valid.geojson"),
            "exclusion_manifest": os.path.join(data, "exclusions_manifest.json"),
            "demand": os.path.join(data, "demand.csv"),
            "regions": os.path.join(data, "regions.csv"),
            "z_table": os.environ["HALITE_Z_TABLE"],
        },
        "output_dir": out_dir,
        "workers": 2,
    }
    config_path = os.path.join(out_dir, "config.json")
    with open(config_path, "w") as f:
        json.dump(config, f)

    result = h.run_scenario(config_path)
    summary = result["summary"]
    assert summary["global"]["potential_TWh"] > 0
    assert summary["global"]["cavern_count"] > 0
    assert os.path.exists(os.path.join(result["output_dir"], "placements.geojson"))

    report = h.diff_scenarios(result["output_dir"], result["output_dir"])
    assert report["global"]["capacity_delta_pct"] == 0.0


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    main()
