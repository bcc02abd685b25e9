import json
from pathlib import Path

import pytest

from pdcsim import cli
from pdcsim import scenario as scmod
from pdcsim.errors import ConfigError

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


def small_config(tmp_path, **overrides) -> Path:
    data = {
        "name": "kdp_small",
        "crystal": "KDP",
        "pdc_type": "type2",
        "lambda_p_nm": 415.0,
        "pump_sigma_nm": 3.0,
        "crystal_length_mm": 5.0,
        "model": "sinc",
        "grid_points": 256,
        "grid_span_sigma": 5.0,
    }
    data.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data))
    return path


def test_config_roundtrip(tmp_path):
    path = small_config(tmp_path, filter_width_nm=5.0)
    cfg = scmod.ScenarioConfig.from_json(path)
    path2 = tmp_path / "again.json"
    path2.write_text(cfg.to_json())
    assert scmod.ScenarioConfig.from_json(path2) == cfg


def test_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"name": "x", "crystal": "KDP", "pdc_type": "type2",
                                "pump_sigma_nm": 3.0, "crystal_length_mm": 5.0,
                                "frobnicate": 1}))
    with pytest.raises(ConfigError):
        scmod.ScenarioConfig.from_json(path)


def test_table_command(tmp_path):
    rc = cli.main(["--out", str(tmp_path), "table", "--which", "table1"])
    assert rc == 0
    text = (tmp_path / "table1.csv").read_text()
    assert "KDP" in text and "no-solution" in text


def test_gvm_scan_command(tmp_path):
    rc = cli.main([
        "--out", str(tmp_path), "gvm-scan", "--crystal", "KDP",
        "--type", "type2", "--theta-s", "0,1.0",
    ])
    assert rc == 0
    lines = (tmp_path / "gvm_scan_kdp_type2.csv").read_text().strip().splitlines()
    assert lines[0].startswith("theta_s_deg")
    assert len(lines) == 3


def test_run_reproducible(tmp_path):
    cfg = small_config(tmp_path)
    rc = cli.main(["--out", str(tmp_path / "a"), "run", "--config", str(cfg)])
    assert rc == 0
    rc = cli.main(["--out", str(tmp_path / "b"), "run", "--config", str(cfg)])
    assert rc == 0
    a = (tmp_path / "a" / "report.json").read_bytes()
    b = (tmp_path / "b" / "report.json").read_bytes()
    assert a == b


def test_run_report_contents(tmp_path):
    cfg = small_config(tmp_path, filter_width_nm=5.0)
    out = tmp_path / "out"
    rc = cli.main(["--out", str(out), "run", "--config", str(cfg)])
    assert rc == 0
    report = json.loads((out / "report.json").read_text())
    assert report["mode_number"] > 1.0
    assert report["mode_number_filtered"] < report["mode_number"]
    assert 0 < report["retained_fraction"] < 1
    assert report["manifest"]
    for name in report["manifest"]:
        assert (out / name).exists()
    # grid CSV has the documented schema
    header = (out / "jsa_grid.csv").read_text().splitlines()[0]
    assert header == "omega_s_rad_s,omega_i_rad_s,re,im,abs2"


def test_validation_exit_code(tmp_path):
    bad = small_config(tmp_path, waist_um=100.0)  # collinear + waist
    rc = cli.main(["--out", str(tmp_path / "x"), "run", "--config", str(bad)])
    assert rc == 2


def test_missing_and_malformed_config_exit_code(tmp_path):
    rc = cli.main(["--out", str(tmp_path / "x"), "run", "--config",
                   str(tmp_path / "nope.json")])
    assert rc == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    rc = cli.main(["--out", str(tmp_path / "x"), "run", "--config", str(broken)])
    assert rc == 2


def test_numerical_exit_code(tmp_path):
    # no phase matching at this pump: numerical failure, stage named
    bad = small_config(tmp_path, lambda_p_nm=250.0)
    rc = cli.main(["--out", str(tmp_path / "x"), "run", "--config", str(bad)])
    assert rc == 3


def test_schmidt_command(tmp_path):
    cfg = small_config(tmp_path)
    out = tmp_path / "s"
    rc = cli.main(["--out", str(out), "schmidt", "--config", str(cfg)])
    assert rc == 0
    data = json.loads((out / "schmidt.json").read_text())
    assert data["K"] > 1.0
    assert len(data["eigenvalues"]) == 10
    assert data["overlap_first_mode_vs_pump"] > 0.9
    header = (out / "signal_modes.csv").read_text().splitlines()[0]
    assert header.startswith("omega_rad_s,mode0_re,mode0_im")


def test_filter_sweep_command(tmp_path):
    cfg = small_config(tmp_path)
    out = tmp_path / "f"
    rc = cli.main(["--out", str(out), "filter-sweep", "--config", str(cfg),
                   "--widths", "5,10"])
    assert rc == 0
    lines = (out / "filter_sweep.csv").read_text().strip().splitlines()
    assert len(lines) == 4


def test_purity_command(tmp_path):
    out = tmp_path / "p"
    rc = cli.main(["--out", str(out), "purity", "--k-points", "5",
                   "--nbar-points", "5", "--trials", "5"])
    assert rc == 0
    assert (out / "purity_surface.csv").exists()
    rep = json.loads((out / "nonsaturation.json").read_text())
    assert rep["min_purity_gap"] > 0


def test_shipped_reference_configs_parse():
    names = {p.name for p in CONFIG_DIR.glob("*.json")}
    assert len(names) >= 6
    for p in CONFIG_DIR.glob("*.json"):
        scmod.ScenarioConfig.from_json(p)


def test_error_messages_name_stage(tmp_path):
    from pdcsim import dispersion as disp
    from pdcsim.errors import OutOfValidityRange

    with pytest.raises(OutOfValidityRange) as err:
        disp.refractive_index(disp.load_crystal("KDP"), 100.0, "ordinary")
    assert str(err.value).startswith("[dispersion]")
