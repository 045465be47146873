"""Config grammar, CLI subcommands, output formats, exit codes."""

import json

import pytest

from casimirwl.cli import main
from casimirwl.config import (RunConfig, build_job, parse_config, serialize)
from casimirwl.errors import ConfigError

MINIMAL = """
plate1.model = drude
plate2.model = drude_wl
geometry.separation_nm = 250
"""

SWEEP_1K = """
plate1.model = drude
plate2.model = drude_wl
geometry.separation_nm = 250
state.temperature_K = 1.0
sweep.variable = field
sweep.min = 0
sweep.max = 100
sweep.count = 3
"""


def test_minimal_config_defaults():
    cfg = parse_config(MINIMAL)
    assert cfg.separation_nm == 250.0
    assert cfg.temperature_k == 0.1
    assert cfg.output_format == "csv"
    job = build_job(cfg)
    assert job.separation_a == pytest.approx(250e-9, rel=1e-12)


def test_range_error_names_key():
    with pytest.raises(ConfigError) as err:
        parse_config("geometry.separation_nm = -5\n")
    assert "geometry.separation_nm" in str(err.value)


def test_unknown_key_strict_and_lenient():
    text = MINIMAL + "bogus.key = 1\n"
    with pytest.raises(ConfigError) as err:
        parse_config(text, strict=True)
    assert "bogus.key" in str(err.value)
    with pytest.warns(UserWarning):
        cfg = parse_config(text, strict=False)
    assert cfg.separation_nm == 250.0


def test_parse_error_carries_line_and_column():
    with pytest.raises(ConfigError) as err:
        parse_config("plate1.model = drude\nnot a pair\n")
    assert err.value.line == 2
    with pytest.raises(ConfigError) as err:
        parse_config("sweep.count = 2.5\n")
    assert err.value.line == 1
    assert err.value.column is not None


def test_bad_enum_value():
    with pytest.raises(ConfigError):
        parse_config("plate1.model = superconductor\n")
    with pytest.raises(ConfigError):
        parse_config("plate2.model = ideal\nsweep.variable = sideways\n")


def test_sweep_validation():
    with pytest.raises(ConfigError):
        parse_config("sweep.variable = field\nsweep.min = 5\nsweep.max = 1\n")
    with pytest.raises(ConfigError):
        parse_config("sweep.variable = field\nsweep.min = 0\nsweep.max = 1\n"
                     "sweep.count = 1\n")
    with pytest.raises(ConfigError):
        parse_config("sweep.variable = temperature\nsweep.min = 0\n"
                     "sweep.max = 1\n")


def test_round_trip():
    for text in (MINIMAL, SWEEP_1K, ""):
        cfg = parse_config(text)
        assert parse_config(serialize(cfg)) == cfg
    # a config touching every section round-trips too
    cfg = RunConfig(plate1_model="plasma", sweep_variable="separation",
                    sweep_min=100.0, sweep_max=400.0, sweep_count=4,
                    sweep_spacing="log", fluct_sweep="tau",
                    fluct_separations_nm=(100.0, 200.0))
    assert parse_config(serialize(cfg)) == cfg


def _run(tmp_path, args, config_text):
    cfg_file = tmp_path / "cfg.txt"
    cfg_file.write_text(config_text)
    return main([args[0], "--config", str(cfg_file)] + args[1:])


def test_pressure_command(tmp_path, capsys):
    code = _run(tmp_path, ["pressure"], """
plate1.model = ideal
plate2.model = ideal
state.temperature_K = 0.1
""")
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["normalized"] == pytest.approx(1.0, abs=5e-3)
    assert payload["converged"] is True


def test_pressure_command_convergence_failure(tmp_path, capsys):
    code = _run(tmp_path, ["pressure"], """
plate1.model = ideal
plate2.model = ideal
numerics.max_matsubara = 16
""")
    assert code == 3
    payload = json.loads(capsys.readouterr().out)
    assert "error" in payload
    assert payload["n_terms"] == 16


def test_config_error_exit_code(tmp_path, capsys):
    assert _run(tmp_path, ["pressure"], "geometry.separation_nm = -5\n") == 2


def test_missing_config_exit_code():
    assert main(["pressure", "--config", "/nonexistent/cfg.txt"]) == 4


def test_sweep_csv_schema_and_determinism(tmp_path):
    cfg_file = tmp_path / "cfg.txt"
    cfg_file.write_text(SWEEP_1K)
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    assert main(["sweep", "--config", str(cfg_file), "--out", str(out1)]) == 0
    assert main(["sweep", "--config", str(cfg_file), "--out", str(out2),
                 "--workers", "3"]) == 0
    text1 = out1.read_text()
    assert text1 == out2.read_text()  # byte-identical across worker counts
    lines = text1.strip().splitlines()
    assert lines[0] == "swept,H_gauss,T_K,a_nm,P_Pa,P_norm,sigma_norm,n_terms,converged"
    assert len(lines) == 4
    row = lines[1].split(",")
    # 12 significant digits scientific notation
    assert "e" in row[4] and len(row[4].split("e")[0].replace("-", "").replace(".", "")) == 12
    assert row[8] in ("true", "false")
    # normalized pressure non-decreasing in field
    norms = [float(l.split(",")[5]) for l in lines[1:]]
    assert all(a <= b for a, b in zip(norms, norms[1:]))


def test_sweep_json_format(tmp_path):
    cfg_file = tmp_path / "cfg.txt"
    cfg_file.write_text(SWEEP_1K)
    out = tmp_path / "a.json"
    assert main(["sweep", "--config", str(cfg_file), "--out", str(out),
                 "--format", "json"]) == 0
    payload = json.loads(out.read_text())
    assert "meta" in payload and "rows" in payload
    assert len(payload["rows"]) == 3
    assert payload["meta"]["tolerances"]["quad_rel_tol"] == 1e-9


def test_conductivity_command(tmp_path):
    cfg_file = tmp_path / "cfg.txt"
    cfg_file.write_text(SWEEP_1K)
    out = tmp_path / "c.csv"
    assert main(["conductivity", "--config", str(cfg_file),
                 "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "swept,H_gauss,T_K,sigma_norm"
    sigmas = [float(l.split(",")[3]) for l in lines[1:]]
    assert all(s < 1.0 for s in sigmas)
    assert all(a < b for a, b in zip(sigmas, sigmas[1:]))


def test_conductivity_drude_is_unity(tmp_path):
    text = SWEEP_1K.replace("plate2.model = drude_wl", "plate2.model = drude")
    cfg_file = tmp_path / "cfg.txt"
    cfg_file.write_text(text)
    out = tmp_path / "c.csv"
    assert main(["conductivity", "--config", str(cfg_file),
                 "--out", str(out)]) == 0
    sigmas = [float(l.split(",")[3])
              for l in out.read_text().strip().splitlines()[1:]]
    assert all(s == 1.0 for s in sigmas)


def test_fluctuations_degenerate_kernel(tmp_path, capsys):
    code = _run(tmp_path, ["fluctuations", "--format", "json"], """
plate2.epsilon_f_ev = 5.53
state.temperature_K = 0.1
fluctuations.kernel_amplitude = 0
fluctuations.separations_nm = 250
""")
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    entry = payload["separations"][0]
    assert entry["degenerate"] is True
    assert entry["width_J_per_m2"] == 0.0
    assert "curve" not in entry
