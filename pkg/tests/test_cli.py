import csv
import json
from pathlib import Path

import pytest

from nucfio.cli import run_main

SCENARIOS = Path(__file__).resolve().parents[1] / "src" / "nucfio" / "scenarios"

PINNED_ORDER = [
    "setting",
    "nuclear_trace",
    "matrix_trace",
    "eigenvalues",
    "quasinorm_bound",
    "mixed_norm_x_first",
    "mixed_norm_xi_first",
    "discrepancy_trace_vs_matrix",
    "discrepancy_trace_vs_eigensum",
    "runtime_ms",
]


def run(tmp_path, verb, cfg, fmt=None, tolerance=None, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    argv = [verb, "--config", str(path), "--out", str(tmp_path)]
    if fmt:
        argv += ["--format", fmt]
    if tolerance is not None:
        argv += ["--tolerance", str(tolerance)]
    return run_main(argv)


def euclid_cfg():
    return {
        "setting": "euclid",
        "grid": {"lo": -5.0, "hi": 5.0, "count": 129},
        "decomposition": {
            "terms": [
                {
                    "h": {"family": "gaussian", "center": 0.0, "width": 1.0},
                    "g": {"family": "gaussian", "center": 0.2, "width": 1.1},
                }
            ]
        },
    }


def test_bundled_scenarios_run(tmp_path, capsys):
    for name in ("gaussian_rank1.json", "lattice_identity.json", "su2_identity_L1.json"):
        code = run_main(
            ["trace", "--config", str(SCENARIOS / name), "--out", str(tmp_path / name[:-5])]
        )
        assert code == 0, name
        assert (tmp_path / name[:-5] / "report.json").exists()


def test_lattice_identity_trace_is_exact(tmp_path):
    assert run_main(
        ["trace", "--config", str(SCENARIOS / "lattice_identity.json"), "--out", str(tmp_path)]
    ) == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    # [DERIVED] window radius 3: trace exactly 7
    assert rep["nuclear_trace"] == {"re": 7.0, "im": 0.0}
    assert rep["matrix_trace"] == {"re": 7.0, "im": 0.0}


def test_report_field_order_is_pinned(tmp_path):
    assert run(tmp_path, "trace", euclid_cfg()) == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    assert list(rep)[: len(PINNED_ORDER)] == PINNED_ORDER


def test_non_applicable_fields_are_null(tmp_path):
    cfg = {
        "setting": "lattice",
        "radius": 2,
        "xi_count": 32,
        "symbol": {"family": "constant", "value": 1.0},
    }
    assert run(tmp_path, "trace", cfg) == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["quasinorm_bound"] is None  # no decomposition given
    assert rep["mixed_norm_x_first"] is not None


def test_spectrum_csv_shape(tmp_path):
    assert run(tmp_path, "spectrum", euclid_cfg(), fmt="csv") == 0
    with (tmp_path / "spectrum.csv").open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["index", "re", "im", "modulus"]
    assert len(rows) == 130  # header + one eigenvalue per node
    top = complex(float(rows[1][1]), float(rows[1][2]))
    assert abs(top) == pytest.approx(float(rows[1][3]))


def test_unknown_key_is_exit_2(tmp_path, capsys):
    cfg = euclid_cfg()
    cfg["extra"] = 1
    assert run(tmp_path, "trace", cfg) == 2
    assert "unknown keys" in capsys.readouterr().err


def test_missing_seed_is_exit_2(tmp_path, capsys):
    cfg = euclid_cfg()
    cfg["decomposition"]["terms"][0]["h"] = {"family": "random_mix"}
    assert run(tmp_path, "trace", cfg) == 2
    assert "seed" in capsys.readouterr().err


def test_bad_json_is_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert run_main(["trace", "--config", str(path), "--out", str(tmp_path)]) == 2


def test_verify_passes_and_breach_is_exit_3(tmp_path, capsys):
    assert run(tmp_path, "verify", euclid_cfg()) == 0
    out = capsys.readouterr().out
    assert "pass trace_vs_matrix" in out
    assert run(tmp_path, "verify", euclid_cfg(), tolerance=1e-30) == 3
    assert "FAIL" in capsys.readouterr().out


def test_seeded_rerun_is_byte_identical(tmp_path):
    cfg = euclid_cfg()
    cfg["seed"] = 5
    cfg["decomposition"]["terms"][0]["h"] = {"family": "random_mix"}
    d1, d2 = tmp_path / "a", tmp_path / "b"
    for d in (d1, d2):
        d.mkdir()
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg))
        assert run_main(["trace", "--config", str(path), "--out", str(d)]) == 0
    r1 = json.loads((d1 / "report.json").read_text())
    r2 = json.loads((d2 / "report.json").read_text())
    r1.pop("runtime_ms"), r2.pop("runtime_ms")
    assert json.dumps(r1) == json.dumps(r2)


def test_quantize_verb_reports_gaps(tmp_path):
    cfg = euclid_cfg()
    cfg["grid"]["count"] = 257  # interpolation error scales like h^4
    cfg["taus"] = [0.5, 1.0]
    assert run(tmp_path, "quantize", cfg) == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["tau_action_gaps"]["0.5"] < 1e-4
    assert rep["tau_action_gaps"]["1"] < 1e-12
    assert rep["tau_roundtrip_gap"] < 1e-4


def test_wigner_verb_reports_peak(tmp_path):
    assert run(tmp_path, "wigner", euclid_cfg()) == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["wigner_peak"]["re"] > 1.0  # near sqrt(2) for a unit Gaussian
    assert abs(rep["wigner_peak_xi"]) < 1e-12


def test_haar_check_su3_small(tmp_path, capsys):
    cfg = {"setting": "su3", "resolution": 6, "samples": 500, "seed": 1}
    code = run(tmp_path, "haar-check", cfg, tolerance=1e-2)
    assert code == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    assert set(rep["checks"]) == {
        "haar_mass",
        "schur_orthogonality",
        "sampled_unitarity",
        "sampled_determinant",
    }
