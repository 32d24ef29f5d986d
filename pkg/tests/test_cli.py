import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from harmonic_zeros import bounds
from harmonic_zeros.cli import main, parse_complex, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_solve_monomial(capsys):
    code, out, _ = run(capsys, "solve", "gallery:monomial2")
    doc = json.loads(out)
    assert code == 0
    assert doc["counts"]["N"] == 4 and doc["bound"] == 4 and doc["attained"]


def test_solve_binary(capsys):
    code, out, _ = run(capsys, "solve", "gallery:mpw2", "--a", "0.5")
    doc = json.loads(out)
    assert code == 0
    assert doc["counts"]["N"] == 5 and doc["bound"] == 5 and doc["attained"]


def test_solve_csv_matches_json(capsys):
    _, js, _ = run(capsys, "solve", "gallery:mpw2")
    _, cs, _ = run(capsys, "solve", "gallery:mpw2", "--format", "csv")
    zeros = json.loads(js)["zeros"]
    table = rows(cs)
    assert len(table) == len(zeros)
    for z, row in zip(zeros, table):
        assert float(row["re"]) == z["location"][0]
        assert float(row["r_prime_abs"]) == z["r_prime_abs"]
        assert row["orientation"] == z["orientation"]


def test_missing_file(capsys):
    code, _, err = run(capsys, "solve", "missing.json")
    assert code == 1
    assert "no such file" in err


def test_bad_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "solve", str(path))
    assert code == 1 and "invalid JSON" in err


def test_low_degree_instance_is_input_error(capsys, tmp_path):
    path = tmp_path / "line.json"
    path.write_text(json.dumps({"v": 1, "p": [[0, 0], [1, 0]], "q": [[1, 0]], "c": [0, 0]}))
    code, _, err = run(capsys, "solve", str(path))
    assert code == 1 and "OutOfScope" in err


def test_solve_is_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["solve", "gallery:rhie3", "--out", str(a)]) == 0
    assert main(["solve", "gallery:rhie3", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_exported_instance_round_trips(capsys, tmp_path):
    path = tmp_path / "mpw2.json"
    assert main(["gallery", "--export", "mpw2", "--out", str(path)]) == 0
    _, from_file, _ = run(capsys, "solve", str(path))
    _, from_gallery, _ = run(capsys, "solve", "gallery:mpw2")
    assert json.loads(from_file)["zeros"] == json.loads(from_gallery)["zeros"]


def test_sweep_binary_transition(capsys):
    code, out, _ = run(capsys, "sweep", "gallery:mpw2", "--from", "0", "--to", "2",
                       "--samples", "41")
    table = rows(out)
    counts = [int(r["N"]) for r in table]
    assert code == 0 and len(table) == 41
    assert counts[0] == 5 and counts[-1] == 3
    assert any(a == 5 and b == 3 for a, b in zip(counts, counts[1:]))
    assert {r["status"] for r in table} == {"ok"}


def test_sweep_single_point_matches_solve(capsys):
    _, out, _ = run(capsys, "sweep", "gallery:rhie3", "--from", "0", "--to", "0",
                    "--samples", "1")
    _, js, _ = run(capsys, "solve", "gallery:rhie3")
    row, counts = rows(out)[0], json.loads(js)["counts"]
    assert int(row["N"]) == counts["N"]
    assert int(row["N_plus"]) == counts["N_plus"]
    assert int(row["N_minus"]) == counts["N_minus"]


def test_sweep_records_failures(capsys, monkeypatch):
    from harmonic_zeros import cli
    from harmonic_zeros.errors import DidNotConverge

    real = cli.solve

    def flaky(r, c, cfg):
        if c == 1:
            raise DidNotConverge("budget")
        return real(r, c, cfg)

    monkeypatch.setattr(cli, "solve", flaky)
    code, out, _ = run(capsys, "sweep", "gallery:mpw2", "--from", "0", "--to", "2",
                       "--samples", "3")
    table = rows(out)
    assert code == 0
    assert [r["status"] for r in table] == ["ok", "DidNotConverge", "ok"]
    assert table[1]["N"] == ""


def test_usage_error_is_input_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["sweep", "gallery:mpw2", "--samples", "many"])
    assert info.value.code == 1
    capsys.readouterr()


def test_sweep_grid_and_json(capsys):
    code, out, _ = run(capsys, "sweep", "gallery:monomial2", "--grid=-0.5,0.5,-0.5,0.5",
                       "--grid-n", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["rows"]) == 9
    assert doc["rows"][4]["c_re"] == 0 and doc["rows"][4]["N"] == 4


def test_sweep_across_caustic_changes_by_two(capsys):
    _, out, _ = run(capsys, "caustic", "gallery:mpw2", "--grid-n", "60")
    pt = rows(out)[0]
    c = complex(float(pt["c_re"]), float(pt["c_im"]))
    n = complex(float(pt["normal_re"]), float(pt["normal_im"]))
    a, b = c - 1e-3 * n, c + 1e-3 * n
    _, sw, _ = run(capsys, "sweep", "gallery:mpw2", "--from", f"{a.real},{a.imag}",
                   "--to", f"{b.real},{b.imag}", "--samples", "9")
    counts = [int(r["N"]) for r in rows(sw)]
    assert abs(counts[0] - counts[-1]) == 2


def test_caustic_monomial(capsys):
    code, out, _ = run(capsys, "caustic", "gallery:monomial2", "--window=-2,2,-2,2",
                       "--grid-n", "400")
    table = rows(out)
    z = np.array([complex(float(r["z_re"]), float(r["z_im"])) for r in table])
    c = np.array([complex(float(r["c_re"]), float(r["c_im"])) for r in table])
    assert code == 0 and len(table) > 100
    assert np.max(np.abs(np.abs(z) - 0.5)) < 1e-8
    assert np.allclose(c, z * z - np.conj(z))


def test_caustic_binary_nonempty(capsys):
    code, out, _ = run(capsys, "caustic", "gallery:mpw2", "--grid-n", "80")
    assert code == 0 and len(rows(out)) > 0


def test_caustic_empty_window(capsys):
    code, out, err = run(capsys, "caustic", "gallery:monomial2", "--window", "50,60,50,60",
                         "--grid-n", "30")
    assert code == 3 and out == "" and "empty" in err


def test_fuzz_small(capsys, tmp_path):
    code, out, _ = run(capsys, "fuzz", "--np", "0..2", "--nq", "0..2", "--count", "2",
                       "--seed", "42", "--repro", str(tmp_path / "r.json"))
    doc = json.loads(out)
    assert code == 0
    assert doc["instances"] == 10 and doc["violations"] == 0
    assert not (tmp_path / "r.json").exists()


def test_fuzz_deterministic(capsys, tmp_path):
    args = ["fuzz", "--np", "2,3", "--nq", "1", "--count", "3", "--seed", "5"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


def test_fuzz_negative_control(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(bounds, "max_zero_bound", lambda n_p, n_q: 0)
    repro = tmp_path / "fail.json"
    code, _, err = run(capsys, "fuzz", "--np", "2", "--nq", "0", "--count", "2",
                       "--seed", "1", "--repro", str(repro))
    assert code == 2
    failures = json.loads(repro.read_text())
    assert failures and all("seed" in f for f in failures)
    assert "violations" in err


def test_fuzz_empty_range(capsys):
    code, _, _ = run(capsys, "fuzz", "--np", "0..1", "--nq", "0..1")
    assert code == 1


def test_gallery_listing(capsys):
    _, out, _ = run(capsys, "gallery")
    assert "mpw2" in out.split()


def test_plots_written(capsys, tmp_path):
    for argv in (["solve", "gallery:mpw2"], ["sweep", "gallery:mpw2", "--samples", "5"],
                 ["caustic", "gallery:monomial2", "--grid-n", "60"]):
        png = tmp_path / f"{argv[0]}.png"
        assert main(argv + ["--plot", str(png)]) == 0
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "harmonic_zeros", "solve", "missing.json"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "no such file" in proc.stderr


@pytest.mark.parametrize("text, want", [("1.5", 1.5), ("1+2j", 1 + 2j), ("0.5,-0.25", 0.5 - 0.25j)])
def test_parse_complex(text, want):
    assert parse_complex(text) == want


def test_parse_range():
    assert parse_range("0..4") == [0, 1, 2, 3, 4]
    assert parse_range("1,3") == [1, 3]
