import json
import math

import numpy as np
import pytest

from riesz_eig.cli import main


def run(args):
    return main(args)


def read(path):
    return path.read_text()


def test_eig_json_schema(tmp_path):
    out = tmp_path / "eig.json"
    assert run(["eig", "--two-alpha", "1.6", "--n", "64", "--format", "json",
                "-o", str(out)]) == 0
    data = json.loads(read(out))
    assert data["schema"] == "riesz-eig/1"
    assert data["two_alpha"] == 1.6
    assert data["N"] == 64
    assert len(data["lambdas"]) == 65
    assert math.isclose(data["lambdas"][0], 1.7282959570964, rel_tol=1e-9)
    assert data["condition_number"] >= 1.0
    assert data["lambdas"][0] > data["poincare_bound"]
    assert data["lambdas"][0] <= data["minmax_upper"]
    assert "vectors" not in data


def test_eig_json_vectors(tmp_path):
    out = tmp_path / "eig.json"
    assert run(["eig", "--two-alpha", "1.6", "--n", "8", "--format", "json",
                "--vectors", "-o", str(out)]) == 0
    data = json.loads(read(out))
    assert len(data["vectors"]) == 9
    assert len(data["vectors"][0]) == 9


def test_eig_csv(tmp_path):
    out = tmp_path / "eig.csv"
    assert run(["eig", "--two-alpha", "2.0", "--n", "0", "-o", str(out)]) == 0
    lines = read(out).splitlines()
    assert lines[0] == "n,lambda"
    n, lam = lines[1].split(",")
    assert n == "1"
    assert math.isclose(float(lam), 2.5, rel_tol=1e-14)  # 1 / M_00 at alpha = 1
    assert len(lines) == 2


def test_eig_rejects_bad_order(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run(["eig", "--two-alpha", "-1", "--n", "8"])
    assert exc.value.code == 2


def test_eig_rejects_negative_degree():
    with pytest.raises(SystemExit) as exc:
        run(["eig", "--two-alpha", "1.6", "--n", "-2"])
    assert exc.value.code == 2


def test_seventeen_digit_serialization(tmp_path):
    out = tmp_path / "eig.csv"
    run(["eig", "--two-alpha", "2.0", "--n", "16", "-o", str(out)])
    lam1 = read(out).splitlines()[1].split(",")[1]
    # round-trips to the exact double
    assert float(lam1) == float(format(float(lam1), ".17g"))
    assert len(lam1.replace(".", "").replace("-", "").lstrip("0")) >= 16


def test_convergence_csv(tmp_path):
    out = tmp_path / "conv.csv"
    assert run(["convergence", "--two-alpha", "1.6", "--n-list", "8,16,32",
                "--reference-n", "64", "-o", str(out)]) == 0
    lines = read(out).splitlines()
    assert lines[0] == "N,lambda1,error"
    errs = [float(line.split(",")[2]) for line in lines[1:]]
    assert errs[0] > errs[1] > errs[2] >= 0.0


def test_convergence_rejects_low_reference():
    with pytest.raises(SystemExit) as exc:
        run(["convergence", "--two-alpha", "1.6", "--n-list", "8,16",
             "--reference-n", "16"])
    assert exc.value.code == 2


def test_convergence_rejects_unsorted_list():
    with pytest.raises(SystemExit) as exc:
        run(["convergence", "--two-alpha", "1.6", "--n-list", "16,8",
             "--reference-n", "64"])
    assert exc.value.code == 2


def test_weyl_csv(tmp_path):
    out = tmp_path / "weyl.csv"
    n_max = 64
    assert run(["weyl", "--two-alpha", "1.2", "--n", str(n_max), "-o", str(out)]) == 0
    lines = read(out).splitlines()
    assert lines[0] == "n,lambda_n,weyl_ratio,reliable_flag"
    assert len(lines) == n_max + 2
    flags = [line.split(",")[3] for line in lines[1:]]
    assert flags.count("true") == int(2 * n_max / math.pi)
    assert all(f == "true" for f in flags[: flags.count("true")])


def test_weyl_full_scale_reliable_rows(tmp_path):
    # figure-scale run: at N = 1024 exactly floor(2048/pi) = 651 rows are flagged
    out = tmp_path / "weyl.csv"
    assert run(["weyl", "--two-alpha", "1.2", "--n", "1024", "-o", str(out)]) == 0
    lines = read(out).splitlines()
    assert len(lines) == 1026
    flags = [line.split(",")[3] for line in lines[1:]]
    assert flags.count("true") == 651
    assert flags[650] == "true" and flags[651] == "false"


def test_weyl_degree_zero(tmp_path):
    out = tmp_path / "weyl.csv"
    assert run(["weyl", "--two-alpha", "1.2", "--n", "0", "-o", str(out)]) == 0
    lines = read(out).splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("1,")


def test_condition_csv_with_slope(tmp_path):
    out = tmp_path / "cond.csv"
    assert run(["condition", "--two-alpha", "1.8", "--n-list", "16,32,64",
                "-o", str(out)]) == 0
    lines = read(out).splitlines()
    assert lines[0] == "N,chi_N"
    assert lines[-1].startswith("# {")
    summary = json.loads(lines[-1][2:])
    assert summary["schema"] == "riesz-eig/1"
    assert 2.0 < summary["slope"] < 4.5


def test_condition_single_degree_no_slope(tmp_path):
    out = tmp_path / "cond.csv"
    assert run(["condition", "--two-alpha", "1.8", "--n-list", "32", "-o", str(out)]) == 0
    lines = read(out).splitlines()
    assert lines == ["N,chi_N", lines[1]]
    assert "#" not in read(out)


def test_eigfun_csv(tmp_path):
    out = tmp_path / "fun.csv"
    assert run(["eigfun", "--two-alpha", "2.0", "--n", "32", "--indices", "1",
                "--samples", "257", "-o", str(out)]) == 0
    lines = read(out).splitlines()
    assert lines[0] == "x,u_1"
    assert len(lines) == 258
    # endpoint rows are exactly zero
    assert lines[1] == "-1,0"
    assert lines[-1] == "1,0"
    xs, us = [], []
    for line in lines[1:]:
        x, u = line.split(",")
        xs.append(float(x))
        us.append(float(u))
    xs, us = np.array(xs), np.array(us)
    expected = np.cos(math.pi * xs / 2)
    if us[128] < 0:
        us = -us
    assert np.max(np.abs(us - expected)) <= 1e-8


def test_eigfun_rejects_out_of_range_index():
    with pytest.raises(SystemExit) as exc:
        run(["eigfun", "--two-alpha", "2.0", "--n", "4", "--indices", "6"])
    assert exc.value.code == 2


def test_mass_csv_banded(tmp_path):
    out = tmp_path / "mass.csv"
    assert run(["mass", "--two-alpha", "2.0", "--n", "8", "-o", str(out)]) == 0
    lines = read(out).splitlines()
    assert lines[0] == "j0,j1,j2,j3,j4,j5,j6,j7,j8"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 9
    for i in range(9):
        for j in range(9):
            if (i + j) % 2 == 1 or abs(i - j) >= 4:
                assert rows[i][j] == "0"
            else:
                assert rows[i][j] != "0"


def test_mass_verify_oracle(tmp_path, capsys):
    out = tmp_path / "mass.csv"
    assert run(["mass", "--two-alpha", "2.0", "--n", "8", "--verify-oracle",
                "-o", str(out)]) == 0
    err = capsys.readouterr().err
    assert "max_oracle_deviation" in err
    assert float(err.split("=")[1]) <= 1e-12


def test_reruns_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert run(["eig", "--two-alpha", "1.3", "--n", "48", "--vectors",
                    "-o", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_stdout_output(capsys):
    assert run(["eig", "--two-alpha", "2.0", "--n", "0"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("n,lambda\n")


def test_thread_env_var(tmp_path, monkeypatch):
    out = tmp_path / "cond.csv"
    monkeypatch.setenv("RIESZ_EIG_THREADS", "2")
    assert run(["condition", "--two-alpha", "1.2", "--n-list", "8,16,32",
                "-o", str(out)]) == 0
    first = read(out)
    monkeypatch.setenv("RIESZ_EIG_THREADS", "1")
    assert run(["condition", "--two-alpha", "1.2", "--n-list", "8,16,32",
                "-o", str(out)]) == 0
    assert read(out) == first
    monkeypatch.setenv("RIESZ_EIG_THREADS", "oops")
    with pytest.raises(SystemExit) as exc:
        run(["condition", "--two-alpha", "1.2", "--n-list", "8,16", "-o", str(out)])
    assert exc.value.code == 2


def test_no_partial_file_on_failure(tmp_path, monkeypatch):
    # force a failure inside the command after parsing: unwritable directory
    target = tmp_path / "missing" / "out.csv"
    rc = run(["eig", "--two-alpha", "2.0", "--n", "4", "-o", str(target)])
    assert rc == 1
    assert not target.exists()
