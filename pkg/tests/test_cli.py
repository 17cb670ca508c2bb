import csv
import io
import os
import subprocess
import sys

import pytest

from conflictual import Profile
from conflictual.cli import main
from conflictual.preflib import read_profile, write_profile
from conflictual import fixtures as fx
from conftest import DATA


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.fixture
def e1_file(tmp_path):
    path = tmp_path / "e1.profile"
    write_profile(fx.e1(), path)
    return str(path)


def test_winners_e1(capsys, e1_file):
    code, out, _ = run(capsys, "winners", e1_file, "--rule", "MaxSum,MaxNash")
    assert code == 0
    table = rows(out)
    assert {r["pair"] for r in table if r["rule"] == "MaxSum"} >= {"{a,b}", "{x,y}"}
    assert [r["pair"] for r in table if r["rule"] == "MaxNash"] == ["{x,y}"]
    assert {r["ties"] for r in table if r["rule"] == "MaxSum"} == {"4"}


def test_winners_e2_fixture(capsys):
    code, out, _ = run(capsys, "winners", "--fixture", "E2")
    table = {(r["rule"], r["pair"]) for r in rows(out)}
    assert table == {("MaxSum", "{x,y}"), ("MaxNash", "{a,b}"), ("MaxSwap", "{a,b}"), ("2-MaxPolar", "{x,y}")}


def test_winners_single_ballot_flag(capsys, tmp_path):
    path = tmp_path / "one.profile"
    write_profile(Profile(((0, 1, 2),)), path)
    _, out, _ = run(capsys, "winners", str(path), "--rule", "MaxNash")
    assert {r["no_conflict"] for r in rows(out)} == {"true"}


def test_metrics_e1(capsys, e1_file):
    code, out, _ = run(capsys, "metrics", e1_file, "--pair", "a,b", "--pair", "x,y")
    ab, xy = rows(out)
    assert (ab["alpha"], ab["beta"], ab["gamma"], ab["phi"]) == ("1", "0.6", "0.2", "0.6666666667")
    assert (xy["alpha"], xy["beta"], xy["gamma"], xy["phi"]) == ("1", "0.6", "1", "0")
    assert (ab["conf_sum"], ab["conf_nash"], ab["swap_score"]) == ("6", "5", "1")


def test_metrics_identity(capsys):
    _, out, _ = run(capsys, "metrics", "--generator", "identity", "--n", "3", "--m", "4")
    assert {r["alpha"] for r in rows(out)} == {"0"}


def test_axioms_fail_writes_witness(capsys, tmp_path):
    code, out, _ = run(capsys, "axioms", "--fixture", "E3", "--rule", "MaxSwap",
                       "--axiom", "matching-domination", "--witness-dir", str(tmp_path))
    assert code == 1
    (row,) = rows(out)
    assert row["verdict"] == "FAIL"
    assert read_profile(row["witness"]) == fx.e3()


def test_axioms_search_pass_and_fail(capsys, tmp_path):
    code, out, _ = run(capsys, "axioms", "--generator", "ic", "--n", "4", "--m", "4", "--trials", "300",
                       "--rule", "MaxNash", "--axiom", "balance-preference,conflict-monotonicity",
                       "--witness-dir", str(tmp_path))
    verdicts = {r["axiom"]: r["verdict"] for r in rows(out)}
    assert verdicts == {"balance-preference": "PASS", "conflict-monotonicity": "FAIL"}
    assert code == 1


def test_axioms_pass_exit_zero(capsys):
    code, _, _ = run(capsys, "axioms", "--generator", "ic", "--n", "2-4", "--m", "3-4", "--trials", "100",
                     "--axiom", "reverse-stability")
    assert code == 0


def test_sample_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.profile", tmp_path / "b.profile"
    for path in (a, b):
        assert main(["sample", "--generator", "mallows", "--psi", "0.3", "--seed", "7",
                     "--n", "20", "--m", "5", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert read_profile(a).n == 20


def test_sample_identity_and_antagonism(capsys):
    _, out, _ = run(capsys, "sample", "--generator", "identity", "--n", "3", "--m", "3")
    assert out.strip().splitlines()[-1] == "3: 0,1,2"
    _, out, _ = run(capsys, "sample", "--generator", "antagonism", "--n", "2", "--m", "4")
    assert out.strip().splitlines()[-2:] == ["1: 0,1,2,3", "1: 3,2,1,0"]


def test_ingest(capsys, tmp_path):
    out = tmp_path / "mini.profile"
    code = main(["ingest", os.path.join(DATA, "mini.toi"), "--tie-break", "index",
                 "--weight-scale", "10", "--subset", "1,2,3", "--out", str(out)])
    assert code == 0
    p = read_profile(out)
    assert p.names == ("Left", "Centre", "Right")


def test_experiment_files(capsys, tmp_path):
    code, out, _ = run(capsys, "experiment", "--generator", "euclidean", "--voter-dist", "gaussian",
                       "--cand-dist", "gaussian", "--trials", "4", "--n", "20", "--m", "5",
                       "--rule", "conflictual,borda2", "--out", str(tmp_path))
    assert code == 0
    for name, header in [
        ("winners.csv", "trial,rule,pair,alpha,beta,gamma,phi,score"),
        ("summary.csv", "rule,metric,mean,std,count"),
        ("random_pairs.csv", "trial,pair,alpha,beta,gamma,phi"),
        ("positions.csv", "trial,rule,pair,xa,ya,xb,yb,center_distance"),
    ]:
        assert (tmp_path / name).read_text().splitlines()[0] == header


def test_experiment_preflib_dataset(capsys, tmp_path):
    code, _, _ = run(capsys, "experiment", "--preflib", os.path.join(DATA, "mini.toi"), "--trials", "3",
                     "--n", "10", "--m", "3", "--out", str(tmp_path))
    assert code == 0
    assert len(rows((tmp_path / "random_pairs.csv").read_text())) == 3


def test_experiment_sweep(capsys, tmp_path):
    code, _, _ = run(capsys, "experiment", "--generator", "mallows", "--psi", "0,1", "--trials", "2",
                     "--n", "30", "--m", "4", "--out", str(tmp_path))
    assert code == 0
    sweep = rows((tmp_path / "sweep.csv").read_text())
    assert [r["psi"] for r in sweep] == ["0", "1"]
    assert sweep[0]["mean_alpha"] == "0"


def test_fixtures_flag(capsys, tmp_path):
    assert main(["--fixtures", "--out", str(tmp_path)]) == 0
    assert read_profile(tmp_path / "E2.profile") == fx.e2()
    assert read_profile(tmp_path / "uniformity.profile").n == 24


def test_usage_errors(capsys):
    assert main(["winners"]) == 2
    assert main(["winners", "--fixture", "E9"]) == 2
    assert main([]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["winners", "--rule"])
    assert exc.value.code == 2
    assert main(["winners", "--fixture", "E1", "--rule", "plurality"]) == 2


def test_data_errors(capsys, tmp_path):
    assert main(["winners", str(tmp_path / "missing.profile")]) == 3
    bad = tmp_path / "bad.profile"
    bad.write_text("2 1\na\nb\n1: 0,7\n")
    code, _, err = run(capsys, "winners", str(bad))
    assert code == 3
    assert "bad.profile:4" in err
    assert main(["ingest", os.path.join(DATA, "mini.toi"), "--incomplete", "error"]) == 3


def test_help_documents_schemas(capsys):
    with pytest.raises(SystemExit):
        main(["experiment", "--help"])
    text = capsys.readouterr().out
    assert "center_distance" in text and "mean_alpha" in text


def test_console_script_runs(e1_file):
    proc = subprocess.run([sys.executable, "-m", "conflictual.cli", "winners", e1_file, "--rule", "MaxNash"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "{x,y}" in proc.stdout
