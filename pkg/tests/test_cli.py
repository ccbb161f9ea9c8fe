import json
import math

import pytest

from twospin.cli import main
from twospin.graphs import single_edge, write_graph


@pytest.fixture
def edge_file(tmp_path):
    path = tmp_path / "edge.g"
    write_graph(single_edge(), path)
    return str(path)


@pytest.fixture
def anti3_file(tmp_path):
    path = tmp_path / "anti3.e2"
    path.write_text("p e2lin2 3 3\n1 2 1\n2 3 1\n3 1 1\n")
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_z_single_edge(capsys, edge_file):
    code, rep = _run(capsys, ["z", "--graph", edge_file, "--beta", "1",
                              "--gamma", "1", "--mu", "1"])
    assert code == 0
    assert rep["outputs"]["log_z"]["value"] == pytest.approx(math.log(4))
    assert rep["outputs"]["log_z"]["scale"] == "log"


def test_theta_star_anticycle(capsys, anti3_file):
    code, rep = _run(capsys, ["theta-star", "--instance", anti3_file])
    assert code == 0
    assert rep["outputs"]["max_satisfied"]["value"] == 2


def test_uniqueness_and_threshold(capsys):
    code, rep = _run(capsys, ["uniqueness", "--beta", "0.5", "--gamma", "0.5",
                              "--degree", "2"])
    assert code == 0
    assert rep["outputs"]["derivative_magnitude"]["value"] == pytest.approx(2 / 3)
    code, rep = _run(capsys, ["threshold", "--beta", "0.5", "--gamma", "0.5"])
    assert code == 0
    assert rep["outputs"]["degree"]["value"] == 3


def test_translate_field(capsys):
    code, rep = _run(capsys, ["translate-field", "--beta", "0.5", "--gamma", "2",
                              "--mu", "4", "--degree", "2"])
    assert code == 0
    assert rep["outputs"]["beta_prime"]["value"] == pytest.approx(1.0)
    assert rep["outputs"]["per_edge_log_prefactor"]["value"] == pytest.approx(
        math.log(2))


def test_gadget_and_reduce_files(capsys, tmp_path):
    out = tmp_path / "h.graph"
    code, rep = _run(capsys, ["gadget", "--side", "4", "--delta", "3",
                              "--seed", "5", "--out", str(out)])
    assert code == 0
    assert rep["outputs"]["distinct_degrees"] == [3]
    assert out.exists()

    inst = tmp_path / "i.e2"
    inst.write_text("p e2lin2 2 2\n1 2 0\n1 2 1\n")
    code, rep = _run(capsys, ["reduce", "--instance", str(inst), "--delta", "2",
                              "--delta-prime", "1", "--block-size", "1",
                              "--seed", "3", "--out-prefix",
                              str(tmp_path / "r")])
    assert code == 0
    assert rep["checks"][0]["pass"] is True
    assert (tmp_path / "r.graph").exists()
    assert (tmp_path / "r.blocks").exists()


def test_decode_command(capsys):
    code, rep = _run(capsys, ["decode", "--log-y", "3.0", "--n", "2", "--m", "2",
                              "--log-c", "0.0", "--log-d", "1.0"])
    assert code == 0
    expect = (3.0 - math.log1p(1e-4) - 2 * math.log(2) - 0.03 * 4) / 2
    assert rep["outputs"]["satisfied_estimate"]["value"] == pytest.approx(expect)


def test_phase_map(capsys, tmp_path):
    out = tmp_path / "grid.csv"
    code, rep = _run(capsys, [
        "phase-map", "--beta-min", "0.2", "--beta-max", "0.8", "--beta-steps", "3",
        "--gamma-min", "0.2", "--gamma-max", "0.8", "--gamma-steps", "3",
        "--degree", "40", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "beta,gamma,mu,d,region,x_hat,deriv_mag"
    assert len(lines) == 10
    assert rep["outputs"]["rows"]["value"] == 9
    # d = 40 is beyond every unit-square threshold for these parameters
    assert all("non-uniqueness" in ln for ln in lines[1:])


def test_exit_codes(capsys, edge_file, tmp_path):
    assert main(["nonsense"]) == 2
    capsys.readouterr()
    # an empty grid is a usage error
    assert main(["phase-map", "--beta-min", "0.2", "--beta-max", "0.8",
                 "--beta-steps", "0", "--gamma-min", "0.2", "--gamma-max",
                 "0.8", "--gamma-steps", "3", "--degree", "5", "--out",
                 str(tmp_path / "x.csv")]) == 2
    capsys.readouterr()
    assert main(["z", "--graph", edge_file, "--beta", "1", "--gamma", "1",
                 "--max-vertices", "1"]) == 3
    capsys.readouterr()
    assert main(["z", "--graph", str(tmp_path / "missing.g"), "--beta", "1",
                 "--gamma", "1"]) == 2
    capsys.readouterr()
    # verification failure exits 1: an unreachable bound
    assert main(["verify", "coupling", "--trials", "2000", "--alpha", "1.1"]) == 1
    capsys.readouterr()


def test_verify_coupling_and_expander(capsys):
    code, rep = _run(capsys, ["verify", "coupling", "--trials", "5000",
                              "--seed", "3"])
    assert code == 0
    assert rep["pass"] is True
    assert {c["name"] for c in rep["checks"]} == {
        "zero-domination-violations", "first-step-frequency-4-sigma",
        "chi-square-accepts"}
    code, rep = _run(capsys, ["verify", "expander", "--side", "6", "--delta",
                              "40", "--seeds", "3", "--eps", "0.34"])
    assert code == 0
    assert rep["pass"] is True


def test_verify_polarized_small(capsys):
    code, rep = _run(capsys, ["verify", "polarized", "--pairs", "2"])
    assert code == 0
    assert rep["pass"] is True
    assert rep["value"] <= 1e-9


def test_verify_field_and_sandwich(capsys):
    code, rep = _run(capsys, ["verify", "field", "--pairs", "3"])
    assert code == 0 and rep["pass"] is True
    code, rep = _run(capsys, ["verify", "sandwich", "--seeds", "4"])
    assert code == 0 and rep["pass"] is True


def test_verify_gadget_mean(capsys):
    code, rep = _run(capsys, ["verify", "gadget-mean", "--trials", "5000"])
    assert code == 0 and rep["pass"] is True


def test_reports_are_deterministic(capsys):
    argv = ["verify", "coupling", "--trials", "3000", "--seed", "11"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second
    argv = ["uniqueness", "--beta", "0.3", "--gamma", "0.9", "--mu", "2.5",
            "--degree", "7"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second
