import json
import math
import xml.etree.ElementTree as ET

import pytest

from haar_coherence import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_closed_form_pure_avg(capsys):
    code, out, _ = run_cli(capsys, "closed-form", "--dim", "3", "--measure", "pure-avg")
    assert code == 0
    record = json.loads(out)
    assert record == {"measure": "pure-avg", "N": 3, "value": 0.5}


def test_closed_form_mixed_avg(capsys):
    code, out, _ = run_cli(capsys, "closed-form", "--dim", "2", "--measure", "mixed-avg")
    assert code == 0
    value = json.loads(out)["value"]
    assert value == pytest.approx(1.0 / 3.0 - math.pi / 16, abs=1e-12)
    # floats round-trip through the JSON text exactly
    assert repr(value) in out


def test_closed_form_max(capsys):
    code, out, _ = run_cli(capsys, "closed-form", "--dim", "5", "--measure", "max")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(0.8)


def test_closed_form_subspace_dim(capsys):
    code, out, _ = run_cli(capsys, "closed-form", "--dim", "40000",
                           "--measure", "subspace-dim", "--epsilon", "2e-5")
    assert code == 0
    assert json.loads(out)["value"] == 2


def test_closed_form_subspace_domain_error(capsys):
    code, _, err = run_cli(capsys, "closed-form", "--dim", "100",
                           "--measure", "subspace-dim", "--epsilon", "0.5")
    assert code == 2
    assert "epsilon" in err


def test_closed_form_epsilon_requirements(capsys):
    code, _, err = run_cli(capsys, "closed-form", "--dim", "10", "--measure", "subspace-dim")
    assert code == 2 and "--epsilon" in err
    code, _, err = run_cli(capsys, "closed-form", "--dim", "10", "--measure", "max",
                           "--epsilon", "0.01")
    assert code == 2 and "does not apply" in err


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["closed-form", "--dim", "0", "--measure", "max"])
    assert info.value.code == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as info:
        cli.main(["mc", "--ensemble", "pure", "--dim", "2", "--samples", "nan"])
    assert info.value.code == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as info:
        cli.main(["tail", "--ensemble", "pure", "--dim", "4", "--epsilon", "inf"])
    assert info.value.code == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as info:
        cli.main(["verify", "--suite", "everything"])
    assert info.value.code == 2
    capsys.readouterr()


def test_mc_csv_output_and_determinism(capsys):
    argv = ["mc", "--ensemble", "pure", "--dim", "2", "--samples", "4000", "--seed", "7"]
    code, first, _ = run_cli(capsys, *argv)
    assert code == 0
    header, row = first.strip().splitlines()
    assert header == "ensemble,N,measure,mean,stderr,samples,seed"
    fields = row.split(",")
    assert fields[0] == "pure" and fields[1] == "2" and fields[2] == "skew"
    assert abs(float(fields[3]) - 1.0 / 3.0) < 0.02
    code, second, _ = run_cli(capsys, *argv)
    assert first == second


def test_mc_json_output(capsys):
    code, out, _ = run_cli(capsys, "mc", "--ensemble", "mixed", "--dim", "2",
                           "--samples", "3000", "--seed", "3", "--format", "json",
                           "--measure", "rel-ent")
    assert code == 0
    record = json.loads(out)
    assert record["ensemble"] == "mixed" and record["measure"] == "rel-ent"
    assert record["samples"] == 3000
    assert abs(record["mean"] - 0.25) < 0.02


def test_mc_threads_flag_does_not_change_result(capsys):
    base = ["mc", "--ensemble", "mixed", "--dim", "3", "--samples", "4096", "--seed", "11"]
    _, serial, _ = run_cli(capsys, *base)
    _, threaded, _ = run_cli(capsys, *base, "--threads", "4")
    assert serial == threaded


def test_threads_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("HAAR_COHERENCE_THREADS", "2")
    code, out, _ = run_cli(capsys, "mc", "--ensemble", "pure", "--dim", "2",
                           "--samples", "2048", "--seed", "5")
    assert code == 0
    monkeypatch.setenv("HAAR_COHERENCE_THREADS", "zero")
    code, _, err = run_cli(capsys, "mc", "--ensemble", "pure", "--dim", "2",
                           "--samples", "2048", "--seed", "5")
    assert code == 2 and "HAAR_COHERENCE_THREADS" in err


def test_tail_record(capsys):
    code, out, _ = run_cli(capsys, "tail", "--ensemble", "pure", "--dim", "29",
                           "--epsilon", "0.3", "--samples", "20000", "--seed", "1")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == "ensemble,N,epsilon,frequency,bound,samples,seed"
    fields = row.split(",")
    from haar_coherence.closed_forms import tail_bound_pure
    assert float(fields[4]) == tail_bound_pure(29, 0.3)
    assert float(fields[3]) <= float(fields[4])


def test_figure1_files(tmp_path, capsys):
    out_csv = tmp_path / "sweep.csv"
    out_svg = tmp_path / "sweep.svg"
    argv = ["figure1", "--max-exp", "3", "--samples", "2000", "--seed", "9",
            "--out", str(out_csv), "--svg", str(out_svg)]
    code, _, _ = run_cli(capsys, *argv)
    assert code == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "N,analytic,mc_mean,mc_stderr,n_samples,seed"
    assert [line.split(",")[0] for line in lines[1:]] == ["2", "4", "8"]
    first_bytes = out_csv.read_bytes()
    analytic = float(lines[1].split(",")[1])
    assert analytic == pytest.approx(1.0 / 3.0 - math.pi / 16, abs=1e-12)

    root = ET.fromstring(out_svg.read_text())
    assert root.tag.endswith("svg")
    assert root.get("viewBox") is not None
    ns = {"s": "http://www.w3.org/2000/svg"}
    assert len(root.findall(".//s:polyline", ns)) == 1
    assert len(root.findall(".//s:circle", ns)) == 3
    assert not root.findall(".//s:script", ns)

    code, _, _ = run_cli(capsys, *argv)
    assert code == 0
    assert out_csv.read_bytes() == first_bytes


def test_figure1_unwritable_path(tmp_path, capsys):
    code, _, err = run_cli(capsys, "figure1", "--max-exp", "1", "--samples", "100",
                           "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 2
    assert "cannot write" in err


def test_sample_pure_and_mixed(capsys):
    code, out, _ = run_cli(capsys, "sample", "--ensemble", "pure", "--dim", "2", "--seed", "3")
    assert code == 0
    record = json.loads(out)
    norm_sq = sum(r * r + i * i for r, i in zip(record["re"], record["im"]))
    assert norm_sq == pytest.approx(1.0, abs=1e-12)

    code, out, _ = run_cli(capsys, "sample", "--ensemble", "mixed", "--dim", "2", "--seed", "3")
    record = json.loads(out)
    assert record["re"][0] + record["re"][3] == pytest.approx(1.0, abs=1e-12)
    assert record["im"][0] == pytest.approx(0.0, abs=1e-15)

    code, out, _ = run_cli(capsys, "sample", "--ensemble", "unitary", "--dim", "3", "--seed", "3")
    record = json.loads(out)
    import numpy as np
    u = (np.array(record["re"]) + 1j * np.array(record["im"])).reshape(3, 3)
    assert np.abs(u.conj().T @ u - np.eye(3)).max() < 1e-10


def test_sample_determinism(capsys):
    argv = ["sample", "--ensemble", "mixed", "--dim", "4", "--seed", "12"]
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second
