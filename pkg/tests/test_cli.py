import json

import pytest

from rainbowtile import io as rtio
from rainbowtile.cli import main
from rainbowtile.constructions import build_prop15, build_rainbow_complete, complete_digraph, directed_cycle
from rainbowtile.graph import EdgeColouredGraph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, obj in [("p15.ecg", build_prop15(13, 3)), ("k5.ecg", build_rainbow_complete(5)),
                      ("k6.dg", complete_digraph(6)),
                      ("c6.dg", directed_cycle(6)), ("k4.dg", complete_digraph(4))]:
        paths[name] = str(tmp_path / name)
        rtio.save(obj, paths[name])
    return paths


class TestConstruct:
    def test_three_part_text(self, capsys):
        code, out, _ = run(capsys, "construct", "prop15", "--n", "13", "--k", "3")
        assert code == 0 and rtio.loads(out) == build_prop15(13, 3)

    def test_random_json_seeded(self, capsys):
        a = run(capsys, "--seed", "7", "construct", "random", "--n", "8", "--format", "json")[1]
        b = run(capsys, "construct", "random", "--n", "8", "--seed", "7", "--format", "json")[1]
        assert a == b
        assert isinstance(rtio.loads_json(a), EdgeColouredGraph)

    def test_missing_parameter(self, capsys):
        with pytest.raises(SystemExit) as e:
            main(["construct", "prop15", "--n", "13"])
        assert e.value.code == 2
        assert "--k" in capsys.readouterr().err

    def test_invalid_parameter_is_an_error(self, capsys):
        code, _, err = run(capsys, "construct", "prop15", "--n", "14", "--k", "3")
        assert code == 2 and err.startswith("error:")


class TestGraphVerbs:
    def test_rainbow_find(self, capsys, files):
        res = run_json(capsys, "rainbow", "find", files["p15.ecg"])
        assert res["found"] and len(res["clique"]) == 3

    def test_triangle_verdict(self, capsys, files):
        assert run_json(capsys, "rainbow", "thm13", files["p15.ecg"])["kind"] == "hypothesis_not_met"
        assert run_json(capsys, "rainbow", "thm13", files["k5.ecg"])["kind"] == "rainbow_triangle"

    def test_convert_verify(self, capsys, files):
        res = run_json(capsys, "convert", files["p15.ecg"], "--verify")
        assert res["report"]["ok"] and res["min_out_degree"] >= 3

    def test_convert_then_lp(self, capsys, files, tmp_path):
        code, out, _ = run(capsys, "convert", files["p15.ecg"])
        assert code == 0
        path = tmp_path / "h.dg"
        path.write_text(out)
        assert run_json(capsys, "lp", "solve", str(path))["value"] == "8/3"

    def test_tiling_max(self, capsys, files):
        res = run_json(capsys, "tiling", "max", files["p15.ecg"])
        assert res["size"] == 2

    def test_tiling_family(self, capsys, files):
        assert run_json(capsys, "tiling", "family", files["k6.dg"], "--perfect")["status"] == "yes"
        assert run_json(capsys, "tiling", "family", files["c6.dg"], "--perfect")["status"] == "no"

    def test_wrong_file_type(self, capsys, files):
        code, _, err = run(capsys, "tiling", "max", files["k6.dg"])
        assert code == 2 and "expected EdgeColouredGraph" in err

    def test_parse_error_reports_line(self, capsys, tmp_path):
        bad = tmp_path / "bad.ecg"
        bad.write_text("ecg 3\ne 0 1 1\ne 0 9 1\n")
        code, _, err = run(capsys, "rainbow", "find", str(bad))
        assert code == 2 and "line 3" in err

    def test_closed_connectors_and_weak(self, capsys, files):
        res = run_json(capsys, "closed", "connectors", files["p15.ecg"], "--x", "0", "--y", "1")
        assert res["count"] == len(res["connectors"])
        rep = run_json(capsys, "closed", "connectors", files["p15.ecg"])
        assert rep["rows"]
        weak = run_json(capsys, "closed", "weak", files["k4.dg"], "--smax", "2")
        assert weak


class TestLp:
    def test_solve_with_flags_first(self, capsys, files):
        res = run_json(capsys, "lp", "solve", "--r", "3", files["k6.dg"])
        assert res["perfect"] and res["value"] == "2"

    def test_certificate(self, capsys, files):
        code, out, _ = run(capsys, "lp", "certificate", files["c6.dg"])
        assert code == 0
        cert = rtio.loads(out)
        assert isinstance(cert, rtio.Certificate)

    def test_certificate_refused_when_perfect(self, files):
        with pytest.raises(SystemExit):
            main(["lp", "certificate", files["k6.dg"]])

    def test_probe(self, capsys):
        res = run_json(capsys, "lp", "probe", "--n", "6", "--trials", "5", "--min-out", "5")
        assert res

    def test_missing_graph(self):
        with pytest.raises(SystemExit):
            main(["lp", "solve"])


class TestMisc:
    def test_bound_eg(self, capsys):
        assert run_json(capsys, "bound", "eg", "--n", "10", "--e", "21")["eg_bound"] == 3

    def test_bound_abhp(self, capsys):
        res = run_json(capsys, "bound", "abhp", "--n", "1", "--alpha", "1/4")
        assert res["abhp_bound"] == "3/8"

    def test_bad_fraction(self, capsys):
        with pytest.raises(SystemExit):
            main(["bound", "abhp", "--n", "1", "--alpha", "x"])

    def test_threshold(self, capsys):
        assert run_json(capsys, "threshold", "--r", "4")["theorem_decimal"] == "0.9099"

    def test_threshold_csv(self, capsys):
        out = run(capsys, "threshold", "--r", "3", "--format", "csv")[1]
        assert out.splitlines()[0] == "key,value"

    def test_probe_csv(self, capsys):
        out = run(capsys, "probe", "--n", "9", "--trials", "2", "--format", "csv")[1]
        lines = out.splitlines()
        assert "status" in lines[0] and len(lines) >= 3

    def test_sample_reduced(self, capsys, tmp_path):
        m = tmp_path / "m.pdm"
        m.write_text("pdm 3\nd 1 2 1/2\nd 2 1 3/4\ndpm 1 2 1/2\n")
        code, out, _ = run(capsys, "sample-reduced", "--matrix", str(m))
        assert code == 0 and rtio.loads(out).arcs == frozenset({(1, 2), (2, 1)})

    def test_sample_strict(self, capsys, tmp_path):
        m = tmp_path / "m.pdm"
        m.write_text("pdm 2\nd 0 1 1/3\n")
        code, _, err = run(capsys, "sample-reduced", "--matrix", str(m), "--strict")
        assert code == 2 and err

    def test_roundtrip(self, capsys, files):
        assert run_json(capsys, "roundtrip", files["p15.ecg"])["ok"]

    def test_out_directory(self, capsys, tmp_path):
        code, out, _ = run(capsys, "threshold", "--r", "3", "--out", str(tmp_path / "o"))
        path = tmp_path / "o" / "threshold.json"
        assert code == 0 and out.strip() == str(path)
        assert json.loads(path.read_text())["conjecture"] == "5/7"

    def test_experiment(self, capsys, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"experiment": "lp_probe", "grid": {"n": [6], "min_out": [5]},
                                   "trials": 2}))
        res = run_json(capsys, "experiment", str(cfg), "--out", str(tmp_path / "x"))
        assert (tmp_path / "x" / "results.csv").exists() and res["summary"].endswith("summary.csv")

    def test_experiment_bad_config(self, capsys, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text("{\n  oops\n}")
        code, _, err = run(capsys, "experiment", str(cfg))
        assert code == 2 and "line 2" in err
