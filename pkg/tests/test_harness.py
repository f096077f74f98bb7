import json
from fractions import Fraction

import pytest

from rainbowtile import harness
from rainbowtile.constructions import build_rainbow_complete
from rainbowtile.tiling import has_perfect_rainbow_tiling


def write_config(path, **cfg):
    path.write_text(json.dumps(cfg))
    return path


def strip_timing(path):
    rows = harness.read_results(path)
    for r in rows:
        r.pop("wall_time")
    return rows


class TestThresholdFormula:
    def test_r3(self):
        t = harness.threshold_formula(3)
        assert t["theorem"] == "5/6" and t["conjecture"] == "5/7"

    def test_r4(self):
        t = harness.threshold_formula(4)
        assert t["theorem_decimal"] == "0.9099" and t["conjecture"] == "11/14"

    def test_r5(self):
        assert harness.threshold_formula(5)["theorem"] == "34/35"

    def test_r2(self):
        with pytest.raises(ValueError):
            harness.threshold_formula(2)


class TestTriangleSuite:
    def test_small_run(self):
        st = harness.thm13_suite(300, seed=4)
        assert st.accepted == 300
        assert st.found == st.oracle_agree == 300
        assert not st.counterexamples


class TestProbe:
    def test_constructions_sit_below_bound(self):
        rows = harness.construction_rows(3)
        p16 = rows[0]
        assert (p16.n, p16.min_colour_degree, p16.bound, p16.status) == (21, 14, 15, "no")
        assert all(r.min_colour_degree < r.bound and r.status == "no" for r in rows)

    def test_rainbow_k12_tiles(self):
        assert has_perfect_rainbow_tiling(build_rainbow_complete(12), 3).status == "yes"

    def test_random_probe_logs_outcomes(self):
        rows = harness.probe_conjecture(3, 12, 10, seed=2, constructions=False)
        assert len(rows) == 10
        assert all(r.bound == 9 for r in rows)
        for r in rows:
            assert r.status in ("yes", "no", "unknown")
            if r.potential_counterexample:
                assert r.min_colour_degree >= r.bound and r.status == "no"

    def test_divisibility(self):
        with pytest.raises(ValueError):
            harness.probe_conjecture(3, 10, 1)


class TestRunExperiment:
    def test_lp_sweep_rates_are_monotone(self, tmp_path):
        cfg = write_config(tmp_path / "c.json", experiment="lp_probe",
                           grid={"n": [12], "min_out": [6, 8, 10, 11]}, seeds=[1], trials=8)
        harness.run_experiment(cfg, tmp_path / "out")
        rates = harness.success_rates(tmp_path / "out" / "summary.csv")
        rates.sort(key=lambda pr: pr[0]["min_out"])
        values = [r for _, r in rates]
        assert values == sorted(values)
        assert values[-1] == 1

    def test_empty_grid_gives_header_only(self, tmp_path):
        cfg = write_config(tmp_path / "c.json", experiment="lp_probe", grid={"n": []})
        out = harness.run_experiment(cfg, tmp_path / "out")
        lines = out.read_text().splitlines()
        assert lines == [f"# schema: {harness.SCHEMA}", ",".join(harness.COLUMNS)]

    def test_deterministic_modulo_timing(self, tmp_path):
        cfg = write_config(tmp_path / "c.json", experiment="thm13", grid={"k": [0, 1]},
                           seeds=[3, 4], trials=5)
        a = strip_timing(harness.run_experiment(cfg, tmp_path / "a"))
        b = strip_timing(harness.run_experiment(cfg, tmp_path / "b", workers=2))
        assert a == b and len(a) == 20
        assert [int(r["instance_id"]) for r in a] == list(range(20))

    def test_infeasible_instances_write_certificates(self, tmp_path):
        cfg = write_config(tmp_path / "c.json", experiment="lp_probe",
                           grid={"n": [9], "min_out": [2]}, seeds=[0], trials=10)
        out = harness.run_experiment(cfg, tmp_path / "out")
        rows = harness.read_results(out)
        bad = [r for r in rows if r["outcome"] == "infeasible"]
        assert bad
        for r in bad:
            assert (tmp_path / "out" / (r["artifact"] + "_certificate.txt")).exists()

    def test_conjecture_experiment(self, tmp_path):
        cfg = write_config(tmp_path / "c.json", experiment="conjecture_probe",
                           grid={"n": [9]}, trials=3, budget=5000)
        rows = harness.read_results(harness.run_experiment(cfg, tmp_path / "out"))
        assert {r["outcome"] for r in rows} <= {"yes", "no", "unknown"}

    def test_config_errors_name_the_line(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{\n  "experiment": "lp_probe",\n  "grid": {"n": [9],}\n}\n')
        with pytest.raises(harness.ConfigError, match="line 3"):
            harness.run_experiment(bad, tmp_path / "out")
        unknown = write_config(tmp_path / "u.json", experiment="nope")
        with pytest.raises(harness.ConfigError, match="unknown experiment"):
            harness.load_config(unknown)

    def test_summary_rates_are_fractions(self, tmp_path):
        cfg = write_config(tmp_path / "c.json", experiment="lp_probe",
                           grid={"n": [6], "min_out": [5]}, trials=3)
        harness.run_experiment(cfg, tmp_path / "out")
        [(params, rate)] = harness.success_rates(tmp_path / "out" / "summary.csv")
        assert params == {"min_out": 5, "n": 6} and rate == Fraction(1)
