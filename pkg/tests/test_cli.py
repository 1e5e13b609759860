import json

import pytest
from click.testing import CliRunner

from kfarey.cli import main, parse_budget
from kfarey.core import InvalidInputError


@pytest.fixture()
def runner():
    return CliRunner()


class TestBudgetParsing:
    def test_forms(self):
        assert parse_budget("300") == 300
        assert parse_budget("120s") == 120
        assert parse_budget("5m") == 300
        assert parse_budget(" 2M ") == 120

    def test_garbage(self):
        with pytest.raises(InvalidInputError):
            parse_budget("fast")


class TestComponents:
    def test_text_report(self, runner):
        res = runner.invoke(main, ["components", "--k", "1", "--level", "10"])
        assert res.exit_code == 0
        assert "b0=1" in res.output

    def test_json_report(self, runner):
        res = runner.invoke(main, ["components", "--k", "4", "--level", "12",
                                   "--format", "json"])
        assert res.exit_code == 0
        assert json.loads(res.output)["b0"] == 6

    def test_sweep(self, runner):
        res = runner.invoke(main, ["components", "--k", "8",
                                   "--level-sweep", "1..20"])
        assert res.exit_code == 0
        assert "merges above level 8: 0" in res.output

    def test_level_and_sweep_exclusive(self, runner):
        res = runner.invoke(main, ["components", "--k", "2", "--level", "5",
                                   "--level-sweep", "1..9"])
        assert res.exit_code == 2

    def test_svg_written(self, runner, tmp_path):
        target = tmp_path / "graph.svg"
        res = runner.invoke(main, ["components", "--k", "2", "--level", "6",
                                   "--svg", str(target)])
        assert res.exit_code == 0
        assert target.exists() and target.stat().st_size > 0

    def test_bad_k(self, runner):
        res = runner.invoke(main, ["components", "--k", "0", "--level", "5"])
        assert res.exit_code == 2


class TestIntersect:
    def test_worked_example(self, runner):
        res = runner.invoke(main, ["intersect", "-2/1", "1/3"])
        assert res.exit_code == 0
        assert "det(-2/1, 1/3) = 7" in res.output
        assert "{2,2}" in res.output
        assert "{1,1,2}" in res.output
        assert "continuant numerator = 7" in res.output

    def test_reverse_reading(self, runner):
        res = runner.invoke(main, ["intersect", "1/3", "-2/1",
                                   "--format", "json"])
        data = json.loads(res.output)
        assert data["lr_sequence"] == [3, 1]
        assert data["co_sequence"] == [1, 2, 1]
        assert data["continuant"] == 7

    def test_same_vertex_and_neighbors(self, runner):
        res = runner.invoke(main, ["intersect", "2/4", "1/2"])
        assert "same vertex" in res.output
        res = runner.invoke(main, ["intersect", "0/1", "1/1"])
        assert "neighbors: no LR sequence" in res.output

    def test_invalid_vertex_is_exit_2(self, runner):
        assert runner.invoke(main, ["intersect", "0/0", "1/1"]).exit_code == 2
        assert runner.invoke(main, ["intersect", "x", "1/1"]).exit_code == 2


class TestConstruct:
    def test_text(self, runner):
        res = runner.invoke(main, ["construct", "S", "4"])
        assert res.exit_code == 0
        assert "S_4: 10 vertices, max pairwise det 7" in res.output

    def test_json_subgraph(self, runner):
        res = runner.invoke(main, ["construct", "R", "3", "--format", "json"])
        data = json.loads(res.output)
        assert data["size"] == 4
        assert data["max_det"] == 2
        from kfarey.dualtree import construct_R
        sub = construct_R(3)
        assert len(data["subgraph"]["nodes"]) == len(sub.nodes)
        assert len(data["subgraph"]["edges"]) == len(sub.edges)

    def test_certificate_roundtrip_into_clique(self, runner, tmp_path):
        cert = tmp_path / "cert.txt"
        res = runner.invoke(main, ["construct", "T", "1", "--out", str(cert)])
        assert res.exit_code == 0
        lines = cert.read_text().strip().splitlines()
        assert len(lines) == 12
        res = runner.invoke(main, ["clique", "--k", "8", "--denom-cap", "40",
                                   "--seed-certificate", str(cert),
                                   "--budget", "60s", "--format", "json"])
        assert res.exit_code == 0
        assert json.loads(res.output)["size"] == 12

    def test_bad_n(self, runner):
        assert runner.invoke(main, ["construct", "R", "0"]).exit_code == 2


class TestClique:
    def test_fixed_window(self, runner):
        res = runner.invoke(main, ["clique", "--k", "2", "--denom-cap", "6",
                                   "--format", "json"])
        data = json.loads(res.output)
        assert data["size"] == 4
        assert data["optimal_within_window"] is True

    def test_auto_window_text(self, runner):
        res = runner.invoke(main, ["clique", "--k", "3", "--budget", "30s"])
        assert res.exit_code == 0
        assert "clique of size 6" in res.output

    def test_out_file_atomic(self, runner, tmp_path):
        target = tmp_path / "result.json"
        res = runner.invoke(main, ["clique", "--k", "2", "--denom-cap", "5",
                                   "--format", "json", "--out", str(target)])
        assert res.exit_code == 0
        assert json.loads(target.read_text())["size"] == 4
        assert not list(tmp_path.glob("*.part"))

    def test_bad_cap(self, runner):
        res = runner.invoke(main, ["clique", "--k", "2", "--denom-cap", "soon"])
        assert res.exit_code == 2

    def test_bad_budget(self, runner):
        res = runner.invoke(main, ["clique", "--k", "2", "--budget", "later"])
        assert res.exit_code == 2


class TestTable:
    def test_csv(self, runner):
        res = runner.invoke(main, ["table", "--k-max", "5"])
        assert res.exit_code == 0
        lines = res.output.strip().splitlines()
        assert lines[0].startswith("k,lower,upper,agol_bound")
        assert len(lines) == 6
        assert lines[2].startswith("2,4,4,4,True")

    def test_json_and_figure(self, runner, tmp_path):
        fig = tmp_path / "bounds.svg"
        res = runner.invoke(main, ["table", "--k-max", "4", "--format", "json",
                                   "--figure", str(fig)])
        assert res.exit_code == 0
        rows = json.loads(res.output.split("wrote")[0])
        assert [r["k"] for r in rows] == [1, 2, 3, 4]
        assert fig.exists() and fig.stat().st_size > 0

    def test_bad_kmax(self, runner):
        assert runner.invoke(main, ["table", "--k-max", "0"]).exit_code == 2


class TestVerify:
    def test_suite_passes(self, runner):
        res = runner.invoke(main, ["verify", "lr-oracle"])
        assert res.exit_code == 0
        assert "[pass]" in res.output
        assert "all" in res.output and "checks passed" in res.output

    def test_unknown_suite_rejected(self, runner):
        assert runner.invoke(main, ["verify", "everything"]).exit_code == 2

    def test_failure_exits_1(self, runner, monkeypatch):
        from kfarey import cli, verify

        def broken(name):
            return [verify.Check("stub", False, "forced")]
        monkeypatch.setattr(cli, "run_suite", broken)
        res = runner.invoke(main, ["verify", "lr-oracle"])
        assert res.exit_code == 1
        assert "[FAIL]" in res.output
