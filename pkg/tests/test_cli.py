import io
import json

import pytest

from plfkit.cli import main
from plfkit.scenario import behavior_from_json, behavior_to_json
from plfkit.quantum import hardy_behavior


@pytest.fixture
def model_file(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({
        "worlds": ["w0", "w1"],
        "relation": [["w0", "w1"]],
        "valuation": {"Q": ["w1"]},
    }))
    return str(path)


@pytest.fixture
def dead_end_model(tmp_path):
    path = tmp_path / "dead.json"
    path.write_text(json.dumps({"worlds": ["w"], "relation": [], "valuation": {}}))
    return str(path)


@pytest.fixture
def hardy_file(tmp_path):
    path = tmp_path / "hardy.json"
    path.write_text(json.dumps(behavior_to_json(hardy_behavior())))
    return str(path)


@pytest.fixture
def all_possible_file(tmp_path):
    beh = hardy_behavior()
    data = behavior_to_json(beh)
    data["possible"] = [[a, b, x, y] for a in (0, 1) for b in (0, 1)
                        for x in (1, 2) for y in (1, 2)]
    path = tmp_path / "allpossible.json"
    path.write_text(json.dumps(data))
    return str(path)


class TestParse:
    def test_echo(self, capsys):
        assert main(["parse", "<>(A=1 & B=1)"]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "<>(A=1 & B=1)"

    def test_bad_formula(self, capsys):
        assert main(["parse", "A & & B"]) == 2


class TestEval:
    def test_true_formula(self, model_file, capsys):
        assert main(["eval", model_file, "w0", "<>Q"]) == 0
        assert capsys.readouterr().out.strip() == "true"

    def test_false_formula_exit_1(self, dead_end_model, capsys):
        assert main(["eval", dead_end_model, "w", "[]Q -> Q"]) == 1
        assert capsys.readouterr().out.strip() == "false"

    def test_box_diamond_dead_end(self, dead_end_model):
        assert main(["eval", dead_end_model, "w", "[]Q -> <>Q"]) == 1

    def test_validity_flag(self, model_file):
        assert main(["eval", model_file, "w0", "Q | ~Q", "--validity"]) == 0
        assert main(["eval", model_file, "w0", "Q", "--validity"]) == 1

    def test_missing_file_exit_2(self, tmp_path):
        assert main(["eval", str(tmp_path / "missing.json"), "w0", "Q"]) == 2

    def test_unknown_world_exit_2(self, model_file):
        assert main(["eval", model_file, "w9", "Q"]) == 2


class TestCheck:
    def test_hardy_plf_infeasible(self, hardy_file, tmp_path, capsys):
        out = tmp_path / "trace.json"
        assert main(["check", hardy_file, "--mode", "plf", "--out", str(out)]) == 1
        trace = json.loads(out.read_text())
        assert trace["target_cell"] == [1, 1, 2, 2]
        assert len(trace["branches"]) == 4
        assert "infeasible" in capsys.readouterr().out

    def test_all_possible_feasible(self, all_possible_file):
        assert main(["check", all_possible_file, "--mode", "plf"]) == 0

    def test_hardy_pns_holds(self, hardy_file, capsys):
        assert main(["check", hardy_file, "--mode", "pns"]) == 0
        assert "holds" in capsys.readouterr().out

    def test_modal_mode(self, hardy_file):
        assert main(["check", hardy_file, "--mode", "modal"]) == 1

    def test_malformed_behavior_exit_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{\"nope\": 1}")
        assert main(["check", str(bad), "--mode", "plf"]) == 2

    def test_stdin_pipeline(self, monkeypatch, capsys):
        assert main(["hardy"]) == 0
        captured = capsys.readouterr()
        assert "P(1,1|2,2)=0.083333" in captured.err
        monkeypatch.setattr("sys.stdin", io.StringIO(captured.out))
        assert main(["check", "--mode", "plf"]) == 1


class TestHardy:
    def test_headline(self, capsys):
        assert main(["hardy"]) == 0
        err = capsys.readouterr().err
        assert "P(1,1|1,1)=0" in err
        assert "P(0,1|1,2)=0" in err
        assert "P(1,0|2,1)=0" in err
        assert "P(1,1|2,2)=0.083333" in err

    def test_stdout_is_behavior_json(self, capsys):
        assert main(["hardy"]) == 0
        beh = behavior_from_json(capsys.readouterr().out)
        assert beh == hardy_behavior()

    def test_epsilon_invariance_and_byte_stability(self, tmp_path, capsys):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(["hardy", "--out", str(out1)]) == 0
        assert main(["hardy", "--epsilon", "1e-6", "--out", str(out2)]) == 0
        assert (out1 / "hardy_behavior.json").read_bytes() == \
               (out2 / "hardy_behavior.json").read_bytes()
        assert (out1 / "hardy_probs.json").read_bytes() == \
               (out2 / "hardy_probs.json").read_bytes()

    def test_json_report(self, capsys):
        assert main(["hardy", "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["exit_code"] == 0
        assert [1, 1, 2, 2] in report["verdicts"]["behavior"]["possible"]


class TestProve:
    def test_full_run(self, capsys):
        assert main(["prove"]) == 0
        out = capsys.readouterr().out
        assert "UNSAT" in out
        for name in ("E2", "E3", "E4"):
            assert f"Dropping the impossibility of {name}" in out
        assert out.count("SAT") >= 3

    def test_drop_e4_witness_world(self, capsys):
        assert main(["prove", "--drop", "E4"]) == 0
        out = capsys.readouterr().out
        assert "(A=1, B=1, C=1, D=1, X=1, Y=1)" in out

    def test_json_report(self, capsys):
        assert main(["prove", "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["verdicts"]["modal_unsat"] is True
        assert report["verdicts"]["table_infeasible"] is True
        assert all(v["satisfiable"] and v["recheck"]
                   for v in report["verdicts"]["relaxations"].values())
