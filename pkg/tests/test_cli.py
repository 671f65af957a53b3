import json

import pytest

from tlonemax.cli import EXIT_OK, EXIT_USAGE, main

ESTIMATE_HEADER = ("algo,n,w,trials,budget,seed,successes,event1,event2,event3,"
                   "undecided,p_success,ci_low,ci_high,mean_gen")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def without_volatile(payload: str) -> dict:
    doc = json.loads(payload)
    doc.pop("timestamp", None)
    if isinstance(doc.get("result"), dict):
        doc["result"].pop("wall_time_s", None)
    return doc


class TestEstimate:
    def test_json_document_and_roundtrip(self, capsys):
        code, out, _ = run(capsys, "estimate", "--algo", "ea", "--n", "12", "--w", "0",
                           "--trials", "50", "--seed", "3")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["command"] == "estimate" and doc["tool"] == "tlonemax"
        assert json.loads(json.dumps(doc)) == doc
        assert doc["result"]["successes"] == 50

    def test_csv_schema(self, capsys):
        code, out, _ = run(capsys, "estimate", "--algo", "rls", "--n", "10", "--w", "2",
                           "--trials", "80", "--seed", "1", "--format", "csv")
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == ESTIMATE_HEADER
        assert len(lines) == 2 and '"' not in out

    def test_byte_identical_given_seed(self, capsys):
        args = ("estimate", "--algo", "rls", "--n", "10", "--w", "-3",
                "--trials", "60", "--seed", "5")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert without_volatile(out1) == without_volatile(out2)
        _, csv1, _ = run(capsys, *args, "--format", "csv")
        _, csv2, _ = run(capsys, *args, "--format", "csv")
        assert csv1 == csv2

    def test_worker_count_does_not_change_payload(self, capsys):
        args = ("estimate", "--algo", "ea", "--n", "10", "--w", "-10",
                "--trials", "40", "--seed", "9")
        _, out1, _ = run(capsys, *args, "--workers", "1")
        _, out2, _ = run(capsys, *args, "--workers", "2")
        assert without_volatile(out1) == without_volatile(out2)

    def test_missing_n_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["estimate", "--algo", "rls", "--w", "2"])
        assert exc.value.code == EXIT_USAGE
        assert "--n" in capsys.readouterr().err

    def test_mu_flag_misuse(self, capsys):
        code, _, err = run(capsys, "estimate", "--algo", "rls", "--n", "8", "--w", "1",
                           "--mu", "4")
        assert code == EXIT_USAGE and err.strip()
        code, _, err = run(capsys, "estimate", "--algo", "mu-ea", "--n", "8", "--w", "-8",
                           "--trials", "5")
        assert code == EXIT_USAGE and "--mu" in err

    def test_mu_ea_runs(self, capsys):
        code, out, _ = run(capsys, "estimate", "--algo", "mu-ea", "--mu", "4", "--n", "8",
                           "--w", "-8", "--trials", "10", "--budget", "4000", "--seed", "2")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["result"]["trials"] == 10


class TestExact:
    def test_csv_schema_and_closed_form(self, capsys):
        code, out, _ = run(capsys, "exact", "--algo", "rls", "--n", "20", "--w", "3",
                           "--format", "csv")
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "algo,n,w,p_opt,p_event1,p_event2,p_event3"
        fields = lines[1].split(",")
        assert abs(float(fields[3]) - (1 - 0.275)) <= 1e-10

    def test_json_with_per_state_and_hitting(self, capsys):
        code, out, _ = run(capsys, "exact", "--algo", "ea", "--n", "6", "--w", "-6",
                           "--per-state", "--hitting-times")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert len(doc["result"]["per_state"]) == 24
        assert doc["result"]["hitting"]["overall_conditional_generations"] > 0
        assert json.loads(json.dumps(doc)) == doc  # NaN-free strict JSON

    def test_mu_ea_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["exact", "--algo", "mu-ea", "--n", "8", "--w", "2"])
        assert exc.value.code == EXIT_USAGE

    def test_per_state_requires_json(self, capsys):
        code, _, err = run(capsys, "exact", "--algo", "ea", "--n", "6", "--w", "1",
                           "--per-state", "--format", "csv")
        assert code == EXIT_USAGE and err.strip()

    def test_probability_one_example(self, capsys):
        code, out, _ = run(capsys, "exact", "--algo", "ea", "--n", "10", "--w", "0")
        doc = json.loads(out)
        assert abs(doc["result"]["p_optimum"] - 1) <= 1e-10


class TestVerifyCmd:
    def test_all_pass_json(self, capsys):
        code, out, _ = run(capsys, "verify", "--lemma", "all", "--n", "8",
                           "--samples", "2000")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert all(rep["passed"] for rep in doc["result"])
        assert len(doc["result"]) == 3

    def test_csv_schema(self, capsys):
        code, out, _ = run(capsys, "verify", "--lemma", "facts", "--n", "6",
                           "--format", "csv")
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "lemma,n,passed,worst_margin"


class TestScaling:
    def test_csv_rows_per_n(self, capsys):
        code, out, _ = run(capsys, "scaling", "--algo", "ea", "--w", "1",
                           "--ns", "8,12,16", "--trials", "10", "--seed", "3")
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "n,mean_success_generations,std,successes"
        assert len(lines) == 4
        assert [int(l.split(",")[0]) for l in lines[1:]] == [8, 12, 16]

    def test_negative_w_usage_error(self, capsys):
        code, _, err = run(capsys, "scaling", "--algo", "ea", "--w", "-1",
                           "--ns", "8", "--trials", "5")
        assert code == EXIT_USAGE and err.strip()


class TestTrace:
    def test_terminates_with_outcome_line(self, capsys):
        code, out, _ = run(capsys, "trace", "--algo", "rls", "--n", "6", "--w", "-6",
                           "--seed", "1")
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "g,t,prev_first,current,fitness,accepted,event"
        assert lines[-1].startswith("outcome,")
        assert ("stagnated" in lines[-1]) or ("optimum" in lines[-1])

    def test_replay_is_deterministic(self, capsys):
        args = ("trace", "--algo", "ea", "--n", "8", "--w", "-2", "--seed", "4",
                "--budget", "500")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2


class TestReproduce:
    @pytest.mark.parametrize("theorem", [5, 7, 8, 9])
    def test_fast_presets_pass(self, capsys, theorem):
        code, out, _ = run(capsys, "reproduce", "--theorem", str(theorem))
        assert code == EXIT_OK
        assert out.strip().endswith("PASS")

    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "reproduce", "--theorem", "8", "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["result"]["verdict"] == "PASS"

    def test_unknown_theorem_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["reproduce", "--theorem", "6"])
        assert exc.value.code == EXIT_USAGE


def test_workers_env_default(monkeypatch):
    from tlonemax.cli import build_parser
    monkeypatch.setenv("TLOM_WORKERS", "3")
    args = build_parser().parse_args(["estimate", "--algo", "rls", "--n", "8", "--w", "0"])
    assert args.workers == 3
    monkeypatch.setenv("TLOM_WORKERS", "junk")
    args = build_parser().parse_args(["estimate", "--algo", "rls", "--n", "8", "--w", "0"])
    assert args.workers == 1
    monkeypatch.delenv("TLOM_WORKERS")
    args = build_parser().parse_args(["estimate", "--algo", "rls", "--n", "8", "--w", "0"])
    assert args.workers == 1
