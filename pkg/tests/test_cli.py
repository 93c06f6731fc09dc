"""The command-line front end, driven in process through main(argv).

Every subcommand gets one --json invocation validated against its published
schema, plus coverage of all four exit codes: 0 confirmed, 1 refuted,
2 input error, 3 cap refusal or undecided.
"""

import json

import jsonschema
import pytest

from modalbench.cli import main
from modalbench.schemas import schema_for


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv + ["--json"])
    assert err == ""
    payload = json.loads(out)
    jsonschema.validate(payload, schema_for(argv[0]))
    return code, payload


class TestEval:
    def test_globally_true_formula(self, capsys):
        code, out, _ = run(capsys, ["eval", "--frame", "chain:3",
                                    "--formula", "<>x | x", "--val", '{"x": [2]}'])
        assert code == 0
        assert out == "holds at worlds [0, 1, 2] (globally)\n"

    def test_json_payload(self, capsys):
        code, payload = run_json(capsys, ["eval", "--frame", "chain:3",
                                          "--formula", "x", "--val", '{"x": [1]}'])
        assert code == 1
        assert payload == {"formula": "x", "worlds": [1], "holds_globally": False}

    def test_valuation_from_file(self, capsys, tmp_path):
        path = tmp_path / "val.json"
        path.write_text('{"x": [0]}')
        code, payload = run_json(capsys, ["eval", "--frame", "chain:2",
                                          "--formula", "x", "--val", f"@{path}"])
        assert (code, payload["worlds"]) == (1, [0])

    def test_frame_from_file(self, capsys, tmp_path):
        path = tmp_path / "frame.json"
        path.write_text('{"worlds": 2, "edges": [[0, 1]]}')
        code, payload = run_json(capsys, ["eval", "--frame", str(path),
                                          "--formula", "[]F"])
        assert (code, payload["worlds"]) == (1, [1])  # only the endpoint is blind


class TestCheckValid:
    def test_valid_statement(self, capsys):
        code, payload = run_json(capsys, ["check-valid", "--frame", "chain:3",
                                          "--stmt", "x <= x"])
        assert code == 0
        assert payload["verdict"] == "valid"
        assert payload["valuations_tried"] == 8
        assert payload["exhaustive"] is True

    def test_countermodel(self, capsys):
        code, payload = run_json(capsys, ["check-valid", "--frame", "chain:3",
                                          "--stmt", "x <= []x"])
        assert code == 1
        assert payload["verdict"] == "countermodel"
        assert payload["valuation"] is not None

    def test_reflexive_spec_changes_the_verdict(self, capsys):
        code, _ = run_json(capsys, ["check-valid", "--frame", "chain:3:refl=0,1,2",
                                    "--stmt", "[]x <= x"])
        assert code == 0

    def test_over_cap_refusal(self, capsys):
        code, _, err = run(capsys, ["check-valid", "--frame", "chain:9",
                                    "--stmt", "tpow(1) = tpow(2)"])
        assert code == 3
        assert err.startswith("refused:")

    def test_sampling_finds_the_chain_counterexample(self, capsys):
        code, payload = run_json(capsys, ["check-valid", "--frame", "chain:9",
                                          "--stmt", "tpow(1) = tpow(2)", "--sample"])
        assert code == 1
        assert payload["verdict"] == "countermodel"
        assert payload["exhaustive"] is False

    def test_sampling_cannot_conclude_valid(self, capsys):
        code, payload = run_json(capsys, ["check-valid", "--frame", "chain:9",
                                          "--stmt", "x <= x", "--vars", "x,y,z",
                                          "--sample", "32"])
        assert code == 3
        assert payload["verdict"] == "unknown"
        assert payload["valuations_tried"] == 32


class TestLemmaAndChains:
    def test_lemma_certificate(self, capsys):
        code, payload = run_json(capsys, ["lemma", "--n", "1"])
        assert code == 0
        assert payload["valid"] is True
        assert payload["worlds"] == 3
        assert payload["claim_table"]["0"] == [0, 2]

    def test_lemma_table_rendering(self, capsys):
        code, out, _ = run(capsys, ["lemma", "--n", "1", "--refl", "0"])
        assert code == 0
        assert "t^0" in out and "certificate valid: True" in out

    def test_chains_listing(self, capsys):
        code, payload = run_json(capsys, ["chains", "--size", "2"])
        assert code == 0
        assert payload["count"] == 4
        assert len(payload["frames"]) == 4


class TestTransitivity:
    def test_transitive_chain(self, capsys):
        code, payload = run_json(capsys, ["transitivity", "--frame", "chain:3",
                                          "--max", "4"])
        assert (code, payload["degree"]) == (0, 1)

    def test_no_degree_within_bound(self, capsys, tmp_path):
        path = tmp_path / "path.json"
        path.write_text('{"worlds": 3, "edges": [[0, 1], [1, 2]]}')
        code, payload = run_json(capsys, ["transitivity", "--frame", str(path),
                                          "--max", "1"])
        assert (code, payload["degree"]) == (1, None)


class TestFixpoint:
    def test_reachability_orbit(self, capsys):
        code, payload = run_json(capsys, ["fixpoint", "--frame", "chain:3",
                                          "--term", "<>x | x", "--pivot", "x",
                                          "--base", "2"])
        assert code == 0
        assert payload == {"index": 1, "fixpoint": [0, 1, 2],
                           "orbit": [[2], [0, 1, 2]]}

    def test_non_increasing_term_is_an_input_error(self, capsys):
        code, _, err = run(capsys, ["fixpoint", "--frame", "chain:3",
                                    "--term", "[]x", "--pivot", "x"])
        assert code == 2
        assert err.startswith("error:")


class TestConsequence:
    def test_holds(self, capsys):
        code, payload = run_json(capsys, ["consequence", "--frame", "chain:2",
                                          "--frame", "chain:2:refl=0",
                                          "--premise", "x <= y",
                                          "--conclusion", "x <= y"])
        assert code == 0
        assert payload["holds"] is True and payload["complete"] is False

    def test_countermodel(self, capsys):
        code, payload = run_json(capsys, ["consequence", "--frame", "chain:2",
                                          "--premise", "y <= x",
                                          "--conclusion", "x <= y"])
        assert code == 1
        assert payload["holds"] is False
        assert payload["frame_index"] == 0
        assert isinstance(payload["failure_world"], int)

    def test_budget_refusal(self, capsys):
        code, _, err = run(capsys, ["consequence", "--frame", "chain:9",
                                    "--conclusion", "tpow(1) = tpow(2)"])
        assert code == 3
        assert "budget" in err


class TestStabilize:
    def test_diamond_on_all_chains(self, capsys):
        code, payload = run_json(capsys, ["stabilize", "--all-chains", "3",
                                          "--term", "<>x | x", "--pivot", "x",
                                          "--max", "2"])
        assert (code, payload["index"]) == (0, 1)

    def test_chain_step_does_not_stabilize_early(self, capsys):
        code, payload = run_json(capsys, ["stabilize", "--all-chains", "3",
                                          "--term", "tpow(1)", "--pivot", "x",
                                          "--max", "1"])
        assert (code, payload["index"]) == (1, None)

    def test_sampling_cannot_certify(self, capsys):
        code, _, err = run(capsys, ["stabilize", "--frame", "chain:13",
                                    "--term", "tpow(1)", "--pivot", "x",
                                    "--max", "7", "--sample", "64"])
        assert code == 3
        assert "cannot certify" in err

    def test_no_frames_is_an_input_error(self, capsys):
        code, _, err = run(capsys, ["stabilize", "--term", "x", "--pivot", "x",
                                    "--max", "1"])
        assert code == 2
        assert "no frames" in err


class TestInputErrors:
    @pytest.mark.parametrize("spec", ["chain:x", "chain:3:rofl=1", "chain:3:refl=a"])
    def test_bad_frame_specs(self, capsys, spec):
        code, _, err = run(capsys, ["eval", "--frame", spec, "--formula", "x"])
        assert code == 2
        assert err.startswith("error:")

    def test_bad_inline_valuation(self, capsys):
        code, _, err = run(capsys, ["eval", "--frame", "chain:2",
                                    "--formula", "x", "--val", "{x}"])
        assert code == 2
        assert "bad valuation JSON" in err

    def test_missing_valuation_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, ["eval", "--frame", "chain:2", "--formula", "x",
                                  "--val", f"@{tmp_path}/absent.json"])
        assert code == 2

    def test_formula_parse_error(self, capsys):
        code, _, err = run(capsys, ["eval", "--frame", "chain:2", "--formula", "x |"])
        assert code == 2
        assert "error:" in err and "column 4" in err

    def test_no_subcommand_exits_via_argparse(self, capsys):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2

    def test_unknown_flag_exits_via_argparse(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["chains", "--size", "2", "--frobnicate"])
        assert info.value.code == 2
