import pytest

import mvdl


def test_version():
    assert mvdl.__version__ == "0.1.0"


def test_algebra_checks():
    assert mvdl.validate_algebra("L3")["ok"]
    assert mvdl.is_semiprimal("L2")
    assert not mvdl.is_semiprimal("G2")


def test_evaluate():
    model = {
        "n": 2,
        "algebra": "L2",
        "kind": "Powerset",
        "atoms": {"a": [2, 0]},
        "valuation": {"p": ["0", "1/2"]},
    }
    assert mvdl.evaluate(model, "<a> p") == ["1/2", "0"]
    assert mvdl.evaluate(model, "[a] p") == ["1/2", "1"]


def test_reduce():
    assert mvdl.reduce("<(a;b)+c> p", "game") == "<a:ev> <b:ev> p | <c:ev> p"
    assert mvdl.rules("pdl-crisp", "B2")["complete"]


def test_entailment_countermodel_replays():
    verdict = mvdl.entail([], "p -> [a] p", "pdl-crisp")
    assert verdict["status"] == "fails"
    assert verdict["counterexample"]["model"]["n"] == 2
    assert mvdl.replay_counterexample(verdict["counterexample"])


def test_verify_rules_small():
    verdicts = mvdl.verify_rules("pdl-labelled", max_n=1)
    assert verdicts and all(v["status"] != "fails" for v in verdicts)


def test_errors():
    with pytest.raises(mvdl.MvdlError, match="syntax-error"):
        mvdl.reduce("p & & q", "pdl-crisp")
    with pytest.raises(ValueError, match="iteration-present"):
        mvdl.reduce("<a*> p", "pdl-crisp")
