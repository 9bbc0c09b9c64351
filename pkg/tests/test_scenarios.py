"""The two worked scenarios: rescue choice and obligation-to-inform."""

from fractions import Fraction

import pytest

from oughtcheck.errors import CheckerError
from oughtcheck.scenarios import SCENARIO_NAMES, run_scenario


def test_scenario_names():
    assert set(SCENARIO_NAMES) == {"miners", "allergy"}
    with pytest.raises(CheckerError):
        run_scenario("trolley")


def test_miners_claims(miners_report):
    r = miners_report
    assert r.ok
    assert r.point == "A9"
    assert [c.claim.expected for c in r.claims] == [False, False, True]
    assert r.claim_verdict("O{i}(U.gamma | true)").verdict.holds is True
    assert r.claim_verdict("O{i}(U.alpha | true)").verdict.holds is False
    assert r.claim_verdict("O{i}(U.beta | true)").verdict.holds is False


def test_miners_expectations(miners_report):
    r = miners_report
    assert r.expectation("i", (("U", "alpha"),)) == Fraction(5)
    assert r.expectation("i", (("U", "beta"),)) == Fraction(5)
    assert r.expectation("i", (("U", "gamma"),)) == Fraction(9)
    rows = {row.trace: row for row in r.expectations}
    assert rows[(("U", "alpha"),)].root == ("A10", (("U", "alpha"),))
    assert rows[(("U", "beta"),)].root == ("A0", (("U", "beta"),))
    assert rows[(("U", "gamma"),)].root == ("A9", (("U", "gamma"),))


def test_miners_stages_and_notes(miners_report):
    r = miners_report
    assert len(r.stages) == 1
    assert len(r.informational) == 3
    # the negation-clause divergence is recorded truthfully
    assert "False" in r.informational[1] and "True" in r.informational[1]
    assert "agrees: False" in r.informational[2]


def test_allergy_claims(allergy_report):
    r = allergy_report
    assert r.ok
    assert r.point == "w2"
    good = "O{b}(U.delta | O{a}(U2.beta | K{a} A))"
    bad = "O{b}(U.gamma | O{a}(U2.beta | K{a} A))"
    assert r.claim_verdict(good).verdict.holds is True
    assert r.claim_verdict(bad).verdict.holds is False
    assert r.claim_verdict("O{a}(U2.beta | K{a} A)").verdict.holds is False
    assert r.claim_verdict("<U.delta> O{a}(U2.beta | K{a} A)").verdict.holds is True
    for c in r.claims:
        assert c.claim.note


def test_allergy_expectations(allergy_report):
    r = allergy_report
    d_a = (("U", "delta"), ("U2", "alpha"))
    d_b = (("U", "delta"), ("U2", "beta"))
    g_a = (("U", "gamma"), ("U2", "alpha"))
    g_b = (("U", "gamma"), ("U2", "beta"))
    for agent in ("a", "b"):
        assert r.expectation(agent, d_a) == Fraction(0)
        assert r.expectation(agent, d_b) == Fraction(40)
        assert r.expectation(agent, g_b) == Fraction(40)
    # staying silent leaves the prescriber's estimate off the true value
    assert r.expectation("a", g_a) == Fraction(50)
    assert r.expectation("b", g_a) == Fraction(0)
    assert len(r.expectations) == 8


def test_allergy_stages_and_notes(allergy_report):
    r = allergy_report
    assert len(r.stages) == 2
    assert len(r.informational) == 2
    assert "= False" in r.informational[0]


def test_report_dict_round(miners_report):
    d = miners_report.as_dict()
    assert d["scenario"] == "miners"
    assert d["ok"] is True
    assert len(d["claims"]) == 3
    assert d["claims"][2]["holds"] is True
    assert {row["value"] for row in d["expectations"]} == {"5/1", "9/1"}


def test_expectation_rows_render(allergy_report):
    row = next(
        r for r in allergy_report.expectations
        if r.agent == "a" and r.trace == (("U", "delta"), ("U2", "beta"))
    )
    assert row.render() == "E[a; U.delta;U2.beta] rooted w2@U.delta;U2.beta = 40/1"


def test_unknown_claim_or_expectation(miners_report):
    with pytest.raises(KeyError):
        miners_report.claim_verdict("false")
    with pytest.raises(KeyError):
        miners_report.expectation("i", (("V", "x"),))
