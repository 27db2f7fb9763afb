import json
import pathlib

import jsonschema
import pytest

import apnkit

SCHEMA = json.loads((pathlib.Path(__file__).resolve().parents[2] / "docs" / "report.schema.json").read_text())


def test_field_info():
    info = apnkit.field_info("4")
    assert info["m"] == 4
    assert info["modulus"] == "0x13"


def test_phi_of_gold_monomial():
    text, degree = apnkit.phi("x^5")
    assert text == "x^2 + x*y + x*z + y^2 + y*z + z^2"
    assert degree == 2
    assert apnkit.phi_j(5) == text


def test_kasami_verdict_and_split():
    v = apnkit.verdict(apnkit.phi_j(13))
    assert v["status"] == "irreducible_not_absolutely"
    assert v["conjugate_count"] == 2
    f = apnkit.factor(apnkit.phi_j(13, "2"), "2")
    assert [fac["multiplicity"] for fac in f["factors"]] == [1, 1]


def test_welch_absolutely_irreducible():
    assert apnkit.verdict(apnkit.phi_j(11))["status"] == "absolutely_irreducible"


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_factor_seed_independent(seed):
    poly = "x^2 + y^2 + x + y"
    assert len(apnkit.factor(poly, seed=seed)["factors"]) == 2


def test_apn_and_rodier_agree():
    for n in range(3, 7):
        for f in ("x^3", "x^5", "x^7 + x^3", "x^9"):
            assert apnkit.rodier_check(f, n) == apnkit.is_apn(f, n, verdict_only=True)["is_apn"]
    assert apnkit.apn_degrees("x^9", 2, 10) == [2, 4, 5, 7, 8, 10]


def test_runners():
    l2 = apnkit.verify_lemma2(21)
    assert l2["failed"] == 0
    assert len(l2["result"]["rows"]) == 9
    t = apnkit.verify_theorem("obstacle", k=4, samples=4, seed=1)
    assert t["passed"] == 4
    assert t == apnkit.verify_theorem("obstacle", k=4, samples=4, seed=1, threads=2)


def test_errors_raise():
    with pytest.raises(apnkit.ApnkitError, match="column 3"):
        apnkit.phi("x^^3")
    with pytest.raises(apnkit.ApnkitError):
        apnkit.verify_theorem("1mod4", k=4, samples=2, d=5)


@pytest.mark.parametrize(
    "args",
    [
        ["field", "info", "--field", "8"],
        ["phi", "compute", "--f", "x^13"],
        ["phi", "verdict", "--f", "x^7"],
        ["phi", "gcd", "--f", "x^5", "--g", "x^17"],
        ["phi", "section", "--f", "x^25"],
        ["phi", "factor", "--f", "x^9", "--over", "3"],
        ["scan", "degrees", "--d-max", "15"],
        ["verify", "lemma1", "--k", "3"],
        ["verify", "lemma2", "--n", "15"],
        ["verify", "theorem", "3mod4", "--samples", "3"],
        ["apn", "test", "--f", "x^3", "--n", "5"],
        ["apn", "rodier", "--f", "x^3", "--n", "3"],
        ["apn", "scan", "--f", "x^5", "--n", "2..6"],
    ],
)
def test_cli_reports_match_schema(args):
    code, report, _ = apnkit.run_cli(*args)
    assert code == 0
    jsonschema.validate(report, SCHEMA)
    assert report["ok"] is True


def test_cli_exit_codes():
    assert apnkit.run_cli("apn", "test", "--f", "x^5", "--n", "4", "--expect", "apn")[0] == 2
    assert apnkit.run_cli("phi", "compute", "--f", "x^^3")[0] == 1
