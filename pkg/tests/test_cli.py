"""Text grammar, JSON serialization, and subcommand behavior with exit codes."""

from fractions import Fraction
import json
import random

import pytest

from blockcert import (
    IndexSet,
    MalformedCertificateError,
    Monomial,
    ParseError,
    Polynomial,
    base_certificate,
    certificate_from_json,
    certificate_to_json,
    decompose,
    main,
    parse_poly,
    poly_from_json,
    poly_to_json,
    poly_to_str,
)
from helpers import random_poly, standard_ground

X2 = IndexSet((1, 2))
X3 = IndexSet((1, 2, 3))


# -- parsing -------------------------------------------------------------------

def test_parse_monomial_with_rational_coeff():
    p = parse_poly("3/2*x[1,2]^4*x[2,3]", X3)
    assert p.terms == (
        Monomial.make(X3, Fraction(3, 2), {(1, 2): 4, (2, 3): 1}),
    )


def test_parse_two_terms():
    p = parse_poly("x[1,2]+x[2,1]", X3)
    assert len(p.terms) == 2
    assert not p.is_zero


def test_parse_merges_and_cancels():
    assert parse_poly("x[1,2]*x[1,2]", X3) == parse_poly("x[1,2]^2", X3)
    assert parse_poly("x[1,2]-x[1,2]", X3).is_zero
    assert parse_poly("0", X3).is_zero
    assert parse_poly(" - 5 ", X3) == Polynomial.constant(X3, -5)
    assert parse_poly("2*x[1,2]+3*x[1,2]", X3) == parse_poly("5*x[1,2]", X3)


def test_parse_whitespace_insignificant():
    assert parse_poly(" x[1,2] + 2 * x[2,3] ^ 2 ", X3) == parse_poly("x[1,2]+2*x[2,3]^2", X3)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError, match="equal indices"):
        parse_poly("x[1,1]", X3)
    with pytest.raises(ParseError, match="outside ground set"):
        parse_poly("x[1,4]", X3)
    with pytest.raises(ParseError) as info:
        parse_poly("x[1,2]+*", X3)
    assert info.value.pos == 7
    with pytest.raises(ParseError, match="exponent"):
        parse_poly("x[1,2]^0", X3)
    with pytest.raises(ParseError, match="trailing"):
        parse_poly("x[1,2] x[1,3]", X3)
    with pytest.raises(ParseError, match="empty"):
        parse_poly("   ", X3)
    with pytest.raises(ParseError):
        parse_poly("x[1,2]^", X3)


def test_print_examples():
    assert poly_to_str(Polynomial.zero(X3)) == "0"
    assert poly_to_str(parse_poly("x[1,3]^3-x[1,2]*x[1,3]^2", X3)) == "-x[1,2]*x[1,3]^2+x[1,3]^3"
    assert poly_to_str(Polynomial.constant(X3, Fraction(-3, 4))) == "-3/4"


def test_parse_print_round_trip_randomized():
    rng = random.Random(41)
    for _ in range(200):
        ground = standard_ground(rng.randint(2, 4))
        p = random_poly(rng, ground, max_terms=4, max_degree=5)
        assert parse_poly(poly_to_str(p), ground) == p


# -- JSON ------------------------------------------------------------------------

def test_poly_json_round_trip():
    rng = random.Random(42)
    for _ in range(50):
        ground = standard_ground(rng.randint(2, 4))
        p = random_poly(rng, ground)
        assert poly_from_json(poly_to_json(p), ground) == p


def test_certificate_json_round_trip():
    mono = Monomial.make(X3, Fraction(7, 2), {(1, 2): 4, (2, 1): 3, (2, 3): 2, (3, 1): 2})
    cert = decompose(mono, 2)
    assert certificate_from_json(certificate_to_json(cert)) == cert
    # and the serialized form is stable
    assert certificate_to_json(certificate_from_json(certificate_to_json(cert))) == certificate_to_json(cert)


def test_certificate_json_coefficients_are_strings():
    cert = base_certificate(Monomial.make(X2, Fraction(3, 2), {(1, 2): 5}), 2)
    obj = certificate_to_json(cert)
    assert obj["input"]["terms"][0]["coeff"] == "3/2"
    assert obj["entries"][0]["cofactor"]["terms"][0]["coeff"] == "3/2"


def test_malformed_certificate_json_rejected():
    good = certificate_to_json(base_certificate(Monomial.make(X2, 1, {(1, 2): 4}), 2))

    bad = json.loads(json.dumps(good))
    bad["entries"][0]["left"] = []
    with pytest.raises(MalformedCertificateError):
        certificate_from_json(bad)

    bad = json.loads(json.dumps(good))
    bad["entries"][0]["left"] = [1, 2]
    with pytest.raises(MalformedCertificateError):
        certificate_from_json(bad)

    bad = json.loads(json.dumps(good))
    bad["entries"][0]["cofactor"]["terms"][0]["exps"] = [[[1, 9], 1]]
    with pytest.raises(MalformedCertificateError):
        certificate_from_json(bad)

    bad = json.loads(json.dumps(good))
    bad["input"]["terms"].append({"coeff": "1", "exps": []})
    with pytest.raises(MalformedCertificateError):
        certificate_from_json(bad)

    bad = json.loads(json.dumps(good))
    bad["g"] = 1
    with pytest.raises(MalformedCertificateError):
        certificate_from_json(bad)


# -- subcommands -------------------------------------------------------------------

def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cmd_bound(capsys):
    code, out, _ = run_cli(capsys, "bound", "--ground", "1,2,3", "--g", "2")
    assert code == 0 and out.strip() == "11"


def test_cmd_nf(capsys):
    code, out, _ = run_cli(capsys, "nf", "--ground", "1,2,3", "x[1,2]+x[2,3]+x[3,1]")
    assert code == 0 and out.strip() == "0"
    code, out, _ = run_cli(capsys, "nf", "--ground", "1,2,3", "x[2,3]", "--json")
    assert code == 0
    assert json.loads(out) == {
        "terms": [
            {"coeff": "-1", "exps": [[[1, 2], 1]]},
            {"coeff": "1", "exps": [[[1, 3], 1]]},
        ]
    }


def test_cmd_eq(capsys):
    code, out, _ = run_cli(capsys, "eq", "--ground", "1,2,3", "x[1,3]", "x[1,2]+x[2,3]")
    assert code == 0 and out.strip() == "true"
    code, out, _ = run_cli(capsys, "eq", "--ground", "1,2,3", "x[1,2]", "x[1,3]")
    assert code == 1 and out.strip() == "false"


def test_cmd_decompose_verify_pipeline(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "decompose", "--ground", "1,2", "--g", "2", "x[1,2]^3*x[2,1]^2")
    assert code == 0
    cert_path = tmp_path / "cert.json"
    cert_path.write_text(out)
    code, out, _ = run_cli(capsys, "verify", str(cert_path))
    assert code == 0 and out.strip() == "true"


def test_cmd_verify_false_on_perturbed(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "decompose", "--ground", "1,2", "--g", "2", "5*x[1,2]^3*x[2,1]^2")
    obj = json.loads(out)
    obj["entries"][0]["cofactor"]["terms"][0]["coeff"] = "4"
    cert_path = tmp_path / "cert.json"
    cert_path.write_text(json.dumps(obj))
    code, out, _ = run_cli(capsys, "verify", str(cert_path))
    assert code == 1 and out.strip() == "false"


def test_cmd_verify_malformed_exits_2(capsys, tmp_path):
    cert_path = tmp_path / "cert.json"
    cert_path.write_text('{"ground": [1,2], "g": 2}')
    code, _, err = run_cli(capsys, "verify", str(cert_path))
    assert code == 2 and "error" in err
    cert_path.write_text("not json")
    code, _, err = run_cli(capsys, "verify", str(cert_path))
    assert code == 2


def test_cmd_blocks(capsys):
    code, out, _ = run_cli(capsys, "blocks", "--ground", "1,2")
    assert code == 0 and out.splitlines() == ["{1}x{2}", "{2}x{1}"]
    code, out, _ = run_cli(capsys, "blocks", "--ground", "1,2,3", "--json")
    assert code == 0 and len(json.loads(out)) == 6


def test_cmd_lemma_suites(capsys):
    code, out, _ = run_cli(capsys, "lemma-lines", "--ground", "1,2,3", "--g", "2")
    assert code == 0 and "all 78 cases hold" in out
    code, out, _ = run_cli(capsys, "lemma-lines", "--ground", "1,2,3,4", "--g", "2",
                           "--samples", "500", "--seed", "3")
    assert code == 0 and "500" in out
    code, out, _ = run_cli(capsys, "lemma-partition", "--ground", "1,2,3,4,5", "--g", "3")
    assert code == 0 and "hold" in out


def test_cmd_hilbert_csv_and_json(capsys):
    code, out, _ = run_cli(capsys, "hilbert", "--ground", "1,2", "--g", "2")
    assert code == 0
    assert out.splitlines() == ["degree,dimR,dimJ,dimQuotient", "4,1,1,0", "5,1,1,0"]
    code, out, _ = run_cli(capsys, "hilbert", "--ground", "1,2,3", "--g", "2",
                           "--dmin", "11", "--dmax", "11", "--json")
    assert code == 0
    assert json.loads(out)["rows"] == [{"degree": 11, "dimR": 12, "dimJ": 12, "dimQuotient": 0}]


def test_exit_codes_for_errors(capsys):
    # parse error -> 2
    code, _, err = run_cli(capsys, "nf", "--ground", "1,2,3", "x[1,1]")
    assert code == 2 and "equal indices" in err
    # precondition -> 3
    code, _, err = run_cli(capsys, "decompose", "--ground", "1,2,3", "--g", "2", "x[1,2]^3")
    assert code == 3 and "vanishing bound" in err
    # usage -> 2
    code, _, _ = run_cli(capsys, "nonsense")
    assert code == 2
    code, _, _ = run_cli(capsys, "bound", "--ground", "3,2,1", "--g", "2")
    assert code == 2
    # multi-term input where a monomial is required -> 3
    code, _, err = run_cli(capsys, "decompose", "--ground", "1,2", "--g", "2", "x[1,2]^4+x[2,1]^4")
    assert code == 3 and "single monomial" in err


def test_cmd_verify_reads_stdin(capsys, monkeypatch):
    import io

    payload = json.dumps(certificate_to_json(
        base_certificate(Monomial.make(X2, 1, {(1, 2): 4}), 2)
    ))
    monkeypatch.setattr("sys.stdin", io.StringIO(payload))
    code, out, _ = run_cli(capsys, "verify")
    assert code == 0 and out.strip() == "true"
