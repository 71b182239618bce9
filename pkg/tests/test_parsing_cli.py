import io
import json
import random
from fractions import Fraction

import pytest

from curvestrata.algebra import BinaryForm, render_form
from curvestrata.cli import run_command
from curvestrata.errors import BadScalarLiteral, FormSyntaxError, NotHomogeneous
from curvestrata.morphism import render_morphism
from curvestrata.parsing import (
    parse_field,
    parse_form,
    parse_morphism,
    parse_point,
    parse_points,
    parse_scalar,
)
from curvestrata.projective import render_point

from helpers import F2, F3, F5, QQ, rand_form, rand_morphism, rand_point


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


# parsing ------------------------------------------------------------------------


def test_parse_form_examples():
    F = parse_form("u^2 + v^2", QQ)
    assert F.degree == 2 and F.coeffs == (1, 0, 1)
    assert parse_form("3*u*v", F5).coeffs == (0, 3, 0)
    with pytest.raises(NotHomogeneous):
        parse_form("u + v^2", QQ)


def test_parse_form_details():
    assert parse_form("-u + 1/2*v", QQ).coeffs == (-1, Fraction(1, 2))
    assert parse_form("u*u*v", QQ) == BinaryForm.monomial(QQ, 2, 1)
    assert parse_form("7*u", F5).coeffs == (2, 0)
    assert parse_form("1/2*u", F5).coeffs == (3, 0)
    assert parse_form("  u ^ 2  -  u*v ", QQ).coeffs == (1, -1, 0)
    assert parse_form("u - u", QQ).is_zero


def test_syntax_errors_carry_positions():
    with pytest.raises(FormSyntaxError) as info:
        parse_form("u + * v", QQ)
    assert info.value.position == 4
    with pytest.raises(FormSyntaxError) as info:
        parse_form("u + w", QQ)
    assert info.value.position == 4
    with pytest.raises(FormSyntaxError):
        parse_form("u^", QQ)


def test_bad_scalar_literals():
    with pytest.raises(BadScalarLiteral):
        parse_form("1/5*u", F5)
    with pytest.raises(BadScalarLiteral):
        parse_scalar("1/0", QQ)
    with pytest.raises(BadScalarLiteral):
        parse_field("F4")
    assert parse_scalar("-3/6", QQ) == Fraction(-1, 2)


def test_parse_morphism_examples():
    parsed = parse_morphism("(u^2 : u*v : v^2)", QQ)
    assert parsed.morphism.degree == 2 and parsed.stripped is None
    parsed = parse_morphism("(u*v : v^2)", QQ)
    assert render_morphism(parsed.morphism) == "(u : v)"
    assert render_form(parsed.stripped) == "v"
    with pytest.raises(FormSyntaxError):
        parse_morphism("(u)", QQ)
    with pytest.raises(FormSyntaxError):
        parse_morphism("(u : v", QQ)


def test_parse_points():
    assert parse_point("(2:4:6)", QQ).coords == (1, 2, 3)
    pts = parse_points("(1:0:0),(0:1:0)", F2)
    assert [render_point(p) for p in pts] == ["(1:0:0)", "(0:1:0)"]
    with pytest.raises(FormSyntaxError):
        parse_points("1:0:0", QQ)


@pytest.mark.parametrize("field", [QQ, F2, F3, F5])
def test_round_trip(field):
    rng = random.Random(31)
    for _ in range(200):
        F = rand_form(rng, field, rng.randint(0, 5), nonzero=rng.random() < 0.9)
        assert parse_form(render_form(F), field) == F
        f = rand_morphism(rng, field, rng.randint(1, 3), rng.randint(1, 3))
        assert parse_morphism(render_morphism(f), field).morphism == f
        p = rand_point(rng, field, rng.randint(1, 4))
        assert parse_point(render_point(p), field) == p


# command line --------------------------------------------------------------------

CLASSIFY = ["classify", "--field", "Q", "--map", "(u^2:u*v:v^2)", "--points", "(1:0:0)", "--output", "json"]


def test_classify_record():
    code, out, _ = run(*CLASSIFY)
    assert code == 0
    assert out == '{"stratum": {"kind": "interior", "d": 2, "m": [1]}, "components": [["u", "v"]]}\n'


def test_census_record():
    code, out, _ = run("census", "--field", "F2", "--n", "2", "--d", "1", "--points", "(1:0:0)", "--output", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["strata"] == [{"d": 1, "m": [0], "count": 24}, {"d": 1, "m": [1], "count": 18}]
    assert all(rec["verdicts"].values())


def test_ambiguous_lift_exit_code():
    code, out, err = run("lift", "--field", "Q", "--map", "(1:0:0)", "--points", "(1:0:0)", "--output", "json")
    assert code == 1
    assert "AmbiguousLift in lift" in err
    assert json.loads(out)["error"]["kind"] == "AmbiguousLift"


def test_output_is_byte_stable():
    assert run(*CLASSIFY) == run(*CLASSIFY)
    args = ["census", "--field", "F2", "--n", "2", "--d", "1", "--points", "(1:0:0),(0:1:0)", "--output", "json"]
    assert run(*args) == run(*args)


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--field", "Q", "--map", "(u^2:u*v", "--points", "(1:0:0)"],
        ["classify", "--field", "Q", "--map", "(u:v^2)", "--points", "(1:0)"],
        ["classify", "--field", "F6", "--map", "(u:v)", "--points", "(1:0)"],
        ["classify", "--field", "Q"],
        ["census", "--field", "Q", "--n", "2", "--d", "1", "--points", "(1:0:0)"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_two(argv):
    assert run(*argv)[0] == 2


def test_domain_errors_exit_one():
    assert run("classify", "--map", "(u:v:0)", "--points", "(1:0)")[0] == 1
    assert run("classify", "--map", "(u:v:0)", "--points", "(1:0:0),(1:0:0)")[0] == 1


def test_other_commands():
    code, out, _ = run("multiplicity", "--map", "(u^3:u*v^2:v^3)", "--points", "(1:0:0)", "--output", "json")
    assert code == 0 and json.loads(out)["multiplicities"] == [2]
    code, out, _ = run("geometric-degree", "--map", "(u^4:u^2*v^2:v^4)", "--points", "(1:0:0)", "--output", "json")
    rec = json.loads(out)
    assert (rec["deg_g"], rec["deg_image"], rec["image_multiplicities"]) == (2, 2, [1])
    code, out, _ = run("dims", "--n", "2", "--d", "2", "--m", "0", "--output", "json")
    assert json.loads(out) == {"stratum": {"kind": "interior", "d": 2, "m": [0]}, "kind": "exact", "value": 8}
    code, out, _ = run("dims", "--counts", "2:24,3:216", "--output", "json")
    assert json.loads(out) == {"estimate": 5}
    code, out, _ = run("lift", "--map", "(u:v)", "--points", "(1:0:0)", "--exceptional", "1", "--output", "json")
    assert code == 0 and json.loads(out)["base"] == {"exceptional": 1}


def test_verify_and_csv():
    code, out, _ = run("verify", "--field", "F3", "--n", "1", "--d", "1-2", "--points", "(1:0)", "--output", "json")
    assert code == 0 and json.loads(out)["verified"]
    code, out, _ = run("census", "--field", "F2", "--n", "2", "--d", "1", "--points", "(1:0:0)", "--output", "csv")
    assert out == "d,m_1,count\n1,0,24\n1,1,18\n"


def test_environment_defaults(monkeypatch):
    monkeypatch.setenv("CURVESTRATA_FIELD", "F5")
    monkeypatch.setenv("CURVESTRATA_OUTPUT", "json")
    code, out, _ = run("multiplicity", "--map", "(u^2:u*v:v^2)", "--points", "(1:0:0)")
    assert code == 0 and json.loads(out)["multiplicities"] == [1]
    code, out, _ = run("multiplicity", "--field", "Q", "--output", "human", "--map", "(u:v)", "--points", "(1:0)")
    assert out.startswith("degree: 1")
