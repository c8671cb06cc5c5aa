import io
import json
import subprocess
import sys

import pytest

from qpoisson.cli import evaluate, main, parse
from qpoisson.errors import FlavorError, ParseError
from qpoisson.scalars import QScalar


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


# -- expression parser --------------------------------------------------------------------

def test_parse_product_node():
    root = parse("E(1)*F(1)").root
    assert root.kind == "mul"
    assert [a.value for a in root.args] == ["E", "F"]


def test_parse_braid_expression(a2, u2):
    text = "T(1, E(2)) - q^-1 * E(2)*E(1)"
    assert parse(text).root.kind == "sub"
    e21 = (u2.E(2) * u2.E(1)).scale(QScalar.qpow(-1))
    assert evaluate(text, a2) == u2.E(1) * u2.E(2) - e21 - e21


@pytest.mark.parametrize("text,column", [("E(1", 4), ("E(1)*", 6), ("E(1) F(1)", 6)])
def test_parse_errors_carry_positions(text, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == 1
    assert info.value.column == column


def test_mixed_flavors_rejected(a2):
    with pytest.raises((FlavorError, ParseError)) as info:
        evaluate("K((1,0))*Z((0,1))", a2)
    assert "mixes" in str(info.value)


def test_evaluate_round_trips_printing(a2, u2):
    x = evaluate("E(1)*F(2)*K((1,-1)) + (q^2-1)/(q+1) * dp(E(2), 2)", a2)
    assert evaluate(str(x), a2) == x


def test_evaluate_v_generators(a2, v2):
    assert evaluate("X(1)*Y(2)", a2) == v2.Y(2) * v2.X(1)
    assert evaluate("Z((1,1))", a2) == v2.Z((1, 1))


# -- commands ---------------------------------------------------------------------------

def test_normal_form():
    code, text = run("normal-form", "--type", "A1", "E(1)*F(1)")
    assert code == 0
    assert text.strip() == "((-q)/(q^2 - 1))*K((-1)) + ((q)/(q^2 - 1))*K((1)) + F(1)*E(1)"


def test_normal_form_json():
    code, text = run("normal-form", "--json", "E(1)*F(1)")
    data = json.loads(text)
    assert code == 0 and len(data["terms"]) == 3


def test_poisson_command():
    code, text = run("poisson", "--at", "1", "--type", "A1", "A(1)", "B(1)")
    assert code == 0
    assert text.strip() == "-K((-1)) + K((1))"
    code, text = run("poisson", "--at", "zeta:3", "--via-txi", "A(1)", "B(1)")
    assert code == 0 and text.strip() == "-K((-3)) + K((3))"


def test_poisson_at_zeta_needs_txi():
    code, _ = run("poisson", "--at", "zeta:3", "A(1)", "B(1)")
    assert code == 2


def test_pair_command():
    code, text = run("pair", "tau", "E(1)", "F(1)")
    assert (code, text.strip()) == (0, "(-q)/(q^2 - 1)")
    code, text = run("pair", "--json", "sigma", "K(1)", "Z(1)")
    assert json.loads(text) == {"pairing": "sigma", "value": "q^2"}


def test_coproduct_and_antipode(u1):
    code, text = run("coproduct", "E(1)")
    assert code == 0 and text.strip() == str(u1.coproduct(u1.E(1)))
    code, text = run("antipode", "E(1)")
    assert code == 0 and text.strip() == str(u1.antipode(u1.E(1)))


def test_frobenius_commands():
    assert run("frobenius", "xiL", "dp(F(1),3)*dp(E(1),6)") == (0, "F(1)*dp(E(1), 2)\n")
    assert run("frobenius", "xi", "--l", "3", "dp(Y(1),3)") == (0, "y1\n")
    code, text = run("frobenius", "txi", "A(1)")
    assert code == 0 and text.strip() == "A(1)^3"


def test_specialize_membership_exit_code():
    code, _ = run("specialize", "--form", "DCP", "E(1)")
    assert code == 1
    code, text = run("specialize", "--form", "L", "dp(E(1),2)")
    assert code == 0


def test_pbw_coordinates_command():
    code, text = run("pbw-coords", "--type", "A2", "E(1)*E(2)")
    assert code == 0 and text.strip()


def test_verify_command():
    code, text = run("verify", "pbw", "--type", "A2", "--height", "4")
    assert code == 0
    assert "== pbw: PASS" in text
    code, text = run("verify", "qbinomial", "--json")
    assert code == 0 and json.loads(text)["status"] == "pass"


def test_config_file(tmp_path):
    cfg = tmp_path / "q.conf"
    cfg.write_text("# defaults\ntype = A2\nl = 3\n")
    code, text = run("normal-form", "--config", str(cfg), "E(2)*E(1)")
    assert code == 0 and "E(2)" in text
    code, _ = run("normal-form", "--config", str(cfg), "--type", "A1", "E(2)")
    assert code == 2


def test_bad_config_key(tmp_path):
    cfg = tmp_path / "bad.conf"
    cfg.write_text("colour = blue\n")
    code, _ = run("normal-form", "--config", str(cfg), "E(1)")
    assert code == 2


def test_usage_errors(capsys):
    code, _ = run("normal-form", "E(1")
    assert code == 2
    assert "column 4" in capsys.readouterr().err
    code, _ = run("no-such-command")
    assert code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qpoisson", "pair", "tau", "E(1)", "F(1)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "(-q)/(q^2 - 1)"
