import json

import pytest

from twoproduct.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bracket_matrix(capsys):
    code, out, _ = run(capsys, "bracket", "[[0,1],[1,0]]", "[[0,-J],[J,0]]", "--product", "alpha")
    assert code == 0
    assert out.strip() == "alpha  = [[-2, 0], [0, 2]]"


def test_bracket_polynomial_json(capsys):
    code, out, _ = run(capsys, "bracket", "q^2", "p^2", "--json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1
    assert data["results"]["sigma"] == "q^2*p^2 - 1/2*hbar^2"
    assert data["results"]["alpha"] == "4*q*p"


def test_star_commutator(capsys):
    code, out, _ = run(capsys, "star", "q", "p")
    assert code == 0
    assert "f*g - g*f = J*hbar" in out


def test_compose_kronecker_check(capsys):
    code, out, _ = run(capsys, "compose", "[[0,1],[1,0]]", "[[1,0],[0,-1]]",
                       "[[0,-J],[J,0]]", "[[0,1],[1,0]]", "--class", "hyperbolic", "--hbar", "2")
    assert code == 0
    assert "kronecker check: agrees" in out


def test_audit_pass_and_fail_codes(capsys):
    code, out, _ = run(capsys, "audit", "--rep", "phase", "--class", "parabolic", "--samples", "5")
    assert code == 0 and out.strip().endswith("PASS")
    code, out, _ = run(capsys, "audit", "--rep", "matrix", "--samples", "2", "--seed", "42",
                       "--composite", "--b11", "1", "--json")
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_audit_json_is_reproducible(capsys):
    args = ("audit", "--rep", "matrix", "--samples", "4", "--seed", "3", "--json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_solve_coproduct_family(capsys):
    code, out, _ = run(capsys, "solve-coproduct", "--seed", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["solved"]
    assert data["family"]["fixed"] == {"a11": "0", "a12": "1", "a21": "1", "a22": "0",
                                       "b12": "0", "b21": "0", "b22": "1"}
    assert data["family"]["free"] == ["b11"]
    assert data["transcript"][0]["axiom"].startswith("unit")


def test_solve_coproduct_single_product(capsys):
    code, out, _ = run(capsys, "solve-coproduct", "--single-product", "--seed", "1")
    assert code == 0
    assert "infeasible" in out


def test_solve_coproduct_injected_a11(capsys):
    code, out, _ = run(capsys, "solve-coproduct", "--inject", "a11=1", "--json")
    data = json.loads(out)
    assert code == 1 and not data["solved"]
    assert data["leibniz_witness"]["defect"] != "0"


def test_chsh(capsys):
    code, out, _ = run(capsys, "chsh", "--json")
    data = json.loads(out)
    assert code == 0
    assert abs(data["quantum"]["value"] - 2 * 2**0.5) < 1e-9
    assert data["classical"]["value"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("bracket", "q^", "p"),
        ("audit", "--class", "parabolic", "--rep", "matrix"),
        ("audit", "--samples", "0"),
        ("audit", "--b11", "1"),
        ("bracket", "q", "[[1,0],[0,1]]"),
        ("star", "[[1,0],[0,1]]", "[[1,0],[0,1]]"),
        ("bracket", "q", "p", "--hbar", "-1"),
        ("nonsense",),
        (),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_help_labels_chsh_as_extension(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "extension" in out
