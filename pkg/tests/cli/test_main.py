"""Unit tests for the command-line front end."""

import json

import pytest

from cli.main import build_parser, main, to_command


def _json(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


def test_verify_di_a2(capsys):
    """Test that the A2 pentagon period passes with constant 3·π²/6."""
    code = main(["verify-di", "--type", "A2", "--samples", "20"])
    report = _json(capsys)
    assert code == 0
    assert report["schema"] == "cdl/1"
    assert report["passed"] is True
    assert report["payload"]["di"]["constant"] == "3·π²/6"
    assert report["payload"]["period"] == [2, 1]


def test_reports_are_deterministic(capsys):
    """Test that the same command and seed print the same bytes."""
    argv = ["verify-di", "--type", "B2", "--samples", "10", "--rng-seed", "7"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_csd_b2_walls(capsys):
    """Test that csd --delta 1,2 lists the two outgoing B2 walls."""
    code = main(["csd", "--delta", "1,2", "--degree", "12"])
    walls = _json(capsys)["payload"]["diagram"]["walls"]
    assert code == 0
    outgoing = {tuple(w["normal"]): w["element"] for w in walls}
    assert outgoing[(1, 1)] == "[1,1]^2"
    assert outgoing[(1, 2)] == "[1,2]"
    assert len(walls) == 4


def test_bad_matrix_is_input_error(tmp_path, capsys):
    """Test that a non-skew-symmetrizable matrix exits with 1."""
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"b": [[0, 1], [1, 0]]}))
    code = main(["mutate", "--matrix", str(path), "--word", "1,2"])
    report = _json(capsys)
    assert code == 1
    assert report["errors"][0].startswith("NotSkewSymmetrizable")


def test_matrix_file_needs_word(tmp_path, capsys):
    """Test that --matrix without --word is refused."""
    path = tmp_path / "a2.json"
    path.write_text(json.dumps([[0, -1], [1, 0]]))
    assert main(["mutate", "--matrix", str(path)]) == 1
    capsys.readouterr()
    assert main(["mutate", "--matrix", str(path), "--word", "1,2,1,2,1"]) == 0
    assert _json(capsys)["payload"]["period"] == [2, 1]


def test_non_period_is_verification_failure(capsys):
    """Test that verify-di on a word that is not a period exits with 2."""
    code = main(["verify-di", "--type", "A2", "--word", "1,2"])
    report = _json(capsys)
    assert code == 2
    assert report["errors"][0].startswith("PeriodMismatch")


@pytest.mark.parametrize("argv", [["csd"], ["mutate", "--word", "1,x"], ["nonsense"]])
def test_usage_errors(argv, capsys):
    """Test that unparsable flags exit with 1 and still print a report."""
    assert main(argv) == 1
    assert _json(capsys)["passed"] is False


def test_text_format_and_out(tmp_path, capsys):
    """Test YAML text output and writing the report to a file."""
    assert main(["coxeter", "--dynkin", "A2", "--format", "text"]) == 0
    text = capsys.readouterr().out
    assert "schema: cdl/1" in text
    assert "longest_element: true" in text
    out = tmp_path / "reports" / "q.json"
    assert main(["qdi", "--case", "a1affine", "--degree", "4", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["passed"] is True


def test_to_command():
    """Test that common flags land on the Command and the rest in options."""
    args = build_parser().parse_args(["csd", "--delta", "2,2", "--degree", "7", "--loop"])
    command = to_command(args)
    assert command.subcommand == "csd"
    assert command.degree == 7
    assert command.options == {"delta": [2, 2], "loop": True, "gfan": False}
    assert command.rng_seed == 0
