"""Unit tests for command routing and the exit-code contract."""

from models.cdl_models import Command
from orchestration.router import EXIT_INPUT, EXIT_OK, EXIT_VERIFY, load_word, run_command
from core.seed.catalog import named_matrix


def test_unknown_subcommand():
    """Test that an unknown subcommand is an input error."""
    code, report = run_command(Command(subcommand="plot"))
    assert code == EXIT_INPUT
    assert not report.passed


def test_mutate_a2_payload():
    """Test the A2 run summary: period τ12 and (N+, N-) = (2, 3)."""
    code, report = run_command(Command(subcommand="mutate", options={"type": "A2"}))
    assert code == EXIT_OK
    payload = report.payload
    assert payload["period"] == [2, 1]
    assert payload["weights"] == {"n_plus": 2, "n_minus": 3}
    assert payload["eps"] == [1, 1, -1, -1, -1]
    assert payload["dualities"]["steps_checked"] == 6


def test_default_word_comes_from_type():
    """Test that --type alone selects the periodic word."""
    word = load_word({"type": "G2"}, named_matrix("G2"))
    assert word.dirs == (1, 2) * 4


def test_constant_ysystem_level_two():
    """Test (A1, 2): a single y = 1 with Σ L̃ = π²/12."""
    code, report = run_command(Command(subcommand="constant-ysystem", options={"dynkin": "A1", "level": 2}))
    assert code == EXIT_OK
    assert report.payload["solution"]["constant"] == "1/2·π²/6"


def test_not_simply_laced_is_input_error():
    """Test that Y-systems refuse B-type input."""
    code, report = run_command(Command(subcommand="ysystem", options={"x": "B2", "xp": "A1"}))
    assert code == EXIT_INPUT
    assert report.errors[0].startswith("NotSimplyLaced")


def test_symbolic_ysystem_checks_group_relation():
    """Test that a symbolic Y-system run also reports the Ψ relation along its period."""
    code, report = run_command(
        Command(subcommand="ysystem", samples=3, options={"x": "A2", "xp": "A1", "symbolic": True})
    )
    assert code == EXIT_OK
    assert report.payload["group_relation"] == {"degree": 10, "passed": True}


def test_qdi_kernel_default():
    """Test that qdi without --type or --case runs the q-series kernel."""
    code, report = run_command(Command(subcommand="qdi", degree=4))
    assert code == EXIT_OK
    assert [c["name"] for c in report.payload["checks"]] == ["q-pentagon", "q-binomial"]


def test_qdi_bad_form():
    """Test that an unknown identity form is rejected."""
    code, _ = run_command(Command(subcommand="qdi", degree=4, options={"type": "A2", "form": "shuffled"}))
    assert code == EXIT_INPUT


def test_failing_tolerance_is_verification_error():
    """Test that an unreachable tolerance exits with 2."""
    code, report = run_command(
        Command(subcommand="verify-di", options={"type": "A2"}, samples=5, tolerance=1e-30)
    )
    assert code == EXIT_VERIFY
    assert report.errors[0].startswith("ToleranceExceeded")
