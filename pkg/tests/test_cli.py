"""
Tests for the vk command-line interface.
"""

import json

import pytest

from vk.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, create_parser, main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def _run_json(capsys, *argv):
    code, out = _run(capsys, *argv)
    assert code == EXIT_OK
    return json.loads(out)


def test_parser_commands():
    """Test that every subcommand is registered."""
    parser = create_parser()
    args = parser.parse_args(["root", "a^2", "--k", "2", "--n", "1"])
    assert args.command == "root"
    assert args.k == 2
    args = parser.parse_args(["pipeline-xk", "--k", "3"])
    assert args.max_n == 3


def test_missing_command(capsys):
    """Test that no subcommand prints help and fails."""
    code, _ = _run(capsys)
    assert code == EXIT_INPUT


def test_build(capsys):
    """Test the build report of P_3."""
    report = _run_json(capsys, "build", "pk:3")
    assert report["command"] == "build"
    assert report["verdicts"]["homology"] == {"H0": "Z", "H1": "Z/3", "H2": "0"}
    assert report["verdicts"]["flag"] is False
    assert "timing" not in report


def test_build_with_subdivision_and_timing(capsys):
    """Test subdivision rounds and the optional timing field."""
    report = _run_json(capsys, "build", "pk:2", "--subdivide", "1", "--timing")
    assert report["verdicts"]["flag"] is True
    assert report["timing"]["seconds"] >= 0


def test_input_errors(capsys):
    """Test exit code 2 for unknown complexes and bad words."""
    assert _run(capsys, "build", "torus")[0] == EXIT_INPUT
    assert _run(capsys, "word", "a^")[0] == EXIT_INPUT
    assert _run(capsys, "word")[0] == EXIT_INPUT
    assert _run(capsys, "cg", "--twisted", "2")[0] == EXIT_INPUT
    assert _run(capsys, "verify", "/nonexistent/report.json")[0] == EXIT_INPUT


def test_budget_exit_code(capsys, tmp_path):
    """Test exit code 3 when the p-group is over budget."""
    config = tmp_path / "vk.json"
    config.write_text(json.dumps({"pgroup": {"max_order": 100}}))
    code, _ = _run(capsys, "--config", str(config), "baumslag", "--r", "3", "--s", "3", "--k", "3")
    assert code == EXIT_BUDGET


def test_word(capsys):
    """Test word reduction and depth."""
    report = _run_json(capsys, "word", "[a,b] b a B A", "--power", "2")
    assert report["verdicts"]["reduced"] == "1"
    report = _run_json(capsys, "word", "[[a,b],a]")
    assert report["verdicts"]["lcs_depth"] == 3
    report = _run_json(capsys, "word", "--identity", "remark2")
    assert report["verdicts"]["reduced"] == "1"


def test_human_output(capsys):
    """Test the readable summary."""
    code, out = _run(capsys, "word", "a b", "--human")
    assert code == EXIT_OK
    assert out.startswith("vk word")


def test_obstruction_and_verify(capsys, tmp_path):
    """Test that a stored obstruction report re-verifies."""
    path = tmp_path / "delta.json"
    report = _run_json(capsys, "obstruction", "delta62", "--ring", "Z2", "--output", str(path))
    assert report["verdicts"]["Z2"] == "nonvanishing"
    assert report["verdicts"]["pair_count"] == 70
    checked = _run_json(capsys, "verify", str(path))
    assert checked["verdicts"]["passed"] is True


def test_verify_reports_tampering(capsys, tmp_path):
    """Test that a changed root fails verification with exit code 0."""
    path = tmp_path / "root.json"
    _run_json(capsys, "root", "a^2 b^2", "--k", "2", "--n", "1", "-o", str(path))
    data = json.loads(path.read_text())
    data["certificates"][0]["root"] = "a"
    path.write_text(json.dumps(data))
    checked = _run_json(capsys, "verify", str(path))
    assert checked["verdicts"]["passed"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ("baumslag", "--r", "1", "--s", "1", "--k", "3", "--depth"),
        ("prop42", "--p", "3", "--n", "2", "--boundary"),
        ("root", "a b", "--k", "2", "--n", "2"),
        ("octa", "--op", "k44", "--cycle", "4"),
        ("octa", "pk:3", "--op", "flag"),
        ("cg", "--twisted", "1"),
    ],
)
def test_reports_verify(capsys, tmp_path, argv):
    """Test that every certifying command writes a report that re-verifies."""
    path = tmp_path / "report.json"
    _run_json(capsys, *argv, "-o", str(path))
    checked = _run_json(capsys, "verify", str(path))
    assert checked["verdicts"]["passed"] is True
    assert checked["verdicts"]["checks"]


def test_octa_outputs(capsys):
    """Test octahedralization counts and the K_{4,4} verdict."""
    report = _run_json(capsys, "octa", "pk:3", "--op", "build")
    base = report["verdicts"]["base_f_vector"]
    assert report["verdicts"]["f_vector"] == [2 * base[0], 4 * base[1], 8 * base[2]]
    report = _run_json(capsys, "octa", "--op", "k44", "--cycle", "6")
    assert report["verdicts"]["minor"] is True


def test_same_seed_is_reproducible(capsys):
    """Test that reruns with the same seed are byte-identical."""
    first = _run(capsys, "obstruction", "bowtie", "--seed", "5")
    second = _run(capsys, "obstruction", "bowtie", "--seed", "5")
    assert first[0] == EXIT_OK
    assert first == second
    assert json.loads(first[1])["verdicts"]["Z"] == "vanishes"


def test_obstruction_map_check(capsys, monkeypatch):
    """Test the optional map-independence verdict."""
    monkeypatch.setenv("VK_VANKAMPEN__SEEDS", "2")
    report = _run_json(capsys, "obstruction", "bowtie", "--ring", "Z", "--check-maps")
    assert report["verdicts"]["map_independence"] == {"maps": 2, "checked": 3, "failures": 0}
