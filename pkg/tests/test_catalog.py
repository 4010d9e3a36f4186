"""
Tests for report verification and the X_k pipeline.
"""

import pytest

from vk.core.catalog import (
    complex_reference,
    obstruction_certificate,
    pipeline_xk_report,
    resolve_complex,
    verify_report,
)
from vk.core.nilpotent import RootFailure, immersion_boundary_word, kth_root_mod_gamma, obstruction_depth
from vk.core.octa import is_flag
from vk.core.pgroup import certify_not_kth_power
from vk.entities.report import Report
from vk.exceptions import InputError


@pytest.fixture
def report(delta_solver):
    """Fixture for a report holding one certificate of several kinds."""
    report = Report(command="test", seed=0)
    report.add_certificate(obstruction_certificate("delta62", delta_solver.obstruction("Z2", 0)))
    report.add_certificate(kth_root_mod_gamma("a^4 b^4", 2, 2).to_dict())
    report.add_certificate(kth_root_mod_gamma("a b", 2, 2).to_dict())
    report.add_certificate(obstruction_depth(2, 2, 2, 4).to_dict(), kind="depth")
    report.add_certificate(certify_not_kth_power(1, 1, 3).to_dict())
    report.add_certificate({"kind": "flag", "complex": "pk:3", **is_flag(resolve_complex("pk:3")).to_dict()})
    return report


def test_verify_report_passes(report):
    """Test that fresh certificates all re-verify."""
    result = verify_report(report)
    assert result.passed
    assert [c.kind for c in result.checks] == ["obstruction", "root", "failure", "depth", "baumslag", "flag"]


def test_verify_report_survives_json(report):
    """Test verification after a JSON round trip."""
    assert verify_report(Report.from_json(report.to_json())).passed


def test_verify_report_detects_tampering(report):
    """Test that a changed root and an unknown kind are flagged."""
    data = report.to_dict()
    data["certificates"][1]["root"] = "(a)^1"
    data["certificates"].append({"kind": "mystery"})
    tampered = Report.model_validate(data)
    result = verify_report(tampered)
    assert not result.passed
    failed = [c.index for c in result.checks if not c.ok]
    assert failed == [1, 6]
    assert result.to_dict()["passed"] is False


def test_verify_report_records_malformed_certificates():
    """Test that missing fields count as failures instead of raising."""
    report = Report(command="test")
    report.add_certificate({"kind": "root", "word": "a"})
    result = verify_report(report)
    assert not result.passed
    assert "malformed" in result.checks[0].detail


def test_complex_references(p3):
    """Test catalog names and inline complexes as references."""
    assert complex_reference("pk:3") == "pk:3"
    assert resolve_complex(complex_reference(p3)) == p3
    with pytest.raises(InputError):
        resolve_complex(42)


def test_pipeline_rejects_bad_arguments():
    """Test argument validation before any computation."""
    with pytest.raises(InputError):
        pipeline_xk_report(0)
    with pytest.raises(InputError):
        pipeline_xk_report(3, max_n=0)


@pytest.mark.slow
def test_pipeline_odd_k():
    """Test the full pipeline for X_3."""
    report = pipeline_xk_report(3, max_n=2)
    assert report.verdicts["obstruction"] == {"Z2": "vanishes", "Z": "vanishes"}
    assert report.verdicts["depth"] == 3
    assert report.verdicts["non_power"]["p"] == 3
    assert report.verdicts["boundary_words"] == {"1": True, "2": True}
    assert verify_report(report).passed


@pytest.mark.slow
def test_pipeline_even_k_short_circuits():
    """Test that a nonvanishing obstruction stops the pipeline."""
    report = pipeline_xk_report(2)
    assert report.verdicts["short_circuit"] is True
    assert "non_power" not in report.verdicts


def _single(certificate, kind=None):
    report = Report(command="test")
    report.add_certificate(certificate, kind=kind)
    return verify_report(report)


def test_boundary_word_certificate_is_rebuilt():
    """Test that a boundary word must match its root, k and n."""
    genuine = immersion_boundary_word(3, 2).to_dict()
    assert _single(genuine, kind="boundary_word").passed

    forged = dict(genuine, word="1", k=99, trivial=True, trivial_next_class=True)
    assert not _single(forged, kind="boundary_word").passed
    assert not _single(dict(genuine, word="1"), kind="boundary_word").passed
    assert not _single(dict(genuine, n=3), kind="boundary_word").passed
    flipped = dict(genuine, trivial_next_class=not genuine["trivial_next_class"])
    assert not _single(flipped, kind="boundary_word").passed


def test_failure_certificate_checks_class():
    """Test that a root failure is recomputed at its stated class."""
    failure = kth_root_mod_gamma("a^2 b^2", 2, 3)
    assert isinstance(failure, RootFailure)
    genuine = failure.to_dict()
    assert _single(genuine).passed
    assert not _single(dict(genuine, n=1)).passed
    assert not _single(dict(genuine, level=failure.level + 1)).passed
