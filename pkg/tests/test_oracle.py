import pytest

from icogrover import framework1, framework2, grover, oracle
from icogrover.errors import CapacityError
from icogrover.framework1 import p_framework1
from icogrover.framework2 import p_framework2_exact
from icogrover.grover import GroverConfig, noisy_success_probability

QUICK = oracle.PRESETS["quick"]


def _poison(*_args, **_kwargs):
    raise AssertionError("reference path touched a closed form")


def test_simulations_do_not_use_closed_forms(monkeypatch):
    cfg = GroverConfig(2, 3)
    expected = {
        "noisy": noisy_success_probability(2, 0.4, 4),
        "f1": p_framework1(2, 0.4, 4),
        "f2": p_framework2_exact(2, 0.4, 4),
    }
    for mod, name in [
        (grover, "noisy_success_probability"),
        (grover, "noisy_state"),
        (framework1, "f_xi"),
        (framework1, "p_framework1"),
        (framework1, "mixing_weight"),
        (framework2, "p_framework2_exact"),
        (framework2, "p_framework2_closed"),
        (framework2, "fr_coefficients"),
    ]:
        monkeypatch.setattr(mod, name, _poison)
    p = oracle.simulate_noisy_grover(2, 0.4, cfg)[3, 3].real
    assert abs(p - expected["noisy"]) < 1e-12
    for fw in ("f1", "f2"):
        assert abs(oracle.simulate_framework(fw, 2, 0.4, 0.5, cfg) - expected[fw]) < 1e-10


def test_quick_preset_passes():
    reports = oracle.verify_all(QUICK)
    assert reports and oracle.suite_passed(reports)
    assert [r.case_id for r in reports] == sorted(r.case_id for r in reports)


def test_full_preset_passes_with_claims_reported():
    reports = oracle.verify_all(oracle.PRESETS["full"])
    assert oracle.suite_passed(reports)
    deviating = [r for r in reports if not r.passed]
    assert deviating
    assert all(r.kind == "claim" and "/d=16/" in r.case_id for r in deviating)


def test_perturbation_is_detected():
    reports = oracle.verify_all(QUICK, perturb=1e-3)
    assert not oracle.suite_passed(reports)
    failed = [r for r in reports if r.blocking]
    assert any("probability" in r.case_id for r in failed)


def test_empty_grid_gives_no_reports():
    assert oracle.verify_all(oracle.VerificationGrid(ds=())) == []


def test_reports_are_reproducible():
    a = oracle.verify_all(QUICK)
    b = oracle.verify_all(QUICK)
    assert [(r.case_id, r.max_abs_error) for r in a] == [(r.case_id, r.max_abs_error) for r in b]
    assert all(r.seed == QUICK.seed for r in a)


def test_report_status_lines():
    ok = oracle.VerificationReport("x", 0.0, 1e-12, "a", "b")
    bad = oracle.VerificationReport("y", 1.0, 1e-12, "a", "b")
    claim = oracle.VerificationReport("z", 1.0, 1e-8, "a", "b", kind="claim")
    assert ok.line().startswith("PASS") and not ok.blocking
    assert bad.line().startswith("FAIL") and bad.blocking
    assert claim.line().startswith("DEVIATES") and not claim.blocking


def test_capacity_limits():
    with pytest.raises(CapacityError):
        oracle.simulate_noisy_grover(7, 0.5, GroverConfig(1))
    with pytest.raises(CapacityError):
        oracle.simulate_framework("f1", 1, 0.5, 0.5, GroverConfig(5))
    with pytest.raises(CapacityError):
        oracle.simulate_framework("f1", 1, 0.5, 0.5, GroverConfig(4), explicit=True)
    with pytest.raises(ValueError):
        oracle.simulate_framework("f3", 1, 0.5, 0.5, GroverConfig(1))
