"""Check suite, report objects, and graded-matrix identities."""
import numpy as np
import pytest

from metriq.bosonic import FockSpace
from metriq.linops import MetricSpec
from metriq.oscillator2d import (
    OscillatorParams,
    angular_momentum_diag,
    build_xy_hamiltonian,
    oscillator_metric,
)
from metriq.verify import (
    DEFAULT_SEED,
    DEFAULT_TOLERANCES,
    CheckResult,
    GradedMatrix,
    VerificationReport,
    graded_conjugation_check,
    pseudo_symmetric_symmetrize,
    run_suite,
)

E12 = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


def oscillator_fixture(cutoff=10):
    params = OscillatorParams(2.0, 1.0, 1.0, gamma=0.3, xi=0.2)
    space = FockSpace(2, cutoff)
    h = build_xy_hamiltonian(params, space)
    eta = oscillator_metric(params, space)
    u = np.diag(np.exp(-1j * params.xi * angular_momentum_diag(space)))
    return h, eta, u


def test_suite_passes_on_deformed_oscillator():
    h, eta, u = oscillator_fixture()
    report = run_suite(h, eta, u, model="oscillator2d")
    assert report.all_passed
    assert [c.name for c in report.checks] == [
        "metric_pd",
        "pseudo_hermiticity",
        "reality",
        "isospectrality",
        "eta_norm",
    ]
    assert report.model == "oscillator2d"
    assert report.seed == DEFAULT_SEED
    assert report.wall_time_s >= 0.0
    for check in report.checks:
        assert check.residual <= check.tolerance


def test_suite_passes_on_hermitian_pair():
    rng = np.random.default_rng(5)
    g = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    h = g + g.conj().T
    report = run_suite(h, np.eye(6))
    assert report.all_passed


def test_failed_checks_are_entries_not_exceptions():
    report = run_suite(E12, np.eye(2))
    by_name = {c.name: c for c in report.checks}
    assert not report.all_passed
    assert by_name["metric_pd"].passed
    ph = by_name["pseudo_hermiticity"]
    assert not ph.passed
    np.testing.assert_allclose(ph.residual, np.sqrt(2.0) / 2.0, rtol=1e-12)
    en = by_name["eta_norm"]
    assert not en.passed and en.residual == np.inf
    assert en.detail.startswith("failed")


def test_check_subset_keeps_requested_order():
    h, eta, u = oscillator_fixture(cutoff=6)
    report = run_suite(h, eta, u, checks=["reality", "metric_pd"])
    assert [c.name for c in report.checks] == ["reality", "metric_pd"]


def test_tolerance_override_is_applied():
    report = run_suite(
        E12,
        np.eye(2),
        checks=["pseudo_hermiticity"],
        tolerances={"pseudo_hermiticity": 0.8},
    )
    check = report.checks[0]
    assert check.tolerance == 0.8
    assert check.passed


def test_unknown_names_are_rejected():
    with pytest.raises(ValueError, match="unknown check"):
        run_suite(E12, np.eye(2), checks=["bogus"])
    with pytest.raises(ValueError, match="unknown tolerance"):
        run_suite(E12, np.eye(2), tolerances={"bogus": 1.0})
    with pytest.raises(ValueError, match="dimension mismatch"):
        run_suite(E12, np.eye(3))


def test_extra_checks_are_appended():
    extra = CheckResult("custom", True, 0.0, 1.0, "hand-made")
    report = run_suite(E12, np.eye(2), checks=["metric_pd"], extra_checks=[extra])
    assert report.checks[-1] is extra


def test_report_shape():
    with pytest.raises(ValueError, match="at least one check"):
        VerificationReport("m", {}, (), 0.0, 1)
    report = run_suite(E12, np.eye(2), checks=["metric_pd"], parameters={"a": 1})
    d = report.to_dict()
    assert set(d) == {
        "model",
        "parameters",
        "checks",
        "wall_time_s",
        "seed",
        "version",
    }
    assert d["parameters"] == {"a": 1}
    assert d["checks"][0]["name"] == "metric_pd"
    assert isinstance(d["checks"][0]["passed"], bool)


def test_default_tolerances_are_frozen():
    assert DEFAULT_TOLERANCES == {
        "metric_pd": 1e-12,
        "pseudo_hermiticity": 1e-12,
        "reality": 1e-9,
        "isospectrality": 1e-10,
        "eta_norm": 1e-10,
    }


# ---------------------------------------------------------------------------
# Graded matrices


def test_graded_matrix_trivial_grades():
    core = np.array([[1.0, 2.0], [2.0, -1.0]])
    m = GradedMatrix(core, [0.0, 0.0])
    np.testing.assert_allclose(m.realized, core, atol=0.0)
    np.testing.assert_allclose(m.metric_weights, [1.0, 1.0], atol=0.0)


def test_graded_matrix_two_by_two():
    m = GradedMatrix([[0.0, 1.0], [1.0, 0.0]], [0.5, 0.0])
    np.testing.assert_allclose(
        m.realized,
        [[0.0, np.exp(0.5)], [np.exp(-0.5), 0.0]],
        rtol=1e-15,
    )
    sym = pseudo_symmetric_symmetrize(m)
    np.testing.assert_allclose(sym, m.core, rtol=1e-14)
    lam = np.sort(np.linalg.eigvals(m.realized).real)
    np.testing.assert_allclose(lam, [-1.0, 1.0], atol=1e-12)


def test_graded_matrix_spectrum_matches_core():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(6, 6))
    core = 0.5 * (a + a.T)
    m = GradedMatrix(core, rng.normal(size=6))
    lam = np.linalg.eigvals(m.realized)
    assert np.max(np.abs(lam.imag)) < 1e-10
    np.testing.assert_allclose(
        np.sort(lam.real), np.linalg.eigvalsh(core), atol=1e-10
    )
    np.testing.assert_allclose(
        pseudo_symmetric_symmetrize(m), core, atol=1e-13
    )


def test_graded_matrix_validation():
    with pytest.raises(ValueError, match="square"):
        GradedMatrix(np.zeros((2, 3)), [0.0, 0.0])
    with pytest.raises(ValueError, match="length 2"):
        GradedMatrix(np.zeros((2, 2)), [0.0, 0.0, 0.0])
    with pytest.raises(ValueError, match=r"symmetric: entry \[0\]\[1\]"):
        GradedMatrix([[0.0, 1.0], [0.5, 0.0]], [0.0, 0.0])


def test_conjugation_check_zero_gamma():
    rng = np.random.default_rng(8)
    x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert graded_conjugation_check(x, [3, 1, 0, 2], 0.0) == 0.0


def test_conjugation_check_single_entry_scaling():
    # one matrix element, grading step 1: conjugation scales it by e^gamma
    x = E12
    grading = np.diag([1, 0])
    assert graded_conjugation_check(x, grading, 0.4) < 1e-15
    rho_inv = np.diag(np.exp(0.4 * np.array([1.0, 0.0])))
    rho = np.diag(np.exp(-0.4 * np.array([1.0, 0.0])))
    scaled = (rho_inv @ x @ rho)[0, 1]
    assert scaled == pytest.approx(np.exp(0.4))


def test_conjugation_check_cycles():
    rng = np.random.default_rng(9)
    x = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    res = graded_conjugation_check(
        x, [2, -1, 0, 3, 1], 0.35, cycles=[(0, 2, 4), (1, 3)]
    )
    assert res < 1e-12


def test_conjugation_check_rejections():
    with pytest.raises(ValueError, match="must be diagonal"):
        graded_conjugation_check(E12, [[1, 1], [0, 0]], 0.1)
    with pytest.raises(ValueError, match="must be integers"):
        graded_conjugation_check(E12, [0.5, 0.0], 0.1)
    with pytest.raises(ValueError, match="length 2"):
        graded_conjugation_check(E12, [1, 0, 2], 0.1)
    with pytest.raises(ValueError, match="at least two"):
        graded_conjugation_check(E12, [1, 0], 0.1, cycles=[(0,)])
