"""Non-dissipativity decisions and trace certificates.

The reference oracle is a dense scan of the smallest eigenvalue over 10^4
directions; verdicts must agree with it, and every certificate is checked
directly against the defining trace identities.
"""

import numpy as np
import pytest

from localsolv import (
    CertificateStatus,
    SymmetricForm,
    is_non_dissipative,
    min_eig_scan,
    trace_certificate,
    trace_normalize,
)
from localsolv.dissipativity import cert_tolerance, eig_slack
from localsolv.errors import InfeasiblePairError
from conftest import congruent_pair, dissipative_pair, random_symmetric, traceless_pair


def scan_oracle(a, b, grid=10_000):
    """Max over the full circle of the smallest eigenvalue of the combination."""
    best = -np.inf
    for theta in np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False):
        m = np.cos(theta) * a.matrix + np.sin(theta) * b.matrix
        best = max(best, float(np.linalg.eigvalsh(m)[0]))
    return best


def test_psd_sum_is_dissipative():
    a = SymmetricForm(np.diag([1.0, 0.0]))
    b = SymmetricForm(np.diag([0.0, 1.0]))
    verdict = is_non_dissipative(a, b)
    assert not verdict.non_dissipative
    # the found combination really is PSD and nonzero
    m = np.cos(verdict.theta) * a.matrix + np.sin(verdict.theta) * b.matrix
    assert np.linalg.eigvalsh(m)[0] >= -eig_slack(a, b)
    assert np.linalg.norm(m) > 1e-9


def test_hyperbolic_pair_is_non_dissipative():
    # every combination has negative determinant
    a = SymmetricForm(np.diag([1.0, -1.0]))
    b = SymmetricForm([[0.0, 1.0], [1.0, 0.0]])
    verdict = is_non_dissipative(a, b)
    assert verdict.non_dissipative
    assert verdict.extreme_min_eig < 0.0
    assert verdict.extreme_min_eig == pytest.approx(scan_oracle(a, b), abs=1e-6)


def test_quartet_counterexample_pair_non_dissipative():
    a = np.zeros((4, 4))
    a[0, 3] = a[3, 0] = 0.5
    a[1, 2] = a[2, 1] = 0.5
    b = np.zeros((4, 4))
    b[0, 2] = b[2, 0] = 0.5
    b[1, 3] = b[3, 1] = -0.5
    assert is_non_dissipative(SymmetricForm(a), SymmetricForm(b)).non_dissipative


def test_both_zero_rejected():
    with pytest.raises(ValueError):
        is_non_dissipative(SymmetricForm.zero(3), SymmetricForm.zero(3))


def test_dependent_span_indefinite_generator():
    a = SymmetricForm(np.diag([1.0, -1.0]))
    b = SymmetricForm.zero(2)
    assert is_non_dissipative(a, b).non_dissipative


def test_dependent_span_semidefinite_generator():
    a = SymmetricForm(np.diag([1.0, 0.0]))
    verdict = is_non_dissipative(a, SymmetricForm(-3.0 * a.matrix))
    assert not verdict.non_dissipative
    m = np.cos(verdict.theta) * a.matrix + np.sin(verdict.theta) * (-3.0 * a.matrix)
    assert np.linalg.eigvalsh(m)[0] >= -1e-12
    assert np.linalg.norm(m) > 1e-9


def test_dependent_span_negative_semidefinite_generator():
    a = SymmetricForm(np.diag([-1.0, -2.0]))
    b = SymmetricForm(2.0 * a.matrix)
    verdict = is_non_dissipative(a, b)
    assert not verdict.non_dissipative
    m = np.cos(verdict.theta) * a.matrix + np.sin(verdict.theta) * b.matrix
    assert np.linalg.eigvalsh(m)[0] >= -1e-12


def test_min_eig_scan_definite_form():
    profile = min_eig_scan(SymmetricForm(np.eye(3)), SymmetricForm.zero(3), grid_size=64)
    thetas = profile.full_thetas
    values = profile.full_min_eigs
    assert values[np.argmin(np.abs(thetas))] == pytest.approx(1.0)
    assert values[np.argmin(np.abs(thetas - np.pi))] == pytest.approx(-1.0)


def test_min_eig_scan_closed_form(rng):
    a = SymmetricForm(np.diag([1.0, -1.0]))
    profile = min_eig_scan(a, SymmetricForm.zero(2), grid_size=32)
    for theta, value in zip(profile.full_thetas, profile.full_min_eigs):
        assert value == pytest.approx(-abs(np.cos(theta)), abs=1e-12)


def test_min_eig_scan_grid_floor():
    with pytest.raises(ValueError):
        min_eig_scan(SymmetricForm(np.eye(2)), SymmetricForm.zero(2), grid_size=4)


def test_random_verdicts_match_scan_oracle(rng):
    for k in range(12):
        n = int(rng.integers(2, 7))
        a = SymmetricForm(random_symmetric(n, rng))
        b = SymmetricForm(random_symmetric(n, rng))
        verdict = is_non_dissipative(a, b)
        oracle = scan_oracle(a, b, grid=4_000)
        slack = eig_slack(a, b)
        if oracle > 1e-6:
            assert not verdict.non_dissipative
        elif oracle < -1e-6:
            assert verdict.non_dissipative
        # refined extreme must be at least as high as the dense-scan maximum
        assert verdict.extreme_min_eig >= oracle - max(1e-9, 100 * slack)


def test_traceless_pairs_are_non_dissipative(rng):
    for n in (3, 6, 9):
        a, b = traceless_pair(n, rng)
        assert is_non_dissipative(a, b).non_dissipative


def test_constructed_dissipative_pairs_detected(rng):
    for n in (3, 5, 8):
        a, b, theta = dissipative_pair(n, rng)
        verdict = is_non_dissipative(a, b)
        assert not verdict.non_dissipative
        # witness angle locates a genuinely PSD nonzero combination
        m = np.cos(verdict.theta) * a.matrix + np.sin(verdict.theta) * b.matrix
        assert np.linalg.eigvalsh(m)[0] >= -eig_slack(a, b)
        assert np.linalg.norm(m) >= 1e-9


def test_congruence_invariance(rng):
    for _ in range(5):
        a, b = traceless_pair(5, rng)
        a2, b2, _ = congruent_pair(a, b, rng)
        assert is_non_dissipative(a2, b2).non_dissipative
    for _ in range(5):
        a, b, _ = dissipative_pair(5, rng)
        a2, b2, _ = congruent_pair(a, b, rng)
        assert not is_non_dissipative(a2, b2).non_dissipative


def test_certificate_for_traceless_pair_is_scaled_identity():
    a = SymmetricForm(np.diag([1.0, -1.0]))
    b = SymmetricForm([[0.0, 1.0], [1.0, 0.0]])
    outcome = trace_certificate(a, b)
    assert outcome.found
    cert = outcome.certificate
    assert np.allclose(cert.q, cert.q[0, 0] * np.eye(2))
    assert cert.residual_a <= cert_tolerance(a, b)
    assert cert.residual_b <= cert_tolerance(a, b)
    assert cert.min_eig_q > 0.0


def test_certificate_infeasible_for_dissipative_pair():
    outcome = trace_certificate(
        SymmetricForm(np.diag([1.0, 0.0])), SymmetricForm(np.diag([0.0, 1.0]))
    )
    assert outcome.status is CertificateStatus.INFEASIBLE
    assert outcome.dissipative_theta is not None


def test_certificates_under_random_congruence(rng):
    for _ in range(6):
        a0, b0 = traceless_pair(12, rng)
        a, b, _ = congruent_pair(a0, b0, rng)
        outcome = trace_certificate(a, b)
        assert outcome.found
        cert = outcome.certificate
        q = cert.q
        tol = cert_tolerance(a, b)
        # defining identities, recomputed from scratch
        assert abs(np.trace(q @ a.matrix @ q)) <= tol
        assert abs(np.trace(q @ b.matrix @ q)) <= tol
        assert np.linalg.eigvalsh(q)[0] > 0.0
        # soundness: a certificate implies the scan agrees
        assert is_non_dissipative(a, b).non_dissipative


def test_trace_normalize_traceless_fixed_point():
    a = SymmetricForm(np.diag([1.0, -1.0]))
    b = SymmetricForm([[0.0, 1.0], [1.0, 0.0]])
    a2, b2, q = trace_normalize(a, b)
    assert np.allclose(q, q[0, 0] * np.eye(2))
    assert np.allclose(a2.matrix, q[0, 0] ** 2 * a.matrix)


def test_trace_normalize_kills_traces(rng):
    a0, b0 = traceless_pair(6, rng)
    a, b, _ = congruent_pair(a0, b0, rng)
    a2, b2, q = trace_normalize(a, b)
    tol = cert_tolerance(a, b)
    assert abs(np.trace(a2.matrix)) <= tol
    assert abs(np.trace(b2.matrix)) <= tol
    assert np.allclose(a2.matrix, q @ a.matrix @ q)


def test_trace_normalize_rejects_dissipative():
    with pytest.raises(InfeasiblePairError):
        trace_normalize(SymmetricForm(np.diag([1.0, 0.0])), SymmetricForm(np.diag([0.0, 1.0])))


def test_certificate_accepts_longer_lists(rng):
    a = SymmetricForm(np.diag([1.0, -1.0, 0.0]))
    b = SymmetricForm([[0.0, 1.0, 0], [1.0, 0.0, 0], [0, 0, 0.0]])
    c = SymmetricForm([[0.0, 0, 1.0], [0, 0, 0], [1.0, 0, 0.0]])
    outcome = trace_certificate(a, b, c)
    assert outcome.found
    q = outcome.certificate.q
    tol = 1e-8 * (a.frobenius() + b.frobenius() + c.frobenius())
    for f in (a, b, c):
        assert abs(np.trace(q @ f.matrix @ q)) <= tol
