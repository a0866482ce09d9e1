"""Pencil rank analysis: generic rank, minimal rank, drop directions."""

import numpy as np
import pytest

from localsolv import (
    SymmetricForm,
    is_non_dissipative,
    max_rank_element,
    nearby_basis,
    pencil_element,
    rank_at,
    rank_profile,
    span_rank,
)
from localsolv.errors import DependentPairError, ZeroElementError
from conftest import congruent_pair, rank2_hyperbolic, traceless_pair


def quartet_pair():
    a = np.zeros((4, 4))
    a[0, 3] = a[3, 0] = 0.5
    a[1, 2] = a[2, 1] = 0.5
    b = np.zeros((4, 4))
    b[0, 2] = b[2, 0] = 0.5
    b[1, 3] = b[3, 1] = -0.5
    return SymmetricForm(a), SymmetricForm(b)


def test_rank_at_identity():
    assert rank_at(SymmetricForm(np.eye(4)), SymmetricForm.zero(4), 0.0) == 4


def test_rank_at_diagonal():
    assert rank_at(SymmetricForm(np.diag([1.0, 1.0, 0.0])), SymmetricForm.zero(3), 0.0) == 2


def test_rank_at_plane_pair_everywhere_two(rng):
    # x^2 - y^2 against xy: every combination has negative determinant
    a = SymmetricForm(np.diag([1.0, -1.0]))
    b = rank2_hyperbolic(2)
    for theta in rng.uniform(0.0, 2 * np.pi, size=16):
        assert rank_at(a, b, float(theta)) == 2


def test_rank_at_zero_element():
    a = SymmetricForm(np.eye(3))
    b = SymmetricForm(-np.eye(3))
    # cos(pi/4) A + sin(pi/4) B = 0
    with pytest.raises(ZeroElementError):
        rank_at(a, b, np.pi / 4)


def test_rank_profile_quartet_full_rank_everywhere():
    a, b = quartet_pair()
    profile = rank_profile(a, b)
    assert profile.maxrank == 4
    assert profile.minrank == 4
    assert profile.drop_points == ()


def test_rank_profile_explicit_diagonal_pencil():
    a = SymmetricForm(np.diag([1.0, -1.0, 0.0, 0.0]))
    b = SymmetricForm(np.diag([0.0, 0.0, 1.0, -1.0]))
    profile = rank_profile(a, b)
    assert profile.maxrank == 4
    assert profile.minrank == 2
    drop_angles = sorted(theta for theta, _ in profile.drop_points)
    expected = [0.0, np.pi / 2, np.pi, 3 * np.pi / 2]
    assert len(drop_angles) == 4
    assert np.allclose(drop_angles, expected, atol=1e-6)
    assert all(rank == 2 for _, rank in profile.drop_points)


def test_rank_profile_isolated_interior_drop(rng):
    # Singular combination planted at a non-grid angle: the dip must still be
    # found by local refinement of the scan.
    n = 6
    t0 = 0.7123456789
    a, _ = traceless_pair(n, rng)
    kernel = rng.standard_normal(n)
    kernel /= np.linalg.norm(kernel)
    w = -(np.cos(t0) * a.matrix @ kernel) / np.sin(t0)
    s = 0.1 * (lambda m: 0.5 * (m + m.T))(rng.standard_normal((n, n)))
    proj = np.eye(n) - np.outer(kernel, kernel)
    b = (
        np.outer(kernel, w)
        + np.outer(w, kernel)
        - float(kernel @ w) * np.outer(kernel, kernel)
        + proj @ s @ proj
    )
    built = np.cos(t0) * a.matrix + np.sin(t0) * b
    assert np.linalg.norm(built @ kernel) <= 1e-10 * np.linalg.norm(built)
    profile = rank_profile(a, SymmetricForm(b))
    assert profile.minrank < profile.maxrank
    hits = [
        theta
        for theta, _ in profile.drop_points
        if min(abs(theta - t0), abs(theta - t0 - np.pi)) < 1e-5
    ]
    assert hits


def test_rank_profile_dependent_pair_rejected(rng):
    a, _ = traceless_pair(4, rng)
    with pytest.raises(DependentPairError):
        rank_profile(a, SymmetricForm(2.5 * a.matrix))


def test_rank_profile_congruence_invariance(rng):
    a = SymmetricForm(np.diag([1.0, -1.0, 0.0, 0.0, 0.0]))
    b = SymmetricForm(np.diag([0.0, 0.0, 1.0, -1.0, 0.0]))
    base = rank_profile(a, b)
    a2, b2, _ = congruent_pair(a, b, rng)
    image = rank_profile(a2, b2)
    assert image.maxrank == base.maxrank
    assert image.minrank == base.minrank


def test_rank_profile_drop_points_symmetric_under_half_turn():
    a = SymmetricForm(np.diag([1.0, -1.0, 0.0, 0.0]))
    b = SymmetricForm(np.diag([0.0, 0.0, 1.0, -1.0]))
    profile = rank_profile(a, b)
    angles = [theta for theta, _ in profile.drop_points]
    for theta in angles:
        mirrored = (theta + np.pi) % (2 * np.pi)
        assert any(abs(mirrored - other) < 1e-6 for other in angles)


def test_minrank_at_least_two_for_non_dissipative_pairs(rng):
    for _ in range(8):
        a, b = traceless_pair(6, rng)
        assert is_non_dissipative(a, b).non_dissipative
        assert rank_profile(a, b).minrank >= 2


def test_max_rank_element(rng):
    a = SymmetricForm(np.diag([1.0, -1.0, 0.0, 0.0]))
    b = SymmetricForm(np.diag([0.0, 0.0, 1.0, -1.0]))
    theta, element = max_rank_element(a, b)
    assert np.linalg.matrix_rank(element.matrix) == 4
    assert element.frobenius() == pytest.approx(1.0)
    # the element really lies on the pencil through the reported angle
    rebuilt = pencil_element(a, b, theta).normalized()
    assert np.allclose(element.matrix, rebuilt.matrix)


def test_max_rank_element_dependent_pair(rng):
    a, _ = traceless_pair(3, rng)
    with pytest.raises(DependentPairError):
        max_rank_element(a, SymmetricForm(-a.matrix))


def test_nearby_basis_distance_and_span(rng):
    a, b = quartet_pair()
    a_tilde, b_tilde = nearby_basis(a, b, 1e-3)
    assert np.linalg.norm(b_tilde.matrix - a_tilde.matrix) == pytest.approx(1e-3)
    assert np.linalg.matrix_rank(a_tilde.matrix) == 4
    assert span_rank(a_tilde, b_tilde) == 2
    assert span_rank(a, b, a_tilde, b_tilde) == 2


def test_nearby_basis_requires_independent_pair(rng):
    a, _ = traceless_pair(4, rng)
    with pytest.raises(DependentPairError):
        nearby_basis(a, SymmetricForm(0.5 * a.matrix), 1e-3)


def test_nearby_basis_rejects_nonpositive_eps(rng):
    a, b = traceless_pair(4, rng)
    with pytest.raises(ValueError):
        nearby_basis(a, b, 0.0)
