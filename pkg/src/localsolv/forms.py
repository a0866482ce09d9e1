"""Quadratic forms on a symplectic vector space.

A real quadratic form is stored through its symmetric matrix, Q(z) = z.M.z.
A symplectic structure is stored through a non-degenerate skew matrix J whose
canonical value is [[0, I], [-I, 0]]; the bilinear pairing is fixed once and
for all as

    omega(u, v) = -u.J.v,

the sign chosen so that for the canonical J the Poisson bracket computed from
Hamilton maps agrees with the coordinate formula

    {a, b}(x, xi) = sum_j (da/dxi_j db/dx_j - da/dx_j db/dxi_j)

with the position block listed first.  Under this convention the bracket of
two forms is C = 2(B.J.A - A.J.B) for the canonical J, and
C = 2(A.Jinv.B - B.Jinv.A) in general.  The opposite block ordering flips the
global sign of every bracket; all rank, independence and vanishing questions
answered by this library are invariant under that flip.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numeric import (
    frob,
    numerical_rank,
    nullspace,
    orthonormal_columns,
    rank_tolerance,
    sym_part,
    skew_part,
)

__all__ = [
    "SymmetricForm",
    "SymplecticStructure",
    "HamiltonMap",
    "Subspace",
    "SymplecticityCertificate",
    "hamilton_map",
    "poisson_bracket",
    "bracket_via_hamilton",
    "joint_radical",
    "is_symplectic_subspace",
    "congruence",
    "span_rank",
]


@dataclass(frozen=True)
class SymmetricForm:
    """Real quadratic form z -> z.M.z; M is symmetrized on construction."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        m = sym_part(m)
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, z) -> float:
        z = np.asarray(z, dtype=float)
        return float(z @ self.matrix @ z)

    def gradient(self, z) -> np.ndarray:
        return 2.0 * (self.matrix @ np.asarray(z, dtype=float))

    def frobenius(self) -> float:
        return frob(self.matrix)

    def normalized(self) -> "SymmetricForm":
        """Unit-Frobenius rescaling; the zero form is returned unchanged."""
        norm = self.frobenius()
        if norm == 0.0:
            return self
        return SymmetricForm(self.matrix / norm)

    def rank(self) -> int:
        return numerical_rank(self.matrix)

    @staticmethod
    def zero(n: int) -> "SymmetricForm":
        return SymmetricForm(np.zeros((n, n)))

    @staticmethod
    def from_diagonal(entries) -> "SymmetricForm":
        return SymmetricForm(np.diag(np.asarray(entries, dtype=float)))


@dataclass(frozen=True)
class SymplecticStructure:
    """Non-degenerate skew pairing on an even-dimensional real space."""

    J: np.ndarray

    def __post_init__(self):
        j = np.array(self.J, dtype=float)
        if j.ndim != 2 or j.shape[0] != j.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {j.shape}")
        if j.shape[0] % 2 != 0:
            raise ValueError(f"skew pairing needs even dimension, got {j.shape[0]}")
        asymmetry = frob(sym_part(j))
        if asymmetry > 1e-9 * max(frob(j), 1.0):
            raise ValueError("pairing matrix is not skew-symmetric")
        j = skew_part(j)
        s = np.linalg.svd(j, compute_uv=False)
        if j.shape[0] > 0 and s[-1] <= rank_tolerance(s, j.shape):
            raise ValueError("pairing matrix is degenerate")
        j.flags.writeable = False
        object.__setattr__(self, "J", j)

    @property
    def two_d(self) -> int:
        return self.J.shape[0]

    @staticmethod
    def canonical(two_d: int) -> "SymplecticStructure":
        """Standard pairing [[0, I], [-I, 0]] on R^(2d)."""
        if two_d <= 0 or two_d % 2 != 0:
            raise ValueError(f"dimension must be a positive even integer, got {two_d}")
        d = two_d // 2
        eye = np.eye(d)
        j = np.block([[np.zeros((d, d)), eye], [-eye, np.zeros((d, d))]])
        return SymplecticStructure(j)

    @staticmethod
    def from_bracket_matrix(commutators: np.ndarray) -> "SymplecticStructure":
        """Structure induced by a non-degenerate skew matrix of pairwise brackets.

        The canonical matrix is a fixed point of this map, so pullback
        identities relating a base space and a quotient hold with the same
        sign convention on both sides.
        """
        k = np.asarray(commutators, dtype=float)
        if k.ndim != 2 or k.shape[0] != k.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {k.shape}")
        if frob(sym_part(k)) > 1e-9 * max(frob(k), 1.0):
            raise ValueError("bracket matrix is not skew-symmetric")
        s = np.linalg.svd(k, compute_uv=False)
        if k.shape[0] == 0 or s[-1] <= rank_tolerance(s, k.shape):
            raise ValueError("bracket matrix is degenerate")
        return SymplecticStructure(-np.linalg.inv(skew_part(k)))

    def omega(self, u, v) -> float:
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return float(-(u @ self.J @ v))

    def pairing_solve(self, rhs: np.ndarray) -> np.ndarray:
        """Solve omega-matrix @ X = rhs, i.e. X = -Jinv @ rhs."""
        return -np.linalg.solve(self.J, rhs)


@dataclass(frozen=True)
class HamiltonMap:
    """Endomorphism S with omega(u, S v) = u.M.v for the parent form."""

    matrix: np.ndarray
    parent_form: SymmetricForm
    structure: SymplecticStructure

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class Subspace:
    """Linear subspace given by orthonormal basis columns (possibly none)."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.array(self.basis, dtype=float)
        if b.ndim == 1:
            b = b.reshape(-1, 1)
        if b.size == 0:
            b = np.zeros((self.ambient_dim, 0))
        if b.shape[0] != self.ambient_dim:
            raise ValueError(
                f"basis rows ({b.shape[0]}) do not match ambient dimension ({self.ambient_dim})"
            )
        if b.shape[1] > 0:
            gram = b.T @ b
            if np.max(np.abs(gram - np.eye(b.shape[1]))) > 1e-12:
                raise ValueError("basis columns are not orthonormal")
        b.flags.writeable = False
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @staticmethod
    def empty(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, np.zeros((ambient_dim, 0)))

    @staticmethod
    def from_spanning(ambient_dim: int, vectors: np.ndarray) -> "Subspace":
        """Orthonormalize arbitrary spanning columns (rank-revealing)."""
        vectors = np.asarray(vectors, dtype=float)
        if vectors.ndim == 1:
            vectors = vectors.reshape(-1, 1)
        if vectors.size == 0:
            return Subspace.empty(ambient_dim)
        return Subspace(ambient_dim, orthonormal_columns(vectors))


@dataclass(frozen=True)
class SymplecticityCertificate:
    """Outcome of the restricted-pairing non-degeneracy test."""

    symplectic: bool
    gram_min_singular: float
    subspace_dim: int


def _check_form_dims(*forms: SymmetricForm):
    dims = {f.dim for f in forms}
    if len(dims) > 1:
        raise ValueError(f"forms have mismatched dimensions {sorted(dims)}")


def hamilton_map(form: SymmetricForm, structure: SymplecticStructure) -> HamiltonMap:
    """Map S solving omega(u, S v) = u.M.v; equals J.M for the canonical J."""
    if form.dim != structure.two_d:
        raise ValueError(
            f"form dimension {form.dim} does not match pairing dimension {structure.two_d}"
        )
    s = structure.pairing_solve(form.matrix)
    return HamiltonMap(s, form, structure)


def poisson_bracket(
    a: SymmetricForm, b: SymmetricForm, structure: SymplecticStructure
) -> SymmetricForm:
    """Poisson bracket of two quadratic forms, as a quadratic form.

    Closed form 2(A.Jinv.B - B.Jinv.A), which for the canonical J reduces to
    2(B.J.A - A.J.B); see the module docstring for the sign convention.
    """
    _check_form_dims(a, b)
    if a.dim != structure.two_d:
        raise ValueError(
            f"form dimension {a.dim} does not match pairing dimension {structure.two_d}"
        )
    jinv_b = np.linalg.solve(structure.J, b.matrix)
    jinv_a = np.linalg.solve(structure.J, a.matrix)
    return SymmetricForm(2.0 * (a.matrix @ jinv_b - b.matrix @ jinv_a))


def bracket_via_hamilton(
    a: SymmetricForm, b: SymmetricForm, structure: SymplecticStructure
) -> SymmetricForm:
    """Same bracket through Hamilton maps: the form of -2 [S_a, S_b].

    Independent computational route kept alongside `poisson_bracket`; the two
    must agree entrywise and are cross-checked in the test suite.
    """
    _check_form_dims(a, b)
    s1 = hamilton_map(a, structure).matrix
    s2 = hamilton_map(b, structure).matrix
    commutator = s1 @ s2 - s2 @ s1
    # Form matrix of a Hamilton map S is omega-matrix @ S = -J S.
    c = -structure.J @ (-2.0 * commutator)
    return SymmetricForm(c)


def joint_radical(a: SymmetricForm, b: SymmetricForm) -> Subspace:
    """Orthonormal basis of ker A intersected with ker B."""
    _check_form_dims(a, b)
    stacked = np.vstack([a.matrix, b.matrix])
    return Subspace(a.dim, nullspace(stacked))


def is_symplectic_subspace(
    subspace: Subspace, structure: SymplecticStructure
) -> SymplecticityCertificate:
    """True iff the pairing restricted to the subspace is non-degenerate.

    The empty subspace counts as symplectic (trivial-radical branch); the
    certificate carries the smallest singular value of the restricted Gram
    matrix.
    """
    if subspace.ambient_dim != structure.two_d:
        raise ValueError(
            f"subspace ambient dimension {subspace.ambient_dim} does not match "
            f"pairing dimension {structure.two_d}"
        )
    k = subspace.dim
    if k == 0:
        return SymplecticityCertificate(True, float("inf"), 0)
    gram = subspace.basis.T @ structure.J @ subspace.basis
    s = np.linalg.svd(gram, compute_uv=False)
    full = numerical_rank(gram) == k
    return SymplecticityCertificate(full, float(s[-1]), k)


def congruence(form: SymmetricForm, t: np.ndarray) -> SymmetricForm:
    """Pullback T^t.M.T; T may be rectangular (n rows, any column count)."""
    t = np.asarray(t, dtype=float)
    if t.ndim != 2 or t.shape[0] != form.dim:
        raise ValueError(
            f"transform must have {form.dim} rows, got shape {t.shape}"
        )
    return SymmetricForm(t.T @ form.matrix @ t)


def span_rank(*forms: SymmetricForm) -> int:
    """Dimension of the linear span of the given forms (vectorized)."""
    if not forms:
        return 0
    _check_form_dims(*forms)
    stacked = np.column_stack([f.matrix.ravel() for f in forms])
    return numerical_rank(stacked)
