"""Operator-level verdicts for second-order operators built from real fields.

An operator is described either by its complex coefficient matrix on a
group with known commutator structure (one skew matrix per central
direction), or by raw point data: the differential T of the field symbols at
a doubly characteristic point together with the coefficient matrix there.
Each route assembles the pair (A, B) = (Re, Im) of coefficient forms, the
bracket form C for the relevant pairing, and evaluates

    (a) the pair is non-dissipative,
    (b) A, B, C are linearly independent,
    (c) the rank/radical branch conditions,

emitting NOT_LOCALLY_SOLVABLE exactly when all three hold.  INCONCLUSIVE
never asserts solvability; it records which hypothesis failed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._numeric import frob, numerical_rank, nullspace, rng_for, skew_part, sym_part
from .errors import ConsistencyError, DegeneratePairingError, GradingError, MuSearchError
from .forms import (
    Subspace,
    SymmetricForm,
    SymplecticStructure,
    congruence,
    is_symplectic_subspace,
    joint_radical,
    poisson_bracket,
)
from .witness import Branch, HypothesisReport, hypothesis_report

__all__ = [
    "HeisenbergOperatorSpec",
    "TwoStepGroupSpec",
    "PointSymbolSpec",
    "StructureConstants",
    "VerdictOutcome",
    "Verdict",
    "heisenberg_verdict",
    "two_step_verdict",
    "point_symbol_verdict",
    "step_reduction",
]

_IDENTITY_TOL = 1e-10


class VerdictOutcome(enum.Enum):
    NOT_LOCALLY_SOLVABLE = "NOT_LOCALLY_SOLVABLE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Verdict:
    outcome: VerdictOutcome
    condition_a: bool
    condition_b: bool
    condition_c: Branch
    hypothesis: HypothesisReport
    notes: tuple[str, ...] = ()
    mu0: tuple[float, ...] | None = None


@dataclass(frozen=True)
class HeisenbergOperatorSpec:
    """Coefficient forms of an operator on the (2d)-generator Heisenberg group."""

    d: int
    a_re: SymmetricForm
    a_im: SymmetricForm

    def __post_init__(self):
        if self.d <= 0:
            raise ValueError(f"d must be positive, got {self.d}")
        expected = 2 * self.d
        if self.a_re.dim != expected or self.a_im.dim != expected:
            raise ValueError(
                f"coefficient forms must be {expected}x{expected}, got "
                f"{self.a_re.dim} and {self.a_im.dim}"
            )


@dataclass(frozen=True)
class TwoStepGroupSpec:
    """Coefficient forms plus the skew commutator matrices of a 2-step group."""

    m: int
    j_list: tuple[np.ndarray, ...]
    a_re: SymmetricForm
    a_im: SymmetricForm
    mu0: tuple[float, ...] | None = None
    note: str | None = None

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError(f"m must be positive, got {self.m}")
        mats = []
        for i, j in enumerate(self.j_list):
            j = np.array(j, dtype=float)
            if j.shape != (self.m, self.m):
                raise ValueError(f"J[{i}] must be {self.m}x{self.m}, got {j.shape}")
            if frob(sym_part(j)) > 1e-9 * max(frob(j), 1.0):
                raise ValueError(f"J[{i}] is not skew-symmetric")
            j = skew_part(j)
            j.flags.writeable = False
            mats.append(j)
        if not mats:
            raise ValueError("at least one commutator matrix is required")
        object.__setattr__(self, "j_list", tuple(mats))
        if self.a_re.dim != self.m or self.a_im.dim != self.m:
            raise ValueError("coefficient forms must match the generator count m")
        if self.mu0 is not None:
            mu = tuple(float(x) for x in self.mu0)
            if len(mu) != len(self.j_list):
                raise ValueError("mu0 length must match the number of commutator matrices")
            object.__setattr__(self, "mu0", mu)

    @property
    def ell(self) -> int:
        return len(self.j_list)


@dataclass(frozen=True)
class PointSymbolSpec:
    """Point data: T = derivative of the field symbols, plus coefficient forms."""

    n: int
    m: int
    t_matrix: np.ndarray
    a_re: SymmetricForm
    a_im: SymmetricForm

    def __post_init__(self):
        if self.n <= 0 or self.m <= 0:
            raise ValueError("dimensions must be positive")
        t = np.array(self.t_matrix, dtype=float)
        if t.shape != (self.m, 2 * self.n):
            raise ValueError(
                f"T must be {self.m}x{2 * self.n}, got {t.shape}"
            )
        if numerical_rank(t) < self.m:
            raise ValueError("T is rank-deficient; the point data does not span")
        t.flags.writeable = False
        object.__setattr__(self, "t_matrix", t)
        if self.a_re.dim != self.m or self.a_im.dim != self.m:
            raise ValueError("coefficient forms must match the field count m")


@dataclass(frozen=True)
class StructureConstants:
    """Bracket coefficients c[i][j][k] of a graded nilpotent algebra basis."""

    n_basis: int
    c: np.ndarray
    grading: tuple[int, ...]

    def __post_init__(self):
        c = np.array(self.c, dtype=float)
        if c.shape != (self.n_basis, self.n_basis, self.n_basis):
            raise ValueError(f"constants must have shape {(self.n_basis,) * 3}, got {c.shape}")
        if np.max(np.abs(c + np.swapaxes(c, 0, 1))) > 1e-10 * max(1.0, float(np.max(np.abs(c)))):
            raise ValueError("structure constants are not antisymmetric")
        jac = np.einsum("ijm,mkl->ijkl", c, c)
        residual = jac + np.transpose(jac, (1, 2, 0, 3)) + np.transpose(jac, (2, 0, 1, 3))
        if np.max(np.abs(residual)) > 1e-10 * max(1.0, float(np.max(np.abs(c))) ** 2 * self.n_basis):
            raise ValueError("structure constants violate the Jacobi identity")
        c.flags.writeable = False
        object.__setattr__(self, "c", c)
        grading = tuple(int(g) for g in self.grading)
        if len(grading) != self.n_basis:
            raise ValueError("grading must assign a layer to every basis vector")
        if any(g < 1 for g in grading):
            raise ValueError("layers are numbered from 1")
        object.__setattr__(self, "grading", grading)


def _assemble(hyp: HypothesisReport, notes: list[str], mu0=None) -> Verdict:
    conclusive = hyp.nondissipative and hyp.independent_abc and hyp.branch is not Branch.NONE
    outcome = VerdictOutcome.NOT_LOCALLY_SOLVABLE if conclusive else VerdictOutcome.INCONCLUSIVE
    if not conclusive:
        missing = []
        if not hyp.nondissipative:
            missing.append("(a) pair is dissipative")
        if not hyp.independent_abc:
            missing.append("(b) A, B, C are not independent")
        if hyp.branch is Branch.NONE:
            missing.append("(c) rank/radical branch conditions not met")
        notes.append(
            "necessary-condition hypotheses not established: " + "; ".join(missing)
        )
        notes.append("no solvability claim is implied by an inconclusive outcome")
    notes.extend(hyp.notes)
    return Verdict(
        outcome=outcome,
        condition_a=hyp.nondissipative,
        condition_b=hyp.independent_abc,
        condition_c=hyp.branch,
        hypothesis=hyp,
        notes=tuple(notes),
        mu0=mu0,
    )


def heisenberg_verdict(spec: HeisenbergOperatorSpec, seed: int = 42) -> Verdict:
    """Verdict for the one-center group with the standard skew matrix."""
    structure = SymplecticStructure.canonical(2 * spec.d)
    hyp = hypothesis_report(spec.a_re, spec.a_im, structure, seed=seed)
    notes = [
        "conditions evaluated on the 2d-dimensional coefficient space with "
        "its commutator-induced pairing",
        "group-invariant data: a negative verdict holds at every point",
    ]
    return _assemble(hyp, notes, mu0=(1.0,))


def _search_mu(spec: TwoStepGroupSpec, seed: int, budget: int) -> tuple[np.ndarray, np.ndarray]:
    """Find mu with sum(mu_i J_i) non-degenerate; axes first, then random."""
    ell, m = spec.ell, spec.m

    def combined(mu: np.ndarray) -> np.ndarray:
        return sum(float(c) * j for c, j in zip(mu, spec.j_list))

    def nondegenerate(j_mu: np.ndarray) -> bool:
        return numerical_rank(j_mu) == m

    if spec.mu0 is not None:
        mu = np.asarray(spec.mu0, dtype=float)
        j_mu = combined(mu)
        if not nondegenerate(j_mu):
            raise MuSearchError("supplied mu0 yields a degenerate commutator matrix")
        return mu, j_mu
    for axis in range(ell):
        mu = np.zeros(ell)
        mu[axis] = 1.0
        j_mu = combined(mu)
        if nondegenerate(j_mu):
            return mu, j_mu
    rng = rng_for(seed, 0x2507)
    for _ in range(budget):
        mu = rng.standard_normal(ell)
        norm = float(np.linalg.norm(mu))
        if norm == 0.0:
            continue
        mu /= norm
        j_mu = combined(mu)
        if nondegenerate(j_mu):
            return mu, j_mu
    raise MuSearchError(
        f"no direction with a non-degenerate combined commutator matrix found in {budget} draws"
    )


def two_step_verdict(spec: TwoStepGroupSpec, seed: int = 42, mu_budget: int = 500) -> Verdict:
    """Verdict for a 2-step group through one non-degenerate center direction.

    When `mu0` is absent the direction is searched (axis vectors first, then
    seeded unit Gaussians); the radical test and the bracket both use the
    pairing induced by the combined commutator matrix at the found direction.
    """
    mu, j_mu = _search_mu(spec, seed, mu_budget)
    structure = SymplecticStructure.from_bracket_matrix(j_mu)
    hyp = hypothesis_report(spec.a_re, spec.a_im, structure, seed=seed)
    notes = [
        "conditions evaluated on the generator space with the pairing induced "
        "by the combined commutator matrix",
        "group-invariant data: a negative verdict holds at every point",
    ]
    if spec.note:
        notes.append(spec.note)
    return _assemble(hyp, notes, mu0=tuple(float(x) for x in mu))


def _check_close(label: str, left: np.ndarray, right: np.ndarray, tol: float):
    gap = float(np.max(np.abs(left - right)))
    if gap > tol:
        raise ConsistencyError(f"{label} residual {gap:.3e} exceeds {tol:.3e}")


def point_symbol_verdict(spec: PointSymbolSpec, seed: int = 42) -> Verdict:
    """Verdict from point data, with every pullback identity re-verified.

    Builds the ambient-space forms by congruence with T, the reduced pairing
    from the skew matrix T J T^t (rejected when degenerate), and checks: the
    bracket computed on the reduced space pulls back to the ambient bracket;
    R = J T^t (T J T^t)^{-1} is a right inverse of T; P = RT is a projector
    compatible with the ambient pairing; pencil ranks agree between the two
    spaces on random combinations; and the joint radical is symplectic on the
    reduced space exactly when its preimage is in the ambient space.
    """
    t = spec.t_matrix
    n2 = 2 * spec.n
    ambient = SymplecticStructure.canonical(n2)
    j2n = ambient.J
    j_z = t @ j2n @ t.T
    s = np.linalg.svd(j_z, compute_uv=False)
    if numerical_rank(j_z) < spec.m:
        raise DegeneratePairingError(
            "reduced skew matrix T J T^t is degenerate; this route does not apply"
        )
    reduced = SymplecticStructure.from_bracket_matrix(j_z)

    a_big = SymmetricForm(2.0 * congruence(spec.a_re, t).matrix)
    b_big = SymmetricForm(2.0 * congruence(spec.a_im, t).matrix)

    # Identity residuals grow with ||T||^2 / sigma_min(T J T^t); fold that
    # amplification into the acceptance tolerance.
    t_scale = float(np.linalg.norm(t, 2))
    amplification = max(1.0, t_scale**2 / max(float(s[-1]), 1e-300))
    tol = _IDENTITY_TOL * amplification

    c_small = poisson_bracket(spec.a_re, spec.a_im, reduced)
    c_big_pulled = SymmetricForm(4.0 * t.T @ c_small.matrix @ t)
    c_big_direct = poisson_bracket(a_big, b_big, ambient)
    scale_c = max(frob(c_big_direct.matrix), 1.0)
    _check_close("bracket pullback", c_big_pulled.matrix, c_big_direct.matrix, tol * scale_c)

    r = j2n @ t.T @ np.linalg.inv(j_z)
    _check_close("T R = identity", t @ r, np.eye(spec.m), tol)
    p = r @ t
    _check_close("projector idempotency", p @ p, p, tol * max(frob(p), 1.0))
    _check_close("pairing-compatible projector", j2n @ p, p.T @ j2n, tol * max(frob(p), 1.0))

    rng = rng_for(seed, 0x4A5)
    for _ in range(8):
        alpha, beta = rng.standard_normal(2)
        small = alpha * spec.a_re.matrix + beta * spec.a_im.matrix
        big = alpha * a_big.matrix + beta * b_big.matrix
        if numerical_rank(small) != numerical_rank(big):
            raise ConsistencyError(
                "pencil ranks disagree between the reduced and ambient spaces"
            )

    radical = joint_radical(spec.a_re, spec.a_im)
    lifted = Subspace.from_spanning(
        n2,
        np.column_stack([r @ radical.basis, nullspace(t)]),
    )
    small_sympl = is_symplectic_subspace(radical, reduced).symplectic
    big_sympl = is_symplectic_subspace(lifted, ambient).symplectic
    if small_sympl != big_sympl:
        raise ConsistencyError(
            "radical symplecticity disagrees between the reduced and ambient spaces"
        )

    hyp = hypothesis_report(spec.a_re, spec.a_im, reduced, seed=seed)
    notes = [
        "conditions evaluated on the reduced field space with the pairing "
        "induced by T J T^t",
        "pullback, projector and rank identities verified",
    ]
    return _assemble(hyp, notes)


def step_reduction(
    constants: StructureConstants, a_re: SymmetricForm, a_im: SymmetricForm
) -> TwoStepGroupSpec:
    """Quotient a graded nilpotent algebra by its layers above two.

    Basis vectors in layers >= 3 are deleted together with every bracket
    component landing on them; the surviving layer-2 brackets of the layer-1
    generators are repackaged as one skew matrix per retained center
    direction.  Coefficient forms pass through unchanged, so a verdict for
    the reduced data applies to the original operator.
    """
    grading = constants.grading
    c = constants.c
    n = constants.n_basis
    tol = 1e-12 * max(1.0, float(np.max(np.abs(c))))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if abs(c[i, j, k]) > tol and grading[k] != grading[i] + grading[j]:
                    raise GradingError(
                        f"bracket [{i},{j}] hits basis vector {k} in layer {grading[k]}; "
                        f"the grading demands layer {grading[i] + grading[j]}"
                    )
    generators = [i for i in range(n) if grading[i] == 1]
    centers = [i for i in range(n) if grading[i] == 2]
    m = len(generators)
    if m == 0:
        raise GradingError("no layer-1 generators present")
    if a_re.dim != m or a_im.dim != m:
        raise ValueError(
            f"coefficient forms must match the {m} layer-1 generators, got dimension {a_re.dim}"
        )
    if not centers:
        raise GradingError("no layer-2 directions survive the quotient")
    j_list = []
    for center in centers:
        j = np.array([[c[i, j_, center] for j_ in generators] for i in generators])
        j_list.append(j)
    deleted = n - m - len(centers)
    note = (
        f"reduced from a {n}-dimensional graded algebra by deleting {deleted} "
        "basis vectors in layers above two; a negative verdict for this data "
        "applies to the original operator"
    )
    return TwoStepGroupSpec(
        m=m,
        j_list=tuple(j_list),
        a_re=a_re,
        a_im=a_im,
        note=note,
    )
