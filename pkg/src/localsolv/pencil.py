"""Rank analysis over the two-parameter pencil spanned by a pair of forms.

maxrank is the generic rank over the span, minrank the smallest rank of a
nonzero element.  Rank drops of a symmetric two-form pencil happen at
finitely many directions (zeros of minor polynomials), so they are located
by a dense angular scan of the maxrank-th singular value followed by
golden-section refinement of every candidate dip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._numeric import (
    DIP_FACTOR,
    RANK_REL,
    frob,
    golden_section_minimize,
    numerical_rank,
    rank_tolerance,
    rng_for,
)
from .errors import DependentPairError, ZeroElementError
from .forms import SymmetricForm, span_rank

__all__ = [
    "PencilReport",
    "pencil_element",
    "rank_at",
    "rank_profile",
    "max_rank_element",
    "nearby_basis",
]

_SCAN_POINTS = 512
_REFINE_ITERATIONS = 80


@dataclass(frozen=True)
class PencilReport:
    maxrank: int
    minrank: int
    drop_points: tuple[tuple[float, int], ...]
    generic_theta: float
    marginal: tuple[float, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if not (0 < self.minrank <= self.maxrank):
            raise ValueError("ranks must satisfy 0 < minrank <= maxrank")
        if any(rank >= self.maxrank for _, rank in self.drop_points):
            raise ValueError("drop points must have rank below maxrank")


def pencil_element(a: SymmetricForm, b: SymmetricForm, theta: float) -> SymmetricForm:
    return SymmetricForm(math.cos(theta) * a.matrix + math.sin(theta) * b.matrix)


def rank_at(a: SymmetricForm, b: SymmetricForm, theta: float, tol: float | None = None) -> int:
    """Numerical rank of cos(theta) A + sin(theta) B."""
    if a.dim != b.dim:
        raise ValueError("forms have mismatched dimensions")
    m = math.cos(theta) * a.matrix + math.sin(theta) * b.matrix
    scale = a.frobenius() + b.frobenius()
    if frob(m) <= RANK_REL * a.dim * max(scale, 1e-300):
        raise ZeroElementError(f"pencil element at theta={theta} vanishes")
    return numerical_rank(m, tol)


def _sigma_r(a, b, theta: float, r: int) -> tuple[float, float]:
    """(r-th singular value, its rank tolerance) of the combination."""
    m = math.cos(theta) * a.matrix + math.sin(theta) * b.matrix
    s = np.linalg.svd(m, compute_uv=False)
    return float(s[r - 1]), rank_tolerance(s, m.shape)


def _circular_gap(x: float, y: float) -> float:
    gap = abs(x - y) % (2.0 * math.pi)
    return min(gap, 2.0 * math.pi - gap)


def rank_profile(
    a: SymmetricForm,
    b: SymmetricForm,
    scan_points: int = _SCAN_POINTS,
    seed: int = 42,
) -> PencilReport:
    """Generic rank, minimal nonzero rank and rank-drop directions.

    The generic rank is read at a random direction and confirmed on eight
    more; drops are the refined dips of the maxrank-th singular value.  The
    dip threshold is forgiving (any scan value below ~6% of the pencil scale
    is refined) because an exact zero can sit between grid nodes; a refined
    candidate only counts once the singular value falls below the rank cut.
    """
    if a.dim != b.dim:
        raise ValueError("forms have mismatched dimensions")
    if span_rank(a, b) < 2:
        raise DependentPairError("forms are linearly dependent")
    rng = rng_for(seed, 0x9EC1)
    notes: list[str] = []
    marginal: list[float] = []

    probe_thetas = rng.uniform(0.0, 2.0 * math.pi, size=9)
    probe_ranks = [rank_at(a, b, float(t)) for t in probe_thetas]
    maxrank = max(probe_ranks)
    if min(probe_ranks) != maxrank:
        notes.append("generic rank probes disagreed; keeping the largest")
    generic_theta = float(probe_thetas[int(np.argmax(probe_ranks))])
    sigma_g, tol_g = _sigma_r(a, b, generic_theta, maxrank)
    if tol_g < sigma_g <= 10.0 * tol_g:
        marginal.append(generic_theta)

    thetas = np.linspace(0.0, 2.0 * math.pi, scan_points, endpoint=False)
    sigma = np.empty(scan_points)
    cuts = np.empty(scan_points)
    for i, t in enumerate(thetas):
        sigma[i], cuts[i] = _sigma_r(a, b, float(t), maxrank)

    # A singular value of the combination moves at most ||A|| + ||B|| per
    # radian, so any exact zero leaves a neighbouring grid value below
    # step/2 * (||A|| + ||B||); the filter below keeps a 10x margin on that.
    step = 2.0 * math.pi / scan_points
    scale = a.frobenius() + b.frobenius()
    dip_filter = max(5.0 * step * scale, DIP_FACTOR * float(np.max(cuts)))

    candidates = set()
    for i in range(scan_points):
        if sigma[i] > dip_filter:
            continue
        left = sigma[(i - 1) % scan_points]
        right = sigma[(i + 1) % scan_points]
        if sigma[i] <= left and sigma[i] <= right:
            candidates.add(i)
        if sigma[i] < DIP_FACTOR * cuts[i]:
            candidates.add(i)

    drops: list[tuple[float, int]] = []
    seen: list[float] = []
    for i in sorted(candidates):
        lo = float(thetas[i]) - step
        hi = float(thetas[i]) + step
        theta_star, sigma_star = golden_section_minimize(
            lambda t: _sigma_r(a, b, t, maxrank)[0], lo, hi, _REFINE_ITERATIONS
        )
        theta_star %= 2.0 * math.pi
        if 2.0 * math.pi - theta_star < 1e-8:
            theta_star = 0.0
        _, cut_star = _sigma_r(a, b, theta_star, maxrank)
        if sigma_star >= DIP_FACTOR * cut_star:
            continue
        if any(_circular_gap(theta_star, t) < 1e-6 for t in seen):
            continue
        seen.append(theta_star)
        try:
            rank_star = rank_at(a, b, theta_star)
        except ZeroElementError:
            continue
        if rank_star < maxrank:
            drops.append((theta_star, rank_star))
            s_at, cut_at = _sigma_r(a, b, theta_star, rank_star) if rank_star else (0.0, 0.0)
            if rank_star and cut_at < s_at <= 10.0 * cut_at:
                marginal.append(theta_star)

    drops.sort()
    minrank = min([rank for _, rank in drops], default=maxrank)
    return PencilReport(
        maxrank=maxrank,
        minrank=minrank,
        drop_points=tuple(drops),
        generic_theta=generic_theta,
        marginal=tuple(marginal),
        notes=tuple(notes),
    )


def max_rank_element(
    a: SymmetricForm, b: SymmetricForm, seed: int = 42
) -> tuple[float, SymmetricForm]:
    """A Frobenius-normalized pencil element of generic (maximal) rank."""
    report = rank_profile(a, b, seed=seed)
    element = pencil_element(a, b, report.generic_theta).normalized()
    return report.generic_theta, element


def nearby_basis(
    a: SymmetricForm, b: SymmetricForm, eps: float, seed: int = 42
) -> tuple[SymmetricForm, SymmetricForm]:
    """Basis (A~, A~ + eps * U) of the span with A~ of maximal rank.

    U is the unit-Frobenius complement of A~ inside the span, so the two
    returned forms are eps apart while still spanning the original pencil.
    """
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    _, a_tilde = max_rank_element(a, b, seed=seed)
    anchor = a_tilde.matrix.ravel()
    complement = None
    for candidate in (a.matrix.ravel(), b.matrix.ravel()):
        residual = candidate - (candidate @ anchor) * anchor
        norm = float(np.linalg.norm(residual))
        if norm > 1e-10 * max(float(np.linalg.norm(candidate)), 1.0):
            complement = residual / norm
            break
    if complement is None:
        raise DependentPairError("span collapsed while building the nearby basis")
    b_tilde = SymmetricForm(a_tilde.matrix + eps * complement.reshape(a.dim, a.dim))
    if span_rank(a_tilde, b_tilde) != 2 or span_rank(a, b, a_tilde, b_tilde) != 2:
        raise DependentPairError("nearby basis failed to preserve the span")
    return a_tilde, b_tilde
