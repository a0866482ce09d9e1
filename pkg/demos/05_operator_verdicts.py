"""Operator-level verdicts: group data in, solvability obstruction out.

Run:  python demos/05_operator_verdicts.py
"""

import numpy as np

from localsolv import (
    HeisenbergOperatorSpec,
    PointSymbolSpec,
    StructureConstants,
    SymmetricForm,
    heisenberg_verdict,
    point_symbol_verdict,
    step_reduction,
    two_step_verdict,
)


def traceless(n, rng):
    m = rng.standard_normal((n, n))
    m = 0.5 * (m + m.T)
    return SymmetricForm(m - np.trace(m) / n * np.eye(n))


rng = np.random.default_rng(4)

# A generic large operator on the 9-generator-pair group: both coefficient
# forms traceless, so the pair is non-dissipative, the ranks are large, and
# the necessary condition for local solvability fails.
d = 9
a, b = traceless(2 * d, rng), traceless(2 * d, rng)
verdict = heisenberg_verdict(HeisenbergOperatorSpec(d, a, b))
print("d=9 generic operator:", verdict.outcome.value)
print("  conditions: a =", verdict.condition_a, " b =", verdict.condition_b,
      " c =", verdict.condition_c.value)
print("  ranks:", verdict.hypothesis.minrank, "..", verdict.hypothesis.maxrank)

# The d=2 counterexample pair: everything holds except the rank thresholds,
# so the checker refuses to conclude (and never asserts solvability).
qa = np.zeros((4, 4))
qa[0, 3] = qa[3, 0] = 0.5
qa[1, 2] = qa[2, 1] = 0.5
qb = np.zeros((4, 4))
qb[0, 2] = qb[2, 0] = 0.5
qb[1, 3] = qb[3, 1] = -0.5
verdict = heisenberg_verdict(HeisenbergOperatorSpec(2, SymmetricForm(qa), SymmetricForm(qb)))
print("\nd=2 quartet operator:", verdict.outcome.value, "| branch:", verdict.condition_c.value)

# Dissipative coefficients short-circuit condition (a).
verdict = heisenberg_verdict(HeisenbergOperatorSpec(2, SymmetricForm(np.eye(4)), SymmetricForm.zero(4)))
print("dissipative operator:", verdict.outcome.value, "| condition a:", verdict.condition_a)

# General 2-step groups carry one skew matrix per center direction; the
# checker finds a direction whose combination is non-degenerate.
m = 4
degenerate = np.zeros((m, m))
degenerate[0, 1], degenerate[1, 0] = 1.0, -1.0
canonical = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])
a2, b2 = traceless(m, rng), traceless(m, rng)
from localsolv import TwoStepGroupSpec

verdict = two_step_verdict(TwoStepGroupSpec(m, (degenerate, canonical), a2, b2))
print("\n2-step with a degenerate first direction: mu0 =", verdict.mu0)

# Point-symbol route: supply T (the derivative of the field symbols at the
# point) plus the coefficient forms; every pullback identity is re-verified.
t = rng.standard_normal((4, 8))
verdict = point_symbol_verdict(PointSymbolSpec(4, 4, t, a2, b2))
print("point-symbol verdict:", verdict.outcome.value)
print("  note:", verdict.notes[1])

# Step reduction: a 3-step algebra factors through its 2-step quotient; the
# free 3-step algebra on two generators collapses to the smallest
# one-center group.
c = np.zeros((5, 5, 5))
c[0, 1, 2], c[1, 0, 2] = 1.0, -1.0
c[2, 0, 3], c[0, 2, 3] = 1.0, -1.0
c[2, 1, 4], c[1, 2, 4] = 1.0, -1.0
constants = StructureConstants(5, c, (1, 1, 2, 3, 3))
reduced = step_reduction(constants, SymmetricForm(np.eye(2)), SymmetricForm(np.diag([1.0, -1.0])))
print("\nreduced spec: m =", reduced.m, " centers =", reduced.ell)
print("J =", reduced.j_list[0].tolist())
print("verdict on the quotient:", two_step_verdict(reduced).outcome.value)
