"""Non-dissipative pairs and their positive-definite trace certificates.

Run:  python demos/02_dissipativity_certificates.py
"""

import numpy as np

from localsolv import (
    SymmetricForm,
    is_non_dissipative,
    min_eig_scan,
    trace_certificate,
    trace_normalize,
)

# A pair is non-dissipative when no nonzero combination cos(t)A + sin(t)B is
# positive semidefinite.  Two hyperbolic plane forms qualify: every
# combination has negative determinant.
a = SymmetricForm(np.diag([1.0, -1.0]))
b = SymmetricForm([[0.0, 1.0], [1.0, 0.0]])
verdict = is_non_dissipative(a, b)
print("hyperbolic pair:", verdict.kind.value)
print("largest smallest-eigenvalue over all directions:", verdict.extreme_min_eig)

# The directional profile behind the decision.
profile = min_eig_scan(a, b, grid_size=16)
for theta, value in list(zip(profile.full_thetas, profile.full_min_eigs))[:6]:
    print(f"  theta={theta:5.2f}  min eig = {value:+.4f}")

# A dissipative pair: the sum of the two squares is positive semidefinite.
d1 = SymmetricForm(np.diag([1.0, 0.0]))
d2 = SymmetricForm(np.diag([0.0, 1.0]))
verdict = is_non_dissipative(d1, d2)
print("\ncoordinate squares:", verdict.kind.value, "at theta =", verdict.theta)

# Non-dissipativity is equivalent to the existence of Q > 0 annihilating
# both traces: tr(Q A Q) = tr(Q B Q) = 0.  The certificate is produced by
# alternating projections and can be checked by two matrix multiplications.
outcome = trace_certificate(a, b)
cert = outcome.certificate
print("\ncertificate found:", outcome.found)
print("Q =")
print(cert.q)
print("residuals:", cert.residual_a, cert.residual_b, " min eig of Q:", cert.min_eig_q)

# For the dissipative pair the same search is infeasible.
print("\ncoordinate squares certificate:", trace_certificate(d1, d2).status.value)

# trace_normalize rewrites the pair in coordinates where both traces vanish.
rng = np.random.default_rng(3)
t = rng.standard_normal((2, 2)) + 2 * np.eye(2)
skewed_a = SymmetricForm(t.T @ a.matrix @ t)
skewed_b = SymmetricForm(t.T @ b.matrix @ t)
print("\ntraces before:", np.trace(skewed_a.matrix), np.trace(skewed_b.matrix))
a2, b2, q = trace_normalize(skewed_a, skewed_b)
print("traces after: ", np.trace(a2.matrix), np.trace(b2.matrix))
