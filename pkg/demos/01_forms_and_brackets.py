"""Quadratic forms, Hamilton maps and the two Poisson bracket routes.

Run:  python demos/01_forms_and_brackets.py
"""

import numpy as np

from localsolv import (
    SymmetricForm,
    SymplecticStructure,
    bracket_via_hamilton,
    hamilton_map,
    poisson_bracket,
)

rng = np.random.default_rng(0)

# A quadratic form is just its symmetric matrix; construction symmetrizes.
a = SymmetricForm([[1.0, 2.0], [0.0, -1.0]])
print("stored matrix (symmetrized):")
print(a.matrix)
z = np.array([0.3, -1.2])
print("Q(z) =", a(z), " Q(-z) =", a(-z))

# The canonical pairing on R^(2d): J = [[0, I], [-I, 0]].
structure = SymplecticStructure.canonical(4)
print("\ncanonical J on R^4:")
print(structure.J)

# Hamilton map: the unique S with omega(u, S v) = u.A.v.  For the canonical
# pairing it is simply J @ A.
f = SymmetricForm(np.eye(4))
s = hamilton_map(f, structure)
print("\nHamilton map of the identity form equals J:", np.allclose(s.matrix, structure.J))

# The bracket of two forms, computed two independent ways: once from the
# matrix closed form, once through Hamilton-map commutators.  They agree to
# machine precision; the test suite holds them to 1e-10 relative.
qa = np.zeros((4, 4))
qa[0, 3] = qa[3, 0] = 0.5   # x1*y2 + x2*y1
qa[1, 2] = qa[2, 1] = 0.5
qb = np.zeros((4, 4))
qb[0, 2] = qb[2, 0] = 0.5   # x1*y1 - x2*y2
qb[1, 3] = qb[3, 1] = -0.5
A, B = SymmetricForm(qa), SymmetricForm(qb)

c1 = poisson_bracket(A, B, structure)
c2 = bracket_via_hamilton(A, B, structure)
print("\nbracket of the quartet pair (closed form):")
print(c1.matrix)
print("two routes agree:", np.allclose(c1.matrix, c2.matrix, atol=1e-14))

# The global sign of every bracket depends on whether positions or momenta
# are listed first; this library fixes positions-first.  Flipping the
# convention negates C, which changes nothing downstream: rank, independence
# and where Q_C vanishes are all sign-blind.
print("\nsame bracket under the opposite ordering convention:")
print(-c1.matrix)

# Brackets also work for any non-degenerate skew pairing.
g = rng.standard_normal((4, 4))
custom = SymplecticStructure(0.5 * (g - g.T))
c3 = poisson_bracket(A, B, custom)
print("\nbracket under a random pairing, still symmetric:", np.allclose(c3.matrix, c3.matrix.T))
