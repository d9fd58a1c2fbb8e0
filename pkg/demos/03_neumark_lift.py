"""
Restoring the QQ-equality by lifting
=====================================

Each binary POVM is realized as a projective measurement on a larger space.
Each effect eigenvalue strictly between 0 and 1 needs one extra dimension,
so both questions fit on a common 3-dimensional space. The lifted questions
are projective, and the QQ statistic of the embedded state is zero.
"""

import numpy as np

from qqpovm import common_space_lift, lifted_qq_check, reference_pair, uniform_state, verify_dilation
from qqpovm.linalg import eig_hermitian
from qqpovm.models import lifted_reference_pair

A, B = reference_pair()
for m in (A, B):
    print(m.name, "yes-effect spectrum", np.round(eig_hermitian(m.yes.matrix)[0], 12))

lift = common_space_lift(A, B)
print("common dimension", lift.dim)
for d in (lift.dilation_a, lift.dilation_b):
    cert = verify_dilation(d)
    print(d.original.name, "certificate passed:", cert.passed)
    print(np.round(d.lifted.yes.matrix.real, 4))

before, after = lifted_qq_check(A, B, uniform_state())
print(f"qq before lifting {before:.12g}, after lifting {after:.3g}")

###############################################################################
# A different dilation of the same questions. It agrees with the construction
# above only after compression, since dilations are unique only up to a
# unitary on the extra direction.

LA, LB = lifted_reference_pair()
print("compressions match:",
      np.allclose(LA.yes.matrix[:2, :2], A.yes.matrix),
      np.allclose(LB.yes.matrix[:2, :2], B.yes.matrix))
print("idempotent:", np.allclose(LA.yes.matrix @ LA.yes.matrix, LA.yes.matrix))
