"""
Which states satisfy the QQ-equality?
======================================

For the two-question model the QQ operator is ``[[0, c], [c, 0]]``, so on a
pure state with amplitudes (alpha, beta) the statistic is
``2 c Re(conj(alpha) beta)``. It vanishes on a great circle of the Bloch
sphere plus the poles.
"""

import numpy as np

from qqpovm import Convention, QuantumState, max_violation, reference_pair, qq_statistic, zero_states
from qqpovm.qq import bloch_grid, statistic_grid, zero_manifold_scan

A, B = reference_pair()

for s in zero_states():
    print(np.round(s.rho, 3).tolist(), "->", qq_statistic(s, A, B, Convention.LITERAL).statistic)

###############################################################################
# Scan the Bloch sphere.

n = 16
grid = statistic_grid(A, B, Convention.LITERAL, n)
thetas, phis = bloch_grid(n)
print("max |qq| on grid:", np.abs(grid).max())
zeros = zero_manifold_scan(A, B, Convention.LITERAL, n)
print(f"{len(zeros)} zero states out of {n * n}")
print("all on Re(conj(a) b) = 0:", all(abs((np.conj(a) * b).real) < 1e-10 for a, b in zeros))

###############################################################################
# The extreme value over all states is the top eigenvalue of K.

for c in Convention:
    v = max_violation(A, B, c)
    print(c.value, "max violation", v.value)
    print(np.round(v.maximizer.rho.real, 6))

###############################################################################
# Random states never exceed it.

rng = np.random.default_rng(0)
v = max_violation(A, B, Convention.LITERAL)
worst = max(
    qq_statistic(QuantumState.from_vector(rng.normal(size=2) + 1j * rng.normal(size=2)), A, B, Convention.LITERAL).statistic
    for _ in range(500)
)
print("largest sampled", worst, "<=", v.value)
