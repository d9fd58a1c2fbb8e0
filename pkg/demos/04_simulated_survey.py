"""
A simulated two-order survey
=============================

Respondents are split into two groups, one asked A then B, the other B then A.
Answers are drawn from the Lüders instrument of the model, and the empirical
QQ statistic is compared with the exact value.
"""

from qqpovm import ExperimentConfig, convergence_sweep, reference_pair, simulate, uniform_state

A, B = reference_pair()
cfg = ExperimentConfig(uniform_state(), A, B, n_per_order=100_000, seed=7)

r = simulate(cfg)
print("counts (yy, yn, ny, nn) per order:\n", r.counts)
print(f"empirical {r.empirical_qq:.5f} +/- {r.standard_error:.5f}, exact {r.analytic_qq:.5f}")

###############################################################################
# Error shrinks like n^(-1/2).

for row in convergence_sweep(cfg, [100, 1_000, 10_000, 100_000, 1_000_000]):
    print(f"n={row.n:>8}  |error|={row.abs_error:.2e}  se={row.standard_error:.2e}")
