"""
Order effects for non-projective questions
===========================================

Two binary questions are modelled by POVMs whose effects are not projectors.
For projective questions the QQ combination

    p(AyBn) + p(AnBy) - p(ByAn) - p(BnAy)

is zero in every state. Here it is not.
"""

import numpy as np

from qqpovm import Convention, Order, outcome_distribution, reference_pair, qq_statistic, uniform_state
from qqpovm import validate_measurement

A, B = reference_pair()
for m in (A, B):
    r = validate_measurement(m)
    print(f"{m.name}: valid={r.valid} projective={r.projective}")

###############################################################################
# Using the effect matrices themselves as update operators (the "literal"
# convention), the four sequential probabilities in each order are:

rho = uniform_state()
for order in Order:
    t = outcome_distribution(rho, A, B, order, Convention.LITERAL)
    print(order.value, {f"{a[0]}{b[0]}": round(p, 6) for (a, b), p in t.probs.items()})
    # the literal instrument is not trace preserving
    print("  normalization defect", round(t.normalization_defect, 6))

###############################################################################
# The QQ statistic is linear in the state: qq = Tr(rho K).

report = qq_statistic(rho, A, B, Convention.LITERAL)
print("K =\n", np.round(report.k_operator.real, 8))
print("qq          =", report.statistic)
print("2/(27 sqrt3) =", 2 / (27 * np.sqrt(3)))

###############################################################################
# With Lüders updates (square roots of the effects) the instrument is
# normalized, and the violation changes sign and size.

sq = qq_statistic(rho, A, B, Convention.SQRT)
print("sqrt convention qq =", sq.statistic, "defect", sq.a_first.normalization_defect)
