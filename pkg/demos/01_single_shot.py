"""Single-shot discrimination: classical, binary quantum and certificates.

Run with ``python demos/01_single_shot.py``.
"""
import numpy as np

from hyptest import (binary_optimal_error, classical_optimal, error_probability,
                     hybrid_sup_binary, verify_optimality)

# Three commuting generalized states. The optimal measurement just reads
# off the largest weight in each basis slot.
states = [np.diag([3., 1, 2]), np.diag([1., 2, 2]), np.diag([2., 0, 1])]
value, povm, sup = classical_optimal(states)
print("classical optimum:", value)
print("entrywise supremum:", np.diag(sup).real)
print("ML measurement certified optimal:", verify_optimality(states, povm))
print("same effects, first and last swapped:",
      verify_optimality(states, [povm[2], povm[1], povm[0]]))

# Two non-commuting qubit states with equal priors.
ket0 = np.diag([0.5, 0])
plus = np.full((2, 2), 0.25)
err, test = binary_optimal_error(ket0, plus)
print("\nbinary optimal error:", err, "closed form:", (2 - np.sqrt(2)) / 4)
print("error of the returned test:", error_probability([ket0, plus], test))

# The trace of the smallest PSD upper bound is the optimal success.
sup2 = hybrid_sup_binary(ket0, plus)
print("Tr sup:", np.trace(sup2).real, " = 1 - error:", 1 - err)
