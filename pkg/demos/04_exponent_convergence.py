"""Error exponents from the slope of log P(n).

The composite error shrinks like exp(n * c) while the norms it is computed
from stay close to 3, so double precision runs out of digits early. The
default path sizes its working precision to n; forcing 53 bits shows where
plain floats break down and how the monitor flags it.

Run with ``python demos/04_exponent_convergence.py``.
"""
import math

from hyptest import FamilyParams, exponent_series

cases = {
    "R min(p,q) dominates": FamilyParams(1 / 2, 1 / 2, 2 / 3, 2 / 3, 1 / 3, 1),
    "p t dominates": FamilyParams(1 / 2, 1 / 4, 0.9, 0.15, 0.1, 1),
}
for name, theta in cases.items():
    series = exponent_series(theta, 120, step=20, n_min=20)
    print(f"{name}: conjectured {series.conjectured:.12f}")
    print("   n   (1/n) log P        slope")
    for e in series.entries:
        print(f"{e.n:4d}   {e.one_over_n_log:.12f}   {e.slope:.12f}")
    print(f"estimate error {abs(series.estimate - series.conjectured):.1e}\n")

theta = cases["p t dominates"]
print("same series in double precision:")
series = exponent_series(theta, 100, step=10, n_min=10, precision=53)
for e in series.entries:
    flag = "precision loss" if e.precision_loss else ""
    print(f"{e.n:4d}   {e.slope:.12f}   {flag}")
print(f"estimate from unflagged points: {series.estimate:.12f} (target {math.log(0.45):.12f})")
