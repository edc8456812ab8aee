"""Chernoff divergence and the bound it gives on the single-copy error.

Run with ``python demos/02_chernoff.py``.
"""
import math

import numpy as np

from hyptest import audenaert_check, binary_optimal_error, chernoff_divergence, chernoff_bruteforce

rng = np.random.default_rng(0)


def random_density(d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    a = z @ z.conj().T
    return a / np.trace(a).real


rho, sigma = random_density(3), random_density(3)
res = chernoff_divergence(rho, sigma)
print(f"C = {res.value:.12f} at alpha* = {res.alpha_star:.6f}")
print(f"grid of 10^4 alphas gives {chernoff_bruteforce(rho, sigma):.12f}")

# exp(-C) bounds the optimal error of the equal-prior problem from above
# (after halving the priors on both sides).
err, _ = binary_optimal_error(rho / 2, sigma / 2)
print(f"P_e* = {err:.6f} <= exp(-C)/2 = {math.exp(-res.value) / 2:.6f}")

# The inequality behind it holds at every alpha, not just the optimum.
alphas = np.linspace(0, 1, 11)
print("inequality holds on the alpha grid:", all(audenaert_check(rho, sigma, a) for a in alphas))

# Commuting projections scaled to states: C is -log(R min(p, q)).
p_state = np.diag([0.5, 0.5, 0, 0])
q_state = np.diag([0, 0.5, 0.5, 0])
print("\nprojection pair:", chernoff_divergence(p_state, q_state).value, "vs log 2 =", math.log(2))
