"""Brute-force ground truth for small problem sizes.

Everything here is deliberately naive: explicit Kronecker powers, dense
trace norms and grid scans. These routines are slow but simple enough to
trust, and the faster code paths are tested against them.
"""
import os
from dataclasses import dataclass

import numpy as np

from .discrimination import _chernoff_objective, _neg_log, _nonzero_pair, _operators
from .errors import DomainError, ShapeError
from .linalg import MAX_DIM, tensor_power, trace_norm


@dataclass(frozen=True)
class OracleBudget:
    max_dim: int = MAX_DIM
    max_grid: int = 10 ** 4

    def __post_init__(self):
        if self.max_dim < 1 or self.max_grid < 1:
            raise DomainError("oracle budget entries must be positive")

    @classmethod
    def from_env(cls):
        """Default budget, with ``max_dim`` taken from ``HYPTEST_ORACLE_MAXDIM`` when set."""
        raw = os.environ.get("HYPTEST_ORACLE_MAXDIM")
        return cls(max_dim=int(raw)) if raw else cls()


def tensor_error_bruteforce(family, n, budget=None):
    """``(3 - ||rho^(x)n - sigma1^(x)n - sigma2^(x)n||_1) / 2`` from explicit tensor powers."""
    budget = budget or OracleBudget()
    ops = [tensor_power(x, n, budget.max_dim) for x in (family.rho, family.sigma1, family.sigma2)]
    diff = ops[0] - ops[1] - ops[2]
    if not np.any(diff.imag):
        diff = diff.real   # the real eigensolver is several times faster
    return 0.5 * (3 - trace_norm(diff))


def chernoff_bruteforce(a, b, grid=10 ** 4):
    """``max`` over a uniform ``alpha`` grid of ``-log Tr A^alpha B^(1-alpha)``.

    The grid has ``grid + 1`` points including both endpoints. Since the
    grid minimum of the objective is at least its true minimum, the result
    never exceeds the exact divergence.
    """
    if grid < 2:
        raise DomainError(f"grid needs at least 2 intervals, got {grid}")
    a, b = _nonzero_pair(a, b)
    g = _chernoff_objective(a, b)
    return _neg_log(min(g(x) for x in np.linspace(0.0, 1.0, grid + 1)))


def _bloch_projector(theta, phi):
    v = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
    return np.outer(v, v.conj())


def _best_test_value(a, b1, b2, e):
    """``min`` over ``T = x E + y (I - E)``, ``x, y in [0, 1]``, of ``Tr A(I - T) + max_i Tr B_i T``.

    The objective is a maximum of affine functions of ``(x, y)``, hence
    convex, so the minimum sits at a vertex of the box or on the crossing
    line of the two affine pieces; both are enumerated exactly.
    """
    f = np.eye(2) - e
    ta = np.trace(a).real
    ca = -np.array([np.trace(a @ e).real, np.trace(a @ f).real])
    c1 = np.array([np.trace(b1 @ e).real, np.trace(b1 @ f).real])
    c2 = np.array([np.trace(b2 @ e).real, np.trace(b2 @ f).real])

    def value(x, y):
        v = np.array([x, y])
        return ta + ca @ v + max(c1 @ v, c2 @ v)

    points = [(0, 0), (0, 1), (1, 0), (1, 1)]
    d = c1 - c2
    # points on the box edges where both alternatives tie
    for fixed in (0.0, 1.0):
        if abs(d[1]) > 1e-15:
            y = -d[0] * fixed / d[1]
            if 0 <= y <= 1:
                points.append((fixed, y))
        if abs(d[0]) > 1e-15:
            x = -d[1] * fixed / d[0]
            if 0 <= x <= 1:
                points.append((x, fixed))
    return min(value(x, y) for x, y in points)


def worst_case_grid(a, b1, b2, grid=10 ** 4):
    """Worst-case composite error of qubit operators by direct search over tests.

    Tests are ``T = x E + y (I - E)`` with ``E`` a rank-one projector given
    by its Bloch direction. About ``grid`` directions are scanned on a
    ``(theta, phi)`` lattice, then the best direction is refined on
    successively finer local lattices; the spectral pair ``(x, y)`` is
    optimized exactly for each direction.
    """
    a, b1, b2 = _operators([a, b1, b2])
    if a.shape != (2, 2):
        raise ShapeError(f"worst_case_grid needs 2x2 operators, got {a.shape}")
    side = max(int(np.sqrt(grid)), 2)

    def scan(thetas, phis):
        best = (np.inf, 0.0, 0.0)
        for th in thetas:
            for ph in phis:
                val = _best_test_value(a, b1, b2, _bloch_projector(th, ph))
                if val < best[0]:
                    best = (val, th, ph)
        return best

    val, th, ph = scan(np.linspace(0, np.pi, side), np.linspace(0, 2 * np.pi, side, endpoint=False))
    dth, dph = np.pi / (side - 1), 2 * np.pi / side
    for _ in range(6):
        cand = scan(np.linspace(th - dth, th + dth, 11), np.linspace(ph - dph, ph + dph, 11))
        if cand[0] <= val:
            val, th, ph = cand
        dth, dph = dth / 5, dph / 5
    return float(val)


def _random_unitary(rng, d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def rotated_realization(family, rng, sizes=None):
    """Another realization of the same parameters.

    Applies an independent random unitary inside each joint eigenspace of
    ``P`` and ``Q``, followed by a global random unitary. Each step
    preserves ``(p, q, t, s, r, R)`` but changes every matrix entry.
    """
    from .composite import SpecialFamily, extract_params, block_sizes

    sizes = sizes or block_sizes(extract_params(family))
    d = family.dim
    if sum(sizes) != d:
        raise ShapeError(f"block sizes {sizes} do not add up to dimension {d}")
    block = np.zeros((d, d), dtype=complex)
    start = 0
    for size in sizes:
        if size:
            block[start:start + size, start:start + size] = _random_unitary(rng, size)
        start += size
    u = _random_unitary(rng, d) @ block
    return SpecialFamily(u @ family.p_proj @ u.conj().T, u @ family.q_proj @ u.conj().T,
                         u @ family.psi)
