"""Single-shot discrimination of generalized states.

A generalized state is any PSD matrix ``A_i`` (typically ``p_i * rho_i``),
and a POVM is a sequence of PSD effects summing to the identity. Success
and error probabilities are the weighted sums ``sum_i Tr A_i M_i`` and
``sum_i Tr A_i (I - M_i)``.
"""
import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._optimize import grid_then_golden
from .errors import (DomainError, InvalidState, NonDiagonal, OptimalityWarning,
                     ShapeError, ZeroOperand)
from .linalg import (RANK_TOL, TOL_HERM, TOL_PSD, as_hermitian, as_psd, absolute_value,
                     positive_part_projectors, psd_order_leq)

TOL_POVM = 1e-9


@dataclass(frozen=True)
class ChernoffResult:
    """Chernoff divergence ``C = -log g(alpha_star)`` in nats.

    ``objective_at_alpha`` is ``g(alpha_star) = Tr A^a B^(1-a)``; it is zero
    (and ``value`` infinite) for operators with orthogonal supports.
    """
    value: float
    alpha_star: float
    objective_at_alpha: float


def _operators(ops):
    ops = [as_psd(op) for op in ops]
    if len({op.shape for op in ops}) > 1:
        raise ShapeError("all operators must have the same dimension")
    return ops


def _pair(a1, a2):
    return _operators([a1, a2])


def is_valid_povm(effects, tol=TOL_POVM):
    """True iff every effect is PSD and the effects sum to the identity within ``tol``."""
    effects = [as_hermitian(e) for e in effects]
    if not effects:
        return False
    if len({e.shape for e in effects}) > 1:
        raise ShapeError("POVM effects must share one dimension")
    d = effects[0].shape[0]
    if np.linalg.norm(sum(effects) - np.eye(d), 2) > tol:
        return False
    return all(np.linalg.eigvalsh(e)[0] >= -tol for e in effects)


def born_probabilities(rho, effects):
    rho = as_psd(rho)
    tr = np.trace(rho).real
    if abs(tr - 1) > 1e-9:
        raise InvalidState(f"density operator must have unit trace, got {tr:.12g}")
    _operators([rho, *effects])
    return np.array([np.trace(rho @ m).real for m in effects])


def _check_lengths(states, effects):
    if len(states) != len(effects):
        raise ShapeError(f"{len(states)} states but {len(effects)} POVM effects")


def success_probability(states, effects):
    """Bayesian success ``sum_i Tr A_i M_i``."""
    _check_lengths(states, effects)
    ops = _operators([*states, *effects])
    r = len(states)
    return float(sum(np.trace(a @ m).real for a, m in zip(ops[:r], ops[r:])))


def error_probability(states, effects):
    """Bayesian error ``sum_i Tr A_i (I - M_i)``."""
    _check_lengths(states, effects)
    ops = _operators([*states, *effects])
    r = len(states)
    eye = np.eye(ops[0].shape[0])
    return float(sum(np.trace(a @ (eye - m)).real for a, m in zip(ops[:r], ops[r:])))


def classical_optimal(states, tol=TOL_HERM):
    """Optimal success for commuting (diagonal) generalized states.

    Returns ``(value, ml_povm, sup)`` where ``sup`` is the entrywise maximum
    of the diagonals and ``ml_povm`` is the maximum-likelihood measurement
    that sends each basis index to the lowest-index maximizer.
    """
    states = _operators(states)
    for i, a in enumerate(states):
        off = a - np.diag(np.diag(a))
        if np.abs(off).max(initial=0.0) > tol:
            raise NonDiagonal(f"state {i} has off-diagonal entries")
    diags = np.array([np.diag(a).real for a in states])
    winner = np.argmax(diags, axis=0)   # argmax returns the first maximizer
    sup = diags.max(axis=0)
    povm = [np.diag((winner == i).astype(float)) for i in range(len(states))]
    return float(sup.sum()), povm, np.diag(sup)


def binary_optimal_error(a1, a2):
    """Minimal error ``Tr (A1 + A2 - |A1 - A2|) / 2`` and an optimal test.

    The test is returned as the POVM ``[T, I - T]`` with ``T = {A1 - A2 > 0}``.
    """
    a1, a2 = _pair(a1, a2)
    t, _ = positive_part_projectors(a1 - a2)
    return float(_helstrom_value(a1, a2)), [t, np.eye(a1.shape[0]) - t]


def hybrid_sup_binary(a1, a2):
    """Trace-minimal PSD upper bound ``(A1 + A2 + |A1 - A2|) / 2`` of two operators."""
    a1, a2 = _pair(a1, a2)
    return 0.5 * (a1 + a2 + absolute_value(a1 - a2))


def verify_optimality(states, effects, tol=TOL_PSD):
    """Check ``A_i <= sum_k A_k M_k`` for all ``i``.

    When the test passes, the necessary condition ``M_i (A_i - A_k) M_k = 0``
    is checked as well and each violation is reported as an
    :class:`OptimalityWarning`.
    """
    _check_lengths(states, effects)
    ops = _operators([*states, *effects])
    states, effects = ops[:len(states)], ops[len(states):]
    y = sum(a @ m for a, m in zip(states, effects))
    y = (y + y.conj().T) / 2
    if not all(psd_order_leq(a, y, tol) for a in states):
        return False
    for i, (ai, mi) in enumerate(zip(states, effects)):
        for k, (ak, mk) in enumerate(zip(states, effects)):
            residual = np.linalg.norm(mi @ (ai - ak) @ mk)
            if residual > tol * max(1.0, np.linalg.norm(ai) + np.linalg.norm(ak)):
                warnings.warn(f"M_{i}(A_{i} - A_{k})M_{k} has norm {residual:.3g}",
                              OptimalityWarning, stacklevel=2)
    return True


def _chernoff_objective(a, b, rank_tol=RANK_TOL):
    """Return ``alpha -> Tr A^alpha B^(1-alpha)`` using one eigendecomposition per operand."""
    wa, ua = np.linalg.eigh(a)
    wb, ub = np.linalg.eigh(b)
    wa = np.where(wa > rank_tol * wa.max(), wa, 0.0)
    wb = np.where(wb > rank_tol * wb.max(), wb, 0.0)
    overlap = np.abs(ua.conj().T @ ub) ** 2

    def g(alpha):
        pa = np.where(wa > 0, np.abs(wa) ** alpha, 0.0)
        pb = np.where(wb > 0, np.abs(wb) ** (1 - alpha), 0.0)
        return float(pa @ overlap @ pb)

    return g


def _nonzero_pair(a, b):
    a, b = _pair(a, b)
    for name, op in (("a", a), ("b", b)):
        if np.abs(op).max() == 0:
            raise ZeroOperand(f"operand {name} is the zero matrix")
    return a, b


def _helstrom_value(a1, a2):
    return 0.5 * (np.trace(a1 + a2).real - np.abs(np.linalg.eigvalsh(a1 - a2)).sum())


def _neg_log(g):
    return math.inf if g <= 0 else -math.log(g)


def chernoff_divergence(a, b, tol=1e-10):
    """``C(A, B) = -min_{0<=alpha<=1} log Tr A^alpha B^(1-alpha)``.

    ``alpha -> Tr A^alpha B^(1-alpha)`` is log-convex, so a coarse grid
    followed by golden-section refinement finds the global minimum.
    """
    a, b = _nonzero_pair(a, b)
    g = _chernoff_objective(a, b)
    alpha, gmin = grid_then_golden(g, 0.0, 1.0, steps=64, tol=tol)
    return ChernoffResult(_neg_log(gmin), alpha, gmin)


def audenaert_check(a, b, alpha, slack=1e-10):
    """True iff ``(Tr A + Tr B)/2 - ||A - B||_1 / 2 <= Tr A^alpha B^(1-alpha) + slack``."""
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    a, b = _pair(a, b)
    lhs = _helstrom_value(a, b)
    rhs = _chernoff_objective(a, b)(alpha)
    return bool(lhs <= rhs + slack)


def worst_case_composite_error(a, bs, tol=1e-10):
    """Optimal worst-case error ``inf_T Tr A(I - T) + max_i Tr B_i T`` for two alternatives.

    By minimax duality this equals ``max_mu P_e*(A, mu B1 + (1 - mu) B2)``,
    a concave function of ``mu``. Returns ``(value, mu_star)``.
    """
    if len(bs) != 2:
        raise ShapeError(f"exactly two alternative states are supported, got {len(bs)}")
    a, b1, b2 = _operators([a, *bs])

    def neg(mu):
        return -_helstrom_value(a, mu * b1 + (1 - mu) * b2)

    mu, val = grid_then_golden(neg, 0.0, 1.0, steps=64, tol=tol)
    return float(-val), mu


__all__ = [
    "ChernoffResult", "TOL_POVM", "audenaert_check", "binary_optimal_error",
    "born_probabilities", "chernoff_divergence", "classical_optimal", "error_probability",
    "hybrid_sup_binary", "is_valid_povm", "success_probability", "verify_optimality",
    "worst_case_composite_error"
]
