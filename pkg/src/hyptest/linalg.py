"""Dense Hermitian linear algebra on small matrices.

Operators are plain complex ``numpy`` arrays. Every public function
validates its operands, so callers may pass lists or real arrays.
Only spectral functions are exposed: results never depend on which
orthonormal basis the eigensolver picks inside a degenerate eigenspace.
"""
from functools import reduce
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InvalidOperand, ResourceError, ShapeError

TOL_HERM = 1e-10
TOL_PSD = 1e-9
TOL_EIG = 1e-12
RANK_TOL = 1e-10
MAX_DIM = 4096


class EigenReport(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_square(a):
    a = np.asarray(a)
    # real input stays real so that LAPACK can use the cheaper real routines
    a = a.astype(complex if np.iscomplexobj(a) else float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ShapeError(f"expected a non-empty square matrix, got shape {a.shape}")
    return a


def as_hermitian(h, tol=TOL_HERM):
    """Return ``h`` as an exactly Hermitian array (real input stays real).

    Raises :class:`InvalidOperand` when ``||h - h*||_F`` exceeds
    ``tol * max(1, ||h||_F)``.
    """
    h = as_square(h)
    skew = np.linalg.norm(h - h.conj().T)
    if skew > tol * max(1.0, np.linalg.norm(h)):
        raise InvalidOperand(f"matrix is not Hermitian (||H - H*||_F = {skew:.3g})")
    return (h + h.conj().T) / 2


def as_psd(a, tol=TOL_PSD):
    a = as_hermitian(a)
    w = np.linalg.eigvalsh(a)
    if w[0] < -tol * (1 + np.abs(w).sum()):
        raise InvalidOperand(f"matrix is not positive semidefinite (min eigenvalue {w[0]:.3g})")
    return a


def _same_dim(*ops):
    dims = {op.shape[0] for op in ops}
    if len(dims) != 1:
        raise ShapeError(f"operands have different dimensions: {sorted(dims)}")


def eig_hermitian(h):
    """Eigendecomposition with ascending eigenvalues."""
    w, v = np.linalg.eigh(as_hermitian(h))
    return EigenReport(w, v)


def trace_norm(h):
    """Sum of absolute eigenvalues."""
    return float(np.abs(np.linalg.eigvalsh(as_hermitian(h))).sum())


def _spectral_map(a, fn):
    w, v = np.linalg.eigh(a)
    return (v * fn(w)) @ v.conj().T


def _clip_small(w, rank_tol):
    # eigenvalues at or below the rank threshold are treated as exact zeros
    top = w.max(initial=0.0)
    return np.where(w > rank_tol * top, w, 0.0)


def fractional_power(a, alpha, rank_tol=RANK_TOL):
    """Return ``A**alpha`` for PSD ``A`` and ``0 <= alpha <= 1``.

    Zero eigenvalues map to zero for every ``alpha``, so ``alpha = 0``
    yields the support projector of ``A``.
    """
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    a = as_psd(a)

    def power(w):
        w = _clip_small(w, rank_tol)
        return np.where(w > 0, np.abs(w) ** alpha, 0.0)

    return _spectral_map(a, power)


def support_projector(a, rank_tol=RANK_TOL):
    a = as_psd(a)
    return _spectral_map(a, lambda w: (_clip_small(w, rank_tol) > 0).astype(float))


def positive_part_projectors(x, rank_tol=RANK_TOL):
    """Projectors ``{X > 0}`` and ``{X >= 0}``.

    An eigenvalue counts as zero when its magnitude is at most
    ``rank_tol`` times the largest eigenvalue magnitude.
    """
    x = as_hermitian(x)
    w, v = np.linalg.eigh(x)
    cut = rank_tol * np.abs(w).max()
    strict = v[:, w > cut]
    weak = v[:, w >= -cut]
    return strict @ strict.conj().T, weak @ weak.conj().T


def absolute_value(x):
    """Operator absolute value ``|X| = (X^2)^(1/2)``."""
    return _spectral_map(as_hermitian(x), np.abs)


def is_orthogonal(a, b, tol=TOL_PSD):
    a, b = as_psd(a), as_psd(b)
    _same_dim(a, b)
    overlap = abs(np.trace(a @ b))
    return bool(overlap <= tol * (1 + np.trace(a).real) * (1 + np.trace(b).real))


def tensor_power(a, n, max_dim=MAX_DIM):
    """``n``-fold Kronecker power, refusing results larger than ``max_dim``."""
    a = as_square(a)
    if n < 1:
        raise DomainError(f"tensor power needs n >= 1, got {n}")
    d = a.shape[0]
    if d ** n > max_dim:
        raise ResourceError(f"dimension {d}**{n} = {d ** n} exceeds the cap {max_dim}")
    return reduce(np.kron, [a] * n)


def psd_order_leq(a, b, tol=TOL_PSD):
    """True iff ``A <= B`` in the PSD order, i.e. ``B - A >= -tol``."""
    a, b = as_hermitian(a), as_hermitian(b)
    _same_dim(a, b)
    return bool(np.linalg.eigvalsh(b - a)[0] >= -tol)


def ket_to_projector(psi):
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())
