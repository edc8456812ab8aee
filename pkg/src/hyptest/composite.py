"""Composite discrimination of ``{pP}`` against ``{qQ, |psi><psi|}``.

``P`` and ``Q`` are commuting orthogonal projections with ``p = 1/Tr P``
and ``q = 1/Tr Q``; ``psi`` is a unit vector. The optimal error for ``n``
copies depends on the family only through six numbers::

    p, q, R = Tr PQ, t = <psi, P psi>, s = <psi, Q psi>, r = <psi, PQ psi>

Writing ``psi`` in the four joint eigenspaces of ``P`` and ``Q`` reduces
``rho^(x)n - sigma1^(x)n - sigma2^(x)n`` to a diagonal part plus one 3x3
(``r = 0``) or 4x4 (``r > 0``) block, so the trace norm of a ``d**n``
dimensional operator costs one small eigenproblem. The error
``P_e*(rho_n, sigma1_n + sigma2_n)`` decays like ``max{R min(p, q), p t}**n``
while the norms involved tend to 3, so the block spectrum is computed in
extended precision with the working precision growing linearly in ``n``.
"""
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import mpmath
import numpy as np

from .errors import DomainError, InfeasibleParams, InvariantViolation, PrecisionLossWarning
from .linalg import ket_to_projector, psd_order_leq

PARAM_TOL = 1e-9
SLACK = 1e-12
CANCELLATION_TOL = 1e-3
EIGEN_AGREEMENT = 1e-9


@dataclass(frozen=True)
class FamilyParams:
    """The six scalars that fix the error behaviour of a special family.

    Validated on construction; values within tolerance of a boundary are
    clamped onto it and ``R`` is rounded to an integer.
    """
    p: float
    q: float
    t: float
    s: float
    r: float
    R: int

    def __post_init__(self):
        p, q, t, s, r = (float(x) for x in (self.p, self.q, self.t, self.s, self.r))
        for name, x in (("p", p), ("q", q)):
            if not 0 < x < 1:
                raise InvariantViolation(f"{name} must lie in (0, 1), got {x}")
            inv = 1 / x
            if abs(inv - round(inv)) > PARAM_TOL or round(inv) < 2:
                raise InvariantViolation(f"1/{name} must be an integer >= 2, got {inv}")
        R = self.R
        if abs(R - round(R)) > PARAM_TOL or round(R) < 0:
            raise InvariantViolation(f"R must be a nonnegative integer, got {R}")
        R = int(round(R))
        for name, x in (("t", t), ("s", s), ("r", r)):
            if not -SLACK <= x < 1:
                raise InvariantViolation(f"{name} must lie in [0, 1), got {x}")
        if t - r < -SLACK or s - r < -SLACK or 1 - t - s + r < -SLACK:
            raise InvariantViolation(
                f"need t >= r, s >= r and 1 - t - s + r >= 0; got t={t}, s={s}, r={r}")
        if R > min(1 / p, 1 / q) + PARAM_TOL:
            raise InvariantViolation(f"R = {R} exceeds min(1/p, 1/q) = {min(1 / p, 1 / q):g}")
        r = max(r, 0.0)
        t, s = max(t, r), max(s, r)
        for name, x in (("p", p), ("q", q), ("t", t), ("s", s), ("r", r), ("R", R)):
            object.__setattr__(self, name, x)

    @property
    def kind(self):
        """``"A"`` (3x3 reduced block) when ``r = 0``, else ``"B"`` (4x4)."""
        return "A" if self.r == 0 else "B"

    @property
    def branch(self):
        if self.r == 0:
            return "A"
        return "B:pt>=q" if self.p * self.t >= self.q else "B:pt<q"

    def as_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        missing = {"p", "q", "t", "s", "r", "R"} - set(d)
        if missing:
            raise InvariantViolation(f"missing parameters: {sorted(missing)}")
        return cls(**{k: d[k] for k in ("p", "q", "t", "s", "r", "R")})


@dataclass
class SpecialFamily:
    """Two commuting projections and a unit vector.

    Not validated on construction so that :func:`validate_assumptions`
    can report on arbitrary inputs.
    """
    p_proj: np.ndarray
    q_proj: np.ndarray
    psi: np.ndarray

    def __post_init__(self):
        self.p_proj = np.asarray(self.p_proj, dtype=complex)
        self.q_proj = np.asarray(self.q_proj, dtype=complex)
        self.psi = np.asarray(self.psi, dtype=complex).reshape(-1)

    @property
    def dim(self):
        return self.psi.shape[0]

    @property
    def rho(self):
        return self.p_proj / np.trace(self.p_proj).real

    @property
    def sigma1(self):
        return self.q_proj / np.trace(self.q_proj).real

    @property
    def sigma2(self):
        return ket_to_projector(self.psi)


def _commutator_norm(a, b):
    return np.linalg.norm(a @ b - b @ a)


def extract_params(family):
    """Read ``(p, q, t, s, r, R)`` off a family, validating every invariant."""
    P, Q, psi = family.p_proj, family.q_proj, family.psi
    if P.shape != Q.shape or P.shape[0] != psi.shape[0]:
        raise InvariantViolation("projections and vector have inconsistent dimensions")
    if abs(np.linalg.norm(psi) - 1) > 1e-12:
        raise InvariantViolation(f"psi must be a unit vector, norm is {np.linalg.norm(psi)}")
    for name, X in (("P", P), ("Q", Q)):
        if np.linalg.norm(X @ X - X) > 1e-10 or np.linalg.norm(X - X.conj().T) > 1e-10:
            raise InvariantViolation(f"{name} is not an orthogonal projection")
    if _commutator_norm(P, Q) > 1e-10:
        raise InvariantViolation("P and Q do not commute")
    PQ = P @ Q
    R = np.trace(PQ).real
    if abs(R - round(R)) > PARAM_TOL:
        raise InvariantViolation(f"Tr PQ = {R} is not an integer")

    def expect(X):
        return float(np.vdot(psi, X @ psi).real)

    return FamilyParams(p=1 / np.trace(P).real, q=1 / np.trace(Q).real,
                        t=expect(P), s=expect(Q), r=expect(PQ), R=int(round(R)))


def validate_assumptions(family):
    """Labels of the violated structural assumptions, empty when all hold.

    ``(1)`` P and Q commute; ``(2)`` psi is a unit vector; ``(3)`` neither
    projection dominates the other; ``(4)`` the pure state commutes with
    neither projection; ``(5)`` both projections have rank at least two.
    """
    P, Q, psi = family.p_proj, family.q_proj, family.psi
    violated = []
    if _commutator_norm(P, Q) > 1e-10:
        violated.append("(1)")
    if abs(np.linalg.norm(psi) - 1) > 1e-12:
        violated.append("(2)")
    if psd_order_leq(P, Q) or psd_order_leq(Q, P):
        violated.append("(3)")
    pure = ket_to_projector(psi)
    if min(_commutator_norm(pure, P), _commutator_norm(pure, Q)) <= 1e-9:
        violated.append("(4)")
    if min(np.trace(P).real, np.trace(Q).real) < 2 - PARAM_TOL:
        violated.append("(5)")
    return violated


def block_sizes(params):
    """Dimensions of the blocks ``Im(P - PQ), Im PQ, Im(Q - PQ)`` and the complement."""
    a, b = round(1 / params.p), round(1 / params.q)
    return (a - params.R, params.R, b - params.R, 1)


def canonical_realization(params):
    """Smallest block-diagonal family with the given parameters.

    Each of the four blocks carries one component of ``psi``, placed on
    the block's first basis vector. The complement block always has one
    dimension.
    """
    sizes = block_sizes(params)
    weights = (params.t - params.r, params.r, params.s - params.r,
               1 - params.t - params.s + params.r)
    if sizes[0] < 0 or sizes[2] < 0:
        raise InfeasibleParams(f"R = {params.R} exceeds Tr P or Tr Q")
    for size, w, label in zip(sizes, weights, ("P - PQ", "PQ", "Q - PQ", "complement")):
        if size == 0 and w > SLACK:
            raise InfeasibleParams(f"psi needs a component in the empty block Im({label})")
    dim = sum(sizes)
    starts = np.cumsum((0,) + sizes[:-1])
    p_diag = np.zeros(dim)
    q_diag = np.zeros(dim)
    p_diag[:sizes[0] + sizes[1]] = 1
    q_diag[sizes[0]:sizes[0] + sizes[1] + sizes[2]] = 1
    psi = np.zeros(dim, dtype=complex)
    for start, size, w in zip(starts, sizes, weights):
        if size:
            psi[start] = math.sqrt(max(w, 0.0))
    return SpecialFamily(np.diag(p_diag).astype(complex), np.diag(q_diag).astype(complex), psi)


# -- reduced blocks --------------------------------------------------------

def _log_pow(x, n):
    return n * math.log(x) if x > 0 else -math.inf


def _log_diff_pow(x, y, n):
    """``log(x**n - y**n)`` for ``x >= y >= 0`` without forming either power."""
    if x <= y:
        return -math.inf
    if y == 0:
        return n * math.log(x)
    return n * math.log(x) + math.log1p(-math.exp(n * (math.log(y) - math.log(x))))


def _sqrt_prod(*logs):
    total = 0.5 * sum(logs)
    return math.exp(total) if total > -math.inf else 0.0


def reduced_matrix(params, n):
    """The 3x3 (``r = 0``) or 4x4 (``r > 0``) block of ``sigma1_n + sigma2_n - rho_n``.

    Powers such as ``t**n`` are combined in log-magnitude form so that
    off-diagonal products stay representable after the factors underflow.
    """
    p, q, t, s, r = params.p, params.q, params.t, params.s, params.r
    P, Q, T, S = (x ** n for x in (p, q, t, s))
    if params.kind == "A":
        U = max(1 - T - S, 0.0)
        logs = [_log_pow(t, n), _log_pow(s, n), math.log(U) if U > 0 else -math.inf]
        diag = [T - P, S + Q, U]
    else:
        Rr = r ** n
        U = max(1 - T - S + Rr, 0.0)
        logs = [_log_diff_pow(t, r, n), _log_pow(r, n), _log_diff_pow(s, r, n),
                math.log(U) if U > 0 else -math.inf]
        comps = [math.exp(x) for x in logs]
        diag = [comps[0] - P, Rr + Q - P, comps[2] + Q, comps[3]]
    k = len(diag)
    m = np.empty((k, k))
    for i in range(k):
        for j in range(k):
            m[i, j] = diag[i] if i == j else _sqrt_prod(logs[i], logs[j])
    return m


def _powers(params, n):
    f = mpmath.mpf
    return {name: f(getattr(params, name)) ** n for name in ("p", "q", "t", "s", "r")}


def _reduced_matrix_mp(params, n):
    w = _powers(params, n)
    P, Q, T, S, Rr = w["p"], w["q"], w["t"], w["s"], w["r"]
    if params.kind == "A":
        comps = [T, S, max(1 - T - S, 0)]
        diag = [T - P, S + Q, comps[2]]
    else:
        comps = [max(T - Rr, 0), Rr, max(S - Rr, 0), max(1 - T - S + Rr, 0)]
        diag = [comps[0] - P, Rr + Q - P, comps[2] + Q, comps[3]]
    roots = [mpmath.sqrt(c) for c in comps]
    k = len(diag)
    m = mpmath.matrix(k, k)
    for i in range(k):
        for j in range(k):
            m[i, j] = diag[i] if i == j else roots[i] * roots[j]
    return m


def _charpoly_mp(params, n):
    """Monic characteristic polynomial of the reduced block, highest degree first."""
    w = _powers(params, n)
    p, q, t, s, r = w["p"], w["q"], w["t"], w["s"], w["r"]
    if params.kind == "A":
        return [mpmath.mpf(1), -(1 + q - p), -p + q - p * q - q * s + p * t, p * q * (1 - t - s)]
    a3 = -1 + 2 * p - 2 * q
    a2 = p * (-2 - 3 * q + t) + q * (2 + q - s) + p ** 2
    a1 = p ** 2 * (-1 - q + t) + q ** 2 * (-1 + s) + p * q * (3 + q + 2 * r - 2 * s - 2 * t)
    a0 = p * q * (p - q) * (1 - t - s + r)
    return [mpmath.mpf(1), a3, a2, a1, a0]


def _real_roots(coeffs, max_iter=500):
    """All roots of a real-rooted monic polynomial, largest first.

    Laguerre iteration started above the largest root decreases
    monotonically onto it; the root is then deflated and the search resumes
    from it, so clustered roots are separated by deflation rather than by
    the iteration itself.
    """
    c = list(coeffs)
    eps = mpmath.mpf(2) ** (4 - mpmath.mp.prec)
    x = 1 + max(abs(a) for a in c[1:])
    roots = []
    while len(c) > 2:
        m = len(c) - 1
        for _ in range(max_iter):
            f, d, d2 = c[0], mpmath.mpf(0), mpmath.mpf(0)
            for a in c[1:]:
                d2 = d2 * x + d
                d = d * x + f
                f = f * x + a
            if f == 0:
                break
            g = d / f
            h = g * g - 2 * d2 / f
            disc = (m - 1) * (m * h - g * g)
            sq = mpmath.sqrt(disc) if disc > 0 else 0
            den = g + sq if g >= 0 else g - sq
            if den == 0:
                break
            dx = m / den
            if dx <= 0:
                break
            x -= dx
            if dx <= eps * abs(x):
                break
        roots.append(x)
        deflated = [c[0]]
        for a in c[1:-1]:
            deflated.append(a + deflated[-1] * x)
        c = deflated
    roots.append(-c[1] / c[0])
    return roots


def working_precision(params, n):
    """Bits needed to resolve the composite error of ``n`` copies.

    The error is at least ``(2/3) max{R min(p,q), pt}**n`` while the block
    entries are of order one; twice the bit-length of the smallest relevant
    scale leaves room for eigenvalue clusters.
    """
    rate = max(params.R * min(params.p, params.q), params.p * params.t)
    scale = min(params.p, params.q, rate) if rate > 0 else min(params.p, params.q)
    return 96 + math.ceil(2 * n * math.log2(1 / scale))


@dataclass
class ReducedEigenReport:
    n: int
    matrix_kind: str
    eigenvalues: np.ndarray
    coeffs: np.ndarray
    poly_eigenvalues: np.ndarray
    negative_sum: float
    precision_bits: int
    precision_loss: bool
    _spectrum: list = field(default=None, repr=False, compare=False)
    _poly_spectrum: list = field(default=None, repr=False, compare=False)

    @property
    def trace_norm(self):
        return float(np.abs(self.eigenvalues).sum())


def reduced_eigen(params, n, precision=None):
    """Spectrum of the reduced block computed two independent ways.

    The symmetric eigensolver runs at the working precision; the
    characteristic polynomial (coefficients ``coeffs``, constant term first)
    is solved at twice that. ``precision_loss`` is set when the two
    spectra differ by more than ``1e-9`` times the largest eigenvalue.
    """
    bits = precision or working_precision(params, n)
    with mpmath.workprec(bits):
        m = _reduced_matrix_mp(params, n)
        spectrum = sorted(mpmath.eigsy(m, eigvals_only=True))
    with mpmath.workprec(2 * bits):
        coeffs = _charpoly_mp(params, n)
        poly = sorted(_real_roots(coeffs))
    scale = max(abs(x) for x in spectrum)
    with mpmath.workprec(bits):
        gap = max(abs(a - b) for a, b in zip(spectrum, poly))
        neg = mpmath.fsum(x for x in spectrum if x < 0)
    return ReducedEigenReport(
        n=n, matrix_kind=params.kind,
        eigenvalues=np.array([float(x) for x in spectrum]),
        coeffs=np.array([float(x) for x in coeffs[::-1][:-1]]),
        poly_eigenvalues=np.array([float(x) for x in poly]),
        negative_sum=float(neg), precision_bits=bits,
        precision_loss=bool(gap > EIGEN_AGREEMENT * max(scale, 1e-300)),
        _spectrum=spectrum, _poly_spectrum=poly)


@dataclass(frozen=True)
class CompositeError:
    """Exact ``P_e*(rho_n, sigma1_n + sigma2_n)`` with its cancellation monitor."""
    n: int
    value: float
    log_value: float
    naive: float
    precision_loss: bool
    precision_bits: int


def _diagonal_mass(params, n):
    """``Tr`` of the positive diagonal remainder that enters the error besides the block."""
    w = _powers(params, n)
    P, Q = w["p"], w["q"]
    mass = P + (mpmath.mpf(params.R) * min(mpmath.mpf(params.p), mpmath.mpf(params.q))) ** n
    if params.kind == "B":
        mass += max(P - Q, 0)
    return mass


def composite_error(params, n, precision=None):
    """Composite error for ``n`` copies evaluated in two algebraic forms.

    The returned value is ``p^n [+ max(p^n - q^n, 0)] + (R min(p,q))^n``
    plus the sum of negative block eigenvalues. The naive form
    ``(3 - ||rho_n - sigma1_n - sigma2_n||_1) / 2`` is recomputed from the
    characteristic-polynomial spectrum. ``precision_loss`` is set when the
    two disagree by more than ``1e-3`` relative, or when the working
    precision cannot resolve the value to that accuracy at all.
    """
    eig = reduced_eigen(params, n, precision)
    bits = eig.precision_bits
    with mpmath.workprec(bits):
        mass = _diagonal_mass(params, n)
        stable = mass + mpmath.fsum(x for x in eig._spectrum if x < 0)
        w = _powers(params, n)
        P, Q = w["p"], w["q"]
        rmin = (mpmath.mpf(params.R) * min(mpmath.mpf(params.p), mpmath.mpf(params.q))) ** n
        offset = 1 + P + Q + 2 * rmin
        if params.kind == "B":
            offset += abs(P - Q)
        naive = (offset - mpmath.fsum(abs(x) for x in eig._poly_spectrum)) / 2
        stable = max(stable, 0)
        # rounding in a spectrum of total size ||B||_1 limits the resolvable
        # error; below that the two forms can agree and still both be wrong
        resolution = mpmath.mpf(2) ** (4 - bits) * mpmath.fsum(abs(x) for x in eig._spectrum)
        loss = (abs(naive - stable) > CANCELLATION_TOL * stable + resolution
                or resolution > CANCELLATION_TOL * stable)
        log_value = float(mpmath.log(stable)) if stable > 0 else -math.inf
    return CompositeError(n=n, value=float(stable), log_value=log_value, naive=float(naive),
                          precision_loss=bool(loss or eig.precision_loss), precision_bits=bits)


def composite_sum_error(params, n, precision=None):
    """``P_e*(rho^(x)n, sigma1^(x)n + sigma2^(x)n)`` for the family with these parameters."""
    res = composite_error(params, n, precision)
    if res.precision_loss:
        warnings.warn(f"n={n}: value {res.value:.6g} is not resolved at {res.precision_bits} bits "
                      f"(naive form gives {res.naive:.6g})", PrecisionLossWarning, stacklevel=2)
    return res.value


def pair_log_errors(params, n):
    """``log P_e*(rho_n, sigma1_n)`` and ``log P_e*(rho_n, sigma2_n)``.

    The commuting pair gives ``(R min(p,q))^n`` exactly. For the pure state
    the operator lives on a 2D block with trace ``p^n - 1`` and determinant
    ``-p^n (1 - t^n)``, giving
    ``2 (pt)^n / (1 + p^n + sqrt((1 - p^n)^2 + 4 p^n (1 - t^n)))``.
    """
    p, t = params.p, params.t
    rmin = params.R * min(p, params.q)
    first = n * math.log(rmin) if rmin > 0 else -math.inf
    if p * t == 0:
        return first, -math.inf
    pn, tn = p ** n, t ** n
    denom = 1 + pn + math.sqrt((1 - pn) ** 2 + 4 * pn * (1 - tn))
    return first, math.log(2) + n * math.log(p * t) - math.log(denom)


def _asymptotic_norm_mp(params, n):
    w = _powers(params, n)
    P, Q = w["p"], w["q"]
    pt = (mpmath.mpf(params.p) * mpmath.mpf(params.t)) ** n
    if params.kind == "A":
        return 1 + P + Q - 2 * pt
    base = 1 + P + Q + abs(P - Q)
    return base - 2 * pt if params.branch == "B:pt>=q" else base


def asymptotic_norm(params, n):
    """Leading-order trace norm of the reduced block (remainder dropped).

    ``r = 0``: ``1 + p^n + q^n - 2 (pt)^n``. ``r > 0``:
    ``1 + p^n + q^n + |p^n - q^n|``, minus ``2 (pt)^n`` when ``pt >= q``.
    """
    with mpmath.workprec(working_precision(params, n)):
        return float(_asymptotic_norm_mp(params, n))


def remainder_scale(params, n):
    """Order of the neglected remainder: ``(pt)^n``, or ``min(p,q)^n`` on the ``pt < q`` branch."""
    if params.branch == "B:pt<q":
        return min(params.p, params.q) ** n
    return (params.p * params.t) ** n


def remainder_ratio(params, n):
    """``| ||block||_1 - asymptotic_norm | / remainder_scale`` in extended precision.

    Zero when the scale vanishes (the formula is then exact).
    """
    eig = reduced_eigen(params, n)
    with mpmath.workprec(eig.precision_bits):
        exact = mpmath.fsum(abs(x) for x in eig._spectrum)
        diff = abs(exact - _asymptotic_norm_mp(params, n))
        if params.branch == "B:pt<q":
            scale = min(mpmath.mpf(params.p), mpmath.mpf(params.q)) ** n
        else:
            scale = (mpmath.mpf(params.p) * mpmath.mpf(params.t)) ** n
        return float(diff / scale) if scale > 0 else 0.0


def conjectured_exponent(params):
    """``log max{R min(p,q), p t}``, or ``-inf`` when both vanish."""
    best = max(params.R * min(params.p, params.q), params.p * params.t)
    return math.log(best) if best > 0 else -math.inf


# -- exponent series --------------------------------------------------------

@dataclass(frozen=True)
class SeriesEntry:
    n: int
    log_error: float
    one_over_n_log: float
    slope: float
    precision_loss: bool


@dataclass
class ExponentSeries:
    entries: list
    estimate: float
    conjectured: float

    def rows(self):
        return [asdict(e) | {"conjectured": self.conjectured} for e in self.entries]


def _log_error_point(args):
    params, n, precision = args
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PrecisionLossWarning)
        res = composite_error(params, n, precision)
    return res.log_value, res.precision_loss


def exponent_series(params, n_max, step=1, n_min=1, precision=None, jobs=1):
    """Per-``n`` log-errors and their forward slopes for ``n = n_min, n_min + step, ...``.

    ``slope(n) = (log P(n + step) - log P(n)) / step`` converges to the
    exponent without the ``O(1/n)`` offset of ``(1/n) log P(n)``. Flagged
    entries are kept; ``estimate`` is the slope at the largest ``n`` whose
    two endpoints are both unflagged (``nan`` if there is none).
    """
    if n_min < 1 or step < 1 or n_max < n_min:
        raise DomainError(f"invalid n range {n_min}:{n_max}:{step}")
    return series_at(params, range(n_min, n_max + 1, step), step, precision, jobs)


def series_at(params, ns, step=1, precision=None, jobs=1):
    """Like :func:`exponent_series` for an arbitrary set of ``n``; slopes use ``n + step``."""
    ns = sorted(set(int(n) for n in ns))
    if not ns or ns[0] < 1 or step < 1:
        raise DomainError("need at least one n >= 1 and step >= 1")
    grid = sorted(set(ns) | {n + step for n in ns})
    tasks = [(params, n, precision) for n in grid]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            points = dict(zip(grid, pool.map(_log_error_point, tasks)))
    else:
        points = {n: _log_error_point(t) for n, t in zip(grid, tasks)}
    entries = []
    estimate = math.nan
    for n in ns:
        (lo, flag), (hi, flag_next) = points[n], points[n + step]
        slope = (hi - lo) / step if math.isfinite(lo) and math.isfinite(hi) else math.nan
        entries.append(SeriesEntry(n, lo, lo / n, slope, flag))
        if not (flag or flag_next) and math.isfinite(slope):
            estimate = slope
    return ExponentSeries(entries, estimate, conjectured_exponent(params))


# -- theorem verification ----------------------------------------------------

@dataclass(frozen=True)
class ProbeResult:
    n: int
    lower_rate: float
    upper_rate: float
    slope: float
    remainder_ratio: float
    sandwich_ok: bool
    oracle_gap: float = math.nan


@dataclass
class TheoremReport:
    params: FamilyParams
    branch: str
    conjectured: float
    probes: list
    remainder_decreasing: bool
    sandwich_ok: bool
    final_gap: float

    @property
    def passed(self):
        oracle_ok = all(not (pr.oracle_gap > 1e-9) for pr in self.probes)
        return self.sandwich_ok and self.remainder_decreasing and oracle_ok


def verify_theorem(params, n_probe, chernoff=None, oracle=False, tol=1e-9):
    """Numerical check of the composite exponent for one parameter set.

    For each probe ``n``:

    * ``lower_rate`` is ``(1/n) log max_i P_e*(rho_n, sigma_i,n)`` and
      ``upper_rate`` is ``(1/n) log P_e*(rho_n, sigma1_n + sigma2_n)``; the
      chain ``-max_i C_i <= lower_rate <= upper_rate`` and
      ``lower_rate <= -min_i C_i`` must hold.
    * ``remainder_ratio`` must strictly decrease across probes.
    * ``slope`` is the forward log-difference of the upper quantity.

    ``chernoff`` overrides the pairwise divergences ``(C_1, C_2)``, which
    default to ``-log(R min(p,q))`` and ``-log(pt)``. With ``oracle=True``
    each probe is also compared against explicit tensor powers of the
    canonical realization when the dimension budget allows.
    """
    if chernoff is None:
        c1 = -math.log(params.R * min(params.p, params.q)) if params.R else math.inf
        c2 = -math.log(params.p * params.t) if params.t else math.inf
        chernoff = (c1, c2)
    c_max, c_min = max(chernoff), min(chernoff)
    family = budget = None
    if oracle:
        from .oracle import OracleBudget, tensor_error_bruteforce
        family = canonical_realization(params)
        budget = OracleBudget.from_env()
    probes = []
    for n in sorted(n_probe):
        here = composite_error(params, n)
        nxt = composite_error(params, n + 1)
        upper = here.log_value / n
        lower = max(pair_log_errors(params, n)) / n
        ok = (-c_max - tol <= lower <= upper + tol) and lower <= -c_min + tol
        gap = math.nan
        if family is not None and family.dim ** n <= budget.max_dim:
            gap = abs(tensor_error_bruteforce(family, n, budget) - here.value)
        slope = nxt.log_value - here.log_value
        probes.append(ProbeResult(n, lower, upper, slope, remainder_ratio(params, n), ok, gap))
    ratios = [pr.remainder_ratio for pr in probes]
    decreasing = all(b < a or b == 0 for a, b in zip(ratios, ratios[1:]))
    conj = conjectured_exponent(params)
    final = probes[-1].slope if probes else math.nan
    return TheoremReport(params, params.branch, conj, probes, decreasing,
                         all(pr.sandwich_ok for pr in probes),
                         abs(final - conj) if math.isfinite(conj) else math.nan)


def random_params(rng, max_dim=6, zero_r=False, p_equal_q=False):
    """Random feasible parameters whose canonical realization has dimension ``<= max_dim``.

    Block weights of ``psi`` are drawn from a flat Dirichlet distribution
    over the nonempty blocks, so ``t, s`` lie strictly inside ``(0, 1)``.
    """
    while True:
        a = int(rng.integers(2, max_dim))
        b = a if p_equal_q else int(rng.integers(2, max_dim))
        R = int(rng.integers(0 if zero_r else 1, min(a, b) + 1))
        sizes = (a - R, R, b - R, 1)
        if sum(sizes) > max_dim or (sizes[0] == 0 and sizes[1] == 0) \
                or (sizes[2] == 0 and sizes[1] == 0):
            continue
        if zero_r and sizes[0] * sizes[2] == 0:
            continue
        live = [size > 0 and not (zero_r and k == 1) for k, size in enumerate(sizes)]
        w = np.zeros(4)
        w[live] = rng.dirichlet(np.ones(sum(live)))
        t, s, r = w[0] + w[1], w[2] + w[1], w[1]
        if not (0 < t < 1 and 0 < s < 1):
            continue
        return FamilyParams(p=1 / a, q=1 / b, t=t, s=s, r=r, R=R)
