"""Bounded one-dimensional minimization for unimodal objectives."""
import math

import numpy as np

INVPHI = (math.sqrt(5) - 1) / 2


def golden_section(f, lo, hi, tol=1e-10):
    """Golden-section search for the minimum of a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(x, f(x))``. Never evaluates ``f`` outside the interval.
    """
    a, b = lo, hi
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def grid_then_golden(f, lo=0.0, hi=1.0, steps=64, tol=1e-10):
    """Minimize ``f`` on ``[lo, hi]``: coarse grid scan, then golden refinement.

    The grid guards against objectives that are flat to machine precision
    over most of the interval. The refinement runs on the two grid cells
    adjacent to the best grid point, and the best value ever seen wins.
    """
    xs = np.linspace(lo, hi, steps + 1)
    fs = [f(x) for x in xs]
    k = int(np.argmin(fs))
    best = (float(xs[k]), fs[k])
    a, b = xs[max(k - 1, 0)], xs[min(k + 1, steps)]
    x, fx = golden_section(f, float(a), float(b), tol)
    if fx < best[1]:
        best = (x, fx)
    return best
