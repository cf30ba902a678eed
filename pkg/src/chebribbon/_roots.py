"""Shared bracketing machinery for the angular secular equations.

Every bulk secular equation in this package reduces to finding the roots of a
smooth function R(phi) on [0, pi] whose product with sin(phi) is a cheap
trigonometric polynomial.  The scan brackets sign changes of that product on
a node grid (the grid must include the zeros of the participating Chebyshev
polynomials: for strongly weighted secular terms, root pairs straddle those
zeros and would otherwise share a cell without a net sign change), and
refines with Brent's method.  Endpoint-adjacent brackets use the smooth form
R itself, since the product vanishes identically at 0 and pi.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import brentq


def angular_scan(g_grid, g_exact, left_limit, right_limit, nodes,
                 boundary_tol):
    """Roots of R(phi) in (0, pi), plus boundary-root flags.

    g_grid: vectorized, equals R(phi)*sin(phi) on the open interval (same
        sign as R there).
    g_exact: scalar-friendly smooth continuation of R through 0 and pi.
    left_limit / right_limit: R(0) and R(pi).
    nodes: sorted grid covering [0, pi] with 0 and pi included.
    boundary_tol: |limit| at or below this counts as a root sitting exactly
        on the interval end (returned as a flag, not in the root list).
    """
    nodes = np.asarray(nodes, dtype=float)
    vals = np.empty(len(nodes))
    vals[1:-1] = g_grid(nodes[1:-1])
    vals[0] = left_limit
    vals[-1] = right_limit
    boundary0 = abs(left_limit) <= boundary_tol
    boundary_pi = abs(right_limit) <= boundary_tol

    roots = []
    for i in np.nonzero(vals[1:-1] == 0.0)[0] + 1:
        roots.append(float(nodes[i]))  # grid point landed on a root
        vals[i] = np.nan
    if boundary0:
        vals[0] = np.nan
    if boundary_pi:
        vals[-1] = np.nan

    last = len(nodes) - 1
    for i in range(last):
        a, b = vals[i], vals[i + 1]
        if np.isnan(a) or np.isnan(b) or not a * b < 0.0:
            continue
        f = g_exact if (i == 0 or i + 1 == last) else g_grid
        roots.append(float(brentq(f, nodes[i], nodes[i + 1],
                                  xtol=1e-15, rtol=8.9e-16)))
    return sorted(roots), boundary0, boundary_pi


def secular_nodes(N, degrees):
    """Uniform 8(N+1)-interval grid on [0, pi] joined with the zero angles
    pi*j/(d+1) of each Chebyshev degree d in `degrees`."""
    parts = [np.linspace(0.0, np.pi, 8 * (N + 1) + 1)]
    for d in degrees:
        if d >= 1:
            parts.append(np.pi * np.arange(1, d + 1) / (d + 1))
    return np.unique(np.concatenate(parts))


def invert_monotone_ratio(f, target, lo=1e-300, hi_start=1.0):
    """Solve f(u) = target for the strictly increasing ratio f on (0, inf).

    Doubles hi until f(hi) >= target, then Brent-refines.  The caller must
    guarantee target > lim_{u->0} f(u).
    """
    hi = hi_start
    for _ in range(200):
        if f(hi) >= target:
            break
        hi *= 2.0
    else:
        raise RuntimeError("failed to bracket the ratio inversion")
    return float(brentq(lambda u: f(u) - target, lo, hi,
                        xtol=1e-300, rtol=8.9e-16))
