"""Closed-form analytics for triangular ribbons with linear and zigzag edges.

The Bloch matrix is tridiagonal with on-site term tau = 2 t3 cos(ka) and
coupling zeta = t1 + t2 e^{-ika}; zigzag truncation removes tau from the
first row (one-sided) or from both end rows (two-sided).  In the reduced
variable y = (E - tau)/(2|zeta|) the bulk spectrum lives at y = cos(phi),
edge states at y = +-cosh(u).

Edge branches are parameterized by the decay constant u.  One-sided zigzag
supports at most one localized state per momentum; the two-sided case has a
symmetric and an antisymmetric family (A and B) and can host two.  Per-k
root finding inverts the strictly monotone hyperbolic-ratio equations; the
u-parameterized branch tables used for phase diagrams evaluate the momenta
in closed form instead.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._roots import angular_scan, invert_monotone_ratio, secular_nodes
from .chebpoly import logcosh, logsinh, u_all, u_eval
from .errors import DegenerateParameterError, RootCountError

__all__ = [
    "zeta_of_k",
    "tau_of_k",
    "linear_spectrum",
    "zz1_secular_residual",
    "zz2_secular_residual",
    "zz1_state",
    "zz2_state",
    "TriangleRoot",
    "zz1_roots",
    "zz2_roots",
    "zz1_spectrum",
    "zz2_spectrum",
    "TriangleEdgeSolution",
    "zz1_edge_solutions",
    "zz2_edge_solutions",
    "zz1_edge_profile",
    "zz2_edge_profile",
    "zz1_edge_state",
    "zz2_edge_state",
    "zz2_edge_bloch_state",
    "zz1_edge_existence",
    "zz2_edge_existence",
    "default_u_grid",
]


def zeta_of_k(h, k, a=1.0):
    """Transverse coupling at momentum k: (zeta, arg zeta)."""
    zeta = h.t1 + h.t2 * cmath.exp(-1.0j * k * a)
    return zeta, cmath.phase(zeta)


def tau_of_k(h, k, a=1.0):
    """On-site Bloch term 2 t3 cos(ka)."""
    return 2.0 * h.t3 * math.cos(k * a)


def _sinh_ratio(num_arg, den_arg):
    return math.exp(logsinh(num_arg) - logsinh(den_arg))


def _cosh_ratio(num_arg, den_arg):
    return math.exp(logcosh(num_arg) - logcosh(den_arg))


# ---------------------------------------------------------------- linear ---

def linear_spectrum(h, N, k, a=1.0):
    """Exact spectrum and states of the linear-edge ribbon.

    Returns (energies, states): energies[j-1] = tau + 2|zeta| cos(pi j/(N+1))
    and states[:, j-1] the matching normalized standing wave (all bulk).
    """
    zeta, theta = zeta_of_k(h, k, a)
    tau = tau_of_k(h, k, a)
    j = np.arange(1, N + 1)
    n = np.arange(1, N + 1)
    energies = tau + 2.0 * abs(zeta) * np.cos(np.pi * j / (N + 1))
    states = (np.exp(1.0j * (n[:, None] - 1) * theta)
              * np.sin(np.pi * np.outer(n, j) / (N + 1)))
    states = states / np.linalg.norm(states, axis=0)
    return energies, states


# -------------------------------------------------------------- seculars ---

def _reduced(h, N, k, a):
    zeta, theta = zeta_of_k(h, k, a)
    za = abs(zeta)
    if za == 0.0:
        raise DegenerateParameterError(
            "|zeta| = 0 (t1 = t2 at the zone boundary): use the dense oracle")
    tau = tau_of_k(h, k, a)
    return za, tau / za, tau, theta


def zz1_secular_residual(E, h, N, k, a=1.0, scaled=False):
    """U_N(y) + (tau/|zeta|) U_{N-1}(y) at y = (E - tau)/(2|zeta|).

    With ``scaled=True`` the residual is divided by the magnitude of the
    cancelling terms, so it stays meaningful for |y| > 1 where the
    polynomials grow exponentially.
    """
    za, r, tau, _ = _reduced(h, N, k, a)
    y = (E - tau) / (2.0 * za)
    un = u_all(N, y)
    resid = float(un[N + 1] + r * un[N])
    if scaled:
        resid /= max(1.0, abs(un[N + 1]) + abs(r * un[N]))
    return resid


def zz2_secular_residual(E, h, N, k, a=1.0, scaled=False):
    """U_N(y) + (2 tau/|zeta|) U_{N-1}(y) + (tau/|zeta|)^2 U_{N-2}(y).

    ``scaled=True`` divides by the magnitude of the cancelling terms (see
    zz1_secular_residual).
    """
    if N < 2:
        raise ValueError("two-sided zigzag needs N >= 2")
    za, r, tau, _ = _reduced(h, N, k, a)
    y = (E - tau) / (2.0 * za)
    un = u_all(N, y)
    resid = float(un[N + 1] + 2.0 * r * un[N] + r * r * un[N - 1])
    if scaled:
        resid /= max(1.0, abs(un[N + 1]) + abs(2.0 * r * un[N])
                     + abs(r * r * un[N - 1]))
    return resid


def _secular_state(y, r, theta, N, resid, scale, tol):
    if abs(resid) > tol * max(1.0, scale):
        raise ValueError(
            f"energy is not on the spectrum (scaled residual {resid:.3e})")
    un = u_all(N, y)
    g = un[1:N + 1] + r * un[0:N]
    psi = np.exp(1.0j * np.arange(1, N + 1) * theta) * g
    return psi / np.linalg.norm(psi)


def zz1_state(E, h, N, k, a=1.0, tol=1e-6):
    """Normalized transverse eigenvector of the one-sided zigzag ribbon:
    psi_n = e^{i n theta} [U_{n-1}(y) + (tau/|zeta|) U_{n-2}(y)]."""
    za, r, tau, theta = _reduced(h, N, k, a)
    y = (E - tau) / (2.0 * za)
    un = u_all(N, y)
    resid = un[N + 1] + r * un[N]
    scale = abs(un[N + 1]) + abs(r * un[N])
    return _secular_state(y, r, theta, N, resid, scale, tol)


def zz2_state(E, h, N, k, a=1.0, tol=1e-6):
    """Normalized transverse eigenvector of the two-sided zigzag ribbon
    (same componentwise form as zz1_state; only the secular check differs)."""
    if N < 2:
        raise ValueError("two-sided zigzag needs N >= 2")
    za, r, tau, theta = _reduced(h, N, k, a)
    y = (E - tau) / (2.0 * za)
    un = u_all(N, y)
    resid = un[N + 1] + 2.0 * r * un[N] + r * r * un[N - 1]
    scale = abs(un[N + 1]) + abs(2.0 * r * un[N]) + abs(r * r * un[N - 1])
    return _secular_state(y, r, theta, N, resid, scale, tol)


# ------------------------------------------------------------- per-k roots --

@dataclass(frozen=True)
class TriangleRoot:
    """One secular root at fixed momentum."""

    energy: float
    y: float
    kind: str                 # "bulk" or "edge"
    phi: float | None = None  # bulk angle, y = cos(phi)
    u: float | None = None    # edge decay, y = sign*cosh(u)
    sign: int = 0             # edge branch: +1 above, -1 below the band
    family: str | None = None  # two-sided zigzag: "A" or "B"


def _ratio_zz1(u, N):
    # sinh((N+1)u)/sinh(Nu), strictly increasing from (N+1)/N
    return _sinh_ratio((N + 1) * u, N * u)


def _ratio_zz2(u, N, family):
    # |tau/zeta| on the two-sided edge branch; strictly increasing
    if family == "A":
        return _cosh_ratio((N + 1) * u / 2.0, (N - 1) * u / 2.0)  # from 1
    return _sinh_ratio((N + 1) * u / 2.0, (N - 1) * u / 2.0)  # from (N+1)/(N-1)


def _bulk_root(tau, za, phi):
    return TriangleRoot(energy=tau + 2.0 * za * math.cos(phi),
                        y=math.cos(phi), phi=phi, kind="bulk")


def _scan_bulk(r, N, coeffs, tau, za):
    """Shared bulk scan: coeffs c_m multiply U_{N-m}(cos phi), m = 0,1[,2]."""
    degs = tuple(N - m for m in range(len(coeffs)))

    def g_grid(phi):
        phi = np.asarray(phi, dtype=float)
        out = np.zeros_like(phi)
        for c, d in zip(coeffs, degs):
            out += c * np.sin((d + 1) * phi)
        return out

    def g_exact(phi):
        c0 = np.cos(phi)
        return sum(c * u_eval(d, c0) for c, d in zip(coeffs, degs))

    r0 = sum(c * (d + 1) for c, d in zip(coeffs, degs))
    r_pi = sum(c * (d + 1) * (-1.0) ** d for c, d in zip(coeffs, degs))
    scale = sum(abs(c) * (d + 1) for c, d in zip(coeffs, degs))
    nodes = secular_nodes(N, degs)
    phis, b0, bpi = angular_scan(g_grid, g_exact, r0, r_pi, nodes,
                                 boundary_tol=1e-9 * scale)
    roots = [_bulk_root(tau, za, p) for p in phis]
    if b0:
        roots.append(_bulk_root(tau, za, 0.0))
    if bpi:
        roots.append(_bulk_root(tau, za, math.pi))
    return roots, b0, bpi, (r0, r_pi, scale)


def _rescue_boundary(roots, b0, bpi, limits, tau, za, N):
    """Near-transition fallback: a root sitting numerically on a zone-edge
    energy can evade both the sign scan and the strict boundary tolerance."""
    r0, r_pi, scale = limits
    if len(roots) == N - 1:
        if not b0 and abs(r0) <= 1e-6 * scale:
            roots.append(_bulk_root(tau, za, 0.0))
        elif not bpi and abs(r_pi) <= 1e-6 * scale:
            roots.append(_bulk_root(tau, za, math.pi))
    return roots


def zz1_roots(h, N, k, a=1.0):
    """All N secular roots of the one-sided zigzag ribbon at momentum k,
    ascending in energy, with bulk/edge tagging."""
    za, r, tau, _ = _reduced(h, N, k, a)
    roots, b0, bpi, limits = _scan_bulk(r, N, (1.0, r), tau, za)
    if abs(r) > (N + 1) / N:
        s = 1 if r < 0.0 else -1
        u = invert_monotone_ratio(lambda uu: _ratio_zz1(uu, N), abs(r))
        if not ((b0 if s > 0 else bpi) and u < 1e-3):
            roots.append(TriangleRoot(
                energy=tau + s * 2.0 * za * math.cosh(u),
                y=s * math.cosh(u), kind="edge", u=u, sign=s, family="A"))
    roots = _rescue_boundary(roots, b0, bpi, limits, tau, za, N)
    if len(roots) != N:
        raise RootCountError(
            f"found {len(roots)} roots, expected {N} (k={k}, N={N})")
    return sorted(roots, key=lambda root: root.energy)


def zz2_roots(h, N, k, a=1.0):
    """All N secular roots of the two-sided zigzag ribbon at momentum k."""
    if N < 2:
        raise ValueError("two-sided zigzag needs N >= 2")
    za, r, tau, _ = _reduced(h, N, k, a)
    roots, b0, bpi, limits = _scan_bulk(r, N, (1.0, 2.0 * r, r * r), tau, za)
    thresholds = {"A": 1.0, "B": (N + 1.0) / (N - 1.0)}
    if r != 0.0:
        s = 1 if r < 0.0 else -1
        matched = b0 if s > 0 else bpi
        for family, thr in thresholds.items():
            if abs(r) <= thr:
                continue
            u = invert_monotone_ratio(
                lambda uu: _ratio_zz2(uu, N, family), abs(r))
            if matched and u < 1e-3:
                continue  # already counted as the zone-edge bulk root
            roots.append(TriangleRoot(
                energy=tau + s * 2.0 * za * math.cosh(u),
                y=s * math.cosh(u), kind="edge", u=u, sign=s, family=family))
    roots = _rescue_boundary(roots, b0, bpi, limits, tau, za, N)
    if len(roots) != N:
        raise RootCountError(
            f"found {len(roots)} roots, expected {N} (k={k}, N={N})")
    return sorted(roots, key=lambda root: root.energy)


def zz1_spectrum(h, N, k, a=1.0):
    """Ascending energies of the one-sided zigzag ribbon at momentum k."""
    return np.array([root.energy for root in zz1_roots(h, N, k, a=a)])


def zz2_spectrum(h, N, k, a=1.0):
    """Ascending energies of the two-sided zigzag ribbon at momentum k."""
    return np.array([root.energy for root in zz2_roots(h, N, k, a=a)])


# ----------------------------------------------------------- edge branches --

def default_u_grid(points=400):
    """Log-spaced decay-parameter grid covering the physical branch range."""
    return np.logspace(-4.0, 1.0, points)


def zz1_edge_profile(u, N):
    """Decaying envelope sinh((N-n+1)u)/sinh(Nu), n = 1..N."""
    if u <= 0.0:
        raise ValueError("decay parameter must be positive")
    n = np.arange(1, N + 1)
    with np.errstate(under="ignore"):
        return np.exp(logsinh((N - n + 1) * u) - logsinh(N * u))


def zz2_edge_profile(u, N, family):
    """Signed two-sided envelope [sinh((N-n)u) +- sinh((n-1)u)]/sinh((N-1)u)
    evaluated in its stable symmetric form: the A family is the even
    combination cosh((n-(N+1)/2)u)/cosh((N-1)u/2), the B family the odd one.
    """
    if u <= 0.0:
        raise ValueError("decay parameter must be positive")
    if N < 2:
        raise ValueError("two-sided zigzag needs N >= 2")
    m = np.arange(1, N + 1) - (N + 1) / 2.0
    with np.errstate(under="ignore"):
        if family == "A":
            return np.exp(logcosh(m * u) - logcosh((N - 1) * u / 2.0))
        if family == "B":
            mag = np.where(m == 0.0, 0.0,
                           np.exp(logsinh(np.abs(np.where(m == 0.0, 1.0, m)) * u)
                                  - logsinh((N - 1) * u / 2.0)))
            return -np.sign(m) * mag
    raise ValueError(f"family must be 'A' or 'B', got {family!r}")


def zz1_edge_state(u, N, sign, theta=0.0):
    """One-sided zigzag edge state (sign)^{n-1} e^{+i n theta} * envelope."""
    n = np.arange(1, N + 1)
    return (float(sign) ** (n - 1) * np.exp(1.0j * n * theta)
            * zz1_edge_profile(u, N))


def zz2_edge_state(u, N, sign, family, theta=0.0):
    """Two-sided zigzag edge state in its printed form, with the e^{-in
    theta} phase prefactor: (sign)^{n-1} e^{-i n theta} * envelope."""
    n = np.arange(1, N + 1)
    return (float(sign) ** (n - 1) * np.exp(-1.0j * n * theta)
            * zz2_edge_profile(u, N, family))


def zz2_edge_bloch_state(u, N, sign, family, theta=0.0):
    """Two-sided zigzag edge state in the Bloch-matrix gauge (e^{+in theta}),
    the convention that matches the dense oracle's eigenvectors."""
    n = np.arange(1, N + 1)
    return (float(sign) ** (n - 1) * np.exp(1.0j * n * theta)
            * zz2_edge_profile(u, N, family))


@dataclass(frozen=True)
class TriangleEdgeSolution:
    """One u-point of an edge branch, resolved to a momentum."""

    u: float
    sign: int
    family: str
    cos_ka: float
    k: float
    energy: float
    zeta_abs: float
    tau: float
    psi: np.ndarray


def _edge_sign_scale(h, sign):
    # hopping combination controlling each branch: the +cosh branch pairs
    # with |t1 - t2|, the -cosh branch with t1 + t2
    return abs(h.t1 - h.t2) if sign > 0 else h.t1 + h.t2


def _edge_solution_at(h, N, sign, family, u, famcoef, a, onesided):
    f2 = famcoef * famcoef
    t1, t2, t3 = h.t1, h.t2, h.t3
    disc = math.sqrt(t1 * t1 * t2 * t2 + f2 * (t1 * t1 + t2 * t2) * t3 * t3)
    c = (t1 * t2 - sign * disc) / (f2 * t3 * t3)
    if abs(c) > 1.0:
        return None
    k = math.acos(c) / a
    zeta, theta = zeta_of_k(h, k, a)
    tau = 2.0 * t3 * c
    energy = tau + sign * 2.0 * abs(zeta) * math.cosh(u)
    if onesided:
        psi = zz1_edge_state(u, N, sign, theta)
    else:
        psi = zz2_edge_state(u, N, sign, family, theta)
    return TriangleEdgeSolution(u=u, sign=sign, family=family, cos_ka=c, k=k,
                                energy=energy, zeta_abs=abs(zeta), tau=tau,
                                psi=psi)


def zz1_edge_solutions(h, N, sign, u_grid=None, a=1.0):
    """Edge-branch table of the one-sided zigzag ribbon for one energy side.

    Walks the admissible part of the u grid and resolves each point to its
    momentum, energy and wavefunction.  Empty when the existence bound
    fails (threshold >= N/(N+1)) — no localized states on that side.
    """
    h.require_positive()
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    threshold = _edge_sign_scale(h, sign) / (2.0 * h.t3)
    if threshold >= N / (N + 1.0):
        return []
    if u_grid is None:
        u_grid = default_u_grid()
    out = []
    for u in np.asarray(u_grid, dtype=float):
        half = _sinh_ratio(N * u, (N + 1) * u)  # famcoef/2, decreasing
        if half <= threshold:
            continue
        sol = _edge_solution_at(h, N, sign, "A", float(u), 2.0 * half, a,
                                onesided=True)
        if sol is not None:
            out.append(sol)
    return out


def zz2_edge_solutions(h, N, sign, family, u_grid=None, a=1.0):
    """Edge-branch table of the two-sided zigzag ribbon for one (sign,
    family) pair; empty when the existence bound fails (family A: threshold
    >= 1; family B: threshold >= (N-1)/(N+1))."""
    h.require_positive()
    if N < 2:
        raise ValueError("two-sided zigzag needs N >= 2")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if family not in ("A", "B"):
        raise ValueError(f"family must be 'A' or 'B', got {family!r}")
    threshold = _edge_sign_scale(h, sign) / (2.0 * h.t3)
    bound = 1.0 if family == "A" else (N - 1.0) / (N + 1.0)
    if threshold >= bound:
        return []
    if u_grid is None:
        u_grid = default_u_grid()
    out = []
    for u in np.asarray(u_grid, dtype=float):
        if family == "A":
            half = _cosh_ratio((N - 1) * u / 2.0, (N + 1) * u / 2.0)
        else:
            half = _sinh_ratio((N - 1) * u / 2.0, (N + 1) * u / 2.0)
        if half <= threshold:
            continue
        sol = _edge_solution_at(h, N, sign, family, float(u), 2.0 * half, a,
                                onesided=False)
        if sol is not None:
            out.append(sol)
    return out


def zz1_edge_existence(h, N):
    """Existence report for the two one-sided edge branches."""
    h.require_positive()
    bound = N / (N + 1.0)
    out = {}
    for label, sign in (("plus", 1), ("minus", -1)):
        threshold = _edge_sign_scale(h, sign) / (2.0 * h.t3)
        out[label] = {"threshold": threshold, "bound": bound,
                      "exists": threshold < bound}
    return out


def zz2_edge_existence(h, N):
    """Existence report for the four two-sided (family, sign) branches."""
    h.require_positive()
    if N < 2:
        raise ValueError("two-sided zigzag needs N >= 2")
    out = {}
    for family, bound in (("A", 1.0), ("B", (N - 1.0) / (N + 1.0))):
        fam = {}
        for label, sign in (("plus", 1), ("minus", -1)):
            threshold = _edge_sign_scale(h, sign) / (2.0 * h.t3)
            fam[label] = {"threshold": threshold, "bound": bound,
                          "exists": threshold < bound}
        out[family] = fam
    return out
