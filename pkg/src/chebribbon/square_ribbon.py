"""Closed-form analytics for the anisotropic square ribbon.

Covers the zigzag reduction (tl = 0): secular equation, bulk and edge
eigenstates, the parametric edge branch with its critical point and regime
trichotomy; the left-right isotropic case (tl = tr) with its closed
dispersion and gauge-transformed eigenvectors; and the exact zero modes of
the fully anisotropic ribbon.

Dimensionless conventions: xi = (tu + td e^{2ika})/tr, omega = E/tr, and the
secular variable x = (omega^2 - |xi|^2 - 1)/(2|xi|).  Bulk states live at
x = cos(v), edge states at x = -cosh(u).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from ._roots import angular_scan, invert_monotone_ratio, secular_nodes
from .chebpoly import logsinh, u_all, u_eval, u_pair
from .errors import (DegenerateParameterError, NoEdgeStateError,
                     RootCountError, SingularArgumentError)

__all__ = [
    "xi_of_k",
    "zigzag_secular_residual",
    "zigzag_spectrum",
    "zigzag_bulk_components",
    "zigzag_bulk_state",
    "zigzag_edge_branch",
    "zigzag_edge_u_from_xi",
    "zigzag_full_state",
    "sublattice_link",
    "EdgeBranchPoint",
    "EdgeRegime",
    "RegimeVerdict",
    "edge_regime",
    "extrema_ellipse_residual",
    "d_omega_d_xi",
    "lr_isotropic_spectrum",
    "lr_isotropic_state",
    "zero_mode_momenta",
    "zero_mode_state",
    "zero_mode_full_state",
    "solve_zero_mode_sum",
    "ZeroModeState",
]


def xi_of_k(h, k, a=1.0):
    """Reduced off-diagonal parameter at momentum k: (xi, arg xi)."""
    if h.tr <= 0.0:
        raise ValueError("xi is defined only for tr > 0")
    xi = (h.tu + h.td * cmath.exp(2.0j * k * a)) / h.tr
    return xi, cmath.phase(xi)


def _sinh_ratio(num_arg, den_arg):
    """sinh(num_arg)/sinh(den_arg) for positive arguments, overflow-safe."""
    return math.exp(logsinh(num_arg) - logsinh(den_arg))


# ---------------------------------------------------------------- zigzag ---

def zigzag_secular_residual(omega, xi_abs, N):
    """U_N(x) + U_{N-1}(x)/|xi| at x = (omega^2 - |xi|^2 - 1)/(2 |xi|).

    Vanishes exactly on the spectrum (in units of tr).
    """
    if xi_abs <= 0.0:
        raise DegenerateParameterError(
            "|xi| = 0: secular form undefined, use the dense oracle")
    x = (omega * omega - xi_abs * xi_abs - 1.0) / (2.0 * xi_abs)
    a, b, log_scale = u_pair(N, x)
    with np.errstate(over="ignore"):
        out = (b + a / xi_abs) * np.exp(log_scale)
    return float(out)


def _edge_omega(u, N):
    # on-branch energy: omega = sinh(u)/sinh((N+1)u), the stable equivalent
    # of the omega^2(u) branch formula (which cancels catastrophically for
    # large u)
    return _sinh_ratio(u, (N + 1) * u)


def zigzag_edge_u_from_xi(xi_abs, N):
    """Invert |xi| = sinh(Nu)/sinh((N+1)u) for the decay parameter u > 0."""
    if xi_abs <= 0.0:
        raise ValueError("xi_abs must be positive")
    xi_cr = N / (N + 1.0)
    if xi_abs >= xi_cr:
        raise NoEdgeStateError(
            f"|xi| = {xi_abs} >= N/(N+1) = {xi_cr}: no localized branch")
    # equivalent increasing problem: sinh((N+1)u)/sinh(Nu) = 1/|xi|
    return invert_monotone_ratio(
        lambda u: _sinh_ratio((N + 1) * u, N * u), 1.0 / xi_abs)


def zigzag_spectrum(xi_abs, N):
    """All N non-negative omega roots at fixed |xi| (mirror negatives are
    implied by chiral symmetry), ascending."""
    if xi_abs <= 0.0:
        raise DegenerateParameterError(
            "|xi| = 0: secular form undefined, use the dense oracle")
    xi_cr = N / (N + 1.0)

    def g_grid(v):
        v = np.asarray(v, dtype=float)
        return xi_abs * np.sin((N + 1) * v) + np.sin(N * v)

    def g_exact(v):
        c = np.cos(v)
        return xi_abs * u_eval(N, c) + u_eval(N - 1, c)

    r0 = xi_abs * (N + 1) + N
    r_pi = (-1.0) ** N * (xi_abs * (N + 1) - N)
    nodes = secular_nodes(N, (N, N - 1))
    roots_v, _, boundary_pi = angular_scan(
        g_grid, g_exact, r0, r_pi, nodes, boundary_tol=1e-9 * r0)

    omegas = [math.sqrt(xi_abs * xi_abs + 1.0 + 2.0 * xi_abs * math.cos(v))
              for v in roots_v]
    if boundary_pi:
        omegas.append(abs(xi_abs - 1.0))
    if xi_abs < xi_cr and not boundary_pi:
        omegas.append(_edge_omega(zigzag_edge_u_from_xi(xi_abs, N), N))
    if len(omegas) == N - 1 and abs(r_pi) <= 1e-6 * r0 and not boundary_pi:
        omegas.append(abs(xi_abs - 1.0))  # near-critical rescue
    if len(omegas) != N:
        raise RootCountError(
            f"found {len(omegas)} roots, expected {N} (|xi|={xi_abs}, N={N})")
    return np.sort(np.asarray(omegas))


def zigzag_bulk_components(v, xi_abs, N):
    """Signed transverse components of a bulk state at angle v.

    Returns (c_circ, c_bullet): c_circ[n-1] = U_{n-1}(x) + U_{n-2}(x)/|xi|
    anchored at chain 1, and the mirrored c_bullet anchored at chain N,
    with x = cos v.
    """
    if not 0.0 < v < math.pi:
        raise SingularArgumentError("bulk angle must lie strictly in (0, pi)")
    if xi_abs <= 0.0:
        raise DegenerateParameterError("|xi| = 0 has no reduced bulk form")
    un = u_all(N, math.cos(v))  # un[m+1] = U_m
    n = np.arange(1, N + 1)
    c_circ = un[1:N + 1] + un[0:N] / xi_abs
    c_bullet = un[N + 1 - n] + un[N - n] / xi_abs
    return c_circ, c_bullet


def zigzag_bulk_state(v, xi_abs, N, sublattice="circ"):
    """Modulus profile of a bulk state, anchored to 1 at chain 1 (circ
    sublattice) or chain N (bullet)."""
    c_circ, c_bullet = zigzag_bulk_components(v, xi_abs, N)
    return np.abs(c_circ if sublattice == "circ" else c_bullet)


@dataclass(frozen=True)
class EdgeBranchPoint:
    """One point of the u-parameterized edge branch (units of tr)."""

    u: float
    xi_abs: float
    omega: float
    psi_circ: np.ndarray
    psi_bullet: np.ndarray
    norm_const: float


def _edge_profiles(u, N):
    """Decaying modulus envelopes sinh((N-n+1)u)/sinh(Nu) (circ, from chain 1)
    and sinh(nu)/sinh(Nu) (bullet, toward chain N), overflow-safe."""
    n = np.arange(1, N + 1)
    log_den = logsinh(N * u)
    with np.errstate(under="ignore"):
        circ = np.exp(logsinh((N - n + 1) * u) - log_den)
        bullet = np.exp(logsinh(n * u) - log_den)
    return circ, bullet


def _edge_norm_square(u, N):
    """|Psi|^2 of the unit-anchored edge state:
    [sinh((2N+1)u) - (2N+1) sinh(u)] / (2 sinh(u) sinh^2(Nu))."""
    big = (2 * N + 1) * u
    if big < 350.0:
        return ((math.sinh(big) - (2 * N + 1) * math.sinh(u))
                / (2.0 * math.sinh(u) * math.sinh(N * u) ** 2))
    # log domain; the subtracted term is e^{-2Nu}-suppressed
    corr = (2 * N + 1) * math.exp(logsinh(u) - logsinh(big))
    log_s = (logsinh(big) + math.log1p(-corr) - math.log(2.0)
             - logsinh(u) - 2.0 * logsinh(N * u))
    return math.exp(log_s)


def zigzag_edge_branch(u, N):
    """Edge-branch point at decay parameter u > 0: |xi|, omega, the two
    decaying profiles, and the closed-form normalization constant."""
    if u <= 0.0:
        raise ValueError("decay parameter must be positive")
    xi_abs = _sinh_ratio(N * u, (N + 1) * u)
    omega = _edge_omega(u, N)
    psi_circ, psi_bullet = _edge_profiles(u, N)
    norm_const = 1.0 / math.sqrt(_edge_norm_square(u, N))
    return EdgeBranchPoint(u=u, xi_abs=xi_abs, omega=omega,
                           psi_circ=psi_circ, psi_bullet=psi_bullet,
                           norm_const=norm_const)


def sublattice_link(omega, u_n_value, theta_total=0.0):
    """Complex amplitude ratio psi_circ(1) : psi_bullet(N) of an eigenstate,
    -e^{i theta_total} / (omega * U_N); theta_total = N arg(xi).

    A vanishing product (decoupled flat-band limit) falls back to the
    symmetric unit-modulus convention -e^{i theta_total}.
    """
    phase = cmath.exp(1.0j * theta_total)
    denom = omega * u_n_value
    if denom == 0.0:
        return -phase
    return -phase / denom


def zigzag_full_state(xi, omega, N):
    """Full normalized 2N eigenvector (circ block then bullet block) at
    reduced energy omega for complex xi, matching the Bloch matrix gauge."""
    xi_abs = abs(xi)
    if xi_abs <= 0.0:
        raise DegenerateParameterError("|xi| = 0 has no reduced closed form")
    theta = cmath.phase(xi)
    x = (omega * omega - xi_abs * xi_abs - 1.0) / (2.0 * xi_abs)
    n = np.arange(1, N + 1)
    if x < -1.0 - 1e-12:
        # edge state: alternating signs from the reflected polynomial
        # argument; on this branch |xi| C_circ,N / omega collapses to a pure
        # sign, absorbed together with the bullet-side reflection parity
        u = math.acosh(-x)
        circ_env, bullet_env = _edge_profiles(u, N)
        alt = (-1.0) ** (n - 1)
        c_circ = alt * circ_env
        c_bullet = alt * bullet_env
        t = 1.0 if omega >= 0.0 else -1.0
    elif x > 1.0 + 1e-12:
        raise ValueError("omega lies outside the spectral range for this xi")
    else:
        x = min(1.0, max(-1.0, x))
        un = u_all(N, x)  # un[m+1] = U_m
        c_circ = un[1:N + 1] + un[0:N] / xi_abs
        c_bullet = un[N + 1 - n] + un[N - n] / xi_abs
        if omega == 0.0:
            raise ValueError("omega = 0 is not a zigzag eigenvalue for "
                             "nonzero xi")
        t = xi_abs * c_circ[-1] / omega
    psi_circ = np.exp(-1.0j * (n - 1) * theta) * c_circ
    psi_bullet = np.exp(-1.0j * n * theta) * (t * c_bullet)
    full = np.concatenate([psi_circ, psi_bullet])
    return full / np.linalg.norm(full)


# ---------------------------------------------------------------- regime ---

class RegimeVerdict(enum.Enum):
    NEVER_EMERGE = "never-emerge"
    ALWAYS_EDGE = "always-edge"
    EDGE_BULK_TRANSITION = "edge-bulk-transition"


@dataclass(frozen=True)
class EdgeRegime:
    verdict: RegimeVerdict
    xi_cr: float
    omega_cr: float
    xi_min: float
    xi_max: float


def edge_regime(h, N):
    """Classify the hoppings: edge states never emerge, always exist, or
    appear and disappear as k sweeps the zone."""
    if h.tr <= 0.0:
        raise ValueError("regime analysis needs tr > 0")
    if h.tl != 0.0:
        raise ValueError("regime analysis applies to the zigzag model "
                         "(tl = 0)")
    xi_min = abs(h.tu - h.td) / h.tr
    xi_max = (h.tu + h.td) / h.tr
    xi_cr = N / (N + 1.0)
    if xi_min > xi_cr:
        verdict = RegimeVerdict.NEVER_EMERGE
    elif xi_max < xi_cr:
        verdict = RegimeVerdict.ALWAYS_EDGE
    else:
        verdict = RegimeVerdict.EDGE_BULK_TRANSITION
    return EdgeRegime(verdict=verdict, xi_cr=xi_cr, omega_cr=1.0 / (N + 1.0),
                      xi_min=xi_min, xi_max=xi_max)


def extrema_ellipse_residual(omega, xi_abs, N):
    """omega^2 + ((N+2)/N)|xi|^2 - 1; zero on the locus of subband extrema."""
    return omega * omega + (N + 2.0) / N * xi_abs * xi_abs - 1.0


def d_omega_d_xi(omega, xi_abs, N):
    """Slope of a subband omega(|xi|) away from vertical tangents."""
    if xi_abs <= 0.0:
        raise ValueError("slope needs |xi| > 0")
    den = (2 * N + 1) * omega * omega + xi_abs * xi_abs - 1.0
    if den == 0.0:
        raise ZeroDivisionError("vertical tangent: slope diverges here")
    num = N * omega * omega + (N + 2) * xi_abs * xi_abs - N
    return (omega / xi_abs) * num / den


# ------------------------------------------------- left-right isotropic ---

def _require_lr(h):
    if h.tr <= 0.0 or not math.isclose(h.tl, h.tr, rel_tol=1e-12,
                                       abs_tol=0.0):
        raise ValueError("closed form needs tl = tr > 0")


def _lr_c(h, N, k, a, j):
    # complex dispersion amplitude whose modulus is the band energy
    return (2.0 * h.tr * math.cos(math.pi * j / (N + 1))
            + h.tu * cmath.exp(-1.0j * k * a) + h.td * cmath.exp(1.0j * k * a))


def lr_isotropic_spectrum(h, N, k, j, a=1.0):
    """Band pair (+E, -E) of the tl = tr ribbon for transverse index j."""
    _require_lr(h)
    if not 1 <= j <= N:
        raise ValueError(f"band index must be in 1..{N}, got {j}")
    e = abs(_lr_c(h, N, k, a, j))
    return e, -e


def lr_isotropic_state(h, N, k, j, a=1.0, sign=1):
    """Normalized 2N eigenvector (circ block, bullet block) of the tl = tr
    ribbon for transverse index j and branch sign(E)."""
    _require_lr(h)
    if not 1 <= j <= N:
        raise ValueError(f"band index must be in 1..{N}, got {j}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = np.arange(1, N + 1)
    f = np.sin(math.pi * j * n / (N + 1))
    c = _lr_c(h, N, k, a, j)
    if abs(c) == 0.0:
        a_circ = a_bullet = 1.0 / math.sqrt(2.0)  # degenerate pair convention
    else:
        a_bullet = 1.0 / math.sqrt(2.0)
        a_circ = sign * (c / abs(c)) / math.sqrt(2.0)
    gauge = np.exp(-1.0j * n * k * a)
    psi_circ = np.exp(0.5j * k * a) * gauge * a_circ * f
    psi_bullet = np.exp(-0.5j * k * a) * gauge * a_bullet * f
    full = np.concatenate([psi_circ, psi_bullet])
    return full / np.linalg.norm(full)


# ------------------------------------------------------------ zero modes ---

@dataclass(frozen=True)
class ZeroModeState:
    psi_bullet: np.ndarray
    psi_circ: np.ndarray


def _zero_mode_x(h, k, a):
    # admissibility parameter; real on both zero-mode families
    return ((h.tu * cmath.exp(-1.0j * k * a) + h.td * cmath.exp(1.0j * k * a))
            / (2.0 * math.sqrt(h.tr * h.tl)))


def zero_mode_momenta(h, N, a=1.0):
    """All admissible (k, j) pairs hosting an exact E = 0 state.

    Two families: k = 0 whenever (tu+td)/(2 sqrt(tr tl)) hits a transverse
    cosine, and (for tu = td) the momenta solving
    cos(ka) = sqrt(tr tl) cos(pi j/(N+1))/tu.  The latter use the principal
    arccos branch and may land outside the reduced zone |k| < pi/(2a); the
    Bloch matrix is periodic under k -> k + pi/a, so they are equivalent to
    folded momenta.  For tu = td = 0 the admissible j is k-independent and
    only the k = 0 representative is listed.
    """
    if h.tr <= 0.0 or h.tl <= 0.0:
        raise ValueError("zero-mode analysis needs tr > 0 and tl > 0")
    root = math.sqrt(h.tr * h.tl)
    cos_j = np.cos(np.pi * np.arange(1, N + 1) / (N + 1))
    found = []
    for j in range(1, N + 1):
        if abs((h.tu + h.td) / (2.0 * root) - cos_j[j - 1]) < 1e-12:
            found.append((0.0, j))
    if h.tu > 0.0 and math.isclose(h.tu, h.td, rel_tol=1e-12, abs_tol=0.0):
        for j in range(1, N + 1):
            arg = root * cos_j[j - 1] / h.tu
            if abs(arg) <= 1.0:
                kj = math.acos(arg) / a
                for cand in ((kj, j), (-kj, j)) if kj != 0.0 else ((0.0, j),):
                    if not any(abs(cand[0] - k0) < 1e-15 and j == j0
                               for k0, j0 in found):
                        found.append(cand)
    return sorted(found, key=lambda kj: (kj[1], kj[0]))


def zero_mode_state(h, N, k, j, a=1.0):
    """Sublattice profiles of the E = 0 state at an admissible (k, j), each
    normalized to unit maximum magnitude.

    The bullet profile carries the (tr/tl)^{n/2} envelope (left-localized
    for tr < tl), the circ profile the inverse one; for tr = tl both reduce
    to pure standing waves.
    """
    if h.tr <= 0.0 or h.tl <= 0.0:
        raise ValueError("zero-mode analysis needs tr > 0 and tl > 0")
    if not 1 <= j <= N:
        raise ValueError(f"transverse index must be in 1..{N}, got {j}")
    x = _zero_mode_x(h, k, a)
    target = math.cos(math.pi * j / (N + 1))
    if abs(x - target) > 1e-9:
        raise ValueError(f"(k={k}, j={j}) does not satisfy the zero-mode "
                         f"admissibility condition (|dev| = {abs(x - target):.2e})")
    n = np.arange(1, N + 1)
    sine = np.sin(math.pi * j * n / (N + 1)) / math.sin(math.pi * j / (N + 1))
    common = (-1.0) ** n * np.exp(-1.0j * n * k * a) * sine
    ratio = h.tr / h.tl
    psi_bullet = common * ratio ** (n / 2.0)
    psi_circ = common * ratio ** (-n / 2.0)
    psi_bullet = psi_bullet / np.abs(psi_bullet).max()
    psi_circ = psi_circ / np.abs(psi_circ).max()
    return ZeroModeState(psi_bullet=psi_bullet, psi_circ=psi_circ)


def zero_mode_full_state(h, N, k, j, a=1.0):
    """Normalized 2N null vector (circ block, bullet block) at (k, j)."""
    zm = zero_mode_state(h, N, k, j, a=a)
    full = np.concatenate([zm.psi_circ, zm.psi_bullet])
    return full / np.linalg.norm(full)


def solve_zero_mode_sum(tr, tl, N, j):
    """The tu + td value placing the k = 0 zero mode exactly on index j."""
    if tr <= 0.0 or tl <= 0.0:
        raise ValueError("needs tr > 0 and tl > 0")
    if not 1 <= j <= N:
        raise ValueError(f"transverse index must be in 1..{N}, got {j}")
    return 2.0 * math.sqrt(tr * tl) * math.cos(math.pi * j / (N + 1))
