"""Bulk/edge/transition classification of ribbon eigenstates.

Two independent routes: the analytic classifiers place an energy relative
to the bulk band in the reduced secular variable, while classify_numeric
inspects an arbitrary amplitude profile (typically an oracle eigenvector)
for exponential boundary tails.  Cross-checking the two routes is what
validates the closed-form phase boundaries without circularity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .hamiltonian import ModelKind

__all__ = [
    "StateLabel",
    "StateClass",
    "ipr",
    "classify_analytic_square",
    "classify_analytic_triangle",
    "classify_numeric",
    "model_edge_sides",
]

_TRANSITION_TOL = 1e-9
_SLOPE_MIN = 1e-2
_R2_MIN = 0.99


class StateLabel(enum.Enum):
    BULK = "bulk"
    EDGE_LEFT = "edge-left"
    EDGE_RIGHT = "edge-right"
    EDGE_BOTH = "edge-both"
    TRANSITION = "transition"

    @property
    def is_edge(self):
        return self in (StateLabel.EDGE_LEFT, StateLabel.EDGE_RIGHT,
                        StateLabel.EDGE_BOTH)


@dataclass(frozen=True)
class StateClass:
    """Classification verdict: label, inverse participation ratio, and the
    fitted decay constant (present exactly when the label is an edge)."""

    label: StateLabel
    ipr: float
    u_estimate: float | None = None

    def __post_init__(self):
        if self.label.is_edge != (self.u_estimate is not None):
            raise ValueError("u_estimate must accompany edge labels only")


def ipr(psi):
    """Inverse participation ratio sum|psi|^4 / (sum|psi|^2)^2 in [1/dim, 1]."""
    p2 = np.abs(np.asarray(psi)) ** 2
    total = p2.sum()
    if total == 0.0:
        raise ValueError("cannot classify a zero vector")
    return float((p2 * p2).sum() / (total * total))


def classify_analytic_square(omega, xi_abs):
    """Place a zigzag-ribbon energy (reduced units omega = E/t_r) relative
    to the bulk band: ratio = (omega^2 - xi^2 - 1)/(2 xi).

    Bulk for ratio in (-1, 1), edge below -1, transition within 1e-9 of -1.
    The stacked eigenvector of an edge state localizes at both ends of the
    two-sublattice layout, hence EDGE_BOTH.
    """
    if xi_abs <= 0.0:
        raise ValueError("xi_abs must be positive")
    ratio = (omega * omega - xi_abs * xi_abs - 1.0) / (2.0 * xi_abs)
    if abs(ratio + 1.0) < _TRANSITION_TOL:
        return StateLabel.TRANSITION
    if ratio < -1.0:
        return StateLabel.EDGE_BOTH
    if ratio > 1.0 + _TRANSITION_TOL:
        raise ValueError(
            f"reduced energy lies above the band (ratio = {ratio!r}); "
            "no such state exists on this spectrum")
    return StateLabel.BULK


def classify_analytic_triangle(E, tau, zeta_abs, sides=StateLabel.EDGE_BOTH):
    """Place a triangular-ribbon energy relative to the bulk band in the
    reduced variable y = (E - tau)/(2|zeta|).

    Bulk for |y| < 1, transition within 1e-9 of either band edge, and an
    edge state otherwise (y = +-cosh u).  Which boundary hosts the edge
    state is a property of the truncation, not of the energy, so the edge
    variant to report is passed in as `sides` (one-sided zigzag localizes
    at the first chain: EDGE_LEFT; two-sided: EDGE_BOTH).
    """
    if zeta_abs <= 0.0:
        raise ValueError("zeta_abs must be positive")
    if not sides.is_edge:
        raise ValueError("sides must be an edge variant")
    ratio = (E - tau) / (2.0 * zeta_abs)
    if min(abs(ratio - 1.0), abs(ratio + 1.0)) < _TRANSITION_TOL:
        return StateLabel.TRANSITION
    if abs(ratio) < 1.0:
        return StateLabel.BULK
    return sides


def _linfit(y):
    """Least-squares line through (0..m-1, y): (slope, R^2)."""
    x = np.arange(y.size, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return float(slope), 1.0
    return float(slope), 1.0 - float(np.sum(resid * resid)) / ss_tot


def classify_numeric(psi, threshold_ipr=None, fit_window=None):
    """Classify an amplitude profile by its boundary behavior.

    Fits log|psi_n| over the fit_window sites nearest each boundary as a
    function of distance from that boundary.  A side is edge-localized when
    the fit decays inward (slope < -1e-2) with R^2 > 0.99 and the profile's
    inverse participation ratio exceeds threshold_ipr.  u_estimate is the
    mean slope magnitude over the qualifying sides.
    """
    amp = np.abs(np.asarray(psi, dtype=complex))
    dim = amp.size
    if fit_window is None:
        fit_window = max(2, min(8, dim // 3))
    if dim < 2 * fit_window:
        raise ValueError(
            f"profile of {dim} sites is too short for two windows of {fit_window}")
    if threshold_ipr is None:
        threshold_ipr = 3.0 / dim
    participation = ipr(amp)
    floor = amp.max() * 1e-15
    logamp = np.log(np.maximum(amp, floor))
    slope_l, r2_l = _linfit(logamp[:fit_window])
    slope_r, r2_r = _linfit(logamp[::-1][:fit_window])
    localized = participation > threshold_ipr
    left = localized and slope_l < -_SLOPE_MIN and r2_l > _R2_MIN
    right = localized and slope_r < -_SLOPE_MIN and r2_r > _R2_MIN
    if left and right:
        label, u_est = StateLabel.EDGE_BOTH, (abs(slope_l) + abs(slope_r)) / 2
    elif left:
        label, u_est = StateLabel.EDGE_LEFT, abs(slope_l)
    elif right:
        label, u_est = StateLabel.EDGE_RIGHT, abs(slope_r)
    else:
        label, u_est = StateLabel.BULK, None
    return StateClass(label=label, ipr=participation, u_estimate=u_est)


def model_edge_sides(kind):
    """Edge variant hosted by each truncation, or None when the model has
    no localized branch at all."""
    return {
        ModelKind.SQUARE_ZIGZAG: StateLabel.EDGE_BOTH,
        ModelKind.TRIANGLE_ZIGZAG1: StateLabel.EDGE_LEFT,
        ModelKind.TRIANGLE_ZIGZAG2: StateLabel.EDGE_BOTH,
    }.get(kind)
