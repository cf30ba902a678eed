"""Chebyshev polynomials of the second kind, on and off [-1, 1].

The three-term recurrence U_n = 2x U_{n-1} - U_{n-2} (U_0 = 1, U_{-1} = 0) is
the single source of truth here.  Off [-1, 1] the values grow like
exp(n*arccosh|x|), so the recurrence carries a running log-scale; results are
exposed reconstructed (u_eval, saturating to +/-inf past float range), as
log-magnitude + sign (u_log), or as same-scale ratios (u_ratio_prev) for the
secular solvers that only ever need ratios.

Closed forms sin((n+1)v)/sin(v) and sinh((n+1)u)/sinh(u) are provided
separately (u_trig, u_hyp) so the recurrence can be validated against them.
All functions are pure and accept scalars or arrays in the real argument.
"""

from __future__ import annotations

import numpy as np

from .errors import SingularArgumentError

_RESCALE = 1e150
_LOG2 = float(np.log(2.0))

__all__ = [
    "u_eval",
    "u_all",
    "u_log",
    "u_pair",
    "u_ratio_prev",
    "u_trig",
    "u_hyp",
    "u_hyp_log",
    "u_zeros",
    "det_perturbed_corner",
    "logsinh",
    "logcosh",
]


def _match_scalar(x_in, out):
    return float(out) if np.isscalar(x_in) else out


def u_pair(n, x):
    """Run the recurrence up to degree n.

    Returns (a, b, log_scale) with U_{n-1}(x) = a*exp(log_scale) and
    U_n(x) = b*exp(log_scale).  log_scale stays exactly 0 until a value
    exceeds 1e150, so on-band evaluations are plain recurrence output.
    """
    if n < -1:
        raise ValueError(f"degree must be >= -1, got {n}")
    x = np.asarray(x, dtype=float)
    if n == -1:
        # (U_{-2}, U_{-1}) = (-1, 0), forced by running the recurrence backward
        return -np.ones_like(x), np.zeros_like(x), np.zeros_like(x)
    a = np.zeros_like(x)  # U_{-1}
    b = np.ones_like(x)   # U_0
    log_scale = np.zeros_like(x)
    for _ in range(n):
        a, b = b, 2.0 * x * b - a
        big = np.abs(b) > _RESCALE
        if np.any(big):
            s = np.where(big, np.abs(b), 1.0)
            a = a / s
            b = b / s
            log_scale = log_scale + np.log(s)
    return a, b, log_scale


def u_eval(n, x):
    """U_n(x) for any real x, n >= -1; overflows saturate to signed inf."""
    _, b, log_scale = u_pair(n, x)
    safe = np.where(b == 0.0, 1.0, np.abs(b))
    with np.errstate(over="ignore"):
        mag = np.exp(log_scale + np.log(safe))
    out = np.where(log_scale == 0.0, b,
                   np.where(b == 0.0, 0.0, np.copysign(mag, b)))
    return _match_scalar(x, out)


def u_all(n_max, x):
    """[U_{-1}(x), U_0(x), ..., U_{n_max}(x)] at a scalar x.

    Plain recurrence without rescaling — meant for transverse state
    profiles, where n_max*arccosh|x| stays well inside float range.
    """
    if n_max < -1:
        raise ValueError(f"degree must be >= -1, got {n_max}")
    out = np.zeros(n_max + 2)
    if n_max >= 0:
        out[1] = 1.0
    for m in range(1, n_max + 1):
        out[m + 1] = 2.0 * x * out[m] - out[m - 1]
    return out


def u_log(n, x):
    """(log|U_n(x)|, sign) with sign in {-1, 0, +1}; log is -inf at zeros."""
    _, b, log_scale = u_pair(n, x)
    with np.errstate(divide="ignore"):
        logmag = log_scale + np.log(np.abs(b))
    if np.isscalar(x):
        return float(logmag), float(np.sign(b))
    return logmag, np.sign(b)


def u_ratio_prev(n, x):
    """U_{n-1}(x) / U_n(x) from one shared-scale recurrence pass."""
    a, b, _ = u_pair(n, x)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = a / b
    return _match_scalar(x, out)


def u_trig(n, v):
    """sin((n+1)v)/sin(v), the closed form of U_n(cos v)."""
    s = np.sin(v)
    if np.any(np.abs(s) < 1e-12):
        raise SingularArgumentError(
            "angle too close to a multiple of pi; use u_eval(n, cos v)")
    return _match_scalar(v, np.sin((n + 1) * np.asarray(v, dtype=float)) / s)


def u_hyp(n, u):
    """sinh((n+1)u)/sinh(u), the closed form of U_n(cosh u); u > 0."""
    with np.errstate(over="ignore"):
        out = np.exp(u_hyp_log(n, u))
    return _match_scalar(u, out)


def u_hyp_log(n, u):
    """log of sinh((n+1)u)/sinh(u); finite for n*u far past float range."""
    u_arr = np.asarray(u, dtype=float)
    if np.any(u_arr <= 0.0):
        raise ValueError("decay parameter must be positive")
    return _match_scalar(u, logsinh((n + 1) * u_arr) - logsinh(u_arr))


def logsinh(y):
    """log(sinh y) for y > 0, valid across the whole double range."""
    y_arr = np.asarray(y, dtype=float)
    if np.any(y_arr <= 0.0):
        raise ValueError("logsinh needs y > 0")
    small = y_arr < 350.0
    direct = np.log(np.sinh(np.where(small, y_arr, 1.0)))
    with np.errstate(over="ignore", divide="ignore"):
        tail = y_arr - _LOG2 + np.log1p(-np.exp(-2.0 * np.where(small, 1.0, y_arr)))
    return _match_scalar(y, np.where(small, direct, tail))


def logcosh(y):
    """log(cosh y), valid across the whole double range."""
    y_arr = np.abs(np.asarray(y, dtype=float))
    small = y_arr < 350.0
    direct = np.log(np.cosh(np.where(small, y_arr, 1.0)))
    with np.errstate(over="ignore"):
        tail = y_arr - _LOG2 + np.log1p(np.exp(-2.0 * y_arr))
    return _match_scalar(y, np.where(small, direct, tail))


def u_zeros(n):
    """Zeros of U_n: cos(pi j/(n+1)), j = 1..n, in descending order."""
    if n < 1:
        raise ValueError(f"need degree >= 1, got {n}")
    j = np.arange(1, n + 1)
    return np.cos(np.pi * j / (n + 1))


def det_perturbed_corner(n, w, w_tilde, xi_abs):
    """Determinant of the n x n tridiagonal matrix with diagonal w/xi_abs,
    unit off-diagonal products, and first entry replaced by w_tilde/xi_abs.

    Equals (w_tilde/xi_abs) U_{n-1}(x) - U_{n-2}(x) at x = w/(2 xi_abs).
    """
    if n < 1:
        raise ValueError(f"matrix size must be >= 1, got {n}")
    if xi_abs <= 0.0:
        raise ValueError("xi_abs must be positive")
    x = w / (2.0 * xi_abs)
    a, b, log_scale = u_pair(n - 1, x)  # (U_{n-2}, U_{n-1}) at shared scale
    with np.errstate(over="ignore"):
        out = ((w_tilde / xi_abs) * b - a) * np.exp(log_scale)
    return float(out)
