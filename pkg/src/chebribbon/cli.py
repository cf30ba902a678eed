"""Command-line front end: band scans, edge-regime reports, analytic-vs-
oracle validation, wavefunction profiles, and zero-mode reports.

Closed forms are used wherever they exist; every row is tagged with its
source (analytic or oracle) and k-points where the reduced parameterization
degenerates fall back to the oracle instead of failing.  Output is
deterministic: floats print at 17 significant digits and rows are ordered
by (k index, band index) regardless of worker scheduling.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import square_ribbon as sq
from . import triangle_ribbon as tri
from .classify import (StateLabel, classify_analytic_square,
                       classify_analytic_triangle, classify_numeric, ipr,
                       model_edge_sides)
from .errors import DegenerateParameterError, RootCountError
from .hamiltonian import (ModelKind, RibbonModel, SquareHoppings,
                          TriangleEdge, TriangleHoppings, build_square_bloch,
                          build_triangle_bloch, eigensolve_dense,
                          subspace_overlap)

__all__ = ["ScanConfig", "run", "main"]

BAND_COLUMNS = ("k", "band", "energy", "class", "u", "ipr", "source")
WAVE_COLUMNS = ("n", "sublattice", "abs", "re", "im", "source")

_TRIANGLE_EDGE = {
    ModelKind.TRIANGLE_LINEAR: TriangleEdge.LINEAR,
    ModelKind.TRIANGLE_ZIGZAG1: TriangleEdge.ZIGZAG1,
    ModelKind.TRIANGLE_ZIGZAG2: TriangleEdge.ZIGZAG2,
}


class ConfigError(Exception):
    """Invalid model/hopping/flag combination (exit code 2)."""


@dataclass(frozen=True)
class ScanConfig:
    """Resolved scan parameters shared by all subcommands."""

    model: RibbonModel
    hoppings: object
    k_points: int = 128
    tolerance: float = 1e-9
    output_path: str | None = None
    output_format: str = "csv"
    jobs: int = 1

    @property
    def kind(self):
        return self.model.kind

    def k_grid(self):
        """Midpoint half-open grid spanning exactly one Brillouin zone."""
        half = self.model.bz_halfwidth
        m = self.k_points
        return np.array([-half + (i + 0.5) * (2.0 * half / m)
                         for i in range(m)])


def _fmt(value):
    if isinstance(value, str):
        return value
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_table(config, columns, rows):
    lines = []
    if config.output_format == "csv":
        out = []
        for row in rows:
            out.append(",".join(_fmt(v) for v in row))
        text = ",".join(columns) + "\n" + "\n".join(out) + ("\n" if out else "")
    else:
        payload = {"columns": list(columns),
                   "rows": [[None if v == "" or v is None else v for v in row]
                            for row in rows]}
        text = json.dumps(payload, indent=2) + "\n"
    _emit(config.output_path, text)


def _emit(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _write_json(config, payload):
    _emit(config.output_path, json.dumps(payload, indent=2) + "\n")


# ----------------------------------------------------------- band builders --

def _oracle_rows(config, k):
    """Dense-diagonalization fallback rows for one momentum."""
    h, N, a = config.hoppings, config.model.N, config.model.a
    if config.kind.is_square:
        bloch = build_square_bloch(h, N, k, a=a)
    else:
        bloch = build_triangle_bloch(h, N, k, edge=_TRIANGLE_EDGE[config.kind],
                                     a=a)
    spec = eigensolve_dense(bloch)
    rows = []
    for i, e in enumerate(spec.energies):
        vec = spec.vectors[:, i]
        try:
            sc = classify_numeric(vec)
            label, u_est, part = sc.label.value, sc.u_estimate, sc.ipr
        except ValueError:
            label, u_est, part = "", None, ipr(vec)
        rows.append([k, i + 1, float(e), label, u_est, part, "oracle"])
    return rows


def _square_zigzag_rows(config, k):
    h, N, a = config.hoppings, config.model.N, config.model.a
    xi_c, _ = sq.xi_of_k(h, k, a)
    xi = abs(xi_c)
    omegas = sq.zigzag_spectrum(xi, N)
    signed = sorted([-w for w in omegas] + list(omegas))
    rows = []
    for i, omega in enumerate(signed):
        energy = h.tr * omega
        label = classify_analytic_square(omega, xi)
        u_val = None
        if label.is_edge:
            x = (omega * omega - xi * xi - 1.0) / (2.0 * xi)
            u_val = math.acosh(-x)
        state = sq.zigzag_full_state(xi_c, omega, N)
        rows.append([k, i + 1, energy, label.value, u_val, ipr(state),
                     "analytic"])
    return rows


def _square_lr_rows(config, k):
    h, N, a = config.hoppings, config.model.N, config.model.a
    entries = []
    for j in range(1, N + 1):
        e_plus, e_minus = sq.lr_isotropic_spectrum(h, N, k, j, a=a)
        entries.append((e_minus, j, -1))
        entries.append((e_plus, j, 1))
    entries.sort(key=lambda t: t[0])
    rows = []
    for i, (energy, j, sign) in enumerate(entries):
        state = sq.lr_isotropic_state(h, N, k, j, a=a, sign=sign)
        rows.append([k, i + 1, energy, StateLabel.BULK.value, None,
                     ipr(state), "analytic"])
    return rows


def _triangle_rows(config, k):
    h, N, a = config.hoppings, config.model.N, config.model.a
    kind = config.kind
    zeta, theta = tri.zeta_of_k(h, k, a)
    tau = tri.tau_of_k(h, k, a)
    rows = []
    if kind == ModelKind.TRIANGLE_LINEAR:
        energies, states = tri.linear_spectrum(h, N, k, a=a)
        order = np.argsort(energies)
        for i, idx in enumerate(order):
            label = classify_analytic_triangle(energies[idx], tau, abs(zeta))
            rows.append([k, i + 1, float(energies[idx]), label.value, None,
                         ipr(states[:, idx]), "analytic"])
        return rows
    sides = model_edge_sides(kind)
    if kind == ModelKind.TRIANGLE_ZIGZAG1:
        roots = tri.zz1_roots(h, N, k, a=a)
    else:
        roots = tri.zz2_roots(h, N, k, a=a)
    for i, root in enumerate(roots):
        label = classify_analytic_triangle(root.energy, tau, abs(zeta),
                                           sides=sides)
        if root.kind == "edge":
            if kind == ModelKind.TRIANGLE_ZIGZAG1:
                state = tri.zz1_edge_state(root.u, N, root.sign, theta)
            else:
                state = tri.zz2_edge_bloch_state(root.u, N, root.sign,
                                                 root.family, theta)
            u_val = root.u
        else:
            if kind == ModelKind.TRIANGLE_ZIGZAG1:
                state = tri.zz1_state(root.energy, h, N, k, a=a)
            else:
                state = tri.zz2_state(root.energy, h, N, k, a=a)
            u_val = None
        rows.append([k, i + 1, root.energy, label.value, u_val, ipr(state),
                     "analytic"])
    return rows


def _rows_for_k(config, k):
    builder = {
        ModelKind.SQUARE_ZIGZAG: _square_zigzag_rows,
        ModelKind.SQUARE_LR: _square_lr_rows,
        ModelKind.TRIANGLE_LINEAR: _triangle_rows,
        ModelKind.TRIANGLE_ZIGZAG1: _triangle_rows,
        ModelKind.TRIANGLE_ZIGZAG2: _triangle_rows,
    }.get(config.kind)
    if builder is None:
        return _oracle_rows(config, k)  # square-general: oracle only
    try:
        return builder(config, k)
    except (DegenerateParameterError, RootCountError):
        return _oracle_rows(config, k)


def cmd_bands(config):
    grid = config.k_grid()
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            chunks = list(pool.map(lambda k: _rows_for_k(config, k), grid))
    else:
        chunks = [_rows_for_k(config, k) for k in grid]
    rows = [row for chunk in chunks for row in chunk]
    _write_table(config, BAND_COLUMNS, rows)
    return 0


# ------------------------------------------------------------------ edges --

def cmd_edges(config):
    h, N = config.hoppings, config.model.N
    kind = config.kind
    if kind == ModelKind.SQUARE_ZIGZAG:
        regime = sq.edge_regime(h, N)
        table = []
        for u in tri.default_u_grid():
            pt = sq.zigzag_edge_branch(u, N)
            if not regime.xi_min <= pt.xi_abs <= regime.xi_max:
                continue  # unreachable with these hoppings
            table.append({"u": pt.u, "xi": pt.xi_abs, "omega": pt.omega})
        payload = {
            "model": kind.value,
            "N": N,
            "hoppings": {"tu": h.tu, "td": h.td, "tr": h.tr, "tl": h.tl},
            "verdict": regime.verdict.value,
            "xi_range": [regime.xi_min, regime.xi_max],
            "critical": {"xi": regime.xi_cr, "omega": regime.omega_cr},
            "branch": table,
        }
    elif kind == ModelKind.TRIANGLE_ZIGZAG1:
        report = tri.zz1_edge_existence(h, N)
        branches = {}
        for label, sign in (("plus", 1), ("minus", -1)):
            branches[label] = [
                {"u": s.u, "cos_ka": s.cos_ka, "k": s.k, "energy": s.energy}
                for s in tri.zz1_edge_solutions(h, N, sign)]
        payload = {
            "model": kind.value,
            "N": N,
            "hoppings": {"t1": h.t1, "t2": h.t2, "t3": h.t3},
            "existence": report,
            "critical": {"one_sided_bound": N / (N + 1.0)},
            "branch": branches,
        }
    elif kind == ModelKind.TRIANGLE_ZIGZAG2:
        report = tri.zz2_edge_existence(h, N)
        branches = {}
        for family in ("A", "B"):
            branches[family] = {}
            for label, sign in (("plus", 1), ("minus", -1)):
                branches[family][label] = [
                    {"u": s.u, "cos_ka": s.cos_ka, "k": s.k,
                     "energy": s.energy}
                    for s in tri.zz2_edge_solutions(h, N, sign, family)]
        payload = {
            "model": kind.value,
            "N": N,
            "hoppings": {"t1": h.t1, "t2": h.t2, "t3": h.t3},
            "existence": report,
            "critical": {"family_A_bound": 1.0,
                         "family_B_bound": (N - 1.0) / (N + 1.0)},
            "branch": branches,
        }
    else:
        raise ConfigError(
            f"model {kind.value} has no edge-branch analytics; "
            "use square-zigzag, triangle-zigzag1, or triangle-zigzag2")
    _write_json(config, payload)
    return 0


# --------------------------------------------------------------- validate --

def _validate_square_zigzag(h, N, grid, tol, violations):
    dev = deficit = 0.0
    agree = total = 0
    for k in grid:
        xi_c, _ = sq.xi_of_k(h, k)
        xi = abs(xi_c)
        omegas = sq.zigzag_spectrum(xi, N)
        signed = sorted([-w for w in omegas] + list(omegas))
        spec = eigensolve_dense(build_square_bloch(h, N, k))
        for i, omega in enumerate(signed):
            energy = h.tr * omega
            d = abs(energy - spec.energies[i])
            if d > tol * max(1.0, abs(energy)):
                violations.append(("square-zigzag", float(k), i + 1,
                                   "energy", d))
            dev = max(dev, d)
            state = sq.zigzag_full_state(xi_c, omega, N)
            # subspace projection: degenerate pairs (e.g. the +-0 partners
            # of a deep edge state) leave single oracle vectors arbitrary
            deficit = max(deficit,
                          1.0 - subspace_overlap(spec, energy, state))
            analytic = classify_analytic_square(omega, xi)
            numeric = classify_numeric(spec.vectors[:, i]).label
            total += 1
            x = (omega * omega - xi * xi - 1.0) / (2.0 * xi)
            near = abs(x + 1.0) < 0.1
            if (analytic == numeric
                    or (analytic.is_edge and numeric.is_edge)
                    or analytic == StateLabel.TRANSITION or near):
                agree += 1
    return {"max_energy_dev": dev, "max_overlap_deficit": deficit,
            "agreement": agree / total}


def _validate_square_lr(h, N, grid, tol, violations):
    dev = deficit = 0.0
    for k in grid:
        entries = []
        for j in range(1, N + 1):
            e_plus, e_minus = sq.lr_isotropic_spectrum(h, N, k, j)
            entries.append((e_minus, j, -1))
            entries.append((e_plus, j, 1))
        entries.sort(key=lambda t: t[0])
        spec = eigensolve_dense(build_square_bloch(h, N, k))
        for i, (energy, j, sign) in enumerate(entries):
            d = abs(energy - spec.energies[i])
            if d > tol * max(1.0, abs(energy)):
                violations.append(("square-lr", float(k), i + 1, "energy", d))
            dev = max(dev, d)
            state = sq.lr_isotropic_state(h, N, k, j, sign=sign)
            deficit = max(deficit,
                          1.0 - subspace_overlap(spec, energy, state))
    return {"max_energy_dev": dev, "max_overlap_deficit": deficit,
            "agreement": 1.0}


def _validate_zero_modes(h, N, tol, violations):
    if h.tl <= 0.0 or h.tr <= 0.0:
        raise ConfigError("zero-mode validation needs tr > 0 and tl > 0")
    dev = deficit = 0.0
    for k, j in sq.zero_mode_momenta(h, N):
        spec = eigensolve_dense(build_square_bloch(h, N, k))
        d = float(np.min(np.abs(spec.energies)))
        if d > tol:
            violations.append(("square-general", float(k), j, "zero-energy",
                               d))
        dev = max(dev, d)
        state = sq.zero_mode_full_state(h, N, k, j)
        deficit = max(deficit, 1.0 - subspace_overlap(spec, 0.0, state))
    return {"max_energy_dev": dev, "max_overlap_deficit": deficit,
            "agreement": 1.0}


def _validate_triangle(kind, h, N, grid, tol, violations):
    edge = _TRIANGLE_EDGE[kind]
    sides = model_edge_sides(kind) or StateLabel.EDGE_BOTH
    dev = deficit = 0.0
    agree = total = 0
    resid_max = None
    for k in grid:
        zeta, theta = tri.zeta_of_k(h, k)
        tau = tri.tau_of_k(h, k)
        spec = eigensolve_dense(build_triangle_bloch(h, N, k, edge=edge))
        if kind == ModelKind.TRIANGLE_LINEAR:
            energies, states = tri.linear_spectrum(h, N, k)
            order = np.argsort(energies)
            energies = energies[order]
            states = states[:, order]
        else:
            zz1 = kind == ModelKind.TRIANGLE_ZIGZAG1
            roots = tri.zz1_roots(h, N, k) if zz1 else tri.zz2_roots(h, N, k)
            cols = []
            for r in roots:
                # deep edge roots need the closed-form envelopes: the
                # polynomial recurrence cancels catastrophically there
                if r.kind == "edge":
                    if zz1:
                        cols.append(tri.zz1_edge_state(r.u, N, r.sign, theta))
                    else:
                        cols.append(tri.zz2_edge_bloch_state(
                            r.u, N, r.sign, r.family, theta))
                elif zz1:
                    cols.append(tri.zz1_state(r.energy, h, N, k))
                else:
                    cols.append(tri.zz2_state(r.energy, h, N, k))
            states = np.column_stack(cols)
            residual = tri.zz1_secular_residual if zz1 \
                else tri.zz2_secular_residual
            resid = max(abs(residual(r.energy, h, N, k, scaled=True))
                        for r in roots)
            resid_max = resid if resid_max is None else max(resid_max, resid)
            energies = np.array([r.energy for r in roots])
        for i, e in enumerate(energies):
            d = abs(e - spec.energies[i])
            if d > tol * max(1.0, abs(e)):
                violations.append((kind.value, float(k), i + 1, "energy", d))
            dev = max(dev, d)
            deficit = max(deficit,
                          1.0 - subspace_overlap(spec, e, states[:, i]))
            analytic = classify_analytic_triangle(e, tau, abs(zeta),
                                                  sides=sides)
            numeric = classify_numeric(spec.vectors[:, i]).label
            total += 1
            ratio = (e - tau) / (2.0 * abs(zeta))
            near = min(abs(ratio - 1.0), abs(ratio + 1.0)) < 0.1
            if (analytic == numeric
                    or (analytic.is_edge and numeric.is_edge)
                    or analytic == StateLabel.TRANSITION or near):
                agree += 1
    out = {"max_energy_dev": dev, "max_overlap_deficit": deficit,
           "agreement": agree / total}
    if resid_max is not None:
        out["max_secular_residual"] = resid_max
    return out


def _validate_branch_tables(tol, violations):
    """Edge-branch internals: round-trip the u-parameterized tables through
    the per-k solvers and an eigenvector residual on the true Bloch matrix."""
    worst = 0.0
    grid = np.logspace(-2, 0.5, 7)
    h = TriangleHoppings(t1=0.9, t2=0.1, t3=1.0)
    N = 5
    for sign in (1, -1):
        for sol in tri.zz1_edge_solutions(h, N, sign, u_grid=grid):
            bloch = build_triangle_bloch(h, N, sol.k,
                                         edge=TriangleEdge.ZIGZAG1)
            zeta, theta = tri.zeta_of_k(h, sol.k)
            psi = tri.zz1_edge_state(sol.u, N, sign, theta)
            worst = max(worst, float(np.linalg.norm(
                bloch.entries @ psi - sol.energy * psi)
                / np.linalg.norm(psi)))
        for family in ("A", "B"):
            for sol in tri.zz2_edge_solutions(h, N, sign, family,
                                              u_grid=grid):
                bloch = build_triangle_bloch(h, N, sol.k,
                                             edge=TriangleEdge.ZIGZAG2)
                zeta, theta = tri.zeta_of_k(h, sol.k)
                psi = tri.zz2_edge_bloch_state(sol.u, N, sign, family, theta)
                worst = max(worst, float(np.linalg.norm(
                    bloch.entries @ psi - sol.energy * psi)
                    / np.linalg.norm(psi)))
    hs = SquareHoppings(tu=1.0, td=0.6, tr=1.0, tl=0.0)
    regime = sq.edge_regime(hs, N)
    sq.extrema_ellipse_residual(0.5, 0.5, N)
    sq.d_omega_d_xi(0.5, 0.5, N)
    sq.solve_zero_mode_sum(1.0, 0.64, N, 1)
    for u in grid:
        pt = sq.zigzag_edge_branch(u, N)
        resid = abs(sq.zigzag_secular_residual(pt.omega, pt.xi_abs, N))
        worst = max(worst, resid)
    if worst > 1000.0 * tol:
        violations.append(("edge-branches", 0.0, 0, "residual", worst))
    return {"max_energy_dev": worst, "max_overlap_deficit": 0.0,
            "agreement": 1.0, "verdict_exercised": regime.verdict.value}


def _default_matrix(config):
    N = config.model.N
    k_pts = config.k_points
    return [
        ("square-zigzag",
         SquareHoppings(tu=1.0, td=0.6, tr=1.0, tl=0.0), N, k_pts),
        ("square-lr",
         SquareHoppings(tu=0.9, td=0.4, tr=0.7, tl=0.7), N, k_pts),
        ("square-general-zero-modes", None, N, 0),
        ("triangle-linear", TriangleHoppings(1.0, 1.0, 1.0), N, k_pts),
        ("triangle-zigzag1", TriangleHoppings(0.9, 0.1, 1.0), N, k_pts),
        ("triangle-zigzag2", TriangleHoppings(0.9, 0.1, 1.0),
         max(N, 2), k_pts),
        ("edge-branches", None, N, 0),
    ]


def cmd_validate(config, single_model=False):
    tol = config.tolerance
    overlap_tol = max(1000.0 * tol, 1e-8)
    violations = []
    reports = {}
    dims = {}
    if single_model:
        entries = [(config.kind.value, config.hoppings, config.model.N,
                    config.k_points)]
    else:
        entries = _default_matrix(config)
    for name, h, N, k_pts in entries:
        if name == "square-general-zero-modes":
            reports[name] = _validate_zero_modes(
                SquareHoppings(tu=0.5, td=0.5, tr=1.0, tl=0.64), N, tol,
                violations)
            continue
        if name == "edge-branches":
            reports[name] = _validate_branch_tables(tol, violations)
            continue
        kind = ModelKind(name)
        model = RibbonModel(kind=kind, N=N, a=config.model.a)
        dims[name] = model.dim
        grid = np.array([-model.bz_halfwidth + (i + 0.5)
                         * (2.0 * model.bz_halfwidth / k_pts)
                         for i in range(k_pts)])
        if kind == ModelKind.SQUARE_ZIGZAG:
            reports[name] = _validate_square_zigzag(h, N, grid, tol,
                                                    violations)
        elif kind == ModelKind.SQUARE_LR:
            reports[name] = _validate_square_lr(h, N, grid, tol, violations)
        elif kind == ModelKind.SQUARE_GENERAL:
            reports[name] = _validate_zero_modes(h, N, tol, violations)
        else:
            reports[name] = _validate_triangle(kind, h, N, grid, tol,
                                               violations)
    for name, rep in reports.items():
        if rep["max_overlap_deficit"] > overlap_tol:
            violations.append((name, 0.0, 0, "overlap",
                               rep["max_overlap_deficit"]))
        # the boundary-fit detector needs enough sites to resolve a tail;
        # below that width the agreement rate is reported but not gated
        if dims.get(name, 0) >= 13 and rep["agreement"] < 0.99:
            violations.append((name, 0.0, 0, "agreement", rep["agreement"]))
    payload = {
        "tolerance": tol,
        "overlap_tolerance": overlap_tol,
        "reports": reports,
        "violations": [{"model": v[0], "k": v[1], "band": v[2],
                        "metric": v[3], "value": v[4]} for v in violations],
        "status": "pass" if not violations else "fail",
    }
    _write_json(config, payload)
    return 0 if not violations else 1


# ----------------------------------------------------------- wavefunction --

def _wave_rows_square(state, N, source):
    rows = []
    for i, amp in enumerate(state):
        n = (i % N) + 1
        sub = "circ" if i < N else "bullet"
        rows.append([n, sub, abs(amp), amp.real, amp.imag, source])
    return rows


def _wave_rows_chain(state, source):
    return [[i + 1, "", abs(amp), complex(amp).real, complex(amp).imag,
             source] for i, amp in enumerate(state)]


def cmd_wavefunction(config, args):
    h, N, a = config.hoppings, config.model.N, config.model.a
    kind = config.kind
    given_u = args.u is not None
    given_band = args.band is not None
    if given_u and given_band:
        raise ConfigError("--u and --band are mutually exclusive")
    if kind == ModelKind.SQUARE_ZIGZAG and given_u:
        pt = sq.zigzag_edge_branch(args.u, N)
        sign = 1.0 if args.sign >= 0 else -1.0
        state = np.concatenate([pt.psi_circ, sign * pt.psi_bullet])
        state = state * pt.norm_const
        rows = _wave_rows_square(state.astype(complex), N, "analytic")
    elif kind in (ModelKind.TRIANGLE_ZIGZAG1,
                  ModelKind.TRIANGLE_ZIGZAG2) and given_u:
        sign = 1 if args.sign >= 0 else -1
        if kind == ModelKind.TRIANGLE_ZIGZAG1:
            sols = tri.zz1_edge_solutions(h, N, sign, u_grid=[args.u], a=a)
        else:
            sols = tri.zz2_edge_solutions(h, N, sign, args.family,
                                          u_grid=[args.u], a=a)
        if not sols:
            raise ConfigError(
                f"u={args.u} is not on an admissible edge branch for these "
                "hoppings")
        psi = sols[0].psi / np.linalg.norm(sols[0].psi)
        rows = _wave_rows_chain(psi, "analytic")
    elif kind == ModelKind.SQUARE_GENERAL and args.j is not None:
        momenta = [kj for kj in sq.zero_mode_momenta(h, N, a=a)
                   if kj[1] == args.j and kj[0] >= 0.0]
        if not momenta:
            raise ConfigError(
                f"no admissible zero-mode momentum with j={args.j}")
        k = momenta[0][0] if args.k is None else args.k
        state = sq.zero_mode_full_state(h, N, k, args.j, a=a)
        rows = _wave_rows_square(state, N, "analytic")
    elif given_band:
        k = args.k if args.k is not None else 0.0
        band_rows = _rows_for_k(config, k)
        if not 1 <= args.band <= len(band_rows):
            raise ConfigError(
                f"band index must be in 1..{len(band_rows)}, got {args.band}")
        if config.kind.is_square:
            bloch = build_square_bloch(h, N, k, a=a)
        else:
            bloch = build_triangle_bloch(h, N, k,
                                         edge=_TRIANGLE_EDGE[kind], a=a)
        spec = eigensolve_dense(bloch)
        vec = spec.vectors[:, args.band - 1]
        if config.kind.is_square:
            rows = _wave_rows_square(vec, N, "oracle")
        else:
            rows = _wave_rows_chain(vec, "oracle")
    else:
        raise ConfigError(
            "wavefunction needs --u (edge branch), --band [--k], or "
            "--j (zero mode, square-general)")
    _write_table(config, WAVE_COLUMNS, rows)
    return 0


# -------------------------------------------------------------- zeromodes --

def cmd_zeromodes(config, args):
    h, N, a = config.hoppings, config.model.N, config.model.a
    if not config.kind.is_square:
        raise ConfigError("zero modes are a square-lattice feature")
    if h.tl <= 0.0 or h.tr <= 0.0:
        raise ConfigError("zero-mode analysis needs tr > 0 and tl > 0")
    momenta = sq.zero_mode_momenta(h, N, a=a)
    root = 2.0 * math.sqrt(h.tr * h.tl)
    if math.isclose(h.tr, h.tl, rel_tol=1e-12):
        localization = "none"
    elif h.tr < h.tl:
        localization = "bullet-left-circ-right"
    else:
        localization = "bullet-right-circ-left"
    payload = {
        "N": N,
        "hoppings": {"tu": h.tu, "td": h.td, "tr": h.tr, "tl": h.tl},
        "k0_family_feasible": (h.tu + h.td) <= root * (1.0 + 1e-12),
        "admissible": [{"k": k, "j": j} for k, j in momenta],
        "suppression_ratio": h.tr / h.tl,
        "localization": localization,
    }
    if args.j is not None:
        payload["solve"] = {"j": args.j,
                            "tu_plus_td": sq.solve_zero_mode_sum(
                                h.tr, h.tl, N, args.j)}
    _write_json(config, payload)
    return 0


# ------------------------------------------------------------ arg plumbing --

_CONFIG_KEYS = {"model", "N", "tu", "td", "tl", "tr", "t1", "t2", "t3", "a",
                "k_points", "tol", "out", "format", "jobs", "k", "band", "u",
                "sign", "family", "j"}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="chebribbon",
        description="Exact spectra and edge-state phase diagrams of "
                    "anisotropic square and triangular lattice ribbons.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--model", choices=[m.value for m in ModelKind])
        p.add_argument("--N", type=int)
        for name in ("tu", "td", "tl", "tr", "t1", "t2", "t3"):
            p.add_argument(f"--{name}", type=float)
        p.add_argument("--a", type=float)
        p.add_argument("--k-points", dest="k_points", type=int)
        p.add_argument("--tol", type=float)
        p.add_argument("--out")
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--config")
        p.add_argument("--jobs", type=int)

    common(sub.add_parser("bands", help="band-structure scan over one zone"))
    common(sub.add_parser("edges", help="edge-regime report and u-branch "
                                        "table"))
    common(sub.add_parser("validate", help="analytic-vs-oracle validation"))
    wave = sub.add_parser("wavefunction", help="single-state profile")
    common(wave)
    wave.add_argument("--k", type=float)
    wave.add_argument("--band", type=int)
    wave.add_argument("--u", type=float)
    wave.add_argument("--sign", type=int, default=1)
    wave.add_argument("--family", choices=["A", "B"], default="A")
    wave.add_argument("--j", type=int)
    zm = sub.add_parser("zeromodes", help="zero-mode admissibility report")
    common(zm)
    zm.add_argument("--j", type=int)
    return parser


def _merge_config_file(args):
    if args.config is None:
        return
    try:
        with open(args.config) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file: {exc}")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key, value in data.items():
        attr = key
        if getattr(args, attr, None) is None:
            setattr(args, attr, value)


def _resolve_config(args):
    model_name = args.model
    if model_name is None:
        raise ConfigError("--model is required (or set it in --config)")
    try:
        kind = ModelKind(model_name)
    except ValueError:
        raise ConfigError(f"unknown model {model_name!r}")
    N = args.N if args.N is not None else 5
    a = args.a if args.a is not None else 1.0
    try:
        if kind.is_square:
            tu = args.tu if args.tu is not None else 1.0
            td = args.td if args.td is not None else 1.0
            tr = args.tr if args.tr is not None else 1.0
            if args.tl is not None:
                tl = args.tl
            elif kind == ModelKind.SQUARE_ZIGZAG:
                tl = 0.0
            else:
                tl = tr  # isotropic default for lr and general
            hoppings = SquareHoppings(tu=tu, td=td, tr=tr, tl=tl)
        else:
            hoppings = TriangleHoppings(
                t1=args.t1 if args.t1 is not None else 1.0,
                t2=args.t2 if args.t2 is not None else 1.0,
                t3=args.t3 if args.t3 is not None else 1.0)
        model = RibbonModel(kind=kind, N=N, a=a)
        model.validate_hoppings(hoppings)
    except ValueError as exc:
        raise ConfigError(str(exc))
    if kind == ModelKind.TRIANGLE_ZIGZAG2 and N < 2:
        raise ConfigError("two-sided zigzag needs N >= 2")
    k_points = args.k_points if args.k_points is not None else 128
    if k_points < 1:
        raise ConfigError("k-points must be >= 1")
    jobs = args.jobs if args.jobs is not None else 1
    if jobs < 1:
        raise ConfigError("jobs must be >= 1")
    return ScanConfig(
        model=model,
        hoppings=hoppings,
        k_points=k_points,
        tolerance=args.tol if args.tol is not None else 1e-9,
        output_path=args.out,
        output_format=args.format if args.format is not None else "csv",
        jobs=jobs,
    )


def run(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _merge_config_file(args)
        if args.command == "validate" and args.model is None:
            args.model = ModelKind.SQUARE_ZIGZAG.value
            config = _resolve_config(args)
            return cmd_validate(config, single_model=False)
        config = _resolve_config(args)
        if args.command == "bands":
            return cmd_bands(config)
        if args.command == "edges":
            return cmd_edges(config)
        if args.command == "validate":
            return cmd_validate(config, single_model=True)
        if args.command == "wavefunction":
            return cmd_wavefunction(config, args)
        if args.command == "zeromodes":
            return cmd_zeromodes(config, args)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # downstream pipe (head, less, ...) closed early; silence the
        # interpreter-shutdown flush error and report the truncation
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 1


def main():
    raise SystemExit(run())
