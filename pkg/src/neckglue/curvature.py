"""Finite-difference curvature of zonal metrics.

The m-dimensional metric A dt^2 + B dtheta^2 + f^2 (round S^(m-2)) with
f = sqrt(C) sin(theta) is a doubly warped product over the 2D base
h = diag(A, B); scalar and Ricci curvature follow from the submersion
formulas, with Gauss curvature of the base from the orthogonal-coordinate
expression. Pole rows are filled by even quadratic extrapolation since the
warping vanishes there.
"""

from __future__ import annotations

import numpy as np

from .grids import Grid
from .metrics import MetricField, TensorBump


# ---------------------------------------------------------------------------
# difference stencils

def d_axis(F: np.ndarray, h: float, axis: int) -> np.ndarray:
    """Second-order first derivative: centered inside, one-sided at the edges."""
    F = np.asarray(F, dtype=float)
    out = np.empty_like(F)
    Fm = np.moveaxis(F, axis, 0)
    om = np.moveaxis(out, axis, 0)
    om[1:-1] = (Fm[2:] - Fm[:-2]) / (2.0 * h)
    om[0] = (-3.0 * Fm[0] + 4.0 * Fm[1] - Fm[2]) / (2.0 * h)
    om[-1] = (3.0 * Fm[-1] - 4.0 * Fm[-2] + Fm[-3]) / (2.0 * h)
    return out


def d_t(F: np.ndarray, grid: Grid) -> np.ndarray:
    return d_axis(F, grid.h_t, 0)


def d_theta(F: np.ndarray, grid: Grid) -> np.ndarray:
    return d_axis(F, grid.h_theta, 1)


def _pole_columns(grid: Grid) -> list[int]:
    cols = []
    if abs(np.sin(grid.theta[0])) < 1e-12:
        cols.append(0)
    if abs(np.sin(grid.theta[-1])) < 1e-12:
        cols.append(grid.ntheta - 1)
    return cols


def _extrapolate_poles(field: np.ndarray, grid: Grid) -> np.ndarray:
    """Fill pole columns assuming the field is even across the axis."""
    out = field.copy()
    for j in _pole_columns(grid):
        if j == 0:
            out[:, 0] = (4.0 * field[:, 1] - field[:, 2]) / 3.0
        else:
            out[:, -1] = (4.0 * field[:, -2] - field[:, -3]) / 3.0
    return out


# ---------------------------------------------------------------------------
# base geometry

def gauss_curvature_base(g: MetricField) -> np.ndarray:
    """Gauss curvature of the 2D base metric A dt^2 + B dtheta^2."""
    grid = g.grid
    s = np.sqrt(g.A * g.B)
    term_t = d_t(d_t(g.B, grid) / s, grid)
    term_th = d_theta(d_theta(g.A, grid) / s, grid)
    return -(term_t + term_th) / (2.0 * s)


def _base_hessian(g: MetricField, f: np.ndarray):
    """Hessian of f with respect to the 2D base metric."""
    grid = g.grid
    A, B = g.A, g.B
    At, Ath = d_t(A, grid), d_theta(A, grid)
    Bt, Bth = d_t(B, grid), d_theta(B, grid)
    ft, fth = d_t(f, grid), d_theta(f, grid)
    ftt = d_t(ft, grid)
    fthth = d_theta(fth, grid)
    ftth = d_theta(ft, grid)
    G_t_tt = At / (2 * A)
    G_t_thth = -Bt / (2 * A)
    G_t_tth = Ath / (2 * A)
    G_th_thth = Bth / (2 * B)
    G_th_tt = -Ath / (2 * B)
    G_th_tth = Bt / (2 * B)
    H_tt = ftt - G_t_tt * ft - G_th_tt * fth
    H_thth = fthth - G_t_thth * ft - G_th_thth * fth
    H_tth = ftth - G_t_tth * ft - G_th_tth * fth
    return H_tt, H_tth, H_thth


def base_laplacian(g: MetricField, u: np.ndarray) -> np.ndarray:
    """Laplace-Beltrami of the 2D base applied to u."""
    grid = g.grid
    s = np.sqrt(g.A * g.B)
    p = s / g.A * d_t(u, grid)
    q = s / g.B * d_theta(u, grid)
    return (d_t(p, grid) + d_theta(q, grid)) / s


# ---------------------------------------------------------------------------
# curvature of the full metric

def scalar_curvature(g: MetricField) -> np.ndarray:
    """Scalar curvature on the grid, pole rows even-extrapolated."""
    g.require_spd()
    m = g.m
    f = g.fiber_radius()
    K = gauss_curvature_base(g)
    lap_f = base_laplacian(g, f)
    grad2 = d_t(f, g.grid) ** 2 / g.A + d_theta(f, g.grid) ** 2 / g.B
    with np.errstate(divide="ignore", invalid="ignore"):
        R = (2.0 * K
             - 2.0 * (m - 2) * lap_f / f
             - (m - 2) * (m - 3) * (grad2 - 1.0) / f ** 2)
    return _extrapolate_poles(R, g.grid)


def scalar_curvature_conformal_cylinder(profile: np.ndarray, grid: Grid) -> np.ndarray:
    """Exact-form cross-check for metrics U(t)^(4/(m-2)) (dt^2 + round sphere).

    Valid wherever the metric really is conformally cylindrical; uses only a
    1D second difference of the profile.
    """
    m = grid.m
    U = np.asarray(profile, dtype=float)
    h = grid.h_t
    Upp = np.empty_like(U)
    Upp[1:-1] = (U[2:] - 2 * U[1:-1] + U[:-2]) / h ** 2
    Upp[0] = (2 * U[0] - 5 * U[1] + 4 * U[2] - U[3]) / h ** 2
    Upp[-1] = (2 * U[-1] - 5 * U[-2] + 4 * U[-3] - U[-4]) / h ** 2
    c = (m - 2) / (4.0 * (m - 1.0))
    quarter = ((m - 2) / 2.0) ** 2
    return (-Upp + quarter * U) / (c * U ** ((m + 2.0) / (m - 2.0)))


def laplace_beltrami(g: MetricField, u: np.ndarray) -> np.ndarray:
    """Divergence-form Laplacian of the full metric by direct differencing.

    Diagnostic-quality (the solver module owns the conservative version);
    pole rows are even-extrapolated.
    """
    grid = g.grid
    rho = g.vol_density()
    p = rho / g.A * d_t(u, grid)
    q = rho / g.B * d_theta(u, grid)
    with np.errstate(divide="ignore", invalid="ignore"):
        lap = (d_t(p, grid) + d_theta(q, grid)) / rho
    return _extrapolate_poles(lap, grid)


def gradient_inner(g: MetricField, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """g(grad u, grad v) for zonal fields."""
    grid = g.grid
    return d_t(u, grid) * d_t(v, grid) / g.A + d_theta(u, grid) * d_theta(v, grid) / g.B


_FACE_AXIS = {"t_min": (0, 0, -1.0), "t_max": (0, -1, +1.0),
              "theta_min": (1, 0, -1.0), "theta_max": (1, -1, +1.0)}


def _one_sided(F: np.ndarray, h: float, axis: int, end: int) -> np.ndarray:
    Fm = np.moveaxis(F, axis, 0)
    if end == 0:
        return (-3.0 * Fm[0] + 4.0 * Fm[1] - Fm[2]) / (2.0 * h)
    return (3.0 * Fm[-1] - 4.0 * Fm[-2] + Fm[-3]) / (2.0 * h)


def normal_derivative(g: MetricField, u: np.ndarray, face: str) -> np.ndarray:
    """Outward unit-normal derivative of u along a grid face."""
    axis, end, sgn = _FACE_AXIS[face]
    h = g.grid.h_t if axis == 0 else g.grid.h_theta
    du = _one_sided(u, h, axis, end)
    comp = g.A if axis == 0 else g.B
    edge = comp[end, :] if axis == 0 else comp[:, end]
    return sgn * du / np.sqrt(edge)


def second_fundamental(g: MetricField, face: str):
    """Shape operator data of a coordinate face with outward normal.

    Returns (A_tan, fib_log, H): the tangential coordinate component of the
    second fundamental form, the fiber part expressed as A_fiber / f^2 (the
    sin^2 factors cancel exactly, so poles are regular), and the trace H.
    """
    axis, end, sgn = _FACE_AXIS[face]
    grid = g.grid
    h = grid.h_t if axis == 0 else grid.h_theta
    m = g.m
    if axis == 1:
        theta_face = grid.theta[end]
        if abs(np.sin(theta_face)) < 1e-12:
            raise ValueError("pole axis is not a boundary face")
        norm = np.sqrt(g.B[:, end])
        tan_comp = g.A[:, end]
        d_tan = _one_sided(g.A, h, 1, end)
        dlog_f2 = (_one_sided(g.C, h, 1, end) / g.C[:, end]
                   + 2.0 * np.cos(theta_face) / np.sin(theta_face))
    else:
        norm = np.sqrt(g.A[end, :])
        tan_comp = g.B[end, :]
        d_tan = _one_sided(g.B, h, 0, end)
        dlog_f2 = _one_sided(g.C, h, 0, end) / g.C[end, :]
    A_tan = 0.5 * sgn * d_tan / norm
    fib_log = 0.5 * sgn * dlog_f2 / norm
    H = A_tan / tan_comp + (m - 2) * fib_log
    return A_tan, fib_log, H


def mean_curvature(g: MetricField, face: str) -> np.ndarray:
    """Boundary mean curvature (sum of principal curvatures, outward normal)."""
    return second_fundamental(g, face)[2]


def ricci_tensor(g: MetricField):
    """Ricci components: (tt, t-theta, theta-theta, fiber scalar).

    The fiber scalar rho is defined by Ric restricted to the sphere block
    being rho times the unit round metric.
    """
    grid = g.grid
    m = g.m
    f = g.fiber_radius()
    K = gauss_curvature_base(g)
    H_tt, H_tth, H_thth = _base_hessian(g, f)
    lap_f = base_laplacian(g, f)
    grad2 = d_t(f, grid) ** 2 / g.A + d_theta(f, grid) ** 2 / g.B
    with np.errstate(divide="ignore", invalid="ignore"):
        ric_tt = K * g.A - (m - 2) * H_tt / f
        ric_tth = -(m - 2) * H_tth / f
        ric_thth = K * g.B - (m - 2) * H_thth / f
    rho_f = (m - 3) * (1.0 - grad2) - f * lap_f
    ric_tt = _extrapolate_poles(ric_tt, grid)
    ric_tth = _extrapolate_poles(ric_tth, grid)
    ric_thth = _extrapolate_poles(ric_thth, grid)
    rho_f = _extrapolate_poles(rho_f, grid)
    return ric_tt, ric_tth, ric_thth, rho_f


def ricci_scalar_check(g: MetricField) -> np.ndarray:
    """Trace of the Ricci components; should match scalar_curvature to O(h^2)."""
    ric_tt, _, ric_thth, rho_f = ricci_tensor(g)
    f2 = g.fiber_radius() ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        tr = ric_tt / g.A + ric_thth / g.B + (g.m - 2) * rho_f / f2
    return _extrapolate_poles(tr, g.grid)


def tensor_ricci_pairing(g: MetricField, bump: TensorBump) -> np.ndarray:
    """Pointwise g(S, Ric) for a diagonal tensor bump."""
    ric_tt, _, ric_thth, rho_f = ricci_tensor(g)
    f2 = g.fiber_radius() ** 2
    sin2 = np.sin(g.grid.thth) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        fiber = (g.m - 2) * bump.S_C * sin2 * rho_f / f2 ** 2
    out = (bump.S_A * ric_tt / g.A ** 2
           + bump.S_B * ric_thth / g.B ** 2
           + fiber)
    return _extrapolate_poles(out, g.grid)


def tensor_shape_pairing(g: MetricField, bump: TensorBump, face: str) -> np.ndarray:
    """Pointwise g(S, A_face) along a boundary face (theta faces only)."""
    if face not in ("theta_min", "theta_max"):
        raise ValueError("shape pairing implemented for theta faces")
    end = -1 if face == "theta_max" else 0
    tan_val, fib_val, _ = second_fundamental(g, face)
    f2 = g.fiber_radius()[:, end] ** 2
    sin2 = np.sin(g.grid.theta[end]) ** 2
    SA = bump.S_A[:, end]
    SC = bump.S_C[:, end]
    A_edge = g.A[:, end]
    with np.errstate(divide="ignore", invalid="ignore"):
        out = SA * tan_val / A_edge ** 2 + (g.m - 2) * SC * sin2 * fib_val / f2 ** 2
    return out


def conformal_change(g: MetricField, psi: np.ndarray):
    """Scalar and boundary mean curvature after scaling by psi^(4/(n-2)).

    Returns (R_new, {face: H_new}) over the manifold-boundary faces.
    """
    psi = np.asarray(psi, dtype=float)
    if np.any(psi <= 0.0):
        raise ValueError("conformal factor must be positive")
    n = g.m
    c = (n - 2) / (4.0 * (n - 1.0))
    R = scalar_curvature(g)
    lap = laplace_beltrami(g, psi)
    R_new = (-lap + c * R * psi) / (c * psi ** ((n + 2.0) / (n - 2.0)))
    H_new = {}
    for face in g.grid.boundary_faces:
        Hg = mean_curvature(g, face)
        dpsi = normal_derivative(g, psi, face)
        pf = g.face_values(psi, face)
        H_new[face] = (dpsi + 2.0 * c * Hg * pf) / (2.0 * c * pf ** (n / (n - 2.0)))
    return R_new, H_new
