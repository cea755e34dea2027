"""Zonal metric fields on the strip and the neck assembly.

Every metric handled here is block diagonal in the reduced coordinates,

    g = A dt^2 + B dtheta^2 + C sin^2(theta) * (round S^(m-2)),

so a field is the component triple (A, B, C) on the grid. Cap metrics are
stored as "hatted" components relative to the one-sided radial profile:
g_side = u_side^(4/(m-2)) * (compA, compB, compC). Flat caps have all
hatted components equal to one, which makes the glued metric the exact
Schwarzschild-type neck wherever the cutoffs are constant.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field as dc_field

import numpy as np

from .charts import chart_radius, profile_u
from .cutoffs import CutoffSet
from .fields import simpson_weights, t_cell_weights, theta_cell_weights
from .grids import Grid
from .params import BOUNDARY, GluingParams, sphere_area


@dataclass
class MetricField:
    """Reduced components of a zonal metric plus cached densities."""

    grid: Grid
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    chart: str = "neck"

    def __post_init__(self):
        for name in ("A", "B", "C"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != self.grid.shape:
                raise ValueError(f"component {name} has shape {arr.shape}, "
                                 f"expected {self.grid.shape}")
            setattr(self, name, arr)

    # Pointwise algebra ----------------------------------------------------

    @property
    def m(self) -> int:
        return self.grid.m

    def require_spd(self, where: str = ""):
        """Positive definiteness via the principal minors of the block form."""
        for name, comp in (("g_tt", self.A), ("g_thth", self.B), ("g_fiber", self.C)):
            bad = ~(comp > 0.0) | ~np.isfinite(comp)
            if np.any(bad):
                i, j = np.argwhere(bad)[0]
                raise ValueError(
                    f"metric not positive definite: {name} fails at node "
                    f"(t={self.grid.t[i]:.4f}, theta={self.grid.theta[j]:.4f}) {where}"
                )

    def fiber_radius(self) -> np.ndarray:
        """Warping f with fiber block f^2 * (unit S^(m-2))."""
        return np.sqrt(self.C) * np.sin(self.grid.thth)

    def base_density(self) -> np.ndarray:
        """sqrt(det g) with the sin^(m-2) factor split off into quadrature."""
        return np.sqrt(self.A * self.B) * self.C ** (0.5 * (self.m - 2))

    def vol_density(self) -> np.ndarray:
        return self.base_density() * np.sin(self.grid.thth) ** (self.m - 2)

    # Integration ------------------------------------------------------------

    def cell_volumes(self) -> np.ndarray:
        """Dual-cell measures pairing exactly with the finite-volume operator."""
        wt = t_cell_weights(self.grid)
        wth = theta_cell_weights(self.grid)
        return (sphere_area(self.m - 2) * self.base_density()
                * wt[:, None] * wth[None, :])

    def integrate_cells(self, values: np.ndarray,
                        mask: np.ndarray | None = None) -> float:
        v = values * self.cell_volumes()
        if mask is not None:
            v = np.where(mask, v, 0.0)
        return float(v.sum())

    def integrate(self, values: np.ndarray, t_slice: slice | None = None) -> float:
        """Simpson integration of a zonal field over (a t-range of) the strip."""
        sl = t_slice if t_slice is not None else slice(0, self.grid.nt)
        t_idx = np.arange(self.grid.nt)[sl]
        integrand = (values * self.vol_density())[sl, :]
        wt = simpson_weights(t_idx.size, self.grid.h_t)
        wth = simpson_weights(self.grid.ntheta, self.grid.h_theta)
        return float(sphere_area(self.m - 2) * wt @ integrand @ wth)

    # Boundary machinery -------------------------------------------------------

    def face_area_density(self, face: str) -> np.ndarray:
        """Induced area density along a face, per node of the face."""
        m = self.m
        sin_pow = np.sin(self.grid.thth) ** (m - 2)
        if face == "theta_max":
            return (np.sqrt(self.A[:, -1]) * self.C[:, -1] ** (0.5 * (m - 2))
                    * sin_pow[:, -1])
        if face == "theta_min":
            return (np.sqrt(self.A[:, 0]) * self.C[:, 0] ** (0.5 * (m - 2))
                    * sin_pow[:, 0])
        if face == "t_min":
            return (np.sqrt(self.B[0, :]) * self.C[0, :] ** (0.5 * (m - 2))
                    * sin_pow[0, :])
        if face == "t_max":
            return (np.sqrt(self.B[-1, :]) * self.C[-1, :] ** (0.5 * (m - 2))
                    * sin_pow[-1, :])
        raise ValueError(f"unknown face {face!r}")

    def face_cell_weights(self, face: str) -> np.ndarray:
        """Cell quadrature weights for integrals over one face."""
        if face in ("theta_min", "theta_max"):
            w = t_cell_weights(self.grid)
            dens = self.face_area_density(face)
        else:
            # split sin^(m-2) into the exact cell integrals, as in the volume
            w = theta_cell_weights(self.grid)
            m = self.m
            comp = self.B[0 if face == "t_min" else -1, :]
            cc = self.C[0 if face == "t_min" else -1, :]
            dens = np.sqrt(comp) * cc ** (0.5 * (m - 2))
        return sphere_area(self.m - 2) * dens * w

    def face_simpson_weights(self, face: str) -> np.ndarray:
        if face in ("theta_min", "theta_max"):
            w = simpson_weights(self.grid.nt, self.grid.h_t)
        else:
            w = simpson_weights(self.grid.ntheta, self.grid.h_theta)
        return sphere_area(self.m - 2) * self.face_area_density(face) * w

    def integrate_face_cells(self, face: str, values: np.ndarray,
                             mask: np.ndarray | None = None) -> float:
        v = values * self.face_cell_weights(face)
        if mask is not None:
            v = np.where(mask, v, 0.0)
        return float(v.sum())

    def integrate_face(self, face: str, values: np.ndarray) -> float:
        return float(self.face_simpson_weights(face) @ values)

    def boundary_integral_cells(self, per_face_values: dict[str, np.ndarray]) -> float:
        return sum(self.integrate_face_cells(f, v) for f, v in per_face_values.items())

    def face_values(self, field2d: np.ndarray, face: str) -> np.ndarray:
        if face == "theta_max":
            return field2d[:, -1]
        if face == "theta_min":
            return field2d[:, 0]
        if face == "t_min":
            return field2d[0, :]
        if face == "t_max":
            return field2d[-1, :]
        raise ValueError(f"unknown face {face!r}")

    # Serialization -------------------------------------------------------------

    def to_table(self) -> str:
        """Columnar text dump: one row per node with coordinates and components."""
        buf = io.StringIO()
        buf.write(f"# chart={self.chart} m={self.m} embedding={self.grid.embedding}\n")
        buf.write("t theta g_tt g_thth g_fiber\n")
        for i in range(self.grid.nt):
            for j in range(self.grid.ntheta):
                buf.write(
                    f"{self.grid.t[i]:.17g} {self.grid.theta[j]:.17g} "
                    f"{self.A[i, j]:.17g} {self.B[i, j]:.17g} {self.C[i, j]:.17g}\n"
                )
        return buf.getvalue()


@dataclass
class CapMetric:
    """One model manifold in its own chart, on the shared grid.

    compA/compB/compC are the metric components divided by the one-sided
    radial factor u_side^(4/(m-2)); all ones for an exactly flat cap.
    """

    side: int
    params: GluingParams
    grid: Grid
    compA: np.ndarray
    compB: np.ndarray
    compC: np.ndarray
    label: str = "flat"

    @property
    def u_profile(self) -> np.ndarray:
        return profile_u(self.params.eps, self.params.m, self.side, self.grid.t)

    def radial_factor(self) -> np.ndarray:
        return (self.u_profile ** self.params.conformal_power)[:, None]

    def metric_field(self) -> MetricField:
        """Full metric of this model manifold on the strip in its own chart."""
        fac = self.radial_factor()
        return MetricField(
            grid=self.grid,
            A=fac * self.compA,
            B=fac * self.compB,
            C=fac * self.compC,
            chart=f"cap{self.side}:{self.label}",
        )

    def chart_radii(self) -> np.ndarray:
        return chart_radius(self.params.eps, self.grid.t, self.side)

    def conformally_deformed(self, factor: np.ndarray, label: str) -> "CapMetric":
        """Cap with metric scaled by factor^(4/(n-2)); factor > 0 on the grid."""
        if np.any(factor <= 0):
            raise ValueError("conformal factor must be positive")
        scale = factor ** self.params.conformal_power
        return CapMetric(
            side=self.side,
            params=self.params,
            grid=self.grid,
            compA=self.compA * scale,
            compB=self.compB * scale,
            compC=self.compC * scale,
            label=label,
        )

    def tensor_perturbed(self, bump: "TensorBump", r: float, label: str) -> "CapMetric":
        """Cap metric plus r times a symmetric positive tensor bump."""
        fac = self.radial_factor()
        return CapMetric(
            side=self.side,
            params=self.params,
            grid=self.grid,
            compA=self.compA + r * bump.S_A / fac,
            compB=self.compB + r * bump.S_B / fac,
            compC=self.compC + r * bump.S_C / fac,
            label=label,
        )


@dataclass
class TensorBump:
    """Diagonal symmetric 2-tensor field (full components, not hatted)."""

    S_A: np.ndarray
    S_B: np.ndarray
    S_C: np.ndarray


def flat_cap(side: int, params: GluingParams, grid: Grid) -> CapMetric:
    ones = np.ones(grid.shape)
    return CapMetric(side, params, grid, ones, ones.copy(), ones.copy(), label="flat")


class CapValidationError(ValueError):
    """Raised when a cap fails the scalar/mean curvature admission check."""

    def __init__(self, side: int, max_R: float, max_H: float, tol: float):
        self.side = side
        self.max_R = max_R
        self.max_H = max_H
        super().__init__(
            f"cap {side} rejected: max|R| = {max_R:.3e}, max|H| = {max_H:.3e} "
            f"exceeds tolerance {tol:.1e}"
        )


def assemble_neck_metric(cap1: CapMetric, cap2: CapMetric,
                         params: GluingParams, grid: Grid, cuts: CutoffSet,
                         validate: bool = True, tol: float = 5e-3) -> MetricField:
    """Glue the two cap metrics along the neck.

    Components are the xi-interpolation of the hatted cap components times
    the glued radial factor u_eps^(4/(m-2)); outside the interpolation zone
    the metric reproduces each cap bitwise.
    """
    if cap1.side != 1 or cap2.side != 2:
        raise ValueError("assemble expects cap sides (1, 2)")
    if validate:
        from .curvature import mean_curvature, scalar_curvature  # cycle guard
        for cap in (cap1, cap2):
            fld = cap.metric_field()
            fld.require_spd(where=f"(cap {cap.side})")
            R = scalar_curvature(fld)
            max_R = float(np.max(np.abs(R)))
            max_H = 0.0
            for face in grid.boundary_faces:
                H = mean_curvature(fld, face)
                max_H = max(max_H, float(np.max(np.abs(H))))
            if max_R > tol or max_H > tol:
                raise CapValidationError(cap.side, max_R, max_H, tol)
    if params.embedding == "interior":
        a1 = cap1.metric_field().integrate_face("t_min", np.ones(grid.ntheta))
        a2 = cap2.metric_field().integrate_face("t_max", np.ones(grid.ntheta))
        if validate and abs(a1 - a2) > tol * max(a1, a2):
            raise ValueError(
                f"interior gluing needs equal boundary volumes, got {a1:.6g} vs {a2:.6g}"
            )

    xi = cuts.xi(grid.t)[:, None]
    fac = (cuts.u_eps(grid.t) ** params.conformal_power)[:, None]
    mix = lambda c1, c2: np.where(xi == 1.0, c1, np.where(xi == 0.0, c2,
                                                          xi * c1 + (1.0 - xi) * c2))
    out = MetricField(
        grid=grid,
        A=fac * mix(cap1.compA, cap2.compA),
        B=fac * mix(cap1.compB, cap2.compB),
        C=fac * mix(cap1.compC, cap2.compC),
        chart="neck",
    )
    out.require_spd(where="(assembled)")
    return out
