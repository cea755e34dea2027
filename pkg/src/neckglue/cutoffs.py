"""Cutoff functions, the radial gluing profile, and the neck weight.

All transitions use the C^2 smoothstep 6s^5 - 15s^4 + 10s^3, which keeps two
continuous derivatives for second-order finite differencing of curvature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .charts import profile_u
from .grids import Grid
from .params import GluingParams


def smoothstep(s):
    """C^2 monotone ramp from 0 at s<=0 to 1 at s>=1."""
    s = np.clip(s, 0.0, 1.0)
    return s * s * s * (s * (6.0 * s - 15.0) + 10.0)


def ramp_down(t, lo, hi):
    """1 for t <= lo, 0 for t >= hi, smooth and non-increasing between."""
    return 1.0 - smoothstep((np.asarray(t, dtype=float) - lo) / (hi - lo))


@dataclass(frozen=True)
class CutoffSet:
    """All t-dependent cutoffs of one configuration, as callables.

    xi interpolates the two cap metrics, eta assembles the radial profile,
    rho1/rho_T/rho2 partition data for the linear solves (unit transition
    windows anchored at the snapped trims), and phi1/phi2 glue the cap
    solutions back together (windows recorded in phi1_window/phi2_window).
    """

    params: GluingParams
    alpha1: float
    alpha2: float
    phi1_window: tuple[float, float]
    phi2_window: tuple[float, float]

    def xi(self, t):
        return ramp_down(t, -1.0, 1.0)

    def eta(self, t):
        le = self.params.log_eps
        return ramp_down(t, -le - 1.0, -le - 0.5)

    def u_eps(self, t):
        """Glued radial profile eta(t) u1 + eta(-t) u2 (flat caps exactly)."""
        t = np.asarray(t, dtype=float)
        p = self.params
        return (self.eta(t) * profile_u(p.eps, p.m, 1, t)
                + self.eta(-t) * profile_u(p.eps, p.m, 2, t))

    def rho1(self, t):
        lo = self.params.log_eps + self.alpha1
        return ramp_down(t, lo, lo + 1.0)

    def rho2(self, t):
        hi = -self.params.log_eps - self.alpha2
        return 1.0 - ramp_down(t, hi - 1.0, hi)

    def rho_T(self, t):
        return 1.0 - self.rho1(t) - self.rho2(t)

    def beta(self, t):
        return self.rho1(t) - self.rho2(t)

    def phi1(self, t):
        s0, s1 = self.phi1_window
        return ramp_down(t, s0, s1)

    def phi2(self, t):
        s0, s1 = self.phi2_window
        return 1.0 - ramp_down(t, s0, s1)

    def weight(self, t):
        """Neck weight: eps*cosh(t) deep in, 1 outside, smooth in between."""
        t = np.asarray(t, dtype=float)
        p = self.params
        le = p.log_eps
        core = p.eps * np.cosh(t)
        blend_lo = smoothstep(t - le)            # 0 at t = log eps, 1 at log eps + 1
        blend_hi = smoothstep(-le - t)           # mirrored band
        out = np.ones_like(t)
        inner = (t >= le) & (t <= -le)
        mix = np.minimum(blend_lo, blend_hi)
        out = np.where(inner, (1.0 - mix) + mix * core, 1.0)
        return out


def partition_overlap_margin(params: GluingParams, alpha1: float, alpha2: float) -> float:
    """Gap between the two rho transition windows; negative means overlap."""
    return 2.0 * params.neck_halfwidth - (alpha1 + alpha2 + 2.0)


def build_cutoffs(params: GluingParams, grid: Grid,
                  alpha1: float | None = None,
                  alpha2: float | None = None) -> CutoffSet:
    """Cutoffs with trims snapped to the grid and glue windows placed.

    The glue windows sit at depth fraction b_exp into the neck when the
    asymptotic placement clears the partition data, and are pushed out to
    just past the data support otherwise (the saturated desk-scale regime).
    """
    a1 = grid.snap_offset(params.alpha1 if alpha1 is None else alpha1)
    a2 = grid.snap_offset(params.alpha2 if alpha2 is None else alpha2)
    if partition_overlap_margin(params, a1, a2) <= 0.0:
        raise ValueError(
            f"partition windows overlap: need 2|log eps| > alpha1+alpha2+2, "
            f"got {2 * params.neck_halfwidth:.3f} vs {a1 + a2 + 2.0:.3f}"
        )
    le = params.log_eps
    margin = 2.0 * grid.h_t
    s1 = max((1.0 - params.b_exp) * le, le + a1 + 1.0 + margin)
    s1 = min(s1, grid.t[-1] - 1.0 - margin)
    s2 = max((1.0 - params.b_exp) * le, le + a2 + 1.0 + margin)
    s2 = min(s2, -grid.t[0] - 1.0 - margin)
    return CutoffSet(
        params=params,
        alpha1=a1,
        alpha2=a2,
        phi1_window=(s1, s1 + 1.0),
        phi2_window=(-s2 - 1.0, -s2),
    )
