"""Modified polar coordinates linking the neck parameter t to chart radii."""

from __future__ import annotations

import numpy as np


def chart_radius(eps: float, t, side: int):
    """Chart radius |x| = eps e^(-t) on side 1, eps e^(+t) on side 2.

    No domain restriction: caps use the extended range.
    """
    if side not in (1, 2):
        raise ValueError("side must be 1 or 2")
    t = np.asarray(t, dtype=float)
    return eps * np.exp(-t if side == 1 else t)


def fermi_polar(eps: float, t, theta, side: int):
    """Map neck coordinates (t, theta) to chart polar coordinates (r, theta).

    t must lie in the open neck interval (log eps, -log eps).
    Returns (r, theta) with r = |x|.
    """
    t = np.asarray(t, dtype=float)
    le = np.log(eps)
    if np.any(t <= le) or np.any(t >= -le):
        raise ValueError("t outside the open neck interval (log eps, -log eps)")
    return chart_radius(eps, t, side), np.asarray(theta, dtype=float)


def fermi_polar_inverse(eps: float, r, theta, side: int):
    """Invert fermi_polar: recover (t, theta) from a chart radius."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("chart radius must be positive")
    t = np.log(eps / r) if side == 1 else np.log(r / eps)
    return t, np.asarray(theta, dtype=float)


def fermi_cartesian(r, theta):
    """Axis-aligned cartesian pair (x_axis, x_perp) of a zonal polar point."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    return r * np.cos(theta), r * np.sin(theta)


def profile_u(eps: float, m: int, side: int, t):
    """Radial profile eps^((m-2)/2) e^(-+(m-2)t/2) of the flat cap on one side."""
    if m < 3:
        raise ValueError("m must be >= 3")
    if side not in (1, 2):
        raise ValueError("side must be 1 or 2")
    t = np.asarray(t, dtype=float)
    sgn = -1.0 if side == 1 else 1.0
    half = 0.5 * (m - 2)
    return eps ** half * np.exp(sgn * half * t)
