"""Structured (t, theta) grids over the neck-plus-caps strip.

The t axis spans [log(eps) - cap_depth1, -log(eps) + cap_depth2] with a
uniform spacing that divides the neck length exactly, so the neck edges
t = +-log(eps) and every snapped trim value log(eps) + alpha land on nodes.
The theta axis spans [0, pi/2] for boundary embeddings (equator face is the
manifold boundary) and [0, pi] for interior embeddings (both ends are
coordinate poles).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import BOUNDARY, GluingParams


@dataclass(frozen=True)
class Grid:
    t: np.ndarray           # (nt,) strictly increasing, uniform
    theta: np.ndarray       # (ntheta,)
    h_t: float
    h_theta: float
    i_neck_lo: int          # index of t = log eps
    i_neck_hi: int          # index of t = -log eps
    embedding: str
    m: int

    def __post_init__(self):
        if self.t.size < 16 or self.theta.size < 16:
            raise ValueError("grids need at least 16 nodes per direction")
        if self.h_t <= 0 or self.h_theta <= 0:
            raise ValueError("grid spacings must be positive")

    # Shape helpers -------------------------------------------------------

    @property
    def nt(self) -> int:
        return self.t.size

    @property
    def ntheta(self) -> int:
        return self.theta.size

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nt, self.ntheta)

    @property
    def theta_max(self) -> float:
        return float(self.theta[-1])

    @property
    def tt(self) -> np.ndarray:
        return np.broadcast_to(self.t[:, None], self.shape)

    @property
    def thth(self) -> np.ndarray:
        return np.broadcast_to(self.theta[None, :], self.shape)

    # Index / region helpers ----------------------------------------------

    def index_of_t(self, value: float) -> int:
        """Index of the node nearest to a t value that should be grid-aligned."""
        i = int(round((value - self.t[0]) / self.h_t))
        i = min(max(i, 0), self.nt - 1)
        if abs(self.t[i] - value) > 1e-9 * max(1.0, abs(value)):
            raise ValueError(f"t = {value} is not grid aligned (nearest {self.t[i]})")
        return i

    def snap_offset(self, a: float) -> float:
        """Round a t-offset to a whole number of grid steps (at least one)."""
        return max(1, int(round(a / self.h_t))) * self.h_t

    def neck_slice(self, a: float = 0.0, b: float = 0.0) -> slice:
        """Node slice of the trimmed neck log(eps)+a <= t <= -log(eps)-b.

        a and b must be grid-aligned multiples of h_t (use snap_offset).
        """
        lo = self.i_neck_lo + int(round(a / self.h_t))
        hi = self.i_neck_hi - int(round(b / self.h_t))
        if not (0 <= lo < hi < self.nt):
            raise ValueError(f"empty or out-of-range neck region for trims a={a}, b={b}")
        return slice(lo, hi + 1)

    def neck_mask(self, a: float = 0.0, b: float = 0.0) -> np.ndarray:
        mask = np.zeros(self.shape, dtype=bool)
        mask[self.neck_slice(a, b), :] = True
        return mask

    @property
    def boundary_faces(self) -> tuple[str, ...]:
        """Faces carrying the manifold boundary (the rest reflect or are poles)."""
        if self.embedding == BOUNDARY:
            return ("theta_max",)
        return ("t_min", "t_max")

    def face_nodes(self, face: str) -> np.ndarray:
        """Node coordinates along a face, in scan order."""
        if face in ("t_min", "t_max"):
            return self.theta
        if face in ("theta_min", "theta_max"):
            return self.t
        raise ValueError(f"unknown face {face!r}")


def build_grid(params: GluingParams, nt: int = 192, ntheta: int = 33) -> Grid:
    """Construct a grid whose spacing divides the neck length exactly.

    nt is a target for the total number of t nodes; the realized count may
    differ slightly because the neck must contain an even number of equal
    steps (so t = 0 is a node) and the cap depths round to whole steps.
    With equal cap depths the node array is exactly mirror symmetric.
    """
    L_neck = 2.0 * params.neck_halfwidth
    span = L_neck + params.cap_depth1 + params.cap_depth2
    h_guess = span / max(nt - 1, 8)
    n_neck = int(round(L_neck / h_guess))
    n_neck = max(8, n_neck + (n_neck % 2))          # even => t = 0 is a node
    h = L_neck / n_neck
    k1 = max(2, int(round(params.cap_depth1 / h)))
    k2 = max(2, int(round(params.cap_depth2 / h)))

    center = k1 + n_neck // 2
    if k1 == k2:
        half = center
        pos = np.arange(1, half + 1, dtype=float) * h
        t = np.concatenate([-pos[::-1], [0.0], pos])
    else:
        t = (np.arange(k1 + n_neck + k2 + 1, dtype=float) - center) * h

    theta_max = 0.5 * math.pi if params.embedding == BOUNDARY else math.pi
    ntheta = max(16, ntheta)
    theta = np.linspace(0.0, theta_max, ntheta)

    grid = Grid(
        t=t,
        theta=theta,
        h_t=h,
        h_theta=float(theta[1] - theta[0]),
        i_neck_lo=k1,
        i_neck_hi=k1 + n_neck,
        embedding=params.embedding,
        m=params.m,
    )
    if abs(grid.t[grid.i_neck_lo] - params.log_eps) > 1e-10 * max(1.0, -params.log_eps):
        raise AssertionError("neck edge failed to land on a grid node")
    return grid
