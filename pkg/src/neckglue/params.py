"""Scalar parameters of the neck construction and their validity ranges."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace


INTERIOR = "interior"
BOUNDARY = "boundary"


@dataclass(frozen=True)
class GluingParams:
    """All scalar knobs of one gluing configuration.

    m is the codimension of the gluing locus; at desk scale the locus is a
    point, so the ambient dimension n equals m and k = 0.
    """

    m: int = 3
    eps: float = 0.1
    gamma: float = 0.5
    b_exp: float = 0.5          # cutoff-placement exponent B in (0, 1)
    alpha1: float = 1.1
    alpha2: float = 1.1
    delta: float = 0.25
    embedding: str = BOUNDARY
    cap_depth1: float = 2.0     # caps cover chart radius [1, exp(cap_depth)]
    cap_depth2: float = 2.0
    k: int = 0

    def __post_init__(self):
        if self.m < 3:
            raise ValueError(f"codimension m must be >= 3, got {self.m}")
        if self.k != 0:
            raise ValueError("only the point locus (k = 0) is implemented")
        if not (0.0 < self.eps < 0.5):
            raise ValueError(f"eps must lie in (0, 1/2), got {self.eps}")
        if not (0.0 < self.gamma < self.m - 2):
            raise ValueError(
                f"gamma must lie in (0, m-2) = (0, {self.m - 2}), got {self.gamma}"
            )
        if not (0.0 < self.b_exp < 1.0):
            raise ValueError(f"b_exp must lie in (0, 1), got {self.b_exp}")
        if self.alpha1 <= 1.0 or self.alpha2 <= 1.0:
            raise ValueError("neck-trim parameters alpha1, alpha2 must exceed 1")
        half = 0.5 * (self.m - 2)
        if not (-half < self.delta < half):
            raise ValueError(
                f"delta must lie in ({-half}, {half}), got {self.delta}"
            )
        if self.embedding not in (INTERIOR, BOUNDARY):
            raise ValueError(f"unknown embedding kind {self.embedding!r}")
        if self.cap_depth1 <= 0 or self.cap_depth2 <= 0:
            raise ValueError("cap depths must be positive")

    # Derived quantities -------------------------------------------------

    @property
    def n(self) -> int:
        """Ambient dimension (equals m for a point locus)."""
        return self.m + self.k

    @property
    def c_n(self) -> float:
        """Conformal-Laplacian constant (n-2)/(4(n-1))."""
        return (self.n - 2) / (4.0 * (self.n - 1))

    @property
    def log_eps(self) -> float:
        return math.log(self.eps)

    @property
    def neck_halfwidth(self) -> float:
        return -math.log(self.eps)

    @property
    def conformal_power(self) -> float:
        """Exponent 4/(m-2) applied to the radial profile."""
        return 4.0 / (self.m - 2)

    def require_solver_regime(self):
        """Solver preconditions: eps < exp(-max(alpha1, alpha2))."""
        bound = math.exp(-max(self.alpha1, self.alpha2))
        if self.eps >= bound:
            raise ValueError(
                f"eps = {self.eps} violates eps < exp(-max(alpha)) = {bound:.4g}"
            )

    def require_nonlinear_gamma(self, tuning: bool = False):
        hi = 0.25 if tuning else 0.5
        if not (0.0 < self.gamma < hi):
            raise ValueError(
                f"nonlinear solves need gamma in (0, {hi}), got {self.gamma}"
            )

    def with_(self, **kw) -> "GluingParams":
        return replace(self, **kw)


def sphere_area(dim: int) -> float:
    """Volume of the unit sphere S^dim."""
    if dim < 0:
        raise ValueError("sphere dimension must be nonnegative")
    return 2.0 * math.pi ** ((dim + 1) / 2.0) / math.gamma((dim + 1) / 2.0)
