"""Quadrature rules and weighted grid fields.

Two quadratures coexist deliberately. Cell quadrature pairs with the
finite-volume Laplacian so that discrete Green identities hold to machine
precision; Simpson quadrature is used for reported integrals where accuracy
matters (decay rates, areas, functional values).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import Grid


def _gauss_cells(edges: np.ndarray, power: int) -> np.ndarray:
    """Integral of sin^power over each [edges[k], edges[k+1]], Gauss-Legendre."""
    x, w = np.polynomial.legendre.leggauss(6)
    lo = edges[:-1]
    hi = edges[1:]
    mid = 0.5 * (lo + hi)[:, None]
    half = 0.5 * (hi - lo)[:, None]
    pts = mid + half * x[None, :]
    vals = np.sin(pts) ** power
    return (vals * w[None, :] * half).sum(axis=1)


def theta_cell_weights(grid: Grid) -> np.ndarray:
    """Per-node integral of sin^(m-2) over the node's dual cell in theta."""
    th = grid.theta
    h = grid.h_theta
    edges = np.concatenate([[th[0]], 0.5 * (th[:-1] + th[1:]), [th[-1]]])
    return _gauss_cells(edges, grid.m - 2)


def t_cell_weights(grid: Grid) -> np.ndarray:
    w = np.full(grid.nt, grid.h_t)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def simpson_weights(n: int, h: float) -> np.ndarray:
    """Composite Simpson weights on n uniform nodes.

    Even node counts close with one 3/8 panel so every interval keeps
    fourth-order accuracy.
    """
    if n < 2:
        raise ValueError("need at least two nodes to integrate")
    if n == 2:
        return np.array([0.5 * h, 0.5 * h])
    if n == 4:
        return np.array([3 / 8, 9 / 8, 9 / 8, 3 / 8]) * h
    w = np.zeros(n)
    if n % 2 == 1:
        w[0] = w[-1] = h / 3.0
        w[1:-1:2] = 4.0 * h / 3.0
        w[2:-1:2] = 2.0 * h / 3.0
        return w
    w[: n - 3] = simpson_weights(n - 3, h)
    w[n - 4:] += np.array([3 / 8, 9 / 8, 9 / 8, 3 / 8]) * h
    return w


def simpson_1d(values: np.ndarray, h: float) -> float:
    v = np.asarray(values, dtype=float)
    return float(simpson_weights(v.size, h) @ v)


@dataclass
class WeightedField:
    """A grid scalar paired with the neck weight and an exponent."""

    values: np.ndarray
    gamma: float
    psi: np.ndarray      # weight sampled on the same nodes

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        self.psi = np.asarray(self.psi, dtype=float)
        if self.values.shape != self.psi.shape:
            raise ValueError("field and weight shapes differ")

    def norm(self, mask: np.ndarray | None = None) -> float:
        """Weighted sup-norm sup |psi^gamma v| (plain sup when gamma = 0)."""
        w = np.abs(self.psi ** self.gamma * self.values)
        if mask is not None:
            w = w[mask]
        if w.size == 0:
            raise ValueError("weighted norm over an empty region")
        return float(np.max(w))


def weighted_norm(field: WeightedField, mask: np.ndarray | None = None) -> float:
    return field.norm(mask)


def weighted_sup(values: np.ndarray, psi: np.ndarray, gamma: float,
                 mask: np.ndarray | None = None) -> float:
    return WeightedField(values, gamma, psi).norm(mask)
