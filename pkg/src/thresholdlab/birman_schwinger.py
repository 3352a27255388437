"""Assembly of the operator family A(lam) = U + v R0(lam^2) v.

The family is organized around the exact split

    A(lam) = A0 + lam * A1(lam),      A0 = U + v G0 v,

where A1 has the bounded kernel v(x) (e^{i lam r} - 1)/(4 pi lam r) v(y)
with r = |x - y|, and the second difference quotient

    A2(lam) = (A1(lam) - A1(0)) / lam

has the kernel -v(x) (r/4pi) v(y) * int_0^1 (1-b) e^{i lam r b} db.

Both kernels are evaluated through cancellation-free closed forms:

    phi1(mu) = (e^{i mu} - 1)/mu  = i e^{i mu/2} sinc(mu / 2 pi),
    phi2(mu) = (e^{i mu} - 1 - i mu)/mu^2   (series for small |mu|),

so no special-casing near lam = 0 is required and A1(0) = i v G1 v,
A2(0) = -v G2 v hold exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import Grid3, build_gj_kernel
from .potentials import PotentialSplit

__all__ = [
    "phi1",
    "phi2",
    "build_A0",
    "build_A1",
    "build_A2",
    "BirmanSchwingerFamily",
]

_FOUR_PI = 4.0 * np.pi


def phi1(mu: np.ndarray) -> np.ndarray:
    """(e^{i mu} - 1) / mu, exact half-angle form, phi1(0) = i."""
    mu = np.asarray(mu, dtype=float)
    return 1j * np.exp(0.5j * mu) * np.sinc(mu / (2.0 * np.pi))


def phi2(mu: np.ndarray) -> np.ndarray:
    """(e^{i mu} - 1 - i mu) / mu^2, series below |mu| = 0.5, phi2(0) = -1/2."""
    mu = np.asarray(mu, dtype=float)
    out = np.empty(mu.shape, dtype=complex)
    small = np.abs(mu) < 0.5
    if np.any(~small):
        m = mu[~small]
        out[~small] = (np.exp(1j * m) - 1.0 - 1j * m) / (m * m)
    if np.any(small):
        z = 1j * mu[small]
        # - sum_{k>=0} z^k / (k+2)!  (15 terms: < 1e-17 at |mu| = 0.5)
        acc = np.zeros_like(z)
        for k in range(14, 0, -1):
            acc = (acc + 1.0 / _factorial(k + 2)) * z
        out[small] = -(acc + 0.5)
    return out


def _factorial(k: int) -> float:
    out = 1.0
    for i in range(2, k + 1):
        out *= i
    return out


def build_A0(split: PotentialSplit, grid: Grid3) -> np.ndarray:
    """A0 = U + v G0 v as a real symmetric matrix."""
    if split.grid is not grid and split.grid.npoints != grid.npoints:
        raise ValueError("split and grid are inconsistent")
    g0 = build_gj_kernel(grid, 0).entries
    return np.diag(split.U) + split.v[:, None] * g0 * split.v[None, :]


def build_A1(split: PotentialSplit, grid: Grid3, lam: float) -> np.ndarray:
    """Matrix of v (e^{i lam r}-1)/(4 pi lam r) v, continuous at lam = 0."""
    if split.grid.npoints != grid.npoints:
        raise ValueError("split and grid are inconsistent")
    r = grid.distances
    core = phi1(lam * r) / _FOUR_PI * grid.weight
    return (split.v[:, None] * split.v[None, :]) * core


def build_A2(split: PotentialSplit, grid: Grid3, lam: float) -> np.ndarray:
    """Matrix of (A1(lam) - A1(0))/lam via its integral-representation kernel."""
    if split.grid.npoints != grid.npoints:
        raise ValueError("split and grid are inconsistent")
    r = grid.distances
    core = r * phi2(lam * r) / _FOUR_PI * grid.weight
    return (split.v[:, None] * split.v[None, :]) * core


@dataclass
class BirmanSchwingerFamily:
    """A(lam) = A0 + lam A1(lam) with its Taylor pieces, on one grid."""

    split: PotentialSplit
    grid: Grid3
    lambda_band: tuple = (0.0, 0.0)
    a0: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.a0 is None:
            self.a0 = build_A0(self.split, self.grid)
        lo, hi = self.lambda_band
        if hi <= 0.0:
            self.lambda_band = (-0.5 / self.grid.L, 0.5 / self.grid.L)

    @property
    def alpha(self) -> float:
        return self.split.alpha

    def a1(self, lam: float) -> np.ndarray:
        return build_A1(self.split, self.grid, lam)

    def a2(self, lam: float) -> np.ndarray:
        return build_A2(self.split, self.grid, lam)

    def a_at(self, lam: float) -> np.ndarray:
        """A(lam) = A0 + lam A1(lam), exact by construction."""
        if lam == 0.0:
            return self.a0.astype(complex)
        return self.a0 + lam * self.a1(lam)
