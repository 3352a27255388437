"""Potential definitions, the sign/magnitude factorization, and inverse
constructions with prescribed zero-energy behavior.

Every potential here is real, bounded, and compactly supported inside a
radius R. The factorization used throughout is

    V = U v^2 = w v,   U = sign (with U = +1 where V >= 0),
    v = |V|^(1/2),     w = U v.

Two factory potentials are built "inversely" from a prescribed radial
zero-energy solution:

* resonant: pick u smooth with u(r) = r near 0 and u = 1 for r >= R,
  set V = u''/u. Then g = u/r solves (-Laplace + V) g = 0 and behaves
  like 1/r at infinity (a threshold resonance, not square-integrable).

* eigen (l = 1 channel): pick f with f(r) = r^2 near 0 and f = 1/r for
  r >= R, set V = (f'' - 2 f/r^2)/f. Then g = f(r) z / r^2 solves
  (-Laplace + V) g = 0 and is square-integrable (a zero eigenvalue,
  threefold degenerate by rotation).

The smooth joins use quintic Hermite blending on [R/2, R], giving C^2
profiles and C^0 potentials vanishing at both ends of the blend.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .grid import Grid3

__all__ = [
    "Potential",
    "PotentialSplit",
    "split_potential",
    "square_well",
    "make_resonant_potential",
    "make_eigen_potential",
    "potential_from_dict",
]


def _quintic_blend(t0, t1, left, right):
    """Quintic Hermite interpolant matching value/d/d2 at both ends.

    Returns (p, dp, ddp) as callables of a numpy array argument.
    """
    y0, d0, dd0 = left
    y1, d1, dd1 = right
    T = t1 - t0
    # p(t) = sum c_k s^k with s = t - t0; c0..c2 fixed by the left end
    c = np.zeros(6)
    c[0], c[1], c[2] = y0, d0, 0.5 * dd0
    # right-end conditions determine c3..c5
    A = np.array(
        [
            [T**3, T**4, T**5],
            [3 * T**2, 4 * T**3, 5 * T**4],
            [6 * T, 12 * T**2, 20 * T**3],
        ]
    )
    rhs = np.array(
        [
            y1 - (c[0] + c[1] * T + c[2] * T**2),
            d1 - (c[1] + 2 * c[2] * T),
            dd1 - 2 * c[2],
        ]
    )
    c[3:] = np.linalg.solve(A, rhs)

    def p(t):
        s = np.asarray(t) - t0
        return c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * (c[4] + s * c[5]))))

    def dp(t):
        s = np.asarray(t) - t0
        return c[1] + s * (2 * c[2] + s * (3 * c[3] + s * (4 * c[4] + s * 5 * c[5])))

    def ddp(t):
        s = np.asarray(t) - t0
        return 2 * c[2] + s * (6 * c[3] + s * (12 * c[4] + s * 20 * c[5]))

    return p, dp, ddp


@dataclass
class Potential:
    """Radial (or grid-sampled) real potential with compact support."""

    kind: str
    support_radius: float
    beta: float = np.inf
    profile: object = None  # callable r -> V(r), vectorized
    grid_values: np.ndarray | None = None
    params: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict, repr=False)

    def radial(self, r):
        if self.profile is None:
            raise ValueError(f"potential kind {self.kind!r} has no radial profile")
        return self.profile(np.asarray(r, dtype=float))

    def sample(self, grid: Grid3) -> np.ndarray:
        if self.grid_values is not None:
            vals = np.asarray(self.grid_values, dtype=float)
            if vals.shape != (grid.npoints,):
                raise ValueError("stored samples do not match the grid")
            return vals
        if self.support_radius >= grid.L:
            raise ValueError(
                f"support radius {self.support_radius} must lie inside the box L={grid.L}"
            )
        return self.radial(grid.radii)

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        out.update(self.params)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def square_well(depth: float, radius: float) -> Potential:
    """Attractive well V = -depth on r <= radius, zero outside."""
    if radius <= 0 or not np.isfinite(depth):
        raise ValueError("square well needs finite depth and positive radius")

    def profile(r):
        return np.where(r <= radius, -float(depth), 0.0)

    return Potential(
        kind="square_well",
        support_radius=float(radius),
        profile=profile,
        params={"depth": float(depth), "radius": float(radius)},
    )


def make_resonant_potential(R: float, shape: str = "quintic") -> Potential:
    """Potential with an s-wave zero-energy resonance, supported in r <= R.

    Built from u(r) = r on [0, R/2], a quintic blend on [R/2, R], and
    u = 1 beyond; V = u''/u. The pair (V, g = u/r) is retained in the
    metadata so tests can assert against the exact solution.
    """
    if shape != "quintic":
        raise ValueError(f"unknown profile shape {shape!r}")
    if not np.isfinite(R) or R <= 0:
        raise ValueError("blend radius must be finite and positive (u must flatten to 1)")
    r0, r1 = R / 2.0, R
    p, dp, ddp = _quintic_blend(r0, r1, (r0, 1.0, 0.0), (1.0, 0.0, 0.0))
    rr = np.linspace(r0, r1, 2001)
    if np.any(p(rr) <= 0):
        raise ValueError("blend profile has zeros in (0, R]; cannot form u''/u")

    def u(r):
        r = np.asarray(r, dtype=float)
        return np.where(r <= r0, r, np.where(r >= r1, 1.0, p(np.clip(r, r0, r1))))

    def profile(r):
        r = np.asarray(r, dtype=float)
        inside = (r > r0) & (r < r1)
        out = np.zeros_like(r)
        if np.any(inside):
            rb = r[inside]
            out[inside] = ddp(rb) / p(rb)
        return out

    def g_radial(r):
        r = np.asarray(r, dtype=float)
        safe = np.where(r > 0, r, 1.0)
        return np.where(r > 0, u(r) / safe, 1.0)

    def g_field(points):
        return g_radial(np.sqrt(np.sum(np.asarray(points) ** 2, axis=1)))

    return Potential(
        kind="resonant",
        support_radius=R,
        profile=profile,
        params={"R": float(R)},
        metadata={"u": u, "g_radial": g_radial, "g_field": g_field, "ell": 0},
    )


def make_eigen_potential(R: float, shape: str = "quintic") -> Potential:
    """Potential with a zero-energy eigenvalue (l = 1), supported in r <= R.

    Built from f(r) = r^2 on [0, R/2], a quintic blend, and f = 1/r
    beyond; V = (f'' - 2 f / r^2)/f. The eigenfunction g = f(r) z / r^2
    is retained in the metadata.
    """
    if shape != "quintic":
        raise ValueError(f"unknown profile shape {shape!r}")
    if not np.isfinite(R) or R <= 0:
        raise ValueError("blend radius must be finite and positive")
    r0, r1 = R / 2.0, R
    p, dp, ddp = _quintic_blend(
        r0, r1, (r0**2, 2 * r0, 2.0), (1.0 / r1, -1.0 / r1**2, 2.0 / r1**3)
    )
    rr = np.linspace(r0, r1, 2001)
    if np.any(p(rr) <= 0):
        raise ValueError("blend profile has zeros in (0, R]")

    def f(r):
        r = np.asarray(r, dtype=float)
        safe = np.where(r > 0, r, 1.0)
        return np.where(
            r <= r0, r**2, np.where(r >= r1, 1.0 / safe, p(np.clip(r, r0, r1)))
        )

    def profile(r):
        r = np.asarray(r, dtype=float)
        inside = (r > r0) & (r < r1)
        out = np.zeros_like(r)
        if np.any(inside):
            rb = r[inside]
            out[inside] = (ddp(rb) - 2.0 * p(rb) / rb**2) / p(rb)
        return out

    def g_field(points):
        pts = np.asarray(points)
        r = np.sqrt(np.sum(pts**2, axis=1))
        safe = np.where(r > 0, r, 1.0)
        # f ~ r^2 near zero, so f z / r^2 -> z smoothly
        return np.where(r > 0, f(r) * pts[:, 2] / safe**2, 0.0)

    return Potential(
        kind="eigen",
        support_radius=R,
        profile=profile,
        params={"R": float(R)},
        metadata={"f": f, "g_field": g_field, "ell": 1},
    )


def potential_from_dict(record: dict) -> Potential:
    """Reconstruct a potential from its JSON record."""
    kind = record.get("kind")
    if kind == "square_well":
        return square_well(record["depth"], record["radius"])
    if kind == "resonant":
        return make_resonant_potential(record["R"])
    if kind == "eigen":
        return make_eigen_potential(record["R"])
    if kind == "grid":
        values = record["values"]
        if isinstance(values, str):
            values = np.load(values)
        values = np.asarray(values, dtype=float)
        n = round(len(values) ** (1.0 / 3.0))
        return Potential(
            kind="grid",
            support_radius=np.nan,
            grid_values=values,
            params={"values": record["values"]} if isinstance(record["values"], str) else {},
        )
    raise ValueError(f"unknown potential kind {kind!r}")


@dataclass
class PotentialSplit:
    """Pointwise factorization V = U v^2 = w v on a grid."""

    grid: Grid3
    V: np.ndarray
    U: np.ndarray
    v: np.ndarray
    w: np.ndarray
    alpha: float  # L1 norm of V (quadrature value)

    @property
    def npoints(self):
        return self.grid.npoints


def split_potential(potential: Potential, grid: Grid3) -> PotentialSplit:
    """Sample V on the grid and form U, v, w, and alpha = ||V||_1."""
    V = np.asarray(potential.sample(grid), dtype=float)
    if not np.all(np.isfinite(V)):
        raise ValueError("potential sample is non-finite")
    U = np.where(V >= 0.0, 1.0, -1.0)
    v = np.sqrt(np.abs(V))
    w = U * v
    alpha = float(grid.weight * np.sum(np.abs(V)))
    return PotentialSplit(grid=grid, V=V, U=U, v=v, w=w, alpha=alpha)
