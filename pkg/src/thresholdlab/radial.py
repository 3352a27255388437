"""High-accuracy radial oracle: zero-energy shooting and coupling tuning.

Integrates the reduced radial equation at zero energy,

    u''(r) = (V(r) + l(l+1)/r^2) u(r),

outward from r = eps with regular (Frobenius) initial data u ~ r^(l+1),
and matches (a, b) in

    u(r) = a r^(l+1) + b r^(-l)      for r >= support edge,

algebraically at the exact support edge of V (no asymptotic fitting).
A vanishing growing coefficient a = 0 signals a zero-energy threshold
state: a resonance for l = 0 (u -> const, g = u/r ~ 1/r not square
integrable) and a genuine eigenvalue for l >= 1 (u ~ r^(-l), g decays).

The integrator is a fixed-step classical Runge-Kutta scheme; the
equation is smooth and non-stiff on each piece, so a fixed step with a
Richardson check beats adaptivity for reproducibility.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .potentials import Potential

__all__ = ["ShootingResult", "shoot_zero_energy", "tune_coupling", "TuneReport"]


@dataclass
class ShootingResult:
    ell: int
    r_max: float
    a: float
    b: float
    node_count: int


def shoot_zero_energy(
    potential: Potential,
    ell: int,
    step_factor: float = 1e-4,
    eps_factor: float = 1e-6,
) -> ShootingResult:
    """Integrate the zero-energy radial equation and match at the edge."""
    if potential.profile is None:
        raise ValueError("shooting needs a radial potential")
    if ell < 0:
        raise ValueError("angular momentum must be nonnegative")
    R = float(potential.support_radius)
    if not np.isfinite(R) or R <= 0:
        raise ValueError("support radius must be finite and positive")
    profile = potential.profile

    eps = eps_factor * R
    h = step_factor * R
    nsteps = int(np.ceil((R - eps) / h))
    h = (R - eps) / nsteps  # land exactly on the support edge

    # two-term Frobenius start: u = r^(l+1) (1 + V(0+) r^2 / (4l+6))
    v0 = float(profile(np.array([eps]))[0])
    c2 = v0 / (4.0 * ell + 6.0)
    u = eps ** (ell + 1) * (1.0 + c2 * eps**2)
    du = (ell + 1) * eps**ell + (ell + 3) * c2 * eps ** (ell + 2)

    # all RK4 stage abscissae lie on the half-step lattice; evaluate
    # q = V + l(l+1)/r^2 there in one vectorized pass
    lattice = eps + 0.5 * h * np.arange(2 * nsteps + 1)
    qv = np.asarray(profile(lattice), dtype=float)
    if ell:
        qv = qv + ell * (ell + 1) / lattice**2
    qv = qv.tolist()

    nodes = 0
    prev_sign = 1.0 if u > 0 else (-1.0 if u < 0 else 0.0)
    h6 = h / 6.0
    for k in range(nsteps):
        q0 = qv[2 * k]
        q1 = qv[2 * k + 1]
        q2 = qv[2 * k + 2]
        # classical RK4 on the first-order system (u, u')
        k1u = du
        k1d = q0 * u
        k2u = du + 0.5 * h * k1d
        k2d = q1 * (u + 0.5 * h * k1u)
        k3u = du + 0.5 * h * k2d
        k3d = q1 * (u + 0.5 * h * k2u)
        k4u = du + h * k3d
        k4d = q2 * (u + h * k3u)
        u = u + h6 * (k1u + 2 * k2u + 2 * k3u + k4u)
        du = du + h6 * (k1d + 2 * k2d + 2 * k3d + k4d)
        s = 1.0 if u > 0 else (-1.0 if u < 0 else 0.0)
        if s != 0 and prev_sign != 0 and s != prev_sign:
            nodes += 1
        if s != 0:
            prev_sign = s

    # algebraic match against the free solutions r^(l+1), r^(-l) at r = R
    mat = np.array(
        [
            [R ** (ell + 1), R ** (-ell)],
            [(ell + 1) * R**ell, -ell * R ** (-ell - 1)],
        ]
    )
    a, b = np.linalg.solve(mat, np.array([u, du]))
    return ShootingResult(ell=ell, r_max=R, a=float(a), b=float(b), node_count=nodes)


@dataclass
class TuneReport:
    c_star: float
    a_residual: float
    iterations: int
    bracket: tuple


def _scaled(potential: Potential, c: float) -> Potential:
    base = potential.profile

    def profile(r):
        return c * base(r)

    return Potential(
        kind=potential.kind,
        support_radius=potential.support_radius,
        profile=profile,
        params=dict(potential.params),
    )


def tune_coupling(
    shape: Potential,
    ell: int,
    bracket: tuple,
    tol_a: float = 1e-10,
    max_iter: int = 200,
) -> TuneReport:
    """Bisect the coupling c so that the growing coefficient of c*W vanishes.

    Requires a sign change of a(c) across the bracket; stops once
    |a| < tol_a at the midpoint.
    """
    c_lo, c_hi = float(bracket[0]), float(bracket[1])
    a_lo = shoot_zero_energy(_scaled(shape, c_lo), ell).a
    a_hi = shoot_zero_energy(_scaled(shape, c_hi), ell).a
    if a_lo * a_hi >= 0:
        raise ValueError(
            f"bracket ({c_lo}, {c_hi}) does not straddle a sign change: "
            f"a={a_lo:.3e}, {a_hi:.3e}"
        )
    c_mid, a_mid = 0.5 * (c_lo + c_hi), np.inf
    for it in range(1, max_iter + 1):
        c_mid = 0.5 * (c_lo + c_hi)
        a_mid = shoot_zero_energy(_scaled(shape, c_mid), ell).a
        if abs(a_mid) < tol_a:
            break
        if a_mid * a_lo < 0:
            c_hi = c_mid
        else:
            c_lo, a_lo = c_mid, a_mid
        if c_hi - c_lo < 1e-15 * max(1.0, abs(c_mid)):
            break
    return TuneReport(
        c_star=float(c_mid),
        a_residual=float(a_mid),
        iterations=it,
        bracket=(float(bracket[0]), float(bracket[1])),
    )
