"""Numerical laboratory for zero-energy thresholds of 3D Schrodinger
operators and the dispersive decay dichotomy t^-1/2 vs t^-3/2."""

__version__ = "0.1.0"

from .grid import Grid3, GridFunction, KernelMatrix, build_grid
from .potentials import (
    Potential,
    PotentialSplit,
    make_eigen_potential,
    make_resonant_potential,
    split_potential,
    square_well,
)
from .radial import ShootingResult, shoot_zero_energy, tune_coupling

__all__ = [
    "Grid3",
    "GridFunction",
    "KernelMatrix",
    "build_grid",
    "Potential",
    "PotentialSplit",
    "split_potential",
    "square_well",
    "make_resonant_potential",
    "make_eigen_potential",
    "ShootingResult",
    "shoot_zero_energy",
    "tune_coupling",
]
