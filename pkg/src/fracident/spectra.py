"""Continuous-frequency impedance of the circuit, for Nyquist plots.

    Z(jw) = R_inf + R1 / (1 + R1 C1 (jw)^alpha1) + 1 / (C2 (jw)^alpha2)

evaluated in double precision with numpy.  ``(jw)^alpha`` uses the principal
branch, w^alpha * exp(j alpha pi / 2).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "ImpedancePoint",
    "default_grid",
    "cpe_impedance",
    "impedance",
    "impedance_at",
    "sweep_spectrum",
]


@dataclass(frozen=True)
class ImpedancePoint:
    omega: float
    z_re: float
    z_im: float

    @property
    def z(self) -> complex:
        return complex(self.z_re, self.z_im)


def default_grid(n: int = 200, lo: float = 1e-3, hi: float = 1e4) -> np.ndarray:
    """``n`` log-spaced angular frequencies from ``lo`` to ``hi`` rad/s."""
    return np.logspace(np.log10(lo), np.log10(hi), n)


def _jw_pow(omega, alpha):
    return omega ** alpha * np.exp(0.5j * np.pi * alpha)


def cpe_impedance(c, alpha, omega):
    """1 / (c (jw)^alpha); its phase is -alpha*pi/2 at every frequency."""
    omega = np.asarray(omega, dtype=float)
    return 1.0 / (c * _jw_pow(omega, alpha))


def impedance(params, omega):
    """Complex impedance at angular frequencies ``omega`` (array or scalar)."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise DomainError("angular frequencies must be positive")
    r_inf, r1, c1 = float(params.r_inf), float(params.r1), float(params.c1)
    a1, c2, a2 = float(params.alpha1), float(params.c2), float(params.alpha2)
    return r_inf + r1 / (1.0 + r1 * c1 * _jw_pow(omega, a1)) + cpe_impedance(c2, a2, omega)


def impedance_at(params, omega: float) -> ImpedancePoint:
    z = complex(impedance(params, omega))
    return ImpedancePoint(float(omega), z.real, z.imag)


def sweep_spectrum(params, omega_grid) -> list:
    grid = np.asarray(omega_grid, dtype=float).ravel()
    if grid.size == 0:
        return []
    if np.any(grid <= 0):
        raise DomainError("angular frequencies must be positive")
    if np.any(np.diff(grid) <= 0):
        raise DomainError("frequency grid must be strictly ascending")
    z = impedance(params, grid)
    return [ImpedancePoint(float(w), float(v.real), float(v.imag)) for w, v in zip(grid, z)]
