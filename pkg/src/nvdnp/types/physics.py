"""Physical constants, operator sets and rotating-frame parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np
from numpy.typing import NDArray

ComplexMatrix = NDArray[np.complex128]
RealArray = NDArray[np.float64]

# Density matrices are plain complex arrays of shape (..., 9, 9) in the
# |m_s> (x) |m_I> basis, both factors ordered (+1, 0, -1).
DensityMatrix = ComplexMatrix


@dataclass(frozen=True, slots=True)
class PhysicalConstants:
    """Couplings of the NV- ground-state Hamiltonian, in MHz, MHz/G and G."""

    D: float = 2870.0
    gamma_e: float = 2.8025
    gamma_n: float = 3.077e-4
    Q: float = -4.945
    A_par: float = -2.16
    A_perp: float = -2.7
    B0: float = 10.0

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not math.isfinite(value):
                raise ValueError(f"{f.name} must be finite, got {value!r}")
        if self.D <= 0:
            raise ValueError(f"D must be positive, got {self.D}")
        if self.gamma_e <= 0:
            raise ValueError(f"gamma_e must be positive, got {self.gamma_e}")
        if self.A_par == 0:
            raise ValueError("A_par must be non-zero")

    @property
    def hyperfine_gap(self) -> float:
        """|A_par|: spacing of the nuclear-spin-selective transitions."""
        return abs(self.A_par)


@dataclass(frozen=True, slots=True, eq=False)
class OperatorSet:
    """9x9 operators on the electron (x) nuclear space."""

    Sx: ComplexMatrix
    Sy: ComplexMatrix
    Sz: ComplexMatrix
    Ix: ComplexMatrix
    Iy: ComplexMatrix
    Iz: ComplexMatrix
    P_minus1: ComplexMatrix
    P_plus1: ComplexMatrix
    L2: ComplexMatrix
    L7: ComplexMatrix


@dataclass(frozen=True, slots=True)
class RotatingFrameParams:
    """Carrier detunings and the member's Zeeman offset, all in MHz."""

    delta_m1: float = 0.0
    delta_p1: float = 0.0
    zeeman_offset: float = 0.0

    def __post_init__(self) -> None:
        for f in fields(self):
            if not math.isfinite(getattr(self, f.name)):
                raise ValueError(f"{f.name} must be finite")
