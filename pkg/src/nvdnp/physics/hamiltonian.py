"""Lab-frame and rotating-frame Hamiltonians, in MHz."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

from nvdnp.physics.operators import DIM, build_operator_set
from nvdnp.types.physics import ComplexMatrix, OperatorSet, PhysicalConstants, RotatingFrameParams


def build_h0(constants: PhysicalConstants, Bz: float) -> ComplexMatrix:
    """Ground-state Hamiltonian with the field along the NV axis."""
    ops = build_operator_set(constants)
    c = constants
    h = (
        c.D * ops.Sz @ ops.Sz
        + c.gamma_e * Bz * ops.Sz
        - c.gamma_n * Bz * ops.Iz
        + c.Q * ops.Iz @ ops.Iz
        + c.A_par * ops.Sz @ ops.Iz
        + c.A_perp * (ops.Sx @ ops.Ix + ops.Sy @ ops.Iy)
    )
    return np.asarray(h, dtype=np.complex128)


def transition_frequencies(constants: PhysicalConstants, Bz: float) -> tuple[float, float]:
    """Carrier frequencies (f_-1, f_+1) of the m_I = -1 and m_I = +1 target transitions."""
    c = constants
    return c.D - c.gamma_e * Bz + c.A_par, c.D + c.gamma_e * Bz + c.A_par


def rotating_h0_diagonals(
    constants: PhysicalConstants,
    delta_m1: float,
    delta_p1: float,
    zeeman_offsets: ArrayLike,
) -> NDArray[np.float64]:
    """Diagonals of the rotating-frame static Hamiltonian, shape (len(offsets), 9).

    A member whose transitions are shifted by z (MHz) sees the carriers
    detuned by delta_m1 + z on the m_s=-1 branch and delta_p1 - z on the
    m_s=+1 branch.
    """
    z = np.atleast_1d(np.asarray(zeeman_offsets, dtype=np.float64))
    a = constants.A_par
    m = np.array([1.0, 0.0, -1.0])
    diag = np.zeros((len(z), DIM))
    diag[:, 0:3] = a * m - (delta_p1 - z[:, None] + a)
    diag[:, 6:9] = -a * m - (delta_m1 + z[:, None] + a)
    return diag


def build_rotating_h0(constants: PhysicalConstants, params: RotatingFrameParams) -> ComplexMatrix:
    """A_par Sz Iz - (d_-1 + A_par) P_-1 - (d_+1 + A_par) P_+1 with member-shifted detunings."""
    diag = rotating_h0_diagonals(
        constants, params.delta_m1, params.delta_p1, params.zeeman_offset
    )[0]
    return np.diag(diag).astype(np.complex128)


def build_drive(amp_m1: float, amp_p1: float, ops: OperatorSet) -> ComplexMatrix:
    """Drive term: amp_m1 couples m_s=0 <-> -1, amp_p1 couples m_s=0 <-> +1, each with amp/2."""
    return np.asarray(amp_m1 / 2.0 * ops.L7 - amp_p1 / 2.0 * ops.L2, dtype=np.complex128)
