"""Operators on the electron (x) nuclear space and state readout.

Basis index of |m_s, m_I> is 3 * i_s + i_n, where both indices run over the
projections (+1, 0, -1) in that order.
"""

from __future__ import annotations

import functools

import numpy as np
from numpy.typing import NDArray

from nvdnp.types.physics import ComplexMatrix, DensityMatrix, OperatorSet, PhysicalConstants

DIM = 9
MS_INDEX = {+1: 0, 0: 1, -1: 2}
MI_INDEX = MS_INDEX

_EYE3 = np.eye(3, dtype=np.complex128)


def basis_index(m_s: int, m_i: int) -> int:
    """Row of |m_s, m_I> in every 9x9 matrix."""
    return 3 * MS_INDEX[m_s] + MI_INDEX[m_i]


def _spin1() -> tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]:
    sz = np.diag([1.0, 0.0, -1.0]).astype(np.complex128)
    s_plus = np.zeros((3, 3), dtype=np.complex128)
    s_plus[0, 1] = s_plus[1, 2] = np.sqrt(2.0)
    s_minus = s_plus.conj().T
    return (s_plus + s_minus) / 2, (s_plus - s_minus) / 2j, sz


def _frozen(m: ComplexMatrix) -> ComplexMatrix:
    m = np.ascontiguousarray(m, dtype=np.complex128)
    m.setflags(write=False)
    return m


@functools.cache
def _operator_set() -> OperatorSet:
    sx, sy, sz = _spin1()

    lam2 = np.zeros((3, 3), dtype=np.complex128)
    lam2[0, 1], lam2[1, 0] = -1j, 1j
    lam7 = np.zeros((3, 3), dtype=np.complex128)
    lam7[1, 2], lam7[2, 1] = -1j, 1j

    def electron(m: ComplexMatrix) -> ComplexMatrix:
        return _frozen(np.kron(m, _EYE3))

    def nuclear(m: ComplexMatrix) -> ComplexMatrix:
        return _frozen(np.kron(_EYE3, m))

    return OperatorSet(
        Sx=electron(sx),
        Sy=electron(sy),
        Sz=electron(sz),
        Ix=nuclear(sx),
        Iy=nuclear(sy),
        Iz=nuclear(sz),
        P_minus1=electron(np.diag([0.0, 0.0, 1.0]).astype(np.complex128)),
        P_plus1=electron(np.diag([1.0, 0.0, 0.0]).astype(np.complex128)),
        L2=electron(lam2),
        L7=electron(lam7),
    )


def build_operator_set(constants: PhysicalConstants | None = None) -> OperatorSet:
    """Return the shared, read-only operator set.

    The operators do not depend on the coupling constants; the argument is
    accepted so call sites can pass whatever constants they hold.
    """
    return _operator_set()


def initial_state() -> DensityMatrix:
    """|m_s=0><m_s=0| (x) identity/3: electron polarized, nucleus unpolarized."""
    rho = np.zeros((DIM, DIM), dtype=np.complex128)
    for m_i in (+1, 0, -1):
        k = basis_index(0, m_i)
        rho[k, k] = 1.0 / 3.0
    return rho


def trace_out_electron(rho: DensityMatrix) -> NDArray[np.complex128]:
    """Partial trace over the electron; works on stacks of shape (..., 9, 9)."""
    r = np.asarray(rho).reshape(*np.shape(rho)[:-2], 3, 3, 3, 3)
    return np.einsum("...ijik->...jk", r)


def nuclear_populations(rho: DensityMatrix) -> NDArray[np.float64]:
    """P(m_I = +1, 0, -1) of the reduced nuclear state."""
    return np.real(np.diagonal(trace_out_electron(rho), axis1=-2, axis2=-1))


def population_mI0(rho: DensityMatrix) -> float | NDArray[np.float64]:
    """<0| Tr_e rho |0>; a float for one matrix, an array for a stack."""
    pop = np.real(trace_out_electron(rho)[..., 1, 1])
    return float(pop) if pop.ndim == 0 else pop


def density_matrix_defects(rho: DensityMatrix) -> tuple[float, float, float]:
    """(|tr - 1|, max Hermiticity defect, min eigenvalue), worst case over a stack."""
    rho = np.asarray(rho)
    trace_err = float(np.max(np.abs(np.trace(rho, axis1=-2, axis2=-1) - 1.0)))
    herm_err = float(np.max(np.abs(rho - np.conj(np.swapaxes(rho, -1, -2)))))
    hermitian_part = (rho + np.conj(np.swapaxes(rho, -1, -2))) / 2
    min_eig = float(np.min(np.linalg.eigvalsh(hermitian_part)))
    return trace_err, herm_err, min_eig
