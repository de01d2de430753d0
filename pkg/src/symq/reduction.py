"""Two-qubit reduced description (s, T) of symmetric N-qubit states."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .collective import (
    PureSymmetricState,
    _check_bath_args,
    bath_mean_s3,
    m_index,
    spin_operators,
)

PHYSICAL_TOL = 1e-8

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
_ID2 = np.eye(2, dtype=complex)


class NonPhysicalStateError(ValueError):
    """Input violates a structural or positivity constraint of a pair state."""


@dataclass(frozen=True, eq=False)
class PairState:
    """Mean qubit Bloch vector ``s`` and symmetric correlation matrix ``t``."""

    s: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        s = np.array(self.s, dtype=float).reshape(3)
        t = np.array(self.t, dtype=float).reshape(3, 3)
        if not np.all(np.isfinite(s)) or not np.all(np.isfinite(t)):
            raise NonPhysicalStateError("pair parameters must be finite")
        asym = np.abs(t - t.T).max()
        if asym > 1e-12:
            raise NonPhysicalStateError(f"t is not symmetric (max |t_ij - t_ji| = {asym:.3g})")
        tr = np.trace(t)
        if abs(tr - 1.0) > 1e-10:
            raise NonPhysicalStateError(f"trace(t) = {tr!r}, expected 1")
        if np.linalg.norm(s) > 1 + 1e-10:
            raise NonPhysicalStateError(f"|s| = {np.linalg.norm(s)!r} exceeds 1")
        if np.abs(np.diag(t)).max() > 1 + 1e-10:
            raise NonPhysicalStateError("diagonal of t outside [-1, 1]")
        t = 0.5 * (t + t.T)
        s.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)

    def allclose(self, other: "PairState", atol: float = 1e-10) -> bool:
        return np.allclose(self.s, other.s, rtol=0, atol=atol) and np.allclose(
            self.t, other.t, rtol=0, atol=atol
        )


@dataclass(frozen=True, eq=False)
class PairDensity:
    rho: np.ndarray

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.rho).min())

    @property
    def is_physical(self) -> bool:
        return self.min_eigenvalue >= -PHYSICAL_TOL


def collective_moments(state: PureSymmetricState) -> tuple[np.ndarray, np.ndarray]:
    """Mean spin <S_i> and symmetrized second moments <S_i S_j + S_j S_i>."""
    ops = spin_operators(state.n_qubits)
    psi = state.amplitudes
    v = np.array([op @ psi for op in ops])
    mean = np.real(v @ psi.conj())
    gram = v.conj() @ v.T  # <S_i S_j>
    return mean, 2.0 * gram.real


def pair_moments(pair: PairState, n_qubits: int) -> tuple[np.ndarray, np.ndarray]:
    """Collective moments implied by pair parameters; inverse of ``reduce_pure``."""
    n = n_qubits
    mean = n * pair.s / 2
    anti = n / 2 * np.eye(3) + n * (n - 1) / 2 * pair.t
    return mean, anti


def reduce_pure(state: PureSymmetricState) -> PairState:
    """Reduced two-qubit parameters from collective first and second moments."""
    n = state.n_qubits
    if n < 2:
        raise ValueError("a pair reduction needs at least two qubits")
    mean, anti = collective_moments(state)
    s = 2.0 * mean / n
    t = (2.0 * anti - n * np.eye(3)) / (n * (n - 1))
    return PairState(s, t)


def pair_density(pair: PairState) -> PairDensity:
    """4x4 two-qubit density matrix built from (s, t).

    Positivity is not enforced; inspect ``is_physical`` on the result.
    """
    rho = np.kron(_ID2, _ID2).astype(complex)
    for i in range(3):
        rho += pair.s[i] * (np.kron(PAULI[i], _ID2) + np.kron(_ID2, PAULI[i]))
        for j in range(3):
            rho += pair.t[i, j] * np.kron(PAULI[i], PAULI[j])
    return PairDensity(rho / 4.0)


def require_physical(pair: PairState) -> PairDensity:
    dens = pair_density(pair)
    lam = dens.min_eigenvalue
    if lam < -PHYSICAL_TOL:
        raise NonPhysicalStateError(
            f"pair density matrix is not positive semidefinite (min eigenvalue {lam:.3g})"
        )
    return dens


def full_state_vector(state: PureSymmetricState) -> np.ndarray:
    """Expand a Dicke-basis state into the full 2^N qubit space (qubit 1 most significant)."""
    n = state.n_qubits
    if n > 12:
        raise ValueError("full 2^N expansion is limited to N <= 12")
    popcount = np.array([bin(k).count("1") for k in range(2**n)])
    norms = np.array([np.sqrt(comb(n, k)) for k in range(n + 1)])
    # bit value 1 is spin down, so the number of ones is the Dicke index m
    return state.amplitudes[popcount] / norms[popcount]


def full_partial_trace(state: PureSymmetricState) -> np.ndarray:
    """Reduced density matrix of qubits 1 and 2, traced over the remaining N-2."""
    n = state.n_qubits
    if n < 2:
        raise ValueError("need at least two qubits")
    psi = full_state_vector(state).reshape(4, 2 ** (n - 2))
    return psi @ psi.conj().T


def dicke_pair_closed(n_qubits: int, m_value: float) -> PairState:
    n = n_qubits
    if n < 2:
        raise ValueError("a pair reduction needs at least two qubits")
    m_index(n, m_value)
    m2 = 4.0 * m_value**2
    perp = (n * n - m2) / (2 * n * (n - 1))
    along = (m2 - n) / (n * (n - 1))
    return PairState([0.0, 0.0, 2.0 * m_value / n], np.diag([perp, perp, along]))


def ku_pair_closed(n_qubits: int, chi_t: float) -> PairState:
    n = n_qubits
    if n < 2:
        raise ValueError("a pair reduction needs at least two qubits")
    c = np.cos(chi_t)
    c2 = np.cos(2 * chi_t) ** (n - 2)
    t = np.zeros((3, 3))
    t[0, 1] = t[1, 0] = c ** (n - 2) * np.sin(chi_t)
    t[1, 1] = 0.5 * (1 - c2)
    t[2, 2] = 0.5 * (1 + c2)
    return PairState([0.0, 0.0, -(c ** (n - 1))], t)


def bath_squeeze_factor(x: float) -> float:
    """e^{-2|xi|} expressed through x = e^{2 theta}: equals (1 - x)/(1 + x)."""
    return (1.0 - x) / (1.0 + x)


def bath_diagonal_closed(n_qubits: int, x: float) -> tuple[float, float, float, float]:
    """<S_z> and the three diagonal correlations of the squeezed-bath pair.

    cosh(2|xi|) is written as (q + 1/q)/2 with q = e^{-2|xi|}, which keeps the
    unit trace exact as x -> 1.
    """
    n = _check_bath_args(n_qubits, x)
    s3 = bath_mean_s3(n, x)
    q = bath_squeeze_factor(x)
    denom = n * (n - 1)
    t1 = (-2 * s3 * q - n) / denom
    t2 = (-2 * s3 / q - n) / denom
    t3 = (2 * s3 * q + 2 * s3 / q + n * n + n) / denom
    return s3, t1, t2, t3


def bath_pair_closed(n_qubits: int, x: float) -> PairState:
    s3, t1, t2, t3 = bath_diagonal_closed(n_qubits, x)
    return PairState([0.0, 0.0, 2 * s3 / n_qubits], np.diag([t1, t2, t3]))
