"""Collective spin operators and symmetric N-qubit states in the Dicke basis.

Amplitude index ``m = 0..N`` corresponds to the magnetic quantum number
``M = S - m`` with ``S = N/2``, i.e. the basis runs from all qubits up to all
qubits down.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import logsumexp

NORM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SpinOps:
    """The three collective spin matrices for total spin S = N/2 (hbar = 1)."""

    dim: int
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray

    @property
    def spin(self) -> float:
        return (self.dim - 1) / 2

    def __iter__(self):
        return iter((self.sx, self.sy, self.sz))


@dataclass(frozen=True, eq=False)
class PureSymmetricState:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        if amps.shape != (self.n_qubits + 1,):
            raise ValueError(
                f"expected {self.n_qubits + 1} amplitudes, got shape {amps.shape}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: |psi| = {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def spin(self) -> float:
        return self.n_qubits / 2

    def expectation(self, op: np.ndarray) -> complex:
        return np.vdot(self.amplitudes, op @ self.amplitudes)


def _check_n(n_qubits: int, minimum: int = 1) -> int:
    if int(n_qubits) != n_qubits or n_qubits < minimum:
        raise ValueError(f"n_qubits must be an integer >= {minimum}, got {n_qubits!r}")
    return int(n_qubits)


def m_index(n_qubits: int, m_value: float) -> int:
    """Position of |S, M> in the amplitude vector; rejects invalid M."""
    n = _check_n(n_qubits)
    two_m = 2 * m_value
    if abs(two_m - round(two_m)) > 1e-12:
        raise ValueError(f"M must be a half-integer, got {m_value!r}")
    two_m = int(round(two_m))
    if abs(two_m) > n or (n - two_m) % 2:
        raise ValueError(f"M = {m_value} is not a valid projection for N = {n}")
    return (n - two_m) // 2


def m_values(n_qubits: int) -> np.ndarray:
    """Magnetic quantum numbers in storage order, S down to -S."""
    return n_qubits / 2 - np.arange(n_qubits + 1)


@lru_cache(maxsize=128)
def _build_spin_ops(n: int) -> SpinOps:
    spin = n / 2
    m = m_values(n)
    # <M+1| S+ |M> sits one row above the diagonal in S-down-to--S order
    ladder = np.sqrt(spin * (spin + 1) - m[1:] * (m[1:] + 1))
    s_plus = np.diag(ladder, k=1).astype(complex)
    s_minus = s_plus.conj().T
    sx = 0.5 * (s_plus + s_minus)
    sy = -0.5j * (s_plus - s_minus)
    sz = np.diag(m).astype(complex)
    for a in (sx, sy, sz):
        a.setflags(write=False)
    return SpinOps(dim=n + 1, sx=sx, sy=sy, sz=sz)


def spin_operators(n_qubits: int) -> SpinOps:
    """Collective spin matrices S_x, S_y, S_z for N qubits (S = N/2).

    The returned arrays are cached and read-only.
    """
    return _build_spin_ops(_check_n(n_qubits))


def expm_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i t h) for Hermitian ``h`` via its eigendecomposition."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def dicke_state(n_qubits: int, m_value: float) -> PureSymmetricState:
    idx = m_index(n_qubits, m_value)
    amps = np.zeros(n_qubits + 1, dtype=complex)
    amps[idx] = 1.0
    return PureSymmetricState(n_qubits, amps)


def kitagawa_ueda_state(n_qubits: int, chi_t: float) -> PureSymmetricState:
    """One-axis-twisted state exp(-i chi_t S_x^2) |S, -S>.

    The twist is about x: twisting |S,-S> about z would only add a global
    phase. This choice reproduces the known closed-form pair parameters
    (mean spin along -z, transverse correlation in the x-y block).
    """
    n = _check_n(n_qubits, 2)
    ops = spin_operators(n)
    w, v = np.linalg.eigh(ops.sx)
    # last column of v^dagger is <w_k|S,-S>
    coeffs = v.conj()[-1, :]
    amps = v @ (np.exp(-1j * chi_t * w**2) * coeffs)
    amps /= np.linalg.norm(amps)
    return PureSymmetricState(n, amps)


@lru_cache(maxsize=64)
def _d_column_half_pi(n: int) -> np.ndarray:
    ops = spin_operators(n)
    rot = expm_hermitian(ops.sy, np.pi / 2)
    col = rot[:, n // 2]
    if np.abs(col.imag).max() > 1e-10:
        raise ArithmeticError("rotation about y produced a complex d-matrix column")
    col = col.real.copy()
    # d^S_{M0}(pi/2) vanishes identically when S + M is odd
    col[1::2] = 0.0
    col.setflags(write=False)
    return col


def wigner_d_half_pi(spin: float, m_value: float) -> float:
    """Reduced rotation matrix element <S,M| exp(-i pi/2 S_y) |S,0>.

    Evaluated from the dense rotation operator rather than a factorial sum.
    """
    two_s = 2 * spin
    if abs(two_s - round(two_s)) > 1e-12 or round(two_s) < 0:
        raise ValueError(f"spin must be a non-negative half-integer, got {spin!r}")
    n = int(round(two_s))
    if n % 2:
        raise ValueError(f"|S,0> does not exist for half-integer S = {spin}")
    if n == 0:
        if m_value != 0:
            raise ValueError("M must be 0 for S = 0")
        return 1.0
    return float(_d_column_half_pi(n)[m_index(n, m_value)])


def _check_bath_args(n_qubits: int, x: float) -> int:
    n = _check_n(n_qubits, 2)
    if n % 2:
        raise ValueError(f"squeezed-bath steady state requires even N, got {n}")
    if not 0.0 < x < 1.0:
        raise ValueError(f"x must lie in (0, 1), got {x!r}")
    return n


def squeezed_bath_state(n_qubits: int, x: float) -> PureSymmetricState:
    """Steady state A0 exp(theta S_z) exp(-i pi/2 S_y) |S, 0> with x = e^{2 theta}."""
    n = _check_bath_args(n_qubits, x)
    d = _d_column_half_pi(n)
    m = m_values(n)
    keep = d != 0.0
    log_amp = 0.5 * m[keep] * np.log(x) + np.log(np.abs(d[keep]))
    log_amp -= log_amp.max()
    amps = np.zeros(n + 1, dtype=complex)
    amps[keep] = np.sign(d[keep]) * np.exp(log_amp)
    amps /= np.linalg.norm(amps)
    return PureSymmetricState(n, amps)


def bath_mean_s3(n_qubits: int, x: float) -> float:
    """<S_z> of the squeezed-bath steady state.

    Probabilities are x^M d^2 with x = e^{2 theta}. The +-M terms are paired
    into sinh(M |ln x|) and summed in the log domain, so the result keeps full
    relative precision both for x -> 1 (where it vanishes) and for large N.
    """
    n = _check_bath_args(n_qubits, x)
    d = _d_column_half_pi(n)
    m = m_values(n)
    keep = d != 0.0
    big_l = -np.log(x)
    log_d2 = 2.0 * np.log(np.abs(d[keep]))
    log_den = logsumexp(log_d2 - m[keep] * big_l)
    pos = m[keep] > 0
    if not pos.any():
        return 0.0
    mp = m[keep][pos]
    # x^M - x^-M = -e^{M L} (1 - e^{-2 M L})
    log_num = np.log(mp) + log_d2[pos] + mp * big_l + np.log(-np.expm1(-2 * mp * big_l))
    return float(-np.exp(logsumexp(log_num) - log_den))


def random_symmetric_state(n_qubits: int, rng: np.random.Generator) -> PureSymmetricState:
    """Haar-random pure state on the symmetric subspace."""
    n = _check_n(n_qubits)
    amps = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    return PureSymmetricState(n, amps / np.linalg.norm(amps))
