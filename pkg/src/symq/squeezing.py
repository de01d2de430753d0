"""Spin squeezing and other collective signatures expressed through pair parameters."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .collective import PureSymmetricState
from .invariants import compute_invariants
from .reduction import PairState, collective_moments, pair_moments, reduce_pure

STRICT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class AlignedPair:
    """Pair parameters in a frame with the mean spin along +z and T_perp diagonal.

    ``n_hat``, ``n_perp_plus`` and ``n_perp_minus`` are the corresponding lab-frame
    unit vectors.
    """

    s0: float
    t_perp_plus: float
    t_perp_minus: float
    t33: float
    n_hat: np.ndarray
    n_perp_plus: np.ndarray
    n_perp_minus: np.ndarray

    def __post_init__(self):
        if self.t_perp_plus < self.t_perp_minus:
            raise ValueError("t_perp_plus must not be below t_perp_minus")
        total = self.t_perp_plus + self.t_perp_minus + self.t33
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"aligned correlation entries sum to {total!r}, expected 1")
        if self.t_perp_plus < -1e-10 and self.t33 < -1e-10:
            raise ValueError("two negative diagonal correlations: not a physical pair")


@dataclass(frozen=True)
class SqueezingReport:
    xi2: float
    max_fluct: float
    i5_identity_residual: float
    n_qubits: int


@dataclass(frozen=True)
class CollectiveSignatures:
    """Collective-observable counterparts of the pair invariants.

    ``along_mean_sq``, ``i4`` and ``comb`` are None when the mean spin vanishes.
    ``principal_excess`` holds <S_i^2> - N/4 along the eigenaxes of T
    (descending eigenvalue order).
    """

    n_qubits: int
    mean_spin_sq: float
    standard_limit: float
    window_upper: float
    along_mean_sq: float | None
    i4: float | None
    comb: float | None
    principal_excess: tuple[float, float, float]
    i1: float


def _perp_basis(n_hat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    helper = np.eye(3)[np.argmin(np.abs(n_hat))]
    e1 = np.cross(helper, n_hat)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n_hat, e1)
    return e1, e2


def align_mean_spin(pair: PairState) -> AlignedPair:
    s0 = float(np.linalg.norm(pair.s))
    if s0 <= 1e-12:
        raise ValueError("mean spin vanishes; no alignment direction (use the I3 = 0 branch)")
    n_hat = pair.s / s0
    e1, e2 = _perp_basis(n_hat)
    t = pair.t
    a, b, c = e1 @ t @ e1, e1 @ t @ e2, e2 @ t @ e2
    root = np.sqrt((a - c) ** 2 + 4 * b * b)
    plus, minus = 0.5 * (a + c + root), 0.5 * (a + c - root)
    _, vec = np.linalg.eigh(np.array([[a, b], [b, c]]))
    v_minus = vec[0, 0] * e1 + vec[1, 0] * e2
    v_plus = vec[0, 1] * e1 + vec[1, 1] * e2
    return AlignedPair(
        s0=s0,
        t_perp_plus=float(plus),
        t_perp_minus=float(minus),
        t33=float(n_hat @ t @ n_hat),
        n_hat=n_hat,
        n_perp_plus=v_plus,
        n_perp_minus=v_minus,
    )


def xi_squared(aligned: AlignedPair, n_qubits: int) -> float:
    """Spin squeezing parameter (4/N) min Var(S_perp); below 1 means squeezed."""
    return 1.0 + (n_qubits - 1) * aligned.t_perp_minus


def max_fluctuation(aligned: AlignedPair, n_qubits: int) -> float:
    return 1.0 + (n_qubits - 1) * aligned.t_perp_plus


def i5_collective_identity(aligned: AlignedPair, n_qubits: int) -> float:
    """I5 rebuilt from |<S>|, xi^2 and the maximal transverse fluctuation."""
    n = n_qubits
    mean_sq = (n * aligned.s0 / 2) ** 2
    return (
        8 * mean_sq / (n * (n - 1)) ** 2
        * (xi_squared(aligned, n) - 1)
        * (max_fluctuation(aligned, n) - 1)
    )


def squeezing_report(pair: PairState, n_qubits: int) -> SqueezingReport:
    aligned = align_mean_spin(pair)
    i5 = compute_invariants(pair).i5
    return SqueezingReport(
        xi2=xi_squared(aligned, n_qubits),
        max_fluct=max_fluctuation(aligned, n_qubits),
        i5_identity_residual=abs(i5 - i5_collective_identity(aligned, n_qubits)),
        n_qubits=n_qubits,
    )


def collective_signatures(pair: PairState, n_qubits: int) -> CollectiveSignatures:
    n = n_qubits
    quarter = n / 4
    s_norm = float(np.linalg.norm(pair.s))
    mean_sq = (n * s_norm / 2) ** 2
    eig = np.linalg.eigvalsh(pair.t)[::-1]
    excess = tuple(float(v) for v in n * (n - 1) / 4 * eig)
    i1 = (4 / (n * (n - 1))) ** 3 * np.prod(excess)
    along = i4 = comb = None
    if s_norm > 1e-12:
        n_hat = pair.s / s_norm
        along = quarter * (1 + (n - 1) * float(n_hat @ pair.t @ n_hat))
        i4 = 4 / (n * n * (n - 1)) * mean_sq * (along / quarter - 1)
        comb = 16 / (n**3 * (n - 1)) * mean_sq * (along - quarter - (n - 1) / n * mean_sq)
    return CollectiveSignatures(
        n_qubits=n,
        mean_spin_sq=mean_sq,
        standard_limit=quarter,
        window_upper=quarter + (n - 1) / n * mean_sq,
        along_mean_sq=along,
        i4=i4,
        comb=comb,
        principal_excess=excess,
        i1=float(i1),
    )


def fibonacci_sphere(n_points: int) -> np.ndarray:
    i = np.arange(n_points) + 0.5
    z = 1 - 2 * i / n_points
    r = np.sqrt(1 - z * z)
    phi = np.pi * (3 - np.sqrt(5)) * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _distinguished_directions(pair: PairState) -> list[np.ndarray]:
    dirs = list(np.linalg.eigh(pair.t)[1].T)
    if np.linalg.norm(pair.s) > 1e-12:
        aligned = align_mean_spin(pair)
        dirs += [aligned.n_hat, aligned.n_perp_minus, aligned.n_perp_plus]
    return dirs


def _korbicz_terms(n, mean, anti, directions) -> dict[str, np.ndarray]:
    k = np.atleast_2d(np.asarray(directions, dtype=float))
    sk = k @ mean
    sk2 = np.einsum("ai,ij,aj->a", k, 0.5 * anti, k)
    return {
        "lhs": 4 * (sk2 - sk**2) / n,
        "rhs": 1 - 4 * sk**2 / n**2,
        "rhs_printed": 1 - 4 * sk2 / n**2,
    }


def korbicz_terms(state: PureSymmetricState, directions) -> dict[str, np.ndarray]:
    """Both sides of the generalized squeezing inequality along each direction.

    ``lhs`` is 4 Var(S_k)/N; ``rhs`` uses the squared mean <S_k>^2 and
    ``rhs_printed`` the second moment <S_k^2>.
    """
    mean, anti = collective_moments(state)
    return _korbicz_terms(state.n_qubits, mean, anti, directions)


def korbicz_scan_pair(
    pair: PairState, n_qubits: int, n_directions: int = 200, tol: float = STRICT_TOL
) -> np.ndarray | None:
    """Same scan as ``korbicz_scan`` using moments rebuilt from (s, T)."""
    if n_directions < 50:
        raise ValueError("n_directions must be at least 50")
    mean, anti = pair_moments(pair, n_qubits)
    dirs = np.vstack([fibonacci_sphere(n_directions), *_distinguished_directions(pair)])
    terms = _korbicz_terms(n_qubits, mean, anti, dirs)
    margin = terms["rhs"] - terms["lhs"]
    best = int(np.argmax(margin))
    if margin[best] > tol:
        return dirs[best]
    return None


def korbicz_scan(
    state: PureSymmetricState, n_directions: int = 200, tol: float = STRICT_TOL
) -> np.ndarray | None:
    """Most violating direction k with 4 Var(S_k)/N < 1 - 4 <S_k>^2 / N^2, or None.

    Scans a Fibonacci grid plus the mean-spin direction and the eigenaxes of T
    and T_perp, which are exactly where the invariant criteria show up.
    """
    return korbicz_scan_pair(reduce_pure(state), state.n_qubits, n_directions, tol)
