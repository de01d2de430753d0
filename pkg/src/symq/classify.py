"""Invariant-based classification of pairwise entanglement, plus ground-truth helpers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .invariants import InvariantSet, compute_invariants
from .reduction import PHYSICAL_TOL, NonPhysicalStateError, PairDensity, PairState

DEFAULT_TOL = 1e-10
PPT_TOL = 1e-10


@dataclass(frozen=True)
class ClassFlags:
    """Which entanglement criteria an invariant set satisfies.

    Branches are predicates, not exclusive classes; several may hold at once
    except spin_squeezed together with longitudinal.
    """

    i3_nonzero: bool
    spin_squeezed: bool
    longitudinal: bool
    window: bool
    zero_spin_i1: bool
    tolerances: dict = field(default_factory=dict, compare=False)

    @property
    def any_entanglement_flag(self) -> bool:
        return self.spin_squeezed or self.longitudinal or self.window or self.zero_spin_i1

    def as_row(self) -> tuple[int, int, int, int]:
        return (
            int(self.spin_squeezed),
            int(self.longitudinal),
            int(self.window),
            int(self.zero_spin_i1),
        )


def classify(inv: InvariantSet, tol: float = DEFAULT_TOL) -> ClassFlags:
    """Table of pairwise-entanglement criteria in terms of I1, I3, I4, I5 and I4 - I3^2.

    ``I5 <= 0`` is read as strictly negative beyond ``tol``: a coherent state has
    I5 = 0 and I3 != 0 and is separable. ``I4 <= 0`` keeps the boundary, since a
    separable state with I3 != 0 has I4 >= I3^2 > 0.
    """
    i3_nonzero = inv.i3 > tol
    spin_squeezed = i3_nonzero and inv.i5 < -tol
    longitudinal = i3_nonzero and inv.i4 <= tol
    window = i3_nonzero and inv.i4 > tol and inv.comb < -tol
    zero_spin_i1 = (not i3_nonzero) and inv.i1 < -tol
    return ClassFlags(
        i3_nonzero=i3_nonzero,
        spin_squeezed=spin_squeezed,
        longitudinal=longitudinal,
        window=window,
        zero_spin_i1=zero_spin_i1,
        tolerances={"zero": tol},
    )


@dataclass(frozen=True, eq=False)
class SeparableEnsemble:
    """Mixture sum_w p_w rho_w^{(x)N} given by weights and single-qubit Bloch vectors."""

    weights: np.ndarray
    bloch_vectors: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.weights, dtype=float).reshape(-1)
        b = np.asarray(self.bloch_vectors, dtype=float).reshape(-1, 3)
        if len(p) != len(b) or len(p) == 0:
            raise ValueError("need one Bloch vector per weight")
        if (p < 0).any() or abs(p.sum() - 1.0) > 1e-12:
            raise ValueError("weights must be a probability vector")
        if (np.linalg.norm(b, axis=1) > 1 + 1e-12).any():
            raise ValueError("Bloch vectors must have norm <= 1")
        object.__setattr__(self, "weights", p)
        object.__setattr__(self, "bloch_vectors", b)

    @classmethod
    def random(cls, rng: np.random.Generator, n_terms: int) -> "SeparableEnsemble":
        """Dirichlet weights over uniformly random unit Bloch vectors."""
        p = rng.dirichlet(np.ones(n_terms))
        v = rng.normal(size=(n_terms, 3))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        return cls(p / p.sum(), v)


def separable_pair(ensemble: SeparableEnsemble) -> PairState:
    """Pair parameters of a symmetric separable mixture of pure product factors."""
    b = ensemble.bloch_vectors
    norms = np.linalg.norm(b, axis=1)
    if np.abs(norms - 1.0).max() > 1e-10:
        raise ValueError("symmetric separable pairs need pure factors (|s_w| = 1) for trace(T) = 1")
    p = ensemble.weights
    return PairState(p @ b, np.einsum("w,wi,wj->ij", p, b, b))


@dataclass(frozen=True)
class Theorem2Audit:
    i1: float
    i4: float
    i5: float
    comb: float

    @property
    def worst(self) -> float:
        return min(self.i1, self.i4, self.i5, self.comb)

    def passed(self, tol: float = DEFAULT_TOL) -> bool:
        return self.worst >= -tol


def theorem2_audit(ensemble: SeparableEnsemble) -> Theorem2Audit:
    """Invariants that must be non-negative for any symmetric separable pair."""
    inv = compute_invariants(separable_pair(ensemble))
    return Theorem2Audit(inv.i1, inv.i4, inv.i5, inv.comb)


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Transpose on the second qubit of a 4x4 matrix."""
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def ppt_entangled(rho: PairDensity, tol: float = PPT_TOL) -> bool:
    """Peres-Horodecki test; for two qubits a negative partial transpose is
    necessary and sufficient for entanglement."""
    m = rho.rho if isinstance(rho, PairDensity) else np.asarray(rho)
    m = 0.5 * (m + m.conj().T)
    w, v = np.linalg.eigh(m)
    if w.min() < -PHYSICAL_TOL:
        raise NonPhysicalStateError(f"density matrix has eigenvalue {w.min():.3g}")
    if w.min() < 0:
        w = np.clip(w, 0, None)
        m = (v * w) @ v.conj().T
        m /= np.trace(m).real
    return bool(np.linalg.eigvalsh(partial_transpose(m)).min() < -tol)
