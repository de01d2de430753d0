"""Local invariants of symmetric two-qubit states under identical rotations U x U."""

from __future__ import annotations

from dataclasses import astuple, dataclass

import numpy as np

from .collective import m_index
from .reduction import PairState, bath_diagonal_closed, bath_squeeze_factor

LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_i, _j, _k] = 1.0
    LEVI_CIVITA[_i, _k, _j] = -1.0


@dataclass(frozen=True)
class InvariantSet:
    i1: float
    i2: float
    i3: float
    i4: float
    i5: float
    i6: float
    comb: float

    @classmethod
    def from_values(cls, i1, i2, i3, i4, i5, i6) -> "InvariantSet":
        vals = [float(v) for v in (i1, i2, i3, i4, i5, i6)]
        return cls(*vals, comb=vals[3] - vals[2] ** 2)

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self))


@dataclass(frozen=True, eq=False)
class Rotation3:
    """Proper 3x3 rotation acting on Bloch vectors."""

    r: np.ndarray

    def __post_init__(self):
        r = np.array(self.r, dtype=float).reshape(3, 3)
        if np.abs(r.T @ r - np.eye(3)).max() > 1e-10:
            raise ValueError("rotation matrix is not orthogonal")
        if abs(np.linalg.det(r) - 1.0) > 1e-10:
            raise ValueError("rotation matrix must have determinant +1")
        r.setflags(write=False)
        object.__setattr__(self, "r", r)

    @classmethod
    def about_axis(cls, axis, angle: float) -> "Rotation3":
        k = np.asarray(axis, dtype=float)
        k = k / np.linalg.norm(k)
        kx = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
        return cls(np.eye(3) + np.sin(angle) * kx + (1 - np.cos(angle)) * kx @ kx)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "Rotation3":
        # QR of a Gaussian matrix with sign fix gives a Haar-distributed O(3) element
        q, r = np.linalg.qr(rng.normal(size=(3, 3)))
        q = q * np.sign(np.diag(r))
        if np.linalg.det(q) < 0:
            q[:, 0] = -q[:, 0]
        return cls(q)


def compute_invariants(pair: PairState) -> InvariantSet:
    s, t = pair.s, pair.t
    ts = t @ s
    i5 = np.einsum("ijk,lmn,i,l,jm,kn->", LEVI_CIVITA, LEVI_CIVITA, s, s, t, t)
    i6 = np.einsum("ijk,i,j,k->", LEVI_CIVITA, s, ts, t @ ts)
    return InvariantSet.from_values(
        np.linalg.det(t), np.trace(t @ t), s @ s, s @ ts, i5, i6
    )


def local_rotate(pair: PairState, rot: Rotation3) -> PairState:
    if not isinstance(rot, Rotation3):
        rot = Rotation3(rot)
    o = rot.r
    return PairState(o @ pair.s, o @ pair.t @ o.T)


def canonical_form(pair: PairState) -> tuple[PairState, Rotation3]:
    """Rotate to the frame where t is diagonal with t1 >= t2 >= t3.

    With degenerate eigenvalues the frame is not unique; only the invariants
    are canonical.
    """
    w, v = np.linalg.eigh(pair.t)
    w, v = w[::-1], v[:, ::-1].copy()
    if np.linalg.det(v) < 0:
        v[:, 2] = -v[:, 2]
    rot = Rotation3(v.T)
    return PairState(rot.r @ pair.s, np.diag(w)), rot


def diagonal_frame_invariants(pair: PairState) -> InvariantSet:
    """Invariants evaluated from the eigenvalues of t and the components of s
    in the eigenframe; an independent route to ``compute_invariants``."""
    canon, _ = canonical_form(pair)
    t1, t2, t3 = np.diag(canon.t)
    s1, s2, s3 = canon.s
    i5 = 2 * (s1**2 * t2 * t3 + s2**2 * t1 * t3 + s3**2 * t1 * t2)
    i6 = s1 * s2 * s3 * (t1 * t2 * (t2 - t1) + t2 * t3 * (t3 - t2) + t3 * t1 * (t1 - t3))
    return InvariantSet.from_values(
        t1 * t2 * t3,
        t1**2 + t2**2 + t3**2,
        s1**2 + s2**2 + s3**2,
        s1**2 * t1 + s2**2 * t2 + s3**2 * t3,
        i5,
        i6,
    )


def dicke_invariants_closed(n_qubits: int, m_value: float) -> InvariantSet:
    n = n_qubits
    if n < 2:
        raise ValueError("a pair reduction needs at least two qubits")
    m_index(n, m_value)
    m2 = 4.0 * m_value**2
    perp = (n * n - m2) / (2 * n * (n - 1))
    along = (m2 - n) / (n * (n - 1))
    i3 = m2 / n**2
    return InvariantSet.from_values(
        perp**2 * along,
        2 * perp**2 + along**2,
        i3,
        i3 * along,
        8 * i3 * ((n * n - m2) / (4 * n * (n - 1))) ** 2,
        0.0,
    )


def dicke_comb_closed(n_qubits: int, m_value: float) -> float:
    """I4 - I3^2 for a Dicke state, in its factored form."""
    n = n_qubits
    i3 = 4.0 * m_value**2 / n**2
    return (4.0 * m_value**2 - n * n) / (n * n * (n - 1)) * i3


def ku_invariants_closed(n_qubits: int, chi_t: float) -> InvariantSet:
    n = n_qubits
    if n < 2:
        raise ValueError("a pair reduction needs at least two qubits")
    c = np.cos(chi_t)
    sn = np.sin(chi_t)
    c2 = np.cos(2 * chi_t) ** (n - 2)
    cross = c ** (2 * (n - 2)) * sn**2  # t12^2
    i3 = c ** (2 * (n - 1))
    return InvariantSet.from_values(
        -0.5 * cross * (1 + c2),
        2 * cross + 0.5 * (1 + c2**2),
        i3,
        0.5 * i3 * (1 + c2),
        -2 * i3 * cross,
        0.0,
    )


def bath_invariants_closed(n_qubits: int, x: float) -> InvariantSet:
    n = n_qubits
    s3, t1, t2, t3 = bath_diagonal_closed(n, x)
    q = bath_squeeze_factor(x)
    i3 = 4 * s3**2 / n**2
    return InvariantSet.from_values(
        t1 * t2 * t3,
        t1**2 + t2**2 + t3**2,
        i3,
        i3 * t3,
        2 * i3 / (n * (n - 1)) ** 2 * (2 * s3 * q + n) * (2 * s3 / q + n),
        0.0,
    )
