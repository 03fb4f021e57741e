"""Shared quantum-state bookkeeping for the two-atom/cavity toolkit.

Conventions used everywhere in this package:

- the two-qubit computational basis is ordered |ee>, |eg>, |ge>, |gg>,
- excitation sectors carry their own small bases (see SECTOR_LABELS),
- couplings are measured in units of the first atom's coupling, angles in radians,
- matrices are plain complex numpy arrays, never wrapped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

BASIS_LABELS = ("ee", "eg", "ge", "gg")
BASIS_INDEX = {lab: i for i, lab in enumerate(BASIS_LABELS)}

# sector bases as (atomic label, photon number) pairs, in fixed storage order
SECTOR_LABELS = {
    1: (("eg", 0), ("ge", 0), ("gg", 1)),
    2: (("ee", 0), ("ge", 1), ("eg", 1), ("gg", 2)),
}


class ConsistencyError(RuntimeError):
    """A computed quantity violated an internal mathematical guarantee."""


def herm_defect(m) -> float:
    """Max-norm distance of a square matrix from its own adjoint."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return float(np.max(np.abs(m - m.conj().T)))


def check_hermitian(m, tol: float = 1e-12) -> np.ndarray:
    """Return m as a complex array, rejecting non-Hermitian input."""
    m = np.asarray(m, dtype=complex)
    defect = herm_defect(m)
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian: defect {defect:.3e} > {tol:.1e}")
    return m


def hermitian_eig(m, tol: float = 1e-12):
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Returns (w, v) with w real descending and v's columns the matching
    eigenvectors. The reconstruction v diag(w) v+ must match the input to
    1e-10 in max norm, otherwise a ConsistencyError is raised.
    """
    m = check_hermitian(m, tol)
    w, v = np.linalg.eigh(m)
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    recon = (v * w) @ v.conj().T
    err = float(np.max(np.abs(recon - m)))
    if err > 1e-10:
        raise ConsistencyError(f"eigendecomposition reconstruction error {err:.3e}")
    return w, v


def hermitian_eigenvalues(m, tol: float = 1e-12) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in descending order."""
    w, _ = hermitian_eig(m, tol)
    return w


@dataclass
class SectorState:
    """Pure state of a fixed excitation sector.

    n is the total excitation number (1 or 2); amplitudes follow the basis
    order in SECTOR_LABELS[n]. States are kept normalized; a tolerance of
    1e-9 absorbs integrator roundoff.
    """

    n: int
    amplitudes: np.ndarray = field()

    def __post_init__(self):
        if self.n not in SECTOR_LABELS:
            raise ValueError(f"unsupported excitation number {self.n}")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        want = len(SECTOR_LABELS[self.n])
        if amps.shape != (want,):
            raise ValueError(f"sector {self.n} needs {want} amplitudes, got {amps.shape}")
        if not np.all(np.isfinite(amps)):  # complex isfinite checks both parts
            raise ValueError("amplitudes must be finite")
        self.amplitudes = amps
        nrm = self.norm_sq()
        if abs(nrm - 1.0) > 1e-9:
            raise ValueError(f"state not normalized: <s|s> = {nrm!r}")

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


def partial_trace_field(state: SectorState) -> np.ndarray:
    """Reduced two-atom density matrix after tracing out the cavity field.

    Amplitudes sharing a photon number contribute one coherent block; blocks
    with different photon numbers add incoherently. Output is 4x4 in the
    |ee>, |eg>, |ge>, |gg> order and its trace equals <s|s> exactly.
    """
    labels = SECTOR_LABELS[state.n]
    rho = np.zeros((4, 4), dtype=complex)
    for fock in sorted({f for _, f in labels}):
        v = np.zeros(4, dtype=complex)
        for amp, (atom, f) in zip(state.amplitudes, labels):
            if f == fock:
                v[BASIS_INDEX[atom]] = amp
        rho += np.outer(v, v.conj())
    return rho


def photon_distribution(state: SectorState) -> np.ndarray:
    """Photon-number weights of the cavity, indexed 0..n."""
    p = np.zeros(state.n + 1)
    for amp, (_, f) in zip(state.amplitudes, SECTOR_LABELS[state.n]):
        p[f] += abs(amp) ** 2
    return p


def check_density(rho, trace_tol: float = 1e-12, herm_tol: float = 1e-12,
                  eig_floor: float = -1e-10) -> np.ndarray:
    """Validate a 4x4 two-qubit density matrix and return it as complex.

    Trace and Hermiticity are held to 1e-12; eigenvalues may dip to -1e-10
    (propagation roundoff). Purity above 1 + 1e-12 is rejected.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    defect = herm_defect(rho)
    if defect > herm_tol:
        raise ValueError(f"density matrix not Hermitian: defect {defect:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace {tr!r} differs from 1")
    w = np.linalg.eigvalsh(rho)
    if w[0] < eig_floor:
        raise ValueError(f"density matrix has negative eigenvalue {w[0]:.3e}")
    pur = float(np.real(np.sum(w**2)))
    if pur > 1.0 + 1e-12:
        raise ValueError(f"purity {pur!r} exceeds 1")
    return rho


def purity(rho) -> float:
    rho = np.asarray(rho, dtype=complex)
    return float(np.real(np.trace(rho @ rho)))


def trace_distance(a, b) -> float:
    """(1/2) tr |a - b| for Hermitian a, b."""
    diff = check_hermitian(np.asarray(a, complex) - np.asarray(b, complex), tol=1e-9)
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    # fix the phase convention so the distribution is Haar
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def ginibre_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random full-rank density matrix from the Ginibre ensemble."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
