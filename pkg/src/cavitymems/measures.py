"""Two-qubit entanglement and nonlocality measures.

Generic matrix routines (spin-flip concurrence, linear entropy, maximal
CHSH expectation) are the source of truth; the closed forms for the
one-excitation cavity family are provided alongside and are cross-checked
against the generic routines in the test suite.

Range policy: a result outside its theoretical range by at most 1e-12 is
snapped to the endpoint, by more than 1e-9 raises ConsistencyError, and in
between it is returned as computed.
"""

from __future__ import annotations

from math import cos, sqrt

import numpy as np

from .qcore import ConsistencyError, herm_defect

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# sigma_y x sigma_y is real in the |ee>,|eg>,|ge>,|gg> basis
_SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y).real


def _snap(value: float, lo: float, hi: float, name: str) -> float:
    if value < lo - 1e-9 or value > hi + 1e-9:
        raise ConsistencyError(f"{name} = {value!r} outside [{lo}, {hi}]")
    if lo - 1e-12 <= value < lo:
        return lo
    if hi < value <= hi + 1e-12:
        return hi
    return value


def _as_density(rho) -> np.ndarray:
    """Light runtime gate: 4x4, Hermitian, unit trace, PSD to 1e-9."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    defect = herm_defect(rho)
    if defect > 1e-9:
        raise ValueError(f"density matrix not Hermitian: defect {defect:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > 1e-9:
        raise ValueError(f"density matrix trace {tr!r} differs from 1")
    wmin = float(np.linalg.eigvalsh(rho)[0])
    if wmin < -1e-9:
        raise ValueError(f"density matrix has negative eigenvalue {wmin:.3e}")
    return rho


def concurrence(rho) -> float:
    """Spin-flip concurrence of an arbitrary two-qubit density matrix.

    The descending quantities d_i with C = max(d1 - d2 - d3 - d4, 0) are
    computed as singular values of X^T (sy x sy) X for any factorization
    rho = X X+; their squares are the eigenvalues of rho flip(rho). The
    singular-value route keeps full absolute precision at rank-deficient
    inputs, where square roots of near-zero eigenvalues lose half the
    digits. Eigenvalues below 64 eps of the largest are rounded-off noise
    and are treated as exact zeros before factorizing.
    """
    rho = _as_density(rho)
    w, v = np.linalg.eigh(rho)
    w = np.where(w > 64.0 * np.finfo(float).eps * w[-1], w, 0.0)
    x = v * np.sqrt(w)
    d = np.linalg.svd(x.T @ _SPIN_FLIP @ x, compute_uv=False)
    c = max(d[0] - d[1] - d[2] - d[3], 0.0)
    return _snap(float(c), 0.0, 1.0, "concurrence")


def concurrence_x_state(rho) -> float:
    """Concurrence shortcut for X-shaped states (only anti-diagonal coherences).

    For rho with nonzero off-diagonals only at (ee,gg) and (eg,ge):
    2 max(0, |rho_eg,ge| - sqrt(rho_ee rho_gg), |rho_ee,gg| - sqrt(rho_eg rho_ge)).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    a, b, c, d = (float(rho[i, i].real) for i in range(4))
    inner = abs(rho[1, 2]) - sqrt(max(a, 0.0) * max(d, 0.0))
    outer = abs(rho[0, 3]) - sqrt(max(b, 0.0) * max(c, 0.0))
    return _snap(2.0 * max(0.0, inner, outer), 0.0, 1.0, "concurrence")


def linear_entropy(rho) -> float:
    """Normalized linear entropy M = (4/3)(1 - tr rho^2), 0 pure .. 1 maximally mixed."""
    rho = _as_density(rho)
    pur = float(np.real(np.trace(rho @ rho)))
    return _snap((4.0 / 3.0) * (1.0 - pur), 0.0, 1.0, "linear entropy")


def correlation_matrix(rho) -> np.ndarray:
    """3x3 spin correlation matrix T_nm = tr(rho sigma_n x sigma_m)."""
    rho = _as_density(rho)
    t = np.empty((3, 3))
    for i, si in enumerate(PAULI):
        for j, sj in enumerate(PAULI):
            t[i, j] = float(np.real(np.trace(rho @ np.kron(si, sj))))
    return t


def bell_max(rho) -> float:
    """Largest CHSH expectation reachable with optimal analyzer settings.

    Equals 2 sqrt(kappa1 + kappa2) with kappa the two largest eigenvalues of
    T^T T. Values above 2 certify nonlocality; the ceiling is 2 sqrt(2).
    """
    t = correlation_matrix(rho)
    ev = np.linalg.eigvalsh(t.T @ t)
    kk = _snap(float(ev[-1] + ev[-2]), 0.0, 2.0, "bell correlation sum")
    return 2.0 * sqrt(kk)


def concurrence_closed_form(chi: float, theta: float) -> float:
    """Concurrence of the one-excitation reduced state, closed form.

    C(chi, theta) = |chi - 2 chi^3 + 2 chi (chi^2 - 1) cos(theta)
                     + chi cos(2 theta)| / (1 + chi^2)^2
    which factors as 2 chi (1 - c) |c + chi^2| / (1 + chi^2)^2, c = cos(theta).
    """
    _check_angles(chi, theta)
    c = cos(theta)
    val = 2.0 * chi * (1.0 - c) * abs(c + chi**2) / (1.0 + chi**2) ** 2
    return _snap(val, 0.0, 1.0, "concurrence")


def bell_max_closed_form(chi: float, theta: float) -> float:
    """Maximal CHSH expectation of the one-excitation reduced state.

    kappa1 + kappa2 = C^2 + max(C^2, s^2) with C the closed-form concurrence
    and s = 1 - (1 - cos(2 theta))/(1 + chi^2) the residual zz correlation.
    """
    _check_angles(chi, theta)
    c = concurrence_closed_form(chi, theta)
    s = 1.0 - (1.0 - cos(2.0 * theta)) / (1.0 + chi**2)
    kk = _snap(c**2 + max(c**2, s**2), 0.0, 2.0, "bell correlation sum")
    return 2.0 * sqrt(kk)


def _check_angles(chi: float, theta: float):
    if not (np.isfinite(chi) and chi >= 0.0):
        raise ValueError(f"chi must be finite and >= 0, got {chi!r}")
    if not np.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta!r}")


def werner_state(p: float) -> np.ndarray:
    """Werner mixture p |Psi+><Psi+| + (1 - p) I/4, Psi+ = (|eg> + |ge>)/sqrt(2)."""
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"werner parameter must be in [0, 1], got {p!r}")
    psi = np.zeros(4, dtype=complex)
    psi[1] = psi[2] = 1.0 / sqrt(2.0)
    return p * np.outer(psi, psi.conj()) + (1.0 - p) * np.eye(4) / 4.0


def werner_reference(p: float) -> tuple[float, float]:
    """(concurrence, linear entropy) of the Werner state, closed form.

    C = max(0, (3p - 1)/2) and M = 1 - p^2; pinned against the generic
    routines on the explicitly constructed mixture in the tests.
    """
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"werner parameter must be in [0, 1], got {p!r}")
    return max(0.0, (3.0 * p - 1.0) / 2.0), 1.0 - p * p
