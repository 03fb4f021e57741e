"""Resonant dynamics of two atoms coupled to one lossless cavity mode.

The atoms sit at fixed positions in a single-mode resonant cavity, so each
couples with its own strength; everything here is written in units of the
first atom's coupling, with the ratio chi = (second coupling)/(first) >= 0.
Because the interaction conserves total excitation number, the evolution
splits into small sectors which are handled exactly.

Time enters only through the accumulated pulse area. Two equivalent phase
variables are used:

- u: pulse area accumulated by the first atom alone (the universal
  evolution variable for sector propagation), and
- theta: the collective pulse area, theta = u * sqrt(1 + chi^2), which is
  the natural argument of the one-excitation closed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import ceil, cos, pi, sin, sqrt

import numpy as np

from .qcore import SECTOR_LABELS, SectorState

# atom-swap permutation of the |ee>,|eg>,|ge>,|gg> basis (eg <-> ge)
_SWAP = np.array([0, 2, 1, 3])


@dataclass(frozen=True)
class CouplingConfig:
    """Coupling ratio and collective pulse area for one evolution snapshot."""

    chi: float
    theta: float

    def __post_init__(self):
        if not (np.isfinite(self.chi) and self.chi >= 0.0):
            raise ValueError(f"chi must be finite and >= 0, got {self.chi!r}")
        if not (np.isfinite(self.theta) and self.theta >= 0.0):
            raise ValueError(f"theta must be finite and >= 0, got {self.theta!r}")

    @property
    def lam(self) -> float:
        """Collective coupling sqrt(1 + chi^2) in first-atom units."""
        return sqrt(1.0 + self.chi**2)

    @property
    def u(self) -> float:
        """First-atom pulse area equivalent to this theta."""
        return self.theta / self.lam


def bright_dark_states(chi: float):
    """Dark and bright atomic combinations (b_dark, b_bright) as 4-vectors.

    The dark combination (|ge> - chi |eg>)/sqrt(1+chi^2) decouples from the
    field in the one-excitation sector; the orthogonal bright combination
    (|eg> + chi |ge>)/sqrt(1+chi^2) couples with the collective strength.
    """
    if chi < 0:
        raise ValueError("chi must be >= 0")
    lam = sqrt(1.0 + chi**2)
    dark = np.array([0.0, -chi, 1.0, 0.0]) / lam
    bright = np.array([0.0, 1.0, chi, 0.0]) / lam
    return dark, bright


def reduced_state_closed_form(chi: float, theta: float, initial: str = "eg") -> np.ndarray:
    """Closed-form reduced two-atom state of the one-excitation evolution.

    Starting from one excited atom and an empty cavity, the bright atomic
    combination Rabi-oscillates with the ground state + one photon while the
    dark combination is frozen; tracing out the field leaves a rank-2 mixture

        rho = sin^2(theta)/(1+chi^2) |gg><gg|
            + cos^2(theta)/(1+chi^2) |B><B| + chi^2/(1+chi^2) |D><D|
            - chi cos(theta)/(1+chi^2) (|D><B| + |B><D|)

    with B/D the bright/dark combinations. initial is "eg" (first atom
    excited) or "ge" (second atom excited; handled by the chi -> 1/chi swap).
    """
    if initial not in ("eg", "ge"):
        raise ValueError(f"initial must be 'eg' or 'ge', got {initial!r}")
    cfg = CouplingConfig(chi, theta)
    if initial == "ge":
        if chi == 0.0:
            # second atom decoupled: |ge> never evolves
            rho = np.zeros((4, 4), dtype=complex)
            rho[2, 2] = 1.0
            return rho
        rho = reduced_state_closed_form(1.0 / chi, theta, "eg")
        return rho[np.ix_(_SWAP, _SWAP)]

    dark, bright = bright_dark_states(chi)
    lam2 = 1.0 + chi**2
    rho = np.zeros((4, 4), dtype=complex)
    rho[3, 3] = sin(theta) ** 2 / lam2
    rho += (cos(theta) ** 2 / lam2) * np.outer(bright, bright)
    rho += (chi**2 / lam2) * np.outer(dark, dark)
    cross = np.outer(dark, bright)
    rho -= (chi * cos(theta) / lam2) * (cross + cross.T)
    return rho


@dataclass(frozen=True)
class SectorHamiltonian:
    """Interaction Hamiltonian of one excitation sector, first-atom units.

    The rotating-frame interaction has no diagonal part on resonance; the
    matrix is real symmetric with photon-ladder couplings only.
    """

    n: int
    chi: float
    matrix: np.ndarray = field(compare=False)

    @cached_property
    def eig(self):
        """Cached (eigenvalues, eigenvectors) used by the propagators."""
        w, v = np.linalg.eigh(self.matrix)
        return w, v


def build_sector_hamiltonian(n: int, chi: float) -> SectorHamiltonian:
    """Sector Hamiltonian in the fixed basis of SECTOR_LABELS[n].

    One excitation: |eg,0>, |ge,0>, |gg,1> with couplings (1, chi) to the
    one-photon state. Two excitations: |ee,0>, |ge,1>, |eg,1>, |gg,2>; the
    second photon rung picks up the bosonic sqrt(2).
    """
    if n not in SECTOR_LABELS:
        raise ValueError(f"unsupported excitation number {n}")
    if not (np.isfinite(chi) and chi >= 0.0):
        raise ValueError(f"chi must be finite and >= 0, got {chi!r}")
    if n == 1:
        m = np.array([
            [0.0, 0.0, 1.0],
            [0.0, 0.0, chi],
            [1.0, chi, 0.0],
        ])
    else:
        r2 = sqrt(2.0)
        m = np.array([
            [0.0, 1.0, chi, 0.0],
            [1.0, 0.0, 0.0, r2 * chi],
            [chi, 0.0, 0.0, r2],
            [0.0, r2 * chi, r2, 0.0],
        ])
    return SectorHamiltonian(n=n, chi=chi, matrix=m)


def initial_sector_state(n: int, which: str | None = None) -> SectorState:
    """Canonical initial state of a sector: excited atoms, empty cavity.

    n=1 takes which in {"eg", "ge"} (default "eg"); n=2 starts from "ee".
    """
    if n == 1:
        which = which or "eg"
        if which not in ("eg", "ge"):
            raise ValueError(f"one-excitation initial state must be 'eg' or 'ge', got {which!r}")
        amps = np.zeros(3, dtype=complex)
        amps[0 if which == "eg" else 1] = 1.0
        return SectorState(1, amps)
    if n == 2:
        if which not in (None, "ee"):
            raise ValueError(f"two-excitation initial state must be 'ee', got {which!r}")
        amps = np.zeros(4, dtype=complex)
        amps[0] = 1.0
        return SectorState(2, amps)
    raise ValueError(f"unsupported excitation number {n}")


def _check_propagation_args(h: SectorHamiltonian, initial: SectorState, u: float):
    if h.n != initial.n:
        raise ValueError(f"sector mismatch: hamiltonian n={h.n}, state n={initial.n}")
    if not (np.isfinite(u) and u >= 0.0):
        raise ValueError(f"u must be finite and >= 0, got {u!r}")


def propagate_sector(h: SectorHamiltonian, initial: SectorState, u: float) -> SectorState:
    """Evolve a sector state by pulse area u via exact eigendecomposition."""
    _check_propagation_args(h, initial, u)
    w, v = h.eig
    amps = v @ (np.exp(-1j * w * u) * (v.T @ initial.amplitudes))
    return SectorState(h.n, amps)


def propagate_grid(h: SectorHamiltonian, initial: SectorState, us) -> np.ndarray:
    """Amplitudes at many pulse areas at once; returns a (dim, len(us)) array."""
    us = np.asarray(us, dtype=float)
    if us.size and (not np.all(np.isfinite(us)) or us.min() < 0.0):
        raise ValueError("pulse areas must be finite and >= 0")
    if h.n != initial.n:
        raise ValueError(f"sector mismatch: hamiltonian n={h.n}, state n={initial.n}")
    w, v = h.eig
    coeff = v.T @ initial.amplitudes
    return v @ (np.exp(-1j * np.outer(w, us)) * coeff[:, None])


# default integrator resolution: 20000 steps per 2*pi of pulse area
_STEPS_PER_TWO_PI = 20000
_MIN_STEPS = 1000


def _default_steps(u: float) -> int:
    return max(_MIN_STEPS, ceil(_STEPS_PER_TWO_PI * u / (2.0 * pi)))


def _rk4(hmat: np.ndarray, psi: np.ndarray, du: float, m: int) -> np.ndarray:
    h = -1j * hmat
    for _ in range(m):
        k1 = h @ psi
        k2 = h @ (psi + 0.5 * du * k1)
        k3 = h @ (psi + 0.5 * du * k2)
        k4 = h @ (psi + du * k3)
        psi = psi + (du / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return psi


def ode_oracle(h: SectorHamiltonian, initial: SectorState, u: float,
               steps: int | None = None) -> SectorState:
    """Independent fixed-step 4th-order integration of the sector dynamics.

    Exists purely as a cross-check for propagate_sector; agreement is at the
    1e-8 level or better at the default resolution. steps >= 1000.
    """
    _check_propagation_args(h, initial, u)
    if steps is None:
        steps = _default_steps(u)
    if steps < _MIN_STEPS:
        raise ValueError(f"steps must be >= {_MIN_STEPS}, got {steps}")
    if u == 0.0:
        return SectorState(h.n, initial.amplitudes.copy())
    psi = _rk4(h.matrix, initial.amplitudes.astype(complex), u / steps, steps)
    return SectorState(h.n, psi)


def ode_oracle_path(h: SectorHamiltonian, initial: SectorState, us,
                    steps_per_two_pi: int = _STEPS_PER_TWO_PI) -> list[SectorState]:
    """One RK4 pass recording the state at each requested ascending pulse area."""
    us = np.asarray(us, dtype=float)
    if us.size == 0:
        return []
    if not np.all(np.isfinite(us)) or us[0] < 0.0 or np.any(np.diff(us) < 0.0):
        raise ValueError("pulse areas must be finite, >= 0 and ascending")
    if h.n != initial.n:
        raise ValueError(f"sector mismatch: hamiltonian n={h.n}, state n={initial.n}")
    out = []
    psi = initial.amplitudes.astype(complex)
    here = 0.0
    for u in us:
        seg = u - here
        if seg > 0.0:
            # segment step count keeps the global 4th-order error budget
            m = max(50, ceil(steps_per_two_pi * seg / (2.0 * pi)))
            psi = _rk4(h.matrix, psi, seg / m, m)
            here = u
        out.append(SectorState(h.n, psi.copy()))
    return out
