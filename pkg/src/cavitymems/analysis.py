"""Global maxima over the evolution phase, and their structure in chi.

Closed forms: maximizing the one-excitation concurrence over the collective
pulse area theta gives two branches,

- "pi-boundary": max at theta = pi with value 4 chi |1 - chi^2| / (1 + chi^2)^2,
  taken for chi outside [sqrt(sqrt(32) - 5), sqrt(3)],
- "interior": max at theta = arccos((1 - chi^2)/2) with value chi/2,
  taken inside that window.

The maximal CHSH expectation over theta is always at theta = pi with value
2 sqrt(1 + (4 chi - 4 chi^3)^2 / (1 + chi^2)^4), which is invariant under
chi -> 1/chi; the concurrence branches break that exchange symmetry for
chi in (1/sqrt(3), sqrt(3)) away from 1.

Numeric searches never use the closed forms: they propagate the sector
dynamics on a coarse phase grid, then polish every competitive grid maximum
with a bracketed golden-section refinement. Phase means theta for one
excitation and the first-atom pulse area u for two excitations.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import acos, cos, pi, sqrt

import numpy as np

from .dynamics import build_sector_hamiltonian, initial_sector_state, propagate_grid
from .measures import bell_max, concurrence
from .qcore import SectorState, partial_trace_field, photon_distribution

# coupling ratios where the optimal-phase branch changes
CHI_INTERIOR_LOW = sqrt(sqrt(32.0) - 5.0)
CHI_INTERIOR_HIGH = sqrt(3.0)

_DEFAULT_HORIZON = {1: 2.0 * pi, 2: 400.0}
_DEFAULT_COARSE_STEP = 0.005
_GOLDEN = (sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GlobalMaxResult:
    """Best value of a measure over the evolution phase at fixed chi."""

    chi: float
    excitation: int
    value: float
    argmax_phase: float
    branch: str  # "pi-boundary", "interior" or "numeric"


def _check_chi(chi: float, positive: bool = False):
    if not np.isfinite(chi) or chi < 0.0 or (positive and chi == 0.0):
        kind = "> 0" if positive else ">= 0"
        raise ValueError(f"chi must be finite and {kind}, got {chi!r}")


def pi_boundary_concurrence(chi: float) -> float:
    """Concurrence at theta = pi: 4 chi |1 - chi^2| / (1 + chi^2)^2."""
    _check_chi(chi)
    return 4.0 * chi * abs(1.0 - chi**2) / (1.0 + chi**2) ** 2


def global_max_concurrence_closed(chi: float) -> GlobalMaxResult:
    """Closed-form maximum of the one-excitation concurrence over theta."""
    _check_chi(chi)
    if CHI_INTERIOR_LOW <= chi <= CHI_INTERIOR_HIGH:
        return GlobalMaxResult(chi, 1, chi / 2.0, acos((1.0 - chi**2) / 2.0), "interior")
    return GlobalMaxResult(chi, 1, pi_boundary_concurrence(chi), pi, "pi-boundary")


def global_max_bell_closed(chi: float) -> GlobalMaxResult:
    """Closed-form maximum of the one-excitation CHSH expectation over theta."""
    _check_chi(chi)
    g = (4.0 * chi - 4.0 * chi**3) / (1.0 + chi**2) ** 2
    return GlobalMaxResult(chi, 1, 2.0 * sqrt(1.0 + g * g), pi, "pi-boundary")


def golden_max(f, a: float, b: float, tol: float):
    """Golden-section maximization of a unimodal scalar on [a, b].

    Returns (x, f(x)) once the bracket is below tol. Keeps the best point
    actually evaluated, which also covers mildly non-unimodal residues.
    """
    if not (b > a):
        raise ValueError("need b > a")
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    best_x, best_f = (c, fc) if fc >= fd else (d, fd)
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
            if fc > best_f:
                best_x, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
            if fd > best_f:
                best_x, best_f = d, fd
    return best_x, best_f


def _grid_local_maxima(y: np.ndarray) -> list[int]:
    """Indices of grid points at least as large as both neighbors (ends included)."""
    idx = []
    n = len(y)
    for i in range(n):
        left = y[i - 1] if i > 0 else -np.inf
        right = y[i + 1] if i < n - 1 else -np.inf
        if y[i] >= left and y[i] >= right:
            idx.append(i)
    return idx


def _refined_maximum(xs, ys, f, refine_tol, prune_margin=0.05):
    """Polish competitive grid maxima; smallest argmax wins ties at 1e-12."""
    best_grid = float(np.max(ys))
    cands = []
    for i in _grid_local_maxima(ys):
        if ys[i] < best_grid - prune_margin:
            continue
        a = xs[max(i - 1, 0)]
        b = xs[min(i + 1, len(xs) - 1)]
        if b > a:
            x, fx = golden_max(f, a, b, refine_tol)
            cands.append((x, fx))
        cands.append((float(xs[i]), float(ys[i])))
    val = max(fx for _, fx in cands)
    arg = min(x for x, fx in cands if fx >= val - 1e-12)
    return arg, val


def _refined_maximum_batch(xs, ys, fs, refine_tol, prune_margin=0.05):
    """Zoom-grid variant of _refined_maximum for vectorized evaluators.

    fs maps an array of phases to an array of values, so every competitive
    candidate shrinks its bracket in the same batched call. Each round keeps
    the best of 21 samples per candidate and narrows the bracket tenfold,
    which traps the local maximum of a unimodal bracket at every step.
    """
    best_grid = float(np.max(ys))
    idx = [i for i in _grid_local_maxima(ys) if ys[i] >= best_grid - prune_margin]
    centers = xs[idx].astype(float)
    vals = ys[idx].astype(float)
    half = float(xs[1] - xs[0]) if len(xs) > 1 else refine_tol
    lo, hi = float(xs[0]), float(xs[-1])
    while half > refine_tol / 2.0:
        offs = np.linspace(-half, half, 21)
        pts = np.clip(centers[:, None] + offs[None, :], lo, hi)
        got = np.asarray(fs(pts.reshape(-1)), dtype=float).reshape(pts.shape)
        pick = np.argmax(got, axis=1)
        rows = np.arange(len(centers))
        centers = pts[rows, pick]
        vals = got[rows, pick]
        half /= 10.0
    val = float(np.max(vals))
    arg = float(np.min(centers[vals >= val - 1e-12]))
    return arg, val


def _n1_state_factory(chi: float):
    h = build_sector_hamiltonian(1, chi)
    s0 = initial_sector_state(1)
    lam = sqrt(1.0 + chi**2)

    def states_on(thetas):
        amps = propagate_grid(h, s0, np.asarray(thetas) / lam)
        return [partial_trace_field(SectorState(1, amps[:, k])) for k in range(amps.shape[1])]

    return states_on


def _n2_amp_factory(chi: float):
    h = build_sector_hamiltonian(2, chi)
    s0 = initial_sector_state(2)
    w, v = h.eig
    coeff = v.T @ s0.amplitudes

    def amps_on(us):
        return v @ (np.exp(-1j * np.outer(w, np.asarray(us, float))) * coeff[:, None])

    return amps_on


def _x_concurrence_from_amps(amps: np.ndarray) -> np.ndarray:
    # basis |ee,0>, |ge,1>, |eg,1>, |gg,2>: one coherence between eg and ge
    return 2.0 * np.maximum(0.0, np.abs(amps[1] * amps[2]) - np.abs(amps[0] * amps[3]))


def _x_bell_from_amps(amps: np.ndarray) -> np.ndarray:
    z2 = np.abs(amps[1] * amps[2])
    t33 = (np.abs(amps[0]) ** 2 + np.abs(amps[3]) ** 2
           - np.abs(amps[1]) ** 2 - np.abs(amps[2]) ** 2)
    kk = 4.0 * z2**2 + np.maximum(4.0 * z2**2, t33**2)
    return 2.0 * np.sqrt(kk)


def _numeric_scan(chi: float, n: int, horizon, coarse_step, refine_tol, measure: str):
    _check_chi(chi)
    if n not in (1, 2):
        raise ValueError(f"excitation number must be 1 or 2, got {n}")
    horizon = _DEFAULT_HORIZON[n] if horizon is None else float(horizon)
    coarse_step = _DEFAULT_COARSE_STEP if coarse_step is None else float(coarse_step)
    if not (horizon > 0.0 and coarse_step > 0.0 and horizon > coarse_step):
        raise ValueError("need horizon > coarse_step > 0")
    xs = np.arange(0.0, horizon + 0.5 * coarse_step, coarse_step)

    if n == 1:
        states_on = _n1_state_factory(chi)
        point = concurrence if measure == "concurrence" else bell_max
        ys = np.array([point(r) for r in states_on(xs)])

        def f(theta):
            return point(states_on([theta])[0])

        arg, val = _refined_maximum(xs, ys, f, refine_tol)
        return GlobalMaxResult(chi, 1, float(val), float(arg), "numeric")

    amps_on = _n2_amp_factory(chi)
    fast = _x_concurrence_from_amps if measure == "concurrence" else _x_bell_from_amps
    ys = fast(amps_on(xs))
    arg, _ = _refined_maximum_batch(xs, ys, lambda us: fast(amps_on(us)), refine_tol)
    # report the value through the generic matrix path at the refined argmax
    h = build_sector_hamiltonian(2, chi)
    rho = partial_trace_field(SectorState(2, amps_on([arg])[:, 0]))
    point = concurrence if measure == "concurrence" else bell_max
    return GlobalMaxResult(chi, 2, float(point(rho)), float(arg), "numeric")


def global_max_concurrence_numeric(chi: float, n: int = 1, horizon: float | None = None,
                                   coarse_step: float | None = None,
                                   refine_tol: float = 1e-6) -> GlobalMaxResult:
    """Numeric maximum of concurrence over the evolution phase.

    Coarse scan (default step 0.005 over one theta period for n=1, over
    u in [0, 400] for n=2) plus local polish of every grid maximum within
    0.05 of the best; phase resolved to refine_tol.
    """
    return _numeric_scan(chi, n, horizon, coarse_step, refine_tol, "concurrence")


def global_max_bell_numeric(chi: float, n: int = 1, horizon: float | None = None,
                            coarse_step: float | None = None,
                            refine_tol: float = 1e-6) -> GlobalMaxResult:
    """Numeric maximum of the CHSH expectation over the evolution phase."""
    return _numeric_scan(chi, n, horizon, coarse_step, refine_tol, "bell")


@dataclass(frozen=True)
class SymmetryReport:
    """Closed-form maxima at chi and 1/chi and their symmetry verdicts."""

    chi: float
    concurrence_max: float
    concurrence_max_swapped: float
    bell_max: float
    bell_max_swapped: float
    concurrence_symmetric: bool
    bell_symmetric: bool


def exchange_symmetry_report(chi: float, tol: float = 1e-9) -> SymmetryReport:
    """Compare the chi and 1/chi closed-form maxima (atom-exchange symmetry)."""
    _check_chi(chi, positive=True)
    c1 = global_max_concurrence_closed(chi).value
    c2 = global_max_concurrence_closed(1.0 / chi).value
    b1 = global_max_bell_closed(chi).value
    b2 = global_max_bell_closed(1.0 / chi).value
    return SymmetryReport(chi, c1, c2, b1, b2,
                          abs(c1 - c2) <= tol, abs(b1 - b2) <= tol)


@dataclass(frozen=True)
class KinkReport:
    """One-sided second-difference profiles of the concurrence maximum."""

    chi_center: float
    step: float
    chi_left: np.ndarray
    d2_left: np.ndarray
    chi_right: np.ndarray
    d2_right: np.ndarray
    left_limit: float
    right_limit: float
    gap: float


def kink_scan(chi_center: float, half_width: float = 0.05, step: float = 1e-3) -> KinkReport:
    """Probe d2/dchi2 of the closed-form concurrence maximum near a point.

    Second differences are taken separately on each side of chi_center (the
    stencils never straddle it) and extrapolated linearly to the center;
    a large left/right gap flags a curvature jump there.
    """
    _check_chi(chi_center, positive=True)
    if step <= 0.0 or half_width <= 0.0:
        raise ValueError("need positive step and half_width")
    k_max = int(half_width / step)
    if k_max - 1 < 20:
        raise ValueError("need at least 20 second-difference samples per side")
    if chi_center - half_width - step <= 0.0:
        raise ValueError("scan window must stay at positive chi")

    f = lambda chi: global_max_concurrence_closed(chi).value
    ks = np.arange(1, k_max)

    def side(sign):
        chis = chi_center + sign * ks * step
        d2 = np.array([
            (f(x + step * sign) - 2.0 * f(x) + f(x - step * sign)) / step**2
            for x in chis
        ])
        # least-squares line through the profile, evaluated at the center
        coef = np.polyfit(chis, d2, 1)
        return chis, d2, float(np.polyval(coef, chi_center))

    chi_l, d2_l, lim_l = side(-1.0)
    chi_r, d2_r, lim_r = side(+1.0)
    return KinkReport(chi_center, step, chi_l, d2_l, chi_r, d2_r,
                      lim_l, lim_r, abs(lim_r - lim_l))


@dataclass(frozen=True)
class TwoExcitationPeak:
    """Best coupling ratio for two-excitation entanglement extraction."""

    chi_star: float
    result: GlobalMaxResult
    photon_weights: np.ndarray  # cavity photon-number weights at the optimum


def locate_two_excitation_peak(chi_bounds=(0.10, 0.30), horizon: float = 400.0,
                               coarse_step: float = 0.005, chi_tol: float = 5e-4,
                               refine_tol: float = 1e-6) -> TwoExcitationPeak:
    """Golden-section search in chi for the largest two-excitation concurrence.

    The inner objective is the numeric global maximum over u in [0, horizon];
    at the winning chi the cavity photon statistics at the optimal u are
    reported alongside.
    """
    lo, hi = chi_bounds
    if not (0.0 < lo < hi):
        raise ValueError(f"bad chi bounds {chi_bounds!r}")

    def inner(chi):
        return global_max_concurrence_numeric(chi, n=2, horizon=horizon,
                                              coarse_step=coarse_step,
                                              refine_tol=refine_tol).value

    chi_star, _ = golden_max(inner, lo, hi, chi_tol)
    res = global_max_concurrence_numeric(chi_star, n=2, horizon=horizon,
                                         coarse_step=coarse_step, refine_tol=refine_tol)
    amps = _n2_amp_factory(chi_star)([res.argmax_phase])[:, 0]
    weights = photon_distribution(SectorState(2, amps))
    return TwoExcitationPeak(chi_star, res, weights)
