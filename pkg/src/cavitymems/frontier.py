"""Frontiers of entanglement and nonlocality over mixedness.

The reference frontier for concurrence versus normalized linear entropy M is
the maximally-entangled-mixed-state family: populations (g, 1-2g, 0, g) in
the |ee>,|eg>,|ge>,|gg> basis with coherence C/2 between |ee> and |gg|, and
g = C/2 for C >= 2/3, g = 1/3 below. Its M(C) relation inverts in closed
form and every other two-qubit state sits on or below the curve.

The CHSH analogue is produced numerically: for each target M the maximal
CHSH expectation is maximized over an X-state family by projected coordinate
ascent with seeded random restarts. That curve is a lower bound on the true
frontier within the optimizer tolerance (1e-3) and is tagged as such.

Trajectory sweeps place the one-excitation cavity family in the same plane
for comparison against either frontier.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import acos, sqrt

import numpy as np

from .analysis import golden_max
from .measures import (bell_max, concurrence, concurrence_closed_form,
                       linear_entropy, werner_state)
from .dynamics import reduced_state_closed_form
from .qcore import ConsistencyError

CURVE_KINDS = ("mems", "mbvms", "werner", "trajectory")

# branch split of the frontier family and its terminal mixedness
_M_BRANCH = 16.0 / 27.0
_M_END = 8.0 / 9.0

OPTIMIZER_TOL = 1e-3
DEFAULT_SEED = 1729


@dataclass
class FrontierCurve:
    """Sampled curve in the (mixedness, measure) plane.

    Frontier kinds (mems, mbvms, werner) keep strictly increasing mixedness.
    Trajectory curves keep their sweep order in chi, along which mixedness is
    legitimately non-monotone, so they are exempt from that check.
    """

    kind: str
    mixedness: np.ndarray
    value: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in CURVE_KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        self.mixedness = np.asarray(self.mixedness, dtype=float)
        self.value = np.asarray(self.value, dtype=float)
        if self.mixedness.shape != self.value.shape or self.mixedness.ndim != 1:
            raise ValueError("mixedness and value must be equal-length 1d arrays")
        if self.mixedness.size and (self.mixedness.min() < -1e-12
                                    or self.mixedness.max() > 1.0 + 1e-12):
            raise ValueError("mixedness values must lie in [0, 1]")
        bell_like = self.kind == "mbvms" or self.meta.get("measure") == "bell"
        ceiling = 2.0 * sqrt(2.0) if bell_like else 1.0
        if self.value.size and (self.value.min() < -1e-12
                                or self.value.max() > ceiling + 1e-9):
            raise ValueError("curve values outside the measure range")
        if self.kind != "trajectory" and np.any(np.diff(self.mixedness) <= 0.0):
            raise ValueError(f"{self.kind} curve needs strictly increasing mixedness")


def mems_state(c: float) -> np.ndarray:
    """Frontier state with concurrence c, 0 < c <= 1."""
    if not (0.0 < c <= 1.0):
        raise ValueError(f"concurrence must be in (0, 1], got {c!r}")
    g = c / 2.0 if c >= 2.0 / 3.0 else 1.0 / 3.0
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = g
    rho[1, 1] = 1.0 - 2.0 * g
    rho[0, 3] = rho[3, 0] = c / 2.0
    return rho


def mems_frontier(samples: int = 200) -> FrontierCurve:
    """Frontier curve sampled on a uniform concurrence grid of (0, 1].

    Points are measured from the constructed states with the generic
    routines, not written down from the family's algebra.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    cs = np.arange(1, samples + 1) / samples
    ms, vals = [], []
    for c in cs[::-1]:  # descending c gives ascending mixedness
        rho = mems_state(float(c))
        ms.append(linear_entropy(rho))
        vals.append(concurrence(rho))
    return FrontierCurve("mems", np.array(ms), np.array(vals), {"samples": samples})


def mems_frontier_value(m: float) -> float:
    """Frontier concurrence at mixedness m, closed-form inverse of the family.

    M = (8/3) C (1 - C) on the C >= 2/3 branch and M = 8/9 - (2/3) C^2 below;
    beyond M = 8/9 no entangled states exist and the frontier is 0.
    """
    if not (0.0 <= m <= 1.0):
        raise ValueError(f"mixedness must be in [0, 1], got {m!r}")
    if m <= _M_BRANCH:
        return 0.5 * (1.0 + sqrt(1.0 - 1.5 * m))
    if m <= _M_END:
        return sqrt(4.0 / 3.0 - 1.5 * m)
    return 0.0


def werner_curve(samples: int = 200) -> FrontierCurve:
    """Concurrence of Werner mixtures against their mixedness."""
    if samples < 2:
        raise ValueError("need at least 2 samples")
    ps = np.linspace(1.0, 0.0, samples)
    ms, vals = [], []
    for p in ps:
        rho = werner_state(float(p))
        ms.append(linear_entropy(rho))
        vals.append(concurrence(rho))
    return FrontierCurve("werner", np.array(ms), np.array(vals), {"samples": samples})


def _chi_grid(chi_linear: int, chi_log: int, chi_max: float) -> np.ndarray:
    lin = np.linspace(0.0, 1.0, chi_linear, endpoint=False)
    log = np.geomspace(1.0, chi_max, chi_log)
    return np.concatenate([lin, log])


def trajectory_sweep(theta_list, measure: str = "concurrence", chi_linear: int = 200,
                     chi_log: int = 200, chi_max: float = 40.0) -> list[FrontierCurve]:
    """One curve per theta: the one-excitation family swept over chi.

    chi runs over a linear grid on [0, 1) plus a log grid on [1, chi_max];
    each point carries (linear entropy, measure) of the closed-form state,
    both computed by the generic routines.
    """
    if measure not in ("concurrence", "bell"):
        raise ValueError(f"measure must be 'concurrence' or 'bell', got {measure!r}")
    point = concurrence if measure == "concurrence" else bell_max
    chis = _chi_grid(chi_linear, chi_log, chi_max)
    curves = []
    for theta in theta_list:
        theta = float(theta)
        ms = np.empty(chis.size)
        vals = np.empty(chis.size)
        for i, chi in enumerate(chis):
            rho = reduced_state_closed_form(float(chi), theta)
            ms[i] = linear_entropy(rho)
            vals[i] = point(rho)
        curves.append(FrontierCurve("trajectory", ms, vals,
                                    {"theta": theta, "measure": measure,
                                     "chi": chis.copy()}))
    return curves


def best_concurrence_at_mixedness(m: float, chi_max: float = 40.0, grid: int = 400,
                                  refine_tol: float = 1e-9) -> float | None:
    """Largest concurrence the one-excitation family reaches at mixedness m.

    The family is rank 2 with spectrum (P, 1-P), P = sin^2(theta)/(1+chi^2),
    so m = (8/3) P (1-P) pins P to two roots; for each root the search runs
    over chi alone with cos(theta) = +-sqrt(1 - P (1+chi^2)). Returns None
    when m > 2/3, which no state of the family attains.
    """
    if not (0.0 <= m <= 1.0):
        raise ValueError(f"mixedness must be in [0, 1], got {m!r}")
    disc = 1.0 - 1.5 * m
    if disc < 0.0:
        return None
    s = sqrt(disc)
    best = 0.0
    for p_root in ((1.0 - s) / 2.0, (1.0 + s) / 2.0):
        for sign in (1.0, -1.0):

            def cval(chi):
                arg = 1.0 - p_root * (1.0 + chi * chi)
                if arg < 0.0:
                    return -1.0  # infeasible chi for this root
                return concurrence_closed_form(chi, acos(max(-1.0, min(1.0, sign * sqrt(arg)))))

            hi = chi_max if p_root == 0.0 else min(chi_max, sqrt(max(0.0, 1.0 / p_root - 1.0)))
            if hi <= 0.0:
                continue
            chis = _chi_grid(grid, grid, chi_max)
            chis = chis[chis <= hi]
            if chis.size == 0:
                continue
            vals = np.array([cval(c) for c in chis])
            k = int(np.argmax(vals))
            a = chis[max(k - 1, 0)]
            b = chis[min(k + 1, chis.size - 1)]
            cand = float(vals[k])
            if b > a:
                _, refined = golden_max(cval, float(a), float(b), refine_tol)
                cand = max(cand, refined)
            best = max(best, cand)
    return best


def coverage_threshold(resolution: int = 50, gap_tol: float = 0.02,
                       m_max: float = 0.85) -> float:
    """Largest grid mixedness up to which the family tracks the frontier.

    Walks a uniform mixedness grid and returns the largest M* such that for
    every grid point at or below it the best concurrence the one-excitation
    family achieves is within gap_tol of the frontier value.
    """
    if resolution < 50:
        raise ValueError(f"resolution must be >= 50, got {resolution}")
    last_ok = None
    for m in np.linspace(0.0, m_max, resolution):
        target = mems_frontier_value(float(m))
        got = best_concurrence_at_mixedness(float(m))
        if got is None or target - got > gap_tol:
            break
        last_ok = float(m)
    if last_ok is None:
        raise ConsistencyError("frontier not tracked even at zero mixedness")
    return last_ok


# ---------------------------------------------------------------------------
# maximal CHSH expectation at fixed mixedness (numeric lower bound)

def x_state(a: float, b: float, c: float, d: float, z1: float, z2: float) -> np.ndarray:
    """X-shaped density matrix: populations (a, b, c, d), real coherences
    z1 between |ee>,|gg> and z2 between |eg>,|ge>."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = a, b, c, d
    rho[0, 3] = rho[3, 0] = z1
    rho[1, 2] = rho[2, 1] = z2
    return rho


def _x_bell_fast(a, b, c, d, z1, z2) -> float:
    # correlation matrix of a real X state is diag(2(z1+z2), 2(z2-z1), a-b-c+d)
    e1 = 4.0 * (z1 + z2) ** 2
    e2 = 4.0 * (z1 - z2) ** 2
    e3 = (a - b - c + d) ** 2
    lo = min(e1, e2, e3)
    return 2.0 * sqrt(e1 + e2 + e3 - lo)


def _x_objective(diag, t, purity):
    """Bell value of the purity-matched X state, or None when infeasible."""
    a, b, c, d = diag
    s = a * a + b * b + c * c + d * d
    budget = purity - s
    if budget < -1e-12:
        return None
    budget = max(budget, 0.0)
    z1sq = t * budget / 2.0
    z2sq = (1.0 - t) * budget / 2.0
    if z1sq > a * d + 1e-15 or z2sq > b * c + 1e-15:
        return None
    return _x_bell_fast(a, b, c, d, sqrt(z1sq), sqrt(z2sq)), sqrt(z1sq), sqrt(z2sq)


def _normalized(diag):
    diag = np.clip(np.asarray(diag, dtype=float), 0.0, None)
    tot = diag.sum()
    if tot <= 0.0:
        return None
    return diag / tot


def _seed_points(m: float):
    """Deterministic starting points: known strong families at this mixedness."""
    seeds = []
    # rank-2 mixture of the two phase-locked maximally entangled states
    if 1.0 - 1.5 * m >= 0.0:
        seeds.append((np.array([0.5, 0.0, 0.0, 0.5]), 1.0))
    # isotropic-correlation pair state, feasible only near full mixedness
    seeds.append((np.array([0.25, 0.25, 0.25, 0.25]), 0.0))
    # werner mixture
    p = sqrt(max(0.0, 1.0 - m))
    seeds.append((np.array([(1 - p) / 4, (1 + p) / 4, (1 + p) / 4, (1 - p) / 4]), 0.0))
    # concurrence-frontier state
    cfr = mems_frontier_value(m)
    if cfr > 0.0:
        g = cfr / 2.0 if cfr >= 2.0 / 3.0 else 1.0 / 3.0
        seeds.append((np.array([g, 1.0 - 2.0 * g, 0.0, g]), 1.0))
    return seeds


def _ascend(diag, t, purity, step0=0.2, step_min=1e-5):
    """Projected coordinate ascent over (populations, coherence split)."""
    diag = _normalized(diag)
    if diag is None:
        return None
    got = _x_objective(diag, t, purity)
    if got is None:
        return None
    best_val = got[0]
    step = step0
    while step >= step_min:
        improved = False
        for k in range(5):
            for sgn in (1.0, -1.0):
                if k < 4:
                    cand = diag.copy()
                    cand[k] = max(0.0, cand[k] + sgn * step)
                    cand = _normalized(cand)
                    if cand is None:
                        continue
                    cand_t = t
                else:
                    cand = diag
                    cand_t = min(1.0, max(0.0, t + sgn * step))
                got = _x_objective(cand, cand_t, purity)
                if got is not None and got[0] > best_val + 1e-14:
                    best_val = got[0]
                    diag, t = cand, cand_t
                    improved = True
        if not improved:
            step *= 0.5
    return best_val, diag, t


def mbvms_frontier(entropy_grid=None, restarts: int = 32,
                   seed: int = DEFAULT_SEED) -> FrontierCurve:
    """Numeric frontier of the CHSH expectation over mixedness.

    For each target M the maximization runs over X states with the purity
    pinned to 1 - (3/4) M; the result is a lower bound on the true frontier
    within OPTIMIZER_TOL and the curve metadata says so. The reported values
    come from the generic bell_max on the winning matrices.
    """
    if entropy_grid is None:
        entropy_grid = np.linspace(0.0, 0.9, 19)
    entropy_grid = np.asarray(entropy_grid, dtype=float)
    if entropy_grid.size == 0 or np.any(~np.isfinite(entropy_grid)):
        raise ValueError("entropy grid must be finite and non-empty")
    if entropy_grid.min() < 0.0 or entropy_grid.max() >= 1.0:
        raise ValueError("mixedness targets must lie in [0, 1)")
    if np.any(np.diff(entropy_grid) <= 0.0):
        raise ValueError("entropy grid must be strictly increasing")
    rng = np.random.default_rng(seed)
    values = np.empty(entropy_grid.size)
    for i, m in enumerate(entropy_grid):
        purity = 1.0 - 0.75 * float(m)
        starts = _seed_points(float(m))
        for _ in range(restarts):
            starts.append((rng.dirichlet(np.ones(4)), float(rng.uniform())))
        best = None
        for diag, t in starts:
            got = _ascend(diag, t, purity)
            if got is None:
                continue
            if best is None or got[0] > best[0]:
                best = got
        if best is None:
            raise ConsistencyError(f"no feasible X state found at mixedness {m}")
        _, diag, t = best
        _, z1, z2 = _x_objective(diag, t, purity)
        values[i] = bell_max(x_state(*diag, z1, z2))
    return FrontierCurve("mbvms", entropy_grid, values,
                         {"restarts": restarts, "seed": seed,
                          "optimizer_tol": OPTIMIZER_TOL,
                          "note": "numeric lower-bound stand-in"})
