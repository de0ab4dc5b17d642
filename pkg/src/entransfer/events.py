"""Sudden-death/birth/revival detection and the cavity phase diagram.

Event detection works on the smooth partial-transpose eigenvalue
lambda_-(t) of the closed-form pair matrices rather than on the clipped
concurrence: bisection needs sign changes, not flat zeros.  A pair is
entangled where lambda_- < 0.
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .amplitudes import SystemParams, exact_squares
from .errors import ConfigError
from .jointstate import (
    DIAGONAL_PAIRS,
    InitialAmplitudes,
    PAIR_LABELS,
    lambda_minus,
    pair_concurrence,
)

# concurrence below this counts as unentangled (numerical floor of the
# closed forms)
ZERO_THRESHOLD = 1e-12

ESD = "ESD"
ESB = "ESB"
ESR = "ESR"


@dataclass(frozen=True)
class EventRecord:
    kind: str       # ESD | ESB | ESR
    pair: str
    time: float     # units 1/kappa


def _pair_index(pair):
    if pair not in DIAGONAL_PAIRS:
        raise ValueError(f"event detection requires a pair with a closed-form "
                         f"lambda (a1a2, c1c2, r1r2), got {pair!r}")
    return DIAGONAL_PAIRS.index(pair)


def _lambda_on_grid(pair, init, p, grid):
    x2 = exact_squares(grid, p)[_pair_index(pair)]
    return lambda_minus(pair, x2, init)


def concurrence_series(pair, init, p, grid):
    """Concurrence of ``pair`` at each grid point.

    Closed forms are used for a1a2/c1c2/r1r2; every other pair goes
    through the partial-trace route.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("empty time grid")
    if np.any(np.diff(grid) <= 0) or grid[0] < 0:
        raise ValueError("grid must be strictly increasing and start at t >= 0")
    if pair in DIAGONAL_PAIRS:
        lam = _lambda_on_grid(pair, init, p, grid)
        return np.maximum(0.0, -2.0 * lam)
    if pair not in PAIR_LABELS:
        raise ValueError(f"unknown pair label {pair!r}")
    return np.array([pair_concurrence(pair, t, init, p) for t in grid])


def _detection_grid(p, horizon, n_points, min_points_per_period):
    ob = p.omega_bar
    if ob.real > 0:
        period = 2.0 * np.pi / ob.real
        needed = int(np.ceil(min_points_per_period * horizon / period))
    else:
        needed = 0
    n = max(2000, needed) if n_points is None else int(n_points)
    if ob.real > 0 and n < needed:
        raise ConfigError(
            f"{n} grid points is too coarse for oscillation period {period:.3g}; "
            f"need at least {needed}")
    return np.linspace(0.0, horizon, n + 1)


def detect_events(pair, init, p, horizon, n_points=None, min_points_per_period=40):
    """Locate all ESD/ESB/ESR events of a closed-form pair on (0, horizon].

    Sign changes of lambda_-(t) are bracketed on a dense grid (at least
    ``min_points_per_period`` points per Rabi period) and refined by
    bisection to better than 1e-6 in time.  A positive-going zero ends an
    entangled interval (ESD); a negative-going zero starts one (ESB the
    first time, ESR afterwards).
    """
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    grid = _detection_grid(p, horizon, n_points, min_points_per_period)
    lam = _lambda_on_grid(pair, init, p, grid)

    events = []
    # lambda(0) = 0 for all three pairs; the state just after t=0 decides
    # whether the pair is born entangled.
    entangled = lam[1] < 0.0
    ever_entangled = entangled or (pair == "a1a2" and init.alpha * init.beta > 0)
    if entangled and pair != "a1a2":
        # born entangled at t = 0+ without a sign change to bracket
        events.append(EventRecord(kind=ESB, pair=pair, time=0.0))
        ever_entangled = True

    f = lambda t: lambda_minus(pair, exact_squares(t, p)[_pair_index(pair)], init)
    for i in range(1, len(grid) - 1):
        a, b = lam[i], lam[i + 1]
        if a == 0.0 or np.sign(a) == np.sign(b):
            continue
        root = brentq(f, grid[i], grid[i + 1], xtol=1e-8)
        if a < 0.0:          # entangled -> unentangled
            events.append(EventRecord(kind=ESD, pair=pair, time=root))
            entangled = False
        else:                # unentangled -> entangled
            kind = ESR if ever_entangled else ESB
            events.append(EventRecord(kind=kind, pair=pair, time=root))
            entangled = True
            ever_entangled = True
    return events


def esb_time_strong(init, kappa=1.0):
    """Strong-coupling prediction 2 ln(beta/alpha) / kappa for the
    reservoir-pair sudden-birth time; requires beta >= alpha."""
    if init.beta < init.alpha:
        raise ValueError("no ESB prediction for beta < alpha")
    if init.alpha == 0:
        raise ValueError("beta = 1 never crosses the birth threshold at finite time")
    return 2.0 * np.log(init.beta / init.alpha) / kappa


class WeakEventTimes(NamedTuple):
    t_esd: float
    t_esb: float
    window: Optional[float]


def weak_event_times(init, gamma, kappa=1.0):
    """Weak-coupling closed-form event times.

    t_ESD = ln(beta/(beta-alpha)) / (4 gamma^2 kappa)
    t_ESB = ln(beta/alpha)        / (4 gamma^2 kappa)
    window = ln(beta/alpha - 1)   / (4 gamma^2 kappa), only for beta > 2 alpha.
    """
    a, b = init.alpha, init.beta
    if b <= a:
        raise ValueError("weak-coupling ESD/ESB require beta > alpha")
    pref = 1.0 / (4.0 * gamma**2 * kappa)
    t_esd = pref * np.log(b / (b - a))
    t_esb = pref * np.log(b / a)
    window = pref * np.log(b / a - 1.0) if b > 2.0 * a else None
    return WeakEventTimes(t_esd=t_esd, t_esb=t_esb, window=window)


def _phase_params(gamma, kappa):
    return SystemParams.from_geff(gamma * kappa, kappa=kappa)


def _phase_horizon(p):
    ob = p.omega_bar
    horizon = 20.0 / p.kappa
    if ob.real > 0:
        horizon = max(horizon, 10.0 * np.pi / ob.real)
    else:
        # overdamped: |G|^2 peaks at tanh(nu t) = 4 nu / kappa
        nu = ob.imag
        x = min(4.0 * nu / p.kappa, 1.0 - 1e-12)
        horizon = max(horizon, 3.0 * np.arctanh(x) / nu)
    return horizon


def cavity_boundary(gamma, kappa=1.0):
    """Minimum over t of 1 - |G_t|^2 with exact amplitudes: the critical
    alpha/beta ratio above which the cavities entangle."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    p = _phase_params(gamma, kappa)
    horizon = _phase_horizon(p)
    ts = np.linspace(0.0, horizon, 4001)
    vals = 1.0 - exact_squares(ts, p)[1]
    i = int(np.argmin(vals))
    lo = ts[max(i - 1, 0)]
    hi = ts[min(i + 1, len(ts) - 1)]
    res = minimize_scalar(lambda t: 1.0 - exact_squares(t, p)[1],
                          bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-8 * max(1.0, hi)})
    return float(min(res.fun, vals[i]))


def cavity_phase(gamma, ratio):
    """'entangled' if cavities entangle at some time for alpha/beta = ratio."""
    if not 0.0 < ratio < 1.0:
        raise ValueError("ratio alpha/beta must lie in (0, 1)")
    return "entangled" if ratio > cavity_boundary(gamma) else "unentangled"


def cavity_entangled_intervals(gamma, ratio, kappa=1.0, n_points=8000):
    """Time intervals on which the cavity pair is entangled for
    alpha/beta = ratio (exact amplitudes)."""
    p = _phase_params(gamma, kappa)
    horizon = _phase_horizon(p)
    ts = np.linspace(0.0, horizon, n_points + 1)
    f = lambda t: (1.0 - exact_squares(t, p)[1]) - ratio
    vals = f(ts)
    below = vals < 0.0
    intervals = []
    start = None
    for i in range(1, len(ts)):
        if below[i] and not below[i - 1]:
            start = brentq(f, ts[i - 1], ts[i], xtol=1e-10)
        elif not below[i] and below[i - 1] and start is not None:
            intervals.append((start, brentq(f, ts[i - 1], ts[i], xtol=1e-10)))
            start = None
    if start is not None:
        intervals.append((start, horizon))
    return intervals


@dataclass(frozen=True)
class PhaseDiagram:
    gammas: np.ndarray
    ratios: np.ndarray
    entangled: np.ndarray            # bool, shape (len(gammas), len(ratios))
    boundary: np.ndarray = field(default=None)  # critical ratio per gamma


def phase_diagram(gammas, ratios):
    """Cavity entangled/unentangled verdicts on a (gamma, ratio) grid,
    using the exact-amplitude criterion throughout."""
    gammas = np.asarray(gammas, dtype=float)
    ratios = np.asarray(ratios, dtype=float)
    if gammas.size == 0 or ratios.size == 0:
        raise ValueError("empty grid")
    boundary = np.array([cavity_boundary(g) for g in gammas])
    entangled = ratios[None, :] > boundary[:, None]
    return PhaseDiagram(gammas=gammas, ratios=ratios,
                        entangled=entangled, boundary=boundary)


def dead_window(init, p, horizon):
    """Maximal interval on which a1a2, c1c2 and r1r2 are simultaneously
    unentangled; None if there is no such interval (or no entanglement at
    all to begin with)."""
    if init.alpha * init.beta == 0:
        return None
    per_pair = {pair: detect_events(pair, init, p, horizon) for pair in DIAGONAL_PAIRS}
    cuts = sorted({0.0, horizon} | {ev.time for evs in per_pair.values() for ev in evs})
    best = None
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi - lo < 1e-9:
            continue
        mid = 0.5 * (lo + hi)
        x2s = exact_squares(mid, p)
        dead = all(
            max(0.0, -2.0 * lambda_minus(pair, x2s[i], init)) < ZERO_THRESHOLD
            for i, pair in enumerate(DIAGONAL_PAIRS)
        )
        if dead and (best is None or hi - lo > best[1] - best[0]):
            best = (lo, hi)
    return best
