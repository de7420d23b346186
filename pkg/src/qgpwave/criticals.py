"""Critical parameters of the negative-dispersion soliton branch.

The momentum slope at c = 0+ changes sign at a unique dispersion kappa0;
below it the momentum folds, producing a speed c_tilde where the slope
vanishes, an equal-energy speed c_star, and a bounding momentum q_star
beyond which the constrained energy minimum sits on the standing wave.
All roots live on brackets where the target is strictly monotone, so
plain bisection suffices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .closedforms import w_of_kappa
from .errors import ParamError, RangeError
from .observables import dp_dc_closed, energy_closed, momentum_closed
from .regions import SQRT2, make_params

__all__ = [
    "CriticalValues",
    "MinCurvePoint",
    "kappa0",
    "c_tilde",
    "c_star",
    "q_star",
    "black_energy",
    "speed_of_momentum",
    "min_curve",
    "critical_values",
]

_BISECT_TOL = 1e-10
# standing-wave limits are evaluated just off c = 0, where momentum is
# still defined; matches the closed-form evaluation of E(0+)
_C_EPS = 1e-8
# keep brackets clear of the sonic snap so classification stays in D2
_SONIC_GAP = 1e-9


def _bisect(fn, lo: float, hi: float, increasing: bool) -> float:
    """Bisection to _BISECT_TOL on a bracket with a sign change."""
    while hi - lo > _BISECT_TOL:
        mid = 0.5 * (lo + hi)
        val = fn(mid)
        if (val < 0.0) == increasing:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=1)
def kappa0() -> float:
    """Unique zero of the momentum slope at rest, near -3.64; cached."""
    return _bisect(w_of_kappa, -100.0, -1e-3, increasing=False)


def _check_negative_kappa(kappa: float) -> None:
    if not (kappa < 0.0 and math.isfinite(kappa)):
        raise ParamError(f"defined for kappa < 0, got {kappa}")


def c_tilde(kappa: float) -> float:
    """Speed where the folded momentum branch turns, for kappa < kappa0."""
    _check_negative_kappa(kappa)
    if kappa >= kappa0():
        raise ParamError(
            f"momentum is monotone for kappa >= {kappa0():.6f}; no turning "
            "speed exists")
    fn = lambda c: dp_dc_closed(make_params(c, kappa))
    # slope is w(kappa) > 0 at rest and negative approaching sonic speed
    return _bisect(fn, _C_EPS, SQRT2 - _SONIC_GAP, increasing=False)


def black_energy(kappa: float) -> float:
    """Energy of the standing (vanishing) wave, as the c -> 0 limit."""
    _check_negative_kappa(kappa)
    return energy_closed(make_params(_C_EPS, kappa))


def c_star(kappa: float) -> float:
    """Largest speed whose soliton energy equals the standing-wave one."""
    _check_negative_kappa(kappa)
    if kappa >= kappa0():
        return 0.0
    e0 = black_energy(kappa)
    fn = lambda c: energy_closed(make_params(c, kappa)) - e0
    # energy rises from e0 up to the turning speed, then falls to 0
    return _bisect(fn, c_tilde(kappa), SQRT2 - _SONIC_GAP, increasing=False)


def q_star(kappa: float) -> float:
    """Momentum bound beyond which the minimization curve is flat."""
    _check_negative_kappa(kappa)
    cs = c_star(kappa)
    if cs == 0.0:
        return math.pi / 2.0
    return momentum_closed(make_params(cs, kappa))


def speed_of_momentum(kappa: float, q: float) -> float:
    """Inverse of the momentum map on its strictly decreasing branch.

    Maps q = 0 to sonic speed and q = q_star to c_star.
    """
    _check_negative_kappa(kappa)
    qs = q_star(kappa)
    if not (0.0 <= q <= qs):
        raise RangeError(f"momentum {q} outside [0, {qs}]")
    if q == 0.0:
        return SQRT2
    lo = max(c_star(kappa), _C_EPS)
    hi = SQRT2 - _SONIC_GAP
    p_lo = momentum_closed(make_params(lo, kappa))
    p_hi = momentum_closed(make_params(hi, kappa))
    if q >= p_lo:
        return lo       # inside the evaluation gap at the left endpoint
    if q <= p_hi:
        # momentum vanishes at sonic speed; close the gap linearly
        return SQRT2 - (SQRT2 - hi) * q / p_hi
    fn = lambda c: momentum_closed(make_params(c, kappa)) - q
    return _bisect(fn, lo, hi, increasing=False)


@dataclass(frozen=True)
class MinCurvePoint:
    q: float
    E_min: float
    c: float | None     # absent on the flat branch


@dataclass(frozen=True)
class CriticalValues:
    kappa: float
    kappa0: float
    c_tilde: float | None   # absent when the momentum has no fold
    c_star: float
    q_star: float
    E_black: float


def critical_values(kappa: float) -> CriticalValues:
    _check_negative_kappa(kappa)
    k0 = kappa0()
    ct = c_tilde(kappa) if kappa < k0 else None
    return CriticalValues(kappa, k0, ct, c_star(kappa), q_star(kappa),
                          black_energy(kappa))


def min_curve(kappa: float, qs) -> list[MinCurvePoint]:
    """Constrained energy minimum along a grid of momenta.

    Strictly below q_star the minimum sits on the traveling soliton at
    the inverse-momentum speed; from q_star on it is the standing-wave
    energy and the speed slot is empty.
    """
    _check_negative_kappa(kappa)
    qstar = q_star(kappa)
    eblack = black_energy(kappa)
    out = []
    for q in qs:
        q = float(q)
        if q < 0.0 or not math.isfinite(q):
            raise ParamError(f"momenta must be finite and >= 0, got {q}")
        if q == 0.0:
            out.append(MinCurvePoint(q, 0.0, SQRT2))
        elif q < qstar:
            c = speed_of_momentum(kappa, q)
            out.append(MinCurvePoint(q, energy_closed(make_params(c, kappa)),
                                     c))
        elif q == qstar:
            out.append(MinCurvePoint(q, eblack, c_star(kappa)))
        else:
            out.append(MinCurvePoint(q, eblack, None))
    return out
