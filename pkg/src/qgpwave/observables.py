"""Energy and momentum of traveling waves, two independent routes.

Closed forms come from antiderivative differences over the intensity
interval of the wave; quadrature integrates sampled profiles on their
grid and adds a tail estimate fitted to the decay of the samples.  The
two routes share no code path, so their agreement is a real check.

Momentum slope in c has its own closed form per region; the energy
slope is c times it (group-velocity relation for the wave family).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import simpson

from .closedforms import energy_antideriv, momentum_antideriv
from .errors import (GridError, ParamError, QuadratureError, RegionError,
                     VanishingError)
from .regions import SQRT2, Params, Region, classify

__all__ = [
    "Method",
    "Observables",
    "energy_closed",
    "momentum_closed",
    "cuspon_energy_closed",
    "cuspon_momentum_closed",
    "dp_dc_closed",
    "dE_dc_closed",
    "energy_quadrature",
    "momentum_quadrature",
    "observables_closed",
    "observables_quadrature",
]

# below this the kappa^{3/2} denominators of the closed forms lose all
# precision; the dispersionless limit formulas take over
_GP_SWITCH = 1e-6
_VANISH_EPS = 1e-8
_UNDERFLOW_FLOOR = 1e-280

_SOLITON_CLOSED = frozenset({Region.D1, Region.D2, Region.D3})
_CUSPON_CLOSED = frozenset({Region.D1, Region.D3, Region.BMinus,
                            Region.BPlus})


class Method(Enum):
    CLOSED_FORM = "closed"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class Observables:
    """Energy/momentum bundle; derivative slots are None when the wave
    kind has no closed derivative formula (cuspons) or momentum is
    undefined (standing waves)."""
    energy: float
    momentum: float | None
    dE_dc: float | None
    dp_dc: float | None
    method: Method


# ---------------------------------------------------------------------------
# dispersionless limits


def _gp_energy(c: float) -> float:
    return (2.0 - c * c) ** 1.5 / 3.0


def _gp_momentum(c: float) -> float:
    root = math.sqrt(2.0 - c * c)
    return math.pi / 2.0 - math.atan(c / root) - 0.5 * c * root


def _gp_dp_dc(c: float) -> float:
    return -math.sqrt(2.0 - c * c)


# ---------------------------------------------------------------------------
# closed forms


def _soliton_region(params: Params) -> Region:
    region = classify(params)
    if region not in _SOLITON_CLOSED:
        raise RegionError(
            f"no smooth-soliton closed form in region {region.value}")
    return region


def energy_closed(params: Params) -> float:
    """Closed-form energy of the smooth soliton at ``params``."""
    region = _soliton_region(params)
    c = params.c
    if abs(params.kappa) < _GP_SWITCH:
        return _gp_energy(c)
    center = 0.5 * (2.0 - c * c)
    return (energy_antideriv(region, params, 0.0)
            - energy_antideriv(region, params, center))


def momentum_closed(params: Params) -> float:
    """Closed-form momentum of the smooth soliton; needs c > 0."""
    region = _soliton_region(params)
    c = params.c
    if c <= 0.0:
        raise ParamError("momentum is defined for c > 0 only")
    if abs(params.kappa) < _GP_SWITCH:
        return _gp_momentum(c)
    center = 0.5 * (2.0 - c * c)
    return (momentum_antideriv(region, params, 0.0)
            - momentum_antideriv(region, params, center))


def _cuspon_region(params: Params) -> Region:
    region = classify(params)
    if region not in _CUSPON_CLOSED:
        raise RegionError(f"no cuspon closed form in region {region.value}")
    return region


def cuspon_energy_closed(params: Params) -> float:
    """Closed-form energy of the cuspon at ``params``.

    At sonic speed the value is a c-independent constant of kappa.
    """
    region = _cuspon_region(params)
    yT = 1.0 - 1.0 / (2.0 * params.kappa)
    return (energy_antideriv(region, params, 0.0)
            - energy_antideriv(region, params, yT))


def cuspon_momentum_closed(params: Params) -> float:
    region = _cuspon_region(params)
    if params.c <= 0.0:
        raise ParamError("momentum is defined for c > 0 only")
    yT = 1.0 - 1.0 / (2.0 * params.kappa)
    return (momentum_antideriv(region, params, 0.0)
            - momentum_antideriv(region, params, yT))


def dp_dc_closed(params: Params) -> float:
    """Slope of the soliton momentum in c.

    Negative throughout the moderate-dispersion strip, positive in the
    supersonic family; in the nonpositive-dispersion strip its sign
    encodes the stability fold (see the criticals module).
    """
    region = _soliton_region(params)
    c, kappa = params.c, params.kappa
    if abs(kappa) < _GP_SWITCH:
        return _gp_dp_dc(c)
    c2 = c * c
    num = 3.0 * c2 * kappa - 4.0 * kappa - 1.0
    ratio = (2.0 - c2) / (1.0 - 2.0 * kappa)    # positive in all of D
    steep = -0.75 * (2.0 - c2) * math.sqrt((1.0 - 2.0 * kappa) / (2.0 - c2))
    if region is Region.D2:
        mk = math.sqrt(-kappa)
        return (num / (4.0 * mk)) * math.atanh(mk * math.sqrt(ratio)) + steep
    sk = math.sqrt(kappa)
    return (num / (4.0 * sk)) * math.atan(sk * math.sqrt(ratio)) + steep


def dE_dc_closed(params: Params) -> float:
    """Energy slope in c, via the group-velocity relation E' = c p'."""
    return params.c * dp_dc_closed(params)


# ---------------------------------------------------------------------------
# quadrature route


def _check_grid(xs: np.ndarray) -> None:
    if xs.ndim != 1 or xs.size < 5:
        raise GridError("profile grid must be 1-D with at least 5 samples")
    if not np.all(np.diff(xs) > 0.0):
        raise GridError("profile grid must be strictly increasing")


def _tail_moments(xs: np.ndarray, eta: np.ndarray, sonic: bool):
    """Estimated (T2, T3) = (int eta^2, int eta^3) over x > L.

    Fits the decay of the right-half samples: an exponential rate below
    sonic speed, an inverse-square law with two correction terms at it.
    Compactly supported or underflowed tails give (0, 0).
    """
    L = xs[-1]
    right = xs > 0.0
    xr, er = xs[right], eta[right]
    valid = np.abs(er) > _UNDERFLOW_FLOOR
    if not valid[-min(8, valid.size):].all():
        return 0.0, 0.0     # support ended before the boundary
    n = xr.size
    win = slice(max(0, n - max(10, n // 10)), n)
    xw, ew = xr[win], er[win]
    keep = np.abs(ew) > _UNDERFLOW_FLOOR
    xw, ew = xw[keep], ew[keep]
    if xw.size < 8:
        return 0.0, 0.0
    sign = 1.0 if ew[-1] > 0.0 else -1.0
    if sonic:
        # eta ~ (A + b/x + d/x^2)/x^2; least squares on eta*x^2
        basis = np.column_stack([np.ones_like(xw), 1.0 / xw, 1.0 / xw ** 2])
        coef, *_ = np.linalg.lstsq(basis, ew * xw * xw, rcond=None)
        A, b, d = coef
        T2 = (A * A / (3.0 * L ** 3) + A * b / (2.0 * L ** 4)
              + (b * b + 2.0 * A * d) / (5.0 * L ** 5)
              + b * d / (3.0 * L ** 6) + d * d / (7.0 * L ** 7))
        T3 = A ** 3 / (5.0 * L ** 5) + A * A * b / (2.0 * L ** 6)
        return float(T2), float(T3)
    slope, intercept = np.polyfit(xw, np.log(np.abs(ew)), 1)
    lam = -slope
    if not (lam > 0.0 and math.isfinite(lam)):
        raise QuadratureError("tail fit found a non-decaying profile")
    eL = math.exp(intercept - lam * L)
    T2 = eL * eL / (2.0 * lam)
    T3 = sign * eL ** 3 / (3.0 * lam)
    return T2, T3


def _collar_integral(ts, fs):
    """Integral of f over a collar ending at a root-type kink.

    ``ts`` are distances from the kink (ts[0] = 0), ``fs`` the samples.
    Fits f = f(0) + a t^{2/3} + b t^{4/3} + c t^2, which polynomial
    quadrature cannot resolve, and integrates the fit exactly.
    """
    f0 = fs[0]
    basis = np.column_stack([ts[1:] ** (2.0 / 3.0),
                             ts[1:] ** (4.0 / 3.0), ts[1:] ** 2])
    coef, *_ = np.linalg.lstsq(basis, fs[1:] - f0, rcond=None)
    a, b, cc = coef
    T = ts[-1]
    return (f0 * T + 0.6 * a * T ** (5.0 / 3.0)
            + (3.0 / 7.0) * b * T ** (7.0 / 3.0) + cc * T ** 3 / 3.0)


def _integrate_with_kinks(xs, f, kinks, width=4):
    """Composite quadrature of samples whose derivative blows up at the
    listed kink locations (grid nodes).  Each segment between kinks is
    integrated by simpson away from its kinked ends; a fitted
    fractional-power model covers the collars.
    """
    idx = [0, xs.size - 1]
    on_kink = set()
    for x0 in kinks:
        i0 = int(np.argmin(np.abs(xs - x0)))
        if abs(xs[i0] - x0) <= 1e-12 and 0 < i0 < xs.size - 1:
            idx.append(i0)
            on_kink.add(i0)
    idx = sorted(set(idx))
    total = 0.0
    for i0, i1 in zip(idx[:-1], idx[1:]):
        wl = width if i0 in on_kink else 0
        wr = width if i1 in on_kink else 0
        if i1 - i0 < wl + wr + 2:   # too short to trim; trapezoid honestly
            total += np.trapezoid(f[i0:i1 + 1], xs[i0:i1 + 1])
            continue
        if wl:
            sl = slice(i0, i0 + wl + 1)
            total += _collar_integral(xs[sl] - xs[i0], f[sl])
        if wr:
            sr = slice(i1, i1 - wr - 1, -1)
            total += _collar_integral(xs[i1] - xs[sr], f[sr])
        sm = slice(i0 + wl, i1 - wr + 1)
        total += simpson(f[sm], x=xs[sm])
    return float(total)


def _kink_nodes(profile) -> tuple:
    pts = tuple(profile.singular_points) + tuple(profile.nondiff_points)
    return tuple(sorted(set(pts)))


def energy_quadrature(profile, form: str = "tw") -> float:
    """Grid quadrature of the energy.

    ``form="tw"`` uses the reduced intensity-squared integrand valid on
    traveling-wave solutions; ``form="polar"`` integrates the full
    gradient + kinetic + potential density of a general nonvanishing
    field (derivatives by finite differences).
    """
    xs = np.asarray(profile.xs, dtype=float)
    _check_grid(xs)
    eta = np.asarray(profile.eta, dtype=float)
    params = profile.params
    sonic = params.c == SQRT2
    if form == "tw":
        body = 0.5 * _integrate_with_kinks(xs, eta * eta,
                                           _kink_nodes(profile))
        T2, _ = _tail_moments(xs, eta, sonic)
        return float(body + T2)
    if form != "polar":
        raise ParamError(f"unknown energy form {form!r}")
    rho = 1.0 - eta
    if np.min(rho) < _VANISH_EPS:
        raise VanishingError("polar energy needs a nonvanishing field")
    kappa = params.kappa
    deta = np.gradient(eta, xs)
    dtheta = np.gradient(np.asarray(profile.theta, dtype=float), xs)
    dens = (0.125 * deta * deta * (1.0 - 2.0 * kappa + 2.0 * kappa * eta)
            / rho + 0.5 * rho * dtheta * dtheta + 0.25 * eta * eta)
    body = simpson(dens, x=xs)
    T2, _ = _tail_moments(xs, eta, sonic)
    # tail: gradient and kinetic pieces decay twice as fast; keep the
    # potential piece plus the same-order kinetic one
    c = params.c
    return float(body + 0.25 * 2.0 * T2 + (c * c / 8.0) * 2.0 * T2)


def momentum_quadrature(profile) -> float:
    """Grid quadrature of the momentum (c/4) int eta^2/(1-eta)."""
    params = profile.params
    if params.c <= 0.0:
        raise ParamError("momentum is defined for c > 0 only")
    xs = np.asarray(profile.xs, dtype=float)
    _check_grid(xs)
    eta = np.asarray(profile.eta, dtype=float)
    if np.min(1.0 - eta) < _VANISH_EPS:
        raise VanishingError("momentum quadrature needs a nonvanishing wave")
    integrand = eta * eta / (1.0 - eta)
    c = params.c
    body = 0.25 * c * _integrate_with_kinks(xs, integrand,
                                            _kink_nodes(profile))
    T2, T3 = _tail_moments(xs, eta, params.c == SQRT2)
    # 1/(1-eta) ~ 1 + eta in the tail
    return float(body + 0.5 * c * (T2 + T3))


# ---------------------------------------------------------------------------
# bundles


def observables_closed(params: Params, kind: str = "soliton") -> Observables:
    """Closed-form Observables for a soliton or cuspon at ``params``."""
    if kind == "soliton":
        e = energy_closed(params)
        p = momentum_closed(params) if params.c > 0.0 else None
        de = dE_dc_closed(params)
        dp = dp_dc_closed(params)
    elif kind == "cuspon":
        e = cuspon_energy_closed(params)
        p = cuspon_momentum_closed(params) if params.c > 0.0 else None
        de = dp = None      # no closed derivative formulas for cuspons
    else:
        raise ParamError(f"unknown kind {kind!r} for closed observables")
    return Observables(e, p, de, dp, Method.CLOSED_FORM)


def observables_quadrature(profile) -> Observables:
    """Quadrature Observables of a sampled profile.

    Derivative slots come from the closed formulas when the parameters
    admit them (there is no grid route for the c-derivatives).
    """
    e = energy_quadrature(profile)
    params = profile.params
    p = momentum_quadrature(profile) if params.c > 0.0 else None
    try:
        dp = dp_dc_closed(params)
        de = params.c * dp
    except (RegionError, ParamError):
        de = dp = None
    return Observables(e, p, de, dp, Method.QUADRATURE)
