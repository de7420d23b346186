"""Sampled traveling-wave profiles.

Smooth solitons are produced by inverting the implicit closed forms,
cuspons by the same inversion on the singular families, compactons from
their explicit trigonometric formula, and composite waves by gluing a
numerically inverted central bubble to cuspon or constant tails.  The
module also provides finite-difference residual checks of the profile
ODEs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline, PchipInterpolator

from .closedforms import (
    ImplicitFamily,
    eval_implicit,
    eval_implicit_deriv,
    family_for_cuspon,
    family_for_soliton,
)
from .errors import (
    DomainError,
    GridError,
    InadmissibleError,
    ParamError,
    QuadratureError,
    RegionError,
)
from .regions import (
    COMPOSITE_REGIONS,
    SQRT2,
    Params,
    Region,
    WaveKind,
    classify,
)

__all__ = [
    "WaveProfile",
    "CompositeSpec",
    "make_grid",
    "soliton_eta",
    "soliton_phase",
    "black_soliton",
    "cuspon_eta",
    "compacton",
    "composite_spec",
    "composite_profile",
    "multi_bubble_profile",
    "soliton_profile",
    "cuspon_profile",
    "compacton_profile",
    "residual_first_integral",
    "residual_second_order",
]

_TINY = 1e-310          # below this |eta| underflows; inverter returns 0.0
_BISECT_ITERS = 60
_NEWTON_ITERS = 6


@dataclass(frozen=True)
class WaveProfile:
    """A sampled traveling-wave profile on a fixed grid.

    ``eta`` is 1 - |u|^2, ``theta`` the phase where the modulus is
    positive (0 or pi on real-valued waves).  ``singular_points`` lists
    the points where |u|^2 equals the critical value 1/(2 kappa) (for
    compactons, the isolated part of that set; the constant exterior is
    implied by the kind).  ``nondiff_points`` are the kinks of u,
    ``extrema`` the local extrema of eta away from singular points.
    ``c2_breakpoints`` mark jumps of eta'' (compacton support edges).
    Instances are immutable; arrays are marked read-only.
    """

    params: Params
    kind: WaveKind
    xs: np.ndarray
    eta: np.ndarray
    theta: np.ndarray
    u_re: np.ndarray
    u_im: np.ndarray
    singular_points: tuple = ()
    nondiff_points: tuple = ()
    extrema: tuple = ()
    composite: "CompositeSpec | None" = None
    c2_breakpoints: tuple = ()

    def __post_init__(self):
        for name in ("xs", "eta", "theta", "u_re", "u_im"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def u(self) -> np.ndarray:
        return self.u_re + 1j * self.u_im


@dataclass(frozen=True)
class CompositeSpec:
    """Data of a single central bubble used to build composite waves.

    ``eta0`` is the extremum of eta at the bubble center, ``K0`` the
    squared modulus of u' there, ``b0`` the half-width (distance from
    center to the flanking singular points) and ``poly`` the
    coefficients (a2, a1, a0) of the quadratic that controls
    admissibility of the bubble.
    """

    params: Params
    eta0: float
    K0: float
    b0: float
    poly: tuple
    admissible: bool

    def P(self, y):
        a2, a1, a0 = self.poly
        return (a2 * y + a1) * y + a0

    def dP(self, y):
        a2, a1, _ = self.poly
        return 2.0 * a2 * y + a1


def make_grid(L: float, h: float, include=()) -> np.ndarray:
    """Uniform symmetric grid of spacing h on [-L, L], extra nodes inserted.

    Points from ``include`` inside the span are added as exact nodes so
    one-sided behavior at special points is representable.
    """
    if not (math.isfinite(L) and math.isfinite(h) and L > 0.0 and h > 0.0):
        raise GridError(f"need finite L > 0 and h > 0, got L={L}, h={h}")
    if h > L:
        raise GridError(f"spacing h={h} exceeds half-width L={L}")
    n = int(round(L / h))
    xs = h * np.arange(-n, n + 1)
    extra = [p for p in include
             if abs(p) <= xs[-1] and np.min(np.abs(xs - p)) > 1e-12]
    if extra:
        xs = np.sort(np.concatenate([xs, np.asarray(extra, dtype=float)]))
    return xs


# ---------------------------------------------------------------------------
# monotone inversion of the implicit families


def _invert_monotone(fam: ImplicitFamily, targets: np.ndarray) -> np.ndarray:
    """Solve eval_implicit(fam, y) = t for each nonnegative target t.

    The map is strictly monotone in |y| and diverges as y -> 0, so we
    bisect on log|y| over the whole domain, then polish with Newton
    steps using the analytic derivative.  Targets beyond the point
    where |y| underflows resolve to exactly 0.0, and t = 0 returns the
    stored center endpoint exactly.
    """
    t = np.asarray(targets, dtype=float)
    if np.any(t < 0.0) or not np.all(np.isfinite(t)):
        raise DomainError("targets must be finite and nonnegative")
    ze = fam.domain_hi if fam.domain_hi != 0.0 else fam.domain_lo
    sgn = 1.0 if ze > 0.0 else -1.0
    m_hi = abs(ze)
    # largest |y| used by Newton: one ulp inside the closed endpoint,
    # where the derivative is still finite
    m_cap = np.nextafter(m_hi, 0.0)

    lo = np.full(t.shape, math.log(_TINY))
    hi = np.full(t.shape, math.log(m_hi))
    f_deep = eval_implicit(fam, sgn * _TINY)
    underflow = t >= f_deep

    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        fm = eval_implicit(fam, sgn * np.minimum(np.exp(mid), m_hi))
        bigger = fm > t          # need larger |y| to shrink the map value
        lo = np.where(bigger, mid, lo)
        hi = np.where(bigger, hi, mid)

    m = np.minimum(np.exp(0.5 * (lo + hi)), m_cap)
    for _ in range(_NEWTON_ITERS):
        y = sgn * m
        resid = eval_implicit(fam, y) - t
        with np.errstate(invalid="ignore"):
            dy = resid / eval_implicit_deriv(fam, y)
        m = np.clip(np.abs(y - np.where(np.isfinite(dy), dy, 0.0)), _TINY, m_cap)

    out = sgn * m
    out = np.where(underflow, 0.0, out)
    out = np.where(t == 0.0, ze, out)
    return out


def _region_of(params: Params) -> Region:
    return classify(params)


def soliton_eta(params: Params, x):
    """Intensity deficit eta(x) of the smooth soliton, even in x.

    Inverts the soliton implicit family at |x|; eta(0) is exactly
    1 - c^2/2.  Vectorized; scalar in, scalar out.
    """
    fam = family_for_soliton(params)
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    out = _invert_monotone(fam, np.abs(np.atleast_1d(x_arr)))
    return float(out[0]) if scalar else out


def cuspon_eta(params: Params, x):
    """Intensity deficit of the cuspon normalized to a single cusp at 0.

    eta(0) is exactly 1 - 1/(2 kappa); one-sided slopes at 0 diverge.
    """
    fam = family_for_cuspon(params)
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    out = _invert_monotone(fam, np.abs(np.atleast_1d(x_arr)))
    return float(out[0]) if scalar else out


def soliton_phase(params: Params, x):
    """Phase theta(x) of the smooth soliton by adaptive quadrature.

    Integrates (c/2) eta / (1 - eta) from 0; odd in x.  Requires c > 0
    (at c = 0 the wave is real and carries no smooth phase).
    """
    fam = family_for_soliton(params)
    if params.c <= 0.0:
        raise RegionError("phase quadrature needs c > 0; black solitons are real")
    c = params.c

    def integrand(yy):
        e = _invert_monotone(fam, np.atleast_1d(abs(yy)))[0]
        return 0.5 * c * e / (1.0 - e)

    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    vals = []
    for xv in np.atleast_1d(x_arr):
        v, err = quad(integrand, 0.0, float(xv), epsabs=1e-12, epsrel=1e-11,
                      limit=200)
        if err > 1e-8 * max(1.0, abs(v)):
            raise QuadratureError(f"phase quadrature error {err} at x={xv}")
        vals.append(v)
    out = np.asarray(vals)
    return float(out[0]) if scalar else out


def black_soliton(kappa: float, x):
    """The real odd standing wave u(x) at c = 0, kappa < 1/2.

    u = sign(x) sqrt(1 - eta); tends to +-1 and vanishes at 0.  At
    kappa = 0 it is tanh(x / sqrt(2)).
    """
    params = Params(0.0, float(kappa))
    region = _region_of(params)
    if region not in (Region.D1, Region.D2):
        raise RegionError(f"black soliton needs kappa < 1/2, got {kappa}")
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    eta = soliton_eta(params, np.abs(np.atleast_1d(x_arr)))
    u = np.sign(np.atleast_1d(x_arr)) * np.sqrt(np.maximum(1.0 - eta, 0.0))
    return float(u[0]) if scalar else u


# ---------------------------------------------------------------------------
# compactons (kappa = 1/2)


def _compacton_check(c: float, j: int) -> float:
    if not (isinstance(j, (int, np.integer)) and j >= 1 and j % 2 == 1):
        raise ParamError(f"compacton index must be an odd positive integer, got {j}")
    c = float(c)
    if not (math.isfinite(c) and c >= 0.0):
        raise ParamError(f"speed must be finite and nonnegative, got {c}")
    if abs(c - SQRT2) < 1e-12:
        raise ParamError("compactons do not exist at the sonic speed")
    return c


def _compacton_fields(c: float, j: int, x: np.ndarray):
    """eta and theta of the compacton; constant modulus one outside."""
    edge = j * math.pi / SQRT2
    inside = np.abs(x) < edge
    eta = np.where(inside, 0.5 * (2.0 - c * c) * np.cos(x / SQRT2) ** 2, 0.0)
    if c == 0.0:
        u = np.where(inside, np.sin(x / SQRT2), 0.0)
        bdry = math.sin(j * math.pi / 2.0)        # +-1, j odd
        u = np.where(x >= edge, bdry, u)
        u = np.where(x <= -edge, -bdry, u)
        theta = np.where(u < 0.0, math.pi, 0.0)
        return eta, theta
    k = np.floor(x / (SQRT2 * math.pi))
    with np.errstate(divide="ignore"):
        cotw = c / (SQRT2 * np.tan(x / SQRT2))
    theta_in = 0.5 * math.pi + k * math.pi - 0.5 * c * x - np.arctan(cotw)
    # boundary limit: the arctangent vanishes at the edges (j odd)
    theta_b = 0.5 * math.pi + 0.5 * (j - 1) * math.pi - 0.5 * c * edge
    theta = np.where(inside, theta_in, np.where(x >= edge, theta_b, -theta_b))
    return eta, theta


def compacton(c: float, j: int, x):
    """Compactly supported wave at critical dispersion, as a complex field.

    Explicit on the support (-j pi/sqrt2, j pi/sqrt2), j odd; extended
    by the constant boundary value of modulus one outside.
    """
    c = _compacton_check(c, j)
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    xv = np.atleast_1d(x_arr)
    eta, theta = _compacton_fields(c, j, xv)
    u = np.sqrt(np.maximum(1.0 - eta, 0.0)) * np.exp(1j * theta)
    return complex(u[0]) if scalar else u


# ---------------------------------------------------------------------------
# composite bubbles


def _bubble_halves(params: Params, eta0: float, poly):
    """Substitution data for the two halves of the bubble integral.

    Returns (t1, f1, t2, f2): integrand f1(t) covers the center half via
    s = eta0 + sigma t^2, f2(t) the gluing half via s = yT - sigma t^2.
    Both integrands are smooth; the square-root endpoint singularity of
    the s-integral is absorbed by the substitutions.
    """
    c, kappa = params.c, params.kappa
    yT = 1.0 - 1.0 / (2.0 * kappa)
    a2, a1, a0 = poly

    def P(s):
        return (a2 * s + a1) * s + a0

    def q(s):
        return 2.0 * kappa * (s - yT)

    sigma = 1.0 if yT > eta0 else -1.0
    mid = 0.5 * (eta0 + yT)
    t1 = math.sqrt(abs(mid - eta0))
    t2 = math.sqrt(abs(yT - mid))

    def f_center(tt):
        s = eta0 + sigma * tt * tt
        return 2.0 * np.sqrt(np.abs(q(s)) / np.abs(P(s)))

    # Value at t = 0, where the formula below is 0/0 whenever P(yT) = 0.
    # Regular or simply tangent P gives limit 0; a double root at yT
    # (quadratic with leading coefficient -2, so P = -2 (s - yT)^2)
    # cancels the t^2 and leaves a positive constant.
    p_yT = P(yT)
    dp_yT = 2.0 * a2 * yT + a1
    if p_yT == 0.0 and dp_yT == 0.0:
        lim0 = 2.0 * math.sqrt(kappa / abs(yT - eta0))
    else:
        lim0 = 0.0

    def f_glue(tt):
        tt_arr = np.asarray(tt, dtype=float)
        s = yT - sigma * tt_arr * tt_arr
        den = np.abs(s - eta0) * np.abs(P(s))
        with np.errstate(invalid="ignore", divide="ignore"):
            val = 2.0 * math.sqrt(2.0 * kappa) * tt_arr * tt_arr / np.sqrt(den)
        val = np.where(tt_arr == 0.0, lim0, val)
        return float(val) if np.ndim(tt) == 0 else val

    return t1, f_center, t2, f_glue


def composite_spec(params: Params, eta0: float, K0: float | None = None,
                   strict: bool = True) -> CompositeSpec:
    """Admissibility data and half-width of a central bubble.

    ``eta0`` is the extremum value at the bubble center.  K0 is derived
    from (c, eta0) unless eta0 = 1, the standing black-type bubble,
    where it must be supplied.  With ``strict`` an inadmissible bubble
    raises; otherwise the spec is returned with ``admissible=False``
    and no half-width.
    """
    region = _region_of(params)
    if region not in COMPOSITE_REGIONS:
        raise RegionError(f"no composite waves in {region.name}")
    c, kappa = params.c, params.kappa
    eta0 = float(eta0)
    if not math.isfinite(eta0) or eta0 > 1.0:
        raise ParamError(f"bubble extremum must be finite and <= 1, got {eta0}")
    yT = 1.0 - 1.0 / (2.0 * kappa)
    if eta0 == yT:
        raise ParamError("bubble extremum coincides with the singular level")
    if eta0 == 1.0:
        if c != 0.0:
            raise ParamError("an extremum at 1 forces a standing wave (c = 0)")
        if K0 is None:
            raise ParamError("supply K0 for the standing black-type bubble")
        K0 = float(K0)
        if not (math.isfinite(K0) and K0 >= 0.0):
            raise ParamError(f"K0 must be finite and nonnegative, got {K0}")
    else:
        if K0 is not None:
            raise ParamError("K0 is determined by (c, eta0) when eta0 < 1")
        K0 = (c * eta0) ** 2 / (4.0 - 4.0 * eta0)

    poly = (-2.0, 2.0 - c * c - 2.0 * eta0, (2.0 - c * c) * eta0 - 4.0 * K0)

    def P(y):
        return (poly[0] * y + poly[1]) * y + poly[2]

    # The constant coefficient is a difference of like-sized terms, so a
    # tangency P(yT) = 0 (the compacton coincidence) lands a few ulp off
    # exact zero.  Snap it: downstream integrands branch on exact zeros.
    cancel_scale = (2.0 * yT * yT + abs(poly[1] * yT)
                    + abs((2.0 - c * c) * eta0) + abs(4.0 * K0))
    if 0.0 < abs(P(yT)) <= 16.0 * np.finfo(float).eps * cancel_scale:
        poly = (poly[0], poly[1], poly[2] - P(yT))

    # concave quadratic: negative on the interval iff negative at the
    # center end, nonpositive at the (excluded) gluing end, and negative
    # at the vertex when the vertex lies strictly inside
    lo, hi = min(eta0, yT), max(eta0, yT)
    vertex = poly[1] / 4.0
    admissible = P(eta0) < 0.0 and P(yT) <= 0.0
    if admissible and lo < vertex < hi:
        admissible = P(vertex) < 0.0
    if not admissible:
        if strict:
            raise InadmissibleError(
                f"bubble polynomial changes sign on [{eta0}, {yT}): "
                f"P(eta0)={P(eta0):.6g}, P(yT)={P(yT):.6g}")
        return CompositeSpec(params, eta0, K0, math.nan, poly, False)

    t1, f_center, t2, f_glue = _bubble_halves(params, eta0, poly)
    b0 = 0.0
    for tmax, fn in ((t1, f_center), (t2, f_glue)):
        v, err = quad(fn, 0.0, tmax, epsabs=1e-13, epsrel=1e-12, limit=200)
        if err > 1e-9 * max(1.0, abs(v)):
            raise QuadratureError(f"bubble width quadrature error {err}")
        b0 += v
    return CompositeSpec(params, eta0, K0, b0, poly, True)


def _bubble_interpolant(spec: CompositeSpec, n_half: int = 4001):
    """Monotone interpolant x -> eta on [0, b0] of the bubble branch.

    Built from dense cumulative integration in the substituted variable
    on both halves, so nodes cluster at the center and at the cusp.
    Endpoints are exact: eta(0) = eta0, eta(b0) = 1 - 1/(2 kappa).
    """
    params, eta0 = spec.params, spec.eta0
    kappa = params.kappa
    yT = 1.0 - 1.0 / (2.0 * kappa)
    t1, f_center, t2, f_glue = _bubble_halves(params, eta0, spec.poly)
    sigma = 1.0 if yT > eta0 else -1.0

    def cumulative(fn, tmax):
        tt = np.linspace(0.0, tmax, n_half)
        ft = fn(tt)
        dx = np.empty(n_half)
        dx[0] = 0.0
        # Simpson on each pair of panels via local quadratic through
        # three consecutive nodes; accumulate panel by panel
        hstep = tt[1] - tt[0]
        mids = fn(tt[:-1] + 0.5 * hstep)
        dx[1:] = hstep * (ft[:-1] + 4.0 * mids + ft[1:]) / 6.0
        return tt, np.cumsum(dx)

    tt1, xc = cumulative(f_center, t1)
    tt2, xg = cumulative(f_glue, t2)
    s_c = eta0 + sigma * tt1 * tt1
    s_g = yT - sigma * tt2 * tt2
    b0 = xc[-1] + xg[-1]
    # reversed glue half duplicates the midpoint node; drop that copy
    # and keep the true endpoint (b0, yT)
    x_all = np.concatenate([xc, (b0 - xg[::-1])[1:]])
    s_all = np.concatenate([s_c, s_g[::-1][1:]])
    if math.isfinite(spec.b0) and spec.b0 > 0.0:
        # align with the adaptive-quadrature half-width so the endpoint
        # is exact; the cumulative value agrees to ~1e-12 already
        x_all *= spec.b0 / b0
        b0 = spec.b0
    # strictly increasing x is required by the interpolant
    keep = np.concatenate([[True], np.diff(x_all) > 0.0])
    x_all, s_all = x_all[keep], s_all[keep]
    x_all[-1] = b0
    s_all[-1] = yT
    return PchipInterpolator(x_all, s_all), b0


def _phase_from_eta(xs: np.ndarray, eta: np.ndarray, c: float,
                    splits=()) -> np.ndarray:
    """Cumulative phase: antiderivative of c eta / (2 (1 - eta)).

    Spline antiderivatives are accumulated per smooth segment (segment
    ends at the listed split points), then anchored to 0 at x = 0.
    """
    if c == 0.0:
        return np.zeros_like(xs)
    integrand = 0.5 * c * eta / (1.0 - eta)
    cut = sorted(set(float(s) for s in splits))
    idx = [0]
    for s in cut:
        j = int(np.searchsorted(xs, s))
        if 0 < j < len(xs) - 1 and xs[j] == s:
            idx.append(j)
    idx.append(len(xs) - 1)
    out = np.empty_like(xs)
    out[0] = 0.0
    for a, b in zip(idx[:-1], idx[1:]):
        if b <= a:
            continue
        seg = slice(a, b + 1)
        if b - a >= 3:
            anti = CubicSpline(xs[seg], integrand[seg]).antiderivative()
            out[a:b + 1] = out[a] + anti(xs[seg])
        else:
            # too short for a spline: trapezoid
            acc = np.cumsum(np.diff(xs[seg]) * 0.5
                            * (integrand[seg][1:] + integrand[seg][:-1]))
            out[a + 1:b + 1] = out[a] + acc
    i0 = int(np.searchsorted(xs, 0.0))
    anchor = out[i0] if i0 < len(xs) and xs[i0] == 0.0 else np.interp(0.0, xs, out)
    return out - anchor


def _fold_bubble(interp, b0: float, n: int, x: np.ndarray) -> np.ndarray:
    """Evaluate the n-bubble chain at |x| <= n b0.

    Bubble centers sit at (2k - n + 1) b0; shifting by (n - 1) b0 puts
    them on even multiples of b0, where plain periodic folding applies.
    """
    period = 2.0 * b0
    xs_shift = x + (n - 1.0) * b0
    xi = xs_shift - period * np.round(xs_shift / period)
    return interp(np.minimum(np.abs(xi), b0))


def composite_profile(spec: CompositeSpec, xs: np.ndarray) -> WaveProfile:
    """Single-bubble composite wave sampled on the given grid.

    Central bubble on (-b0, b0), cuspon tails translated to the gluing
    points (constants of modulus one instead when kappa = 1/2).
    """
    return multi_bubble_profile(spec, 1, xs)


def multi_bubble_profile(spec: CompositeSpec, n: int, xs: np.ndarray) -> WaveProfile:
    """Chain of n identical bubbles glued at their singular points.

    Bubble centers sit at (2k - n + 1) b0 for k = 0..n-1; the chain is
    extended by cuspon tails (or modulus-one constants at critical
    dispersion).  n = 1 is the plain composite wave.
    """
    if not spec.admissible:
        raise InadmissibleError("bubble spec is not admissible")
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ParamError(f"bubble count must be a positive integer, got {n}")
    params = spec.params
    c, kappa = params.c, params.kappa
    region = _region_of(params)
    yT = 1.0 - 1.0 / (2.0 * kappa)
    interp, b0 = _bubble_interpolant(spec)
    # prefer the quadrature value: the cumulative one agrees to ~1e-12
    b0 = spec.b0
    half_span = n * b0
    xs = np.asarray(xs, dtype=float)

    inside = np.abs(xs) <= half_span
    eta = np.empty_like(xs)
    eta[inside] = _fold_bubble(interp, b0, n, xs[inside])
    out_mask = ~inside
    if region is Region.C:
        eta[out_mask] = 0.0
    else:
        fam = family_for_cuspon(params)
        eta[out_mask] = _invert_monotone(fam, np.abs(xs[out_mask]) - half_span)

    cusps = tuple((2.0 * k - n) * b0 for k in range(n + 1))
    centers = tuple((2.0 * k - n + 1.0) * b0 for k in range(n))
    theta = _phase_from_eta(xs, eta, c, splits=cusps)
    mod = np.sqrt(np.maximum(1.0 - eta, 0.0))
    if c == 0.0 and spec.eta0 == 1.0:
        # standing black-type chain: the field changes sign at each center
        count = np.sum(xs[:, None] < np.asarray(centers)[None, :], axis=1)
        sgn = np.where(count % 2 == 0, 1.0, -1.0)
        u_re, u_im = sgn * mod, np.zeros_like(xs)
        theta = np.where(u_re < 0.0, math.pi, 0.0)
    else:
        u_re, u_im = mod * np.cos(theta), mod * np.sin(theta)

    return WaveProfile(
        params=params, kind=WaveKind.CompositeWave, xs=xs, eta=eta,
        theta=theta, u_re=u_re, u_im=u_im,
        singular_points=cusps, nondiff_points=cusps, extrema=centers,
        composite=spec)


# ---------------------------------------------------------------------------
# profile builders on uniform grids


def soliton_profile(params: Params, L: float, h: float) -> WaveProfile:
    """Smooth soliton (dark, antidark, or black at c = 0) on [-L, L]."""
    region = _region_of(params)
    xs = make_grid(L, h)
    eta = soliton_eta(params, xs)
    if params.c == 0.0:
        u_re = np.sign(xs) * np.sqrt(np.maximum(1.0 - eta, 0.0))
        u_im = np.zeros_like(xs)
        theta = np.where(u_re < 0.0, math.pi, 0.0)
        kind = WaveKind.BlackSoliton
    else:
        theta = _phase_from_eta(xs, eta, params.c)
        mod = np.sqrt(np.maximum(1.0 - eta, 0.0))
        u_re, u_im = mod * np.cos(theta), mod * np.sin(theta)
        kind = WaveKind.AntidarkSoliton if region is Region.D3 else WaveKind.DarkSoliton
    return WaveProfile(params=params, kind=kind, xs=xs, eta=eta, theta=theta,
                       u_re=u_re, u_im=u_im, extrema=(0.0,))


def cuspon_profile(params: Params, L: float, h: float) -> WaveProfile:
    """Cuspon with its single cusp at the origin, on [-L, L]."""
    region = _region_of(params)
    xs = make_grid(L, h)
    eta = cuspon_eta(params, xs)
    theta = _phase_from_eta(xs, eta, params.c, splits=(0.0,))
    mod = np.sqrt(np.maximum(1.0 - eta, 0.0))
    u_re, u_im = mod * np.cos(theta), mod * np.sin(theta)
    if params.c == 0.0:
        u_re, u_im = mod, np.zeros_like(xs)
        theta = np.zeros_like(xs)
    kind = (WaveKind.AntidarkCuspon
            if region in (Region.D1, Region.BMinus) else WaveKind.DarkCuspon)
    return WaveProfile(params=params, kind=kind, xs=xs, eta=eta, theta=theta,
                       u_re=u_re, u_im=u_im,
                       singular_points=(0.0,), nondiff_points=(0.0,))


def compacton_profile(c: float, j: int, L: float, h: float) -> WaveProfile:
    """Compacton profile; support edges and tangency points become nodes."""
    c = _compacton_check(c, j)
    edge = j * math.pi / SQRT2
    tangent = [SQRT2 * math.pi * (k + 0.5)
               for k in range(-(j + 1) // 2, (j + 1) // 2)
               if abs(SQRT2 * math.pi * (k + 0.5)) < edge]
    ladder = [SQRT2 * math.pi * k for k in range(-(j - 1) // 2, (j + 1) // 2)
              if abs(SQRT2 * math.pi * k) < edge]
    xs = make_grid(L, h, include=[-edge, edge] + tangent + ladder)
    eta, theta = _compacton_fields(c, j, xs)
    mod = np.sqrt(np.maximum(1.0 - eta, 0.0))
    u_re, u_im = mod * np.cos(theta), mod * np.sin(theta)
    params = Params(c, 0.5)
    singular = tuple(sorted([-edge, edge] + tangent))
    extrema = tuple(sorted(ladder))
    return WaveProfile(params=params, kind=WaveKind.Compacton, xs=xs, eta=eta,
                       theta=theta, u_re=u_re, u_im=u_im,
                       singular_points=singular, nondiff_points=(),
                       extrema=extrema, c2_breakpoints=(-edge, edge))


# ---------------------------------------------------------------------------
# finite-difference residuals


def _protect_mask(profile: WaveProfile, radius_h: float) -> np.ndarray:
    """True at samples safe for stencils: away from special points and ends."""
    xs = profile.xs
    h = float(np.median(np.diff(xs)))
    ok = np.ones(xs.shape, dtype=bool)
    ok[:2] = ok[-2:] = False
    special = list(profile.singular_points) + list(profile.nondiff_points)
    for p in special:
        ok &= np.abs(xs - p) > radius_h * h
    for p in profile.c2_breakpoints:
        ok &= np.abs(xs - p) > 2.5 * h
    return ok


def _uniform_triples(xs: np.ndarray) -> np.ndarray:
    """True where both neighbor spacings match (valid central stencil)."""
    ok = np.zeros(xs.shape, dtype=bool)
    d = np.diff(xs)
    ok[1:-1] = np.abs(d[1:] - d[:-1]) < 1e-12 * np.maximum(d[1:], d[:-1])
    return ok


def residual_first_integral(profile: WaveProfile) -> float:
    """Max deviation from the first-order profile ODE, central differences.

    Composite bubbles are checked against their shifted first integral;
    everything else against the zero-constant form.
    """
    xs, eta = profile.xs, profile.eta
    c, kappa = profile.params.c, profile.params.kappa
    mask = _protect_mask(profile, 5.0) & _uniform_triples(xs)
    if not np.any(mask):
        return 0.0
    d_eta = np.zeros_like(eta)
    d_eta[1:-1] = (eta[2:] - eta[:-2]) / (xs[2:] - xs[:-2])
    lhs = (1.0 - 2.0 * kappa + 2.0 * kappa * eta) * d_eta ** 2
    rhs = eta ** 2 * (2.0 - c * c - 2.0 * eta)
    if profile.composite is not None:
        spec = profile.composite
        half_span = np.max(np.abs(np.asarray(profile.singular_points)))
        on_bubble = np.abs(xs) < half_span
        rhs = np.where(on_bubble,
                       (eta - spec.eta0) * spec.P(eta), rhs)
    return float(np.max(np.abs(lhs - rhs)[mask]))


def residual_second_order(profile: WaveProfile) -> float:
    """Max deviation from the second-order profile ODE."""
    xs, eta = profile.xs, profile.eta
    c, kappa = profile.params.c, profile.params.kappa
    mask = _protect_mask(profile, 5.0) & _uniform_triples(xs)
    if not np.any(mask):
        return 0.0
    d1 = np.zeros_like(eta)
    d2 = np.zeros_like(eta)
    d1[1:-1] = (eta[2:] - eta[:-2]) / (xs[2:] - xs[:-2])
    hloc = np.ones_like(eta)
    hloc[1:-1] = 0.5 * (xs[2:] - xs[:-2])
    d2[1:-1] = (eta[2:] - 2.0 * eta[1:-1] + eta[:-2]) / hloc[1:-1] ** 2
    lhs = (1.0 - 2.0 * kappa + 2.0 * kappa * eta) * d2 + kappa * d1 ** 2
    rhs = -3.0 * eta ** 2 + (2.0 - c * c) * eta
    if profile.composite is not None:
        spec = profile.composite
        half_span = np.max(np.abs(np.asarray(profile.singular_points)))
        on_bubble = np.abs(xs) < half_span
        rhs = np.where(on_bubble,
                       0.5 * (spec.P(eta) + (eta - spec.eta0) * spec.dP(eta)),
                       rhs)
    return float(np.max(np.abs(lhs - rhs)[mask]))
