"""Closed-form implicit profiles, antiderivatives, and threshold functions.

Every traveling-wave intensity profile of the model is the inverse of an
explicit strictly monotone map y -> x built from one arctangent and one
(inverse) hyperbolic term.  This module evaluates those maps and their
derivatives in a numerically stable way, provides the antiderivatives
that generate the energy and momentum closed forms, the zero-speed
momentum-slope function w used to locate the critical dispersion, and
the implicit profile of the companion focusing bright soliton.

Stability notes, used throughout:

* the radicand factors are computed in pivot form, r(y) = 2 - c^2 - 2y
  as (2 - c^2) - 2y with 2 - c^2 forced to exactly 0 at the sonic speed,
  and q(y) = 1 - 2k + 2ky as 2k (y - yT) with yT = 1 - 1/(2k), so both
  vanish exactly at the stored domain endpoints;
* atanh(sqrt(A/B)) with A/B -> 1 is evaluated as
  log(sqrt(A) + sqrt(B)) - 0.5 log(B - A), with B - A expanded in closed
  form (it collapses to +-2y (1 - k c^2)), which keeps full precision
  down to y = 1e-300 where the naive ratio loses every digit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, ParamError, RegionError
from .regions import Params, Region, SQRT2, classify

_QUARTER_PI = math.pi / 4.0


class Family(Enum):
    """Tags for the seven implicit intensity maps.

    F, G, H invert to the smooth soliton dips (moderate positive
    dispersion, nonpositive dispersion, supersonic strong dispersion).
    f, h invert to the cuspon deviations in the same two traveling
    regimes, g and gTilde to the sonic-speed cuspons with algebraic
    tails.  The single-letter tags are the public contract; use
    family_for_soliton / family_for_cuspon to pick one from parameters.
    """

    F = "F"
    G = "G"
    H = "H"
    f = "f"
    g = "g"
    gTilde = "gTilde"
    h = "h"


#: region each family is defined in
_FAMILY_REGION: dict[Family, Region] = {
    Family.F: Region.D1,
    Family.G: Region.D2,
    Family.H: Region.D3,
    Family.f: Region.D1,
    Family.g: Region.BMinus,
    Family.gTilde: Region.BPlus,
    Family.h: Region.D3,
}

#: families whose argument lives on the soliton interval (0 or yF side)
_SOLITON_FAMILIES = frozenset({Family.F, Family.G, Family.H})


@dataclass(frozen=True)
class ImplicitFamily:
    """One implicit map together with its parameters and domain.

    domain_lo/domain_hi bound the argument; exactly one endpoint carries
    the value 0 (the profile center), the approach to the other (always
    y -> 0) diverges to +infinity (the spatial tail).
    """

    family: Family
    params: Params
    domain_lo: float
    domain_hi: float


def _cc2(c: float) -> float:
    # 2 - c^2, exactly zero at the stored sonic speed
    if c == SQRT2:
        return 0.0
    return 2.0 - c * c


def implicit_family(family: Family, params: Params) -> ImplicitFamily:
    """Validate the (family, params) pairing and compute the domain."""
    region = classify(params)
    want = _FAMILY_REGION[family]
    if region is not want:
        raise RegionError(
            f"family {family.value} needs region {want.value}, "
            f"got {region.value} for c={params.c} kappa={params.kappa}")
    c, k = params.c, params.kappa
    if family in _SOLITON_FAMILIES:
        y_f = _cc2(c) / 2.0          # value at the profile center
        if family is Family.H:
            lo, hi = y_f, 0.0        # [1 - c^2/2, 0), negative interval
        else:
            lo, hi = 0.0, y_f        # (0, 1 - c^2/2]
    else:
        y_t = 1.0 - 1.0 / (2.0 * k)  # cusp value, sign depends on side
        if family in (Family.f, Family.g):
            lo, hi = y_t, 0.0        # [1 - 1/(2k), 0), negative interval
        else:
            lo, hi = 0.0, y_t        # (0, 1 - 1/(2k)]
    return ImplicitFamily(family, params, lo, hi)


def family_for_soliton(params: Params) -> ImplicitFamily:
    region = classify(params)
    table = {Region.D1: Family.F, Region.D2: Family.G, Region.D3: Family.H}
    if region not in table:
        raise RegionError(f"no smooth soliton in region {region.value}")
    return implicit_family(table[region], params)


def family_for_cuspon(params: Params) -> ImplicitFamily:
    region = classify(params)
    table = {Region.D1: Family.f, Region.D3: Family.h,
             Region.BMinus: Family.g, Region.BPlus: Family.gTilde}
    if region not in table:
        raise RegionError(f"no cuspon in region {region.value}")
    return implicit_family(table[region], params)


def _zero_endpoint(fam: ImplicitFamily) -> float:
    """The domain endpoint where the map takes the value 0."""
    if fam.family is Family.H or fam.family in (Family.f, Family.g):
        return fam.domain_lo
    return fam.domain_hi


def _check_domain(fam: ImplicitFamily, y: np.ndarray, closed_zero_end: bool = True) -> None:
    lo, hi = fam.domain_lo, fam.domain_hi
    zero_end = _zero_endpoint(fam)
    # the y -> 0 endpoint is always open; the other is closed unless the
    # caller (the derivative of F/G/H) excludes it too
    ok = (y >= lo) & (y <= hi) & (y != 0.0)
    if not closed_zero_end:
        ok &= y != zero_end
    if not np.all(ok):
        bad = np.asarray(y)[~ok]
        raise DomainError(
            f"argument outside domain of {fam.family.value}: {bad[:4]} "
            f"(domain [{lo}, {hi}], y=0 excluded)")


def _stable_atanh_ratio(a: np.ndarray, b: np.ndarray, bma: np.ndarray) -> np.ndarray:
    """atanh(sqrt(a/b)) given b - a = bma > 0, all inputs nonnegative.

    Exact at a = 0 and fully accurate as a/b -> 1, where the naive form
    has catastrophic cancellation.
    """
    with np.errstate(divide="ignore"):
        return np.log(np.sqrt(a) + np.sqrt(b)) - 0.5 * np.log(bma)


def _ratio_to_inf(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """|num|/|den| with 0 denominators mapped to +inf.

    Used for radicand ratios that are positive by the region sign
    analysis; taking magnitudes only strips a provably matched sign pair.
    """
    num = np.abs(num)
    den = np.abs(den)
    # subnormal denominators may overflow the quotient; inf is the
    # correct limit either way
    with np.errstate(divide="ignore", over="ignore"):
        return np.where(den > 0.0, num / np.where(den > 0.0, den, 1.0), np.inf)


def eval_implicit(fam: ImplicitFamily, y):
    """Evaluate the implicit map x = fam(y).  Vectorized over y.

    Strictly monotone on the domain, nonnegative, exactly 0 at the
    profile-center endpoint, diverging to +inf as y -> 0.
    """
    y_arr = np.asarray(y, dtype=float)
    scalar = y_arr.ndim == 0
    y_arr = np.atleast_1d(y_arr)
    _check_domain(fam, y_arr)

    c, k = fam.params.c, fam.params.kappa
    cc2 = _cc2(c)
    kind = fam.family
    zero_end = _zero_endpoint(fam)

    if kind in (Family.g, Family.gTilde):
        # sonic speed: one arctangent plus an algebraic square root
        y_t = zero_end
        q = 2.0 * k * (y_arr - y_t)
        sk = math.sqrt(k)
        with np.errstate(divide="ignore", invalid="ignore"):
            w1 = _ratio_to_inf(-2.0 * k * y_arr, q)
            alg = np.sqrt(_ratio_to_inf(-q, y_arr))
        val = 2.0 * sk * np.arctan(np.sqrt(w1)) + SQRT2 * alg - math.pi * sk
    else:
        r = cc2 - 2.0 * y_arr
        if k == 0.0:
            q = np.ones_like(y_arr)
        else:
            y_t = 1.0 - 1.0 / (2.0 * k)
            q = 2.0 * k * (y_arr - y_t)
        w = _ratio_to_inf(r, q)
        root_w = np.sqrt(w)
        coef = 2.0 * math.sqrt((1.0 - 2.0 * k) / cc2)
        one_m_kc2 = 1.0 - k * c * c
        if kind in (Family.F, Family.G, Family.H):
            a = np.abs((1.0 - 2.0 * k) * r)
            b = np.abs(cc2 * q)
            bma = 2.0 * y_arr * one_m_kc2          # positive on all three
            hyp = coef * _stable_atanh_ratio(a, b, bma)
            if kind is Family.G:
                sk = math.sqrt(-k) if k < 0.0 else 0.0
                first = -2.0 * sk * np.arctanh(sk * root_w) if k < 0.0 else 0.0
                val = first + hyp
            else:
                sk = math.sqrt(k)
                val = 2.0 * sk * np.arctan(sk * root_w) + hyp
        else:
            # f and h: hyperbolic argument inverted, quarter-turn shift
            a = np.abs(cc2 * q)
            b = np.abs((1.0 - 2.0 * k) * r)
            bma = -2.0 * y_arr * one_m_kc2         # positive on both sides
            hyp = coef * _stable_atanh_ratio(a, b, bma)
            sk = math.sqrt(k)
            val = 2.0 * sk * np.arctan(sk * root_w) + hyp - math.pi * sk

    val = np.where(y_arr == zero_end, 0.0, val)
    return float(val[0]) if scalar else val


def eval_implicit_deriv(fam: ImplicitFamily, y):
    """d/dy of the implicit map: -(1/y) sqrt(q(y)/r(y)).

    Negative for F, G, gTilde, h (positive arguments) and positive for
    H, f, g (negative arguments).  The soliton families exclude the
    profile-center endpoint, where the derivative diverges.
    """
    y_arr = np.asarray(y, dtype=float)
    scalar = y_arr.ndim == 0
    y_arr = np.atleast_1d(y_arr)
    _check_domain(fam, y_arr, closed_zero_end=fam.family not in _SOLITON_FAMILIES)

    c, k = fam.params.c, fam.params.kappa
    cc2 = _cc2(c)
    if k == 0.0:
        q = np.ones_like(y_arr)
    else:
        q = 2.0 * k * (y_arr - (1.0 - 1.0 / (2.0 * k)))
    r = cc2 - 2.0 * y_arr
    val = -(1.0 / y_arr) * np.sqrt(_ratio_to_inf(q, r))
    return float(val[0]) if scalar else val


# ---------------------------------------------------------------------------
# zero-speed momentum slope


def w_of_kappa(kappa):
    """Momentum slope dp/dc at c = 0+ for nonpositive-dispersion solitons.

    Continuous and strictly decreasing on kappa < 0, tends to +inf as
    kappa -> -inf and to -sqrt(2) as kappa -> 0-; its unique zero is the
    critical dispersion separating monotone from folded momentum curves.
    """
    k = np.asarray(kappa, dtype=float)
    scalar = k.ndim == 0
    k = np.atleast_1d(k)
    if np.any(k >= 0.0) or not np.all(np.isfinite(k)):
        raise DomainError("w is defined for kappa < 0 only")
    mk = -k
    arg = np.sqrt(2.0 * mk / (1.0 + 2.0 * mk))
    val = ((4.0 * mk - 1.0) / (4.0 * np.sqrt(mk))) * np.arctanh(arg) \
        - 1.5 * np.sqrt((1.0 + 2.0 * mk) / 2.0)
    return float(val[0]) if scalar else val


# ---------------------------------------------------------------------------
# energy / momentum antiderivatives

_ANTIDERIV_REGIONS = frozenset({Region.D1, Region.D2, Region.D3,
                                Region.BMinus, Region.BPlus})


def _antideriv_variant(region: Region) -> int:
    """1: moderate positive dispersion side, 2: nonpositive, 3: strong."""
    if region in (Region.D1, Region.BMinus):
        return 1
    if region is Region.D2:
        return 2
    if region in (Region.D3, Region.BPlus):
        return 3
    raise RegionError(f"no closed-form antiderivative in region {region.value}")


def _antideriv_pieces(region: Region, params: Params, y):
    """Common radicand pieces, domain-checked for the variant's interval."""
    if region not in _ANTIDERIV_REGIONS:
        raise RegionError(f"no closed-form antiderivative in region {region.value}")
    y_arr = np.atleast_1d(np.asarray(y, dtype=float))
    c, k = params.c, params.kappa
    cc2 = _cc2(c)
    r = cc2 - 2.0 * y_arr
    if k == 0.0:
        q = np.ones_like(y_arr)
    else:
        q = 2.0 * k * (y_arr - (1.0 - 1.0 / (2.0 * k)))
    variant = _antideriv_variant(region)
    if variant == 3:
        ok = (r <= 0.0) & (q <= 0.0)
    else:
        ok = (r >= 0.0) & (q >= 0.0)
    if not np.all(ok):
        raise DomainError(
            f"argument outside the antiderivative interval: {y_arr[~ok][:4]}")
    s = np.sqrt(np.abs(r) * np.abs(q))
    w = _ratio_to_inf(r, q)
    return y_arr, c, k, s, w, variant


def energy_antideriv(region: Region, params: Params, y):
    """Antiderivative of -y sqrt(q(y)/r(y)), the energy density in the
    intensity variable.  Differences across the profile's value interval
    give the closed-form energy; see the observables module.
    """
    y_arr, c, k, s, w, variant = _antideriv_pieces(region, params, y)
    scalar = np.asarray(y, dtype=float).ndim == 0
    c2 = c * c
    big_a = 3.0 * c2 * c2 * k * k - 8.0 * c2 * k * k - 2.0 * c2 * k + 8.0 * k - 1.0
    t = 3.0 * c2 * k - 4.0 * k * y_arr - 4.0 * k - 1.0
    if variant == 2:
        mk = -k
        val = (-1.0 / (16.0 * mk ** 1.5)) * (
            big_a * np.arctanh(np.sqrt(mk * w)) - np.sqrt(mk) * s * t)
    else:
        sk = math.sqrt(k)
        sign = -1.0 if variant == 1 else 1.0
        val = (1.0 / (16.0 * k ** 1.5)) * (
            big_a * np.arctan(sk * np.sqrt(w)) + sign * sk * s * t)
    return float(val[0]) if scalar else val


def momentum_antideriv(region: Region, params: Params, y):
    """Antiderivative of (c/2) (-y/(1-y)) sqrt(q(y)/r(y)), the momentum
    density in the intensity variable.  Requires c > 0.
    """
    if params.c <= 0.0:
        raise ParamError("momentum antiderivative needs c > 0")
    y_arr, c, k, s, w, variant = _antideriv_pieces(region, params, y)
    scalar = np.asarray(y, dtype=float).ndim == 0
    c2 = c * c
    big_c = c2 * k - 4.0 * k - 1.0
    root_w = np.sqrt(w)
    tail = np.arctan(root_w / c)
    if variant == 2:
        mk = math.sqrt(-k)
        val = (c / 4.0) * ((big_c / mk) * np.arctanh(mk * root_w) - s) + tail
    else:
        sk = math.sqrt(k)
        sign = -1.0 if variant == 1 else 1.0
        val = (c / 4.0) * ((big_c / sk) * np.arctan(sk * root_w) + sign * s) + tail
    return float(val[0]) if scalar else val


# ---------------------------------------------------------------------------
# companion focusing bright soliton


def bright_implicit(omega: float, kappa: float, y):
    """Implicit map of the focusing-side bright soliton amplitude.

    Strictly decreasing on (0, sqrt(2 omega)], value 0 at the peak
    amplitude, diverging as y -> 0+.  At kappa = 0 its inverse is the
    classical sqrt(2 omega) sech(sqrt(omega) x).
    """
    if not (omega > 0.0 and math.isfinite(omega)):
        raise ParamError(f"omega must be positive, got {omega}")
    if not (kappa >= 0.0 and math.isfinite(kappa)):
        raise ParamError(f"kappa must be >= 0, got {kappa}")
    y_arr = np.asarray(y, dtype=float)
    scalar = y_arr.ndim == 0
    y_arr = np.atleast_1d(y_arr)
    peak = math.sqrt(2.0 * omega)
    if np.any((y_arr <= 0.0) | (y_arr > peak)):
        raise DomainError(f"amplitude outside (0, {peak}]")
    y2 = y_arr * y_arr
    # y*y can overshoot 2*omega by an ulp at the peak; clamp, a >= 0 there
    a = np.maximum(2.0 * omega - y2, 0.0)
    b = 2.0 * omega * (1.0 + 2.0 * kappa * y2)
    bma = y2 * (1.0 + 4.0 * kappa * omega)      # b - a in closed form
    val = (1.0 / math.sqrt(omega)) * _stable_atanh_ratio(a, b, bma)
    if kappa > 0.0:
        ratio = a / (1.0 + 2.0 * kappa * y2)
        val = val + 2.0 * math.sqrt(kappa) * np.arctan(
            math.sqrt(2.0 * kappa) * np.sqrt(np.maximum(ratio, 0.0)))
    val = np.where(y_arr == peak, 0.0, val)
    return float(val[0]) if scalar else val
