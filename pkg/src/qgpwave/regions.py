"""Parameter-plane classification for the quasilinear defocusing NLS.

The traveling-wave zoo is organized by the wave speed c >= 0 and the
dispersion coefficient kappa.  Two thresholds matter: the sonic speed
sqrt(2) and the critical dispersion 1/2.  Every (c, kappa) pair falls in
exactly one region, and each region carries a fixed inventory of
nontrivial finite-energy waves.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

from .errors import ParamError

SQRT2 = math.sqrt(2.0)

#: Absolute tolerance for snapping near the two critical parameter values.
SNAP_TOL = 1e-12


class Region(Enum):
    """Open regions and boundary lines of the (c, kappa) half plane."""

    D1 = "D1"          # 0 <= c < sqrt2, 0 < kappa < 1/2
    D2 = "D2"          # 0 <= c < sqrt2, kappa <= 0
    D3 = "D3"          # c > sqrt2, kappa > 1/2
    BMinus = "BMinus"  # c = sqrt2, 0 < kappa < 1/2
    BPlus = "BPlus"    # c = sqrt2, kappa > 1/2
    C = "C"            # kappa = 1/2, any c >= 0
    NoWave = "NoWave"  # everywhere else: no nontrivial finite-energy wave


class WaveKind(Enum):
    DarkSoliton = "DarkSoliton"
    AntidarkSoliton = "AntidarkSoliton"
    BlackSoliton = "BlackSoliton"
    DarkCuspon = "DarkCuspon"
    AntidarkCuspon = "AntidarkCuspon"
    Compacton = "Compacton"
    CompositeWave = "CompositeWave"
    Trivial = "Trivial"


@dataclass(frozen=True)
class Params:
    """Wave parameters. c is the speed (>= 0), kappa the dispersion.

    Construct via make_params() to get boundary snapping and negative-c
    conjugation; the bare constructor validates but never rewrites.
    """

    c: float
    kappa: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.c) and math.isfinite(self.kappa)):
            raise ParamError(f"non-finite parameters c={self.c} kappa={self.kappa}")
        if self.c < 0:
            raise ParamError(f"c must be >= 0 (got {self.c}); "
                             "negative speeds are handled by make_params via conjugation")


def make_params(c: float, kappa: float, exact: bool = False) -> Params:
    """Build Params, conjugating c < 0 and snapping near-critical values.

    A wave at speed -c is the complex conjugate of the wave at speed c, so
    negative inputs are folded to |c| with a warning.  Unless exact=True,
    c within 1e-12 of sqrt(2) snaps to sqrt(2) exactly and kappa within
    1e-12 of 1/2 snaps to 1/2 exactly; these are the two comparisons a
    caller cannot be expected to hit bit-for-bit.
    """
    c = float(c)
    kappa = float(kappa)
    if not (math.isfinite(c) and math.isfinite(kappa)):
        raise ParamError(f"non-finite parameters c={c} kappa={kappa}")
    if c < 0:
        warnings.warn("negative speed conjugated to |c|", stacklevel=2)
        c = -c
    if not exact:
        if abs(c - SQRT2) < SNAP_TOL:
            c = SQRT2
        if abs(kappa - 0.5) < SNAP_TOL:
            kappa = 0.5
    return Params(c, kappa)


def classify(p: Params) -> Region:
    """Total classification of a parameter pair into its region.

    The kappa = 1/2 line takes precedence: it is its own regime for every
    speed (compactly supported building blocks), including c = sqrt2.
    """
    c, k = p.c, p.kappa
    if k == 0.5:
        return Region.C
    if c == SQRT2:
        if 0.0 < k < 0.5:
            return Region.BMinus
        if k > 0.5:
            return Region.BPlus
        return Region.NoWave  # kappa <= 0 at the sonic speed
    if c < SQRT2:
        if 0.0 < k < 0.5:
            return Region.D1
        if k <= 0.0:
            return Region.D2
        return Region.NoWave  # kappa > 1/2, subsonic
    # c > sqrt2
    if k > 0.5:
        return Region.D3
    return Region.NoWave


#: Regions where smooth solitons exist.
SOLITON_REGIONS = frozenset({Region.D1, Region.D2, Region.D3})
#: Regions where cuspons exist.
CUSPON_REGIONS = frozenset({Region.D1, Region.D3, Region.BMinus, Region.BPlus})
#: Regions where composite waves exist (D-tilde union the critical line).
COMPOSITE_REGIONS = frozenset({Region.D1, Region.D3, Region.BMinus,
                               Region.BPlus, Region.C})


def wave_inventory(region: Region, c: float | None = None) -> list[WaveKind]:
    """Nontrivial finite-energy traveling waves available in a region.

    The speed refines the two regions whose soliton degenerates at c=0
    into the real odd black soliton; pass c when known.
    """
    dark = WaveKind.DarkSoliton
    if c is not None and c == 0.0:
        dark = WaveKind.BlackSoliton
    table: dict[Region, list[WaveKind]] = {
        Region.D1: [dark, WaveKind.AntidarkCuspon, WaveKind.CompositeWave],
        Region.D2: [dark],
        Region.D3: [WaveKind.AntidarkSoliton, WaveKind.DarkCuspon,
                    WaveKind.CompositeWave],
        Region.BMinus: [WaveKind.AntidarkCuspon, WaveKind.CompositeWave],
        Region.BPlus: [WaveKind.DarkCuspon, WaveKind.CompositeWave],
        Region.C: [WaveKind.Compacton, WaveKind.CompositeWave],
        Region.NoWave: [WaveKind.Trivial],
    }
    return list(table[region])
