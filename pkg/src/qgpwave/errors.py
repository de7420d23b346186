"""Exception taxonomy shared by all qgpwave modules.

Grouped so the CLI can map them to exit codes without inspecting types
one by one: domain/parameter violations exit with 2, numerical failures
with 3.
"""

from __future__ import annotations


class QGPWaveError(Exception):
    """Base class for all package errors."""


class ParamError(QGPWaveError):
    """Invalid parameter combination (non-finite, wrong sign, wrong branch)."""


class RegionError(QGPWaveError):
    """Operation asked for outside the parameter region where it is defined."""


class DomainError(QGPWaveError):
    """Argument outside the domain of an implicit family or antiderivative."""


class RangeError(QGPWaveError):
    """Value outside the invertible range of a monotone map."""


class InadmissibleError(QGPWaveError):
    """Composite-wave polynomial changes sign on the bubble interval."""


class VanishingError(QGPWaveError):
    """Intensity touches zero where a phase or velocity field is required."""


class QuadratureError(QGPWaveError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class GridError(QGPWaveError):
    """Sample grid malformed (non-monotone, too coarse, or non-uniform)."""


class BlowupError(QGPWaveError):
    """Time integration produced a vacuum touch or non-finite values."""


#: Errors that signal a bad request rather than a numerical breakdown.
USAGE_LIKE = (ParamError, RegionError, DomainError, RangeError,
              InadmissibleError, VanishingError)

#: Errors that signal a numerical failure of an otherwise valid request.
NUMERICAL = (QuadratureError, GridError, BlowupError)
