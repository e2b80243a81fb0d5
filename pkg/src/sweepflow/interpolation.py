"""Fifth-order pointwise interface interpolation.

Four flavours, applied componentwise to the conserved variables:

* ``linear-us`` -- the quartic through the 5-point window, evaluated at the
  right half-point (the linear upwind scheme),
* ``weno-us`` -- nonlinear combination of that quartic with two 2-point
  linear interpolants on unequal-sized substencils,
* ``weno-es`` -- the classical combination of three quadratics on
  equal-sized substencils,
* ``hybrid-us`` -- ``linear-us`` wherever the root-based detector finds no
  quadratic substencil extremum, ``weno-us`` otherwise.

The extremum detector checks, for each of the three quadratic
sub-interpolants, whether the root of its derivative falls inside that
substencil (closed interval); it short-circuits on the first hit.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels as _k


class InterpKind(enum.Enum):
    LINEAR_US = "linear-us"
    WENO_US = "weno-us"
    WENO_ES = "weno-es"
    HYBRID_US = "hybrid-us"

    @property
    def code(self):
        return _SCHEME_CODES[self]


_SCHEME_CODES = {
    InterpKind.LINEAR_US: 0,
    InterpKind.WENO_US: 1,
    InterpKind.WENO_ES: 2,
    InterpKind.HYBRID_US: 3,
}


@dataclass(frozen=True)
class WenoParams:
    """Weight parameters: eps guards the divisions, the gamma triples are the
    linear weights of the unequal-sized and equal-sized combinations."""

    eps: float = 1e-6
    gamma_us: tuple = (0.98, 0.01, 0.01)
    gamma_es: tuple = (1.0 / 16.0, 5.0 / 8.0, 5.0 / 16.0)

    def __post_init__(self):
        if not self.eps > 0.0:
            raise ValueError("eps must be positive")
        for trip in (self.gamma_us, self.gamma_es):
            if len(trip) != 3 or any(g <= 0 for g in trip):
                raise ValueError("linear weights must be a positive triple")
            if abs(sum(trip) - 1.0) > 1e-12:
                raise ValueError("linear weights must sum to one")

    def packed(self):
        """Flat float64 vector consumed by the kernels."""
        return np.array([self.eps, *self.gamma_us, *self.gamma_es])


DEFAULT_PARAMS = WenoParams()


@dataclass(frozen=True)
class StencilWindow:
    """Five consecutive values of one conserved component, spacing h."""

    values: tuple
    h: float = 1.0

    def __post_init__(self):
        if len(self.values) != 5:
            raise ValueError("window needs exactly 5 values")
        if not self.h > 0.0:
            raise ValueError("h must be positive")
        if not all(np.isfinite(v) for v in self.values):
            raise ValueError("window values must be finite")


def interp_us_linear(w: StencilWindow) -> float:
    return float(_k.us_linear_value(*w.values))


def smoothness_us(w: StencilWindow):
    b1, b2, b3 = _k.us_betas(*w.values)
    return float(b1), float(b2), float(b3)


def us_weights(w: StencilWindow, params=DEFAULT_PARAMS):
    return tuple(
        float(x) for x in _k.us_weights(*w.values, params.eps, *params.gamma_us)
    )


def interp_us_weno(w: StencilWindow, params=DEFAULT_PARAMS) -> float:
    return float(_k.us_weno_value(*w.values, params.eps, *params.gamma_us))


def es_weights(w: StencilWindow, params=DEFAULT_PARAMS):
    return tuple(
        float(x) for x in _k.es_weights(*w.values, params.eps, *params.gamma_es)
    )


def interp_es(w: StencilWindow, params=DEFAULT_PARAMS) -> float:
    return float(_k.es_weno_value(*w.values, params.eps, *params.gamma_es))


def detect_troubled(w: StencilWindow) -> bool:
    return bool(_k.troubled(*w.values))


def interp_hybrid(w: StencilWindow, params=DEFAULT_PARAMS) -> float:
    if detect_troubled(w):
        return interp_us_weno(w, params)
    return interp_us_linear(w)


def interp_value(w: StencilWindow, kind: InterpKind, params=DEFAULT_PARAMS) -> float:
    return float(_k.side_value(*w.values, kind.code, params.packed()))


def interp_minus_plus(line, i, kind: InterpKind, params=DEFAULT_PARAMS, h=1.0):
    """Interface values (u-, u+) at i+1/2 of a 1D component array.

    u- comes from the window centred at i; u+ from the same formulas on the
    reversed window centred at i+1 (mirror symmetry about the interface).
    Needs line[i-2 : i+4] to exist.
    """
    line = np.asarray(line, dtype=float)
    if i - 2 < 0 or i + 3 >= line.shape[0]:
        raise IndexError(f"interface {i}+1/2 needs points {i - 2}..{i + 3}")
    wp = params.packed()
    code = kind.code
    um = _k.side_value(
        line[i - 2], line[i - 1], line[i], line[i + 1], line[i + 2], code, wp
    )
    up = _k.side_value(
        line[i + 3], line[i + 2], line[i + 1], line[i], line[i - 1], code, wp
    )
    return float(um), float(up)
