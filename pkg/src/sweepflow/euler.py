"""Euler-equation algebra: state conversions, physical fluxes, wave speeds.

Conserved states are length-4 arrays (rho, rho*u, rho*v, E); primitive states
are (rho, u, v, p).  All functions broadcast over leading axes, so they work
on single 4-vectors and on whole (ni, nj, 4) fields alike.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError


@dataclass(frozen=True)
class GasModel:
    """Perfect gas with ratio of specific heats ``gamma`` (air: 1.4)."""

    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")


def _check(values, what, location):
    bad = values <= 0.0
    if np.any(bad) or not np.all(np.isfinite(values)):
        if location is None and values.ndim:
            location = tuple(np.argwhere(~(values > 0.0))[0])
        raise InvalidStateError(f"non-positive {what}", location)


def pressure(U, gas=GasModel(), location=None):
    U = np.asarray(U, dtype=float)
    rho = U[..., 0]
    _check(rho, "density", location)
    p = (gas.gamma - 1.0) * (U[..., 3] - 0.5 * (U[..., 1] ** 2 + U[..., 2] ** 2) / rho)
    _check(p, "pressure", location)
    return p


def sound_speed(W, gas=GasModel()):
    W = np.asarray(W, dtype=float)
    return np.sqrt(gas.gamma * W[..., 3] / W[..., 0])


def to_primitive(U, gas=GasModel(), location=None):
    """Conserved -> primitive; raises InvalidStateError on rho<=0 or p<=0."""
    U = np.asarray(U, dtype=float)
    p = pressure(U, gas, location)
    W = np.empty_like(U)
    W[..., 0] = U[..., 0]
    W[..., 1] = U[..., 1] / U[..., 0]
    W[..., 2] = U[..., 2] / U[..., 0]
    W[..., 3] = p
    return W


def to_conserved(W, gas=GasModel(), location=None):
    """Primitive -> conserved, E = p/(gamma-1) + rho*(u^2+v^2)/2."""
    W = np.asarray(W, dtype=float)
    _check(W[..., 0], "density", location)
    _check(W[..., 3], "pressure", location)
    U = np.empty_like(W)
    U[..., 0] = W[..., 0]
    U[..., 1] = W[..., 0] * W[..., 1]
    U[..., 2] = W[..., 0] * W[..., 2]
    U[..., 3] = W[..., 3] / (gas.gamma - 1.0) + 0.5 * W[..., 0] * (
        W[..., 1] ** 2 + W[..., 2] ** 2
    )
    return U


def flux_x(U, gas=GasModel()):
    """Physical x-flux F(U) = (rho u, rho u^2 + p, rho u v, u (E + p))."""
    U = np.asarray(U, dtype=float)
    p = pressure(U, gas)
    u = U[..., 1] / U[..., 0]
    F = np.empty_like(U)
    F[..., 0] = U[..., 1]
    F[..., 1] = U[..., 1] * u + p
    F[..., 2] = U[..., 2] * u
    F[..., 3] = u * (U[..., 3] + p)
    return F


def flux_y(U, gas=GasModel()):
    """Physical y-flux G(U) = (rho v, rho u v, rho v^2 + p, v (E + p))."""
    U = np.asarray(U, dtype=float)
    p = pressure(U, gas)
    v = U[..., 2] / U[..., 0]
    G = np.empty_like(U)
    G[..., 0] = U[..., 2]
    G[..., 1] = U[..., 1] * v
    G[..., 2] = U[..., 2] * v + p
    G[..., 3] = v * (U[..., 3] + p)
    return G


def max_wave_speeds(field, gas=GasModel()):
    """Grid-wise maximum characteristic speeds (max|u|+c, max|v|+c).

    ``field`` is a :class:`sweepflow.grid.Field`; only unmasked interior
    points contribute.
    """
    U = field.interior_states()
    W = to_primitive(U, gas)
    c = sound_speed(W, gas)
    alpha_x = float(np.max(np.abs(W[..., 1]) + c))
    alpha_y = float(np.max(np.abs(W[..., 2]) + c))
    return alpha_x, alpha_y
