"""Structured grid, padded field storage, and boundary condition descriptors.

Grid points are cell centers, x_i = x0 + (i + 1/2) dx for i = 0..nx-1, so
domain edges and internal walls lie on interfaces and reflective mirroring is
exact.  Fields carry a 3-deep ghost halo on every side (the widest stencil of
the interface corrections reaches three points past an interior point).
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import InvalidStateError
from .euler import GasModel, to_conserved

GHOST = 3


@dataclass(frozen=True)
class Grid2D:
    nx: int
    ny: int
    x0: float
    x1: float
    y0: float
    y1: float
    ghost: int = GHOST

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError("need at least one interior point per direction")
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError("degenerate domain")
        if self.ghost != GHOST:
            raise ValueError("ghost width is fixed at 3")

    @property
    def dx(self):
        return (self.x1 - self.x0) / self.nx

    @property
    def dy(self):
        return (self.y1 - self.y0) / self.ny

    def x_centers(self):
        return self.x0 + (np.arange(self.nx) + 0.5) * self.dx

    def y_centers(self):
        return self.y0 + (np.arange(self.ny) + 0.5) * self.dy

    def padded_x(self):
        return self.x0 + (np.arange(-self.ghost, self.nx + self.ghost) + 0.5) * self.dx

    def padded_y(self):
        return self.y0 + (np.arange(-self.ghost, self.ny + self.ghost) + 0.5) * self.dy

    @property
    def padded_shape(self):
        return (self.nx + 2 * self.ghost, self.ny + 2 * self.ghost)


class Field:
    """Conserved states on a padded grid, plus an activity mask.

    ``U`` has shape (nx+6, ny+6, 4); ``mask`` is an interior-shaped boolean
    array, False at points carved out of the domain (inside the step).
    """

    def __init__(self, grid: Grid2D, U=None, mask=None):
        self.grid = grid
        shape = (*grid.padded_shape, 4)
        if U is None:
            U = np.zeros(shape)
        else:
            U = np.asarray(U, dtype=float)
            if U.shape != shape:
                raise ValueError(f"expected padded array {shape}, got {U.shape}")
        self.U = U
        if mask is None:
            mask = np.ones((grid.nx, grid.ny), dtype=bool)
        self.mask = np.asarray(mask, dtype=bool)

    @property
    def interior(self):
        g = self.grid.ghost
        return self.U[g:g + self.grid.nx, g:g + self.grid.ny]

    def interior_states(self):
        """Active interior states as an (npoints, 4) array."""
        return self.interior[self.mask]

    def state_at(self, i, j):
        g = self.grid.ghost
        return self.U[g + i, g + j].copy()

    def copy(self):
        return Field(self.grid, self.U.copy(), self.mask.copy())

    def validate(self, gas=GasModel()):
        """Raise InvalidStateError (with interior location) on any active
        point with rho <= 0, p <= 0, or a non-finite component."""
        W = self.interior
        rho = W[..., 0]
        p = (gas.gamma - 1.0) * (
            W[..., 3] - 0.5 * (W[..., 1] ** 2 + W[..., 2] ** 2) / rho
        )
        bad = ~(rho > 0.0) | ~(p > 0.0) | ~np.all(np.isfinite(W), axis=-1)
        bad &= self.mask
        if np.any(bad):
            i, j = map(int, np.argwhere(bad)[0])
            raise InvalidStateError("invalid state", (i, j))


# ---------------------------------------------------------------------------
# boundary conditions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Dirichlet:
    """Fixed primitive state (rho, u, v, p) on the edge."""

    state: tuple


@dataclass(frozen=True)
class ReflectiveWall:
    pass


@dataclass(frozen=True)
class SupersonicOutflow:
    pass


@dataclass(frozen=True)
class ExactFunction:
    """Reference solution (x, y) -> (rho, u, v, p), vectorized over arrays."""

    fn: object


@dataclass(frozen=True)
class SlipSegment:
    """Reflective wall on [x_lo, x_hi] of the bottom edge, zeroth-order
    extrapolation elsewhere on that edge."""

    x_lo: float
    x_hi: float


_EDGE_KINDS = (Dirichlet, ReflectiveWall, SupersonicOutflow, ExactFunction, SlipSegment)


@dataclass(frozen=True)
class BoundarySpec:
    left: object
    right: object
    bottom: object
    top: object

    def __post_init__(self):
        for name in ("left", "right", "bottom", "top"):
            cond = getattr(self, name)
            if not isinstance(cond, _EDGE_KINDS):
                raise ValueError(f"unspecified or unknown condition on edge {name!r}")
            if isinstance(cond, SlipSegment) and name != "bottom":
                raise ValueError("SlipSegment is only supported on the bottom edge")


def dirichlet_conserved(cond: Dirichlet, gas: GasModel):
    return to_conserved(np.asarray(cond.state, dtype=float), gas)
