"""The four benchmark cases: smooth vortical flow with a known steady state,
regular shock reflection, supersonic flow past an angled thin plate, and the
Mach 3 forward-facing step tunnel."""

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ConfigurationError
from .euler import GasModel, to_conserved
from .grid import (
    BoundarySpec,
    Dirichlet,
    ExactFunction,
    Field,
    Grid2D,
    ReflectiveWall,
    SupersonicOutflow,
)
from .residual import Discretization


@dataclass
class ProblemCase:
    """Benchmark description: domain, default grid, initial and boundary
    data, optional exact solution / solid geometry / internal plate."""

    name: str
    x0: float
    x1: float
    y0: float
    y1: float
    nx: int
    ny: int
    initial: object  # (X, Y) -> (rho, u, v, p)
    boundary: BoundarySpec
    exact: object = None
    step: tuple = None  # (corner_x, height): solid x > corner_x, y < height
    plate: tuple = None  # (x_lo, x_hi, y_wall) internal slip wall
    corner_fix: bool = False
    contour: dict = None
    gas: GasModel = GasModel()

    def make_grid(self, nx=None, ny=None):
        return Grid2D(nx or self.nx, ny or self.ny,
                      self.x0, self.x1, self.y0, self.y1)

    def solid_mask(self, grid):
        """Interior boolean mask, True at active (fluid) points."""
        mask = np.ones((grid.nx, grid.ny), dtype=bool)
        if self.step is not None:
            cx, cy = self.step
            X, Y = np.meshgrid(grid.x_centers(), grid.y_centers(), indexing="ij")
            mask &= ~((X > cx) & (Y < cy))
        return mask

    def initial_field(self, grid):
        field = Field(grid, mask=self.solid_mask(grid))
        X, Y = np.meshgrid(grid.x_centers(), grid.y_centers(), indexing="ij")
        rho, u, v, p = self.initial(X, Y)
        W = np.empty((grid.nx, grid.ny, 4))
        W[..., 0] = rho
        W[..., 1] = u
        W[..., 2] = v
        W[..., 3] = p
        field.interior[:] = to_conserved(W, self.gas)
        return field

    def build(self, grid=None):
        """Initial field plus a ready discretization (corner fix attached)."""
        if grid is None:
            grid = self.make_grid()
        field = self.initial_field(grid)
        disc = Discretization(grid, self.boundary, self.gas,
                              mask=field.mask, plate=self.plate)
        if self.corner_fix:
            disc.reset_hook = _corner_reset(grid, self.step, self.gas)
            disc.reset_hook(field.U)
        return field, disc


def _corner_reset(grid, step, gas):
    """Nearly-steady-flow fix for the step corner singularity: each iteration
    the first four points downstream of the corner in the row just above the
    step are reset so their entropy and total enthalpy match the point just
    left of and below the corner (density from entropy at unchanged pressure,
    velocity rescaled in magnitude only)."""
    cx, cy = step
    kface = int(round((cx - grid.x0) / grid.dx))
    rtop = int(round((cy - grid.y0) / grid.dy))
    if abs(grid.x0 + kface * grid.dx - cx) > 1e-8 * grid.dx or kface < 1:
        raise ConfigurationError("step face must lie on a grid interface")
    if abs(grid.y0 + rtop * grid.dy - cy) > 1e-8 * grid.dy or rtop < 1:
        raise ConfigurationError("step top must lie on a grid interface")
    g = grid.ghost
    gamma = gas.gamma
    iref, jref = g + kface - 1, g + rtop - 1
    jrow = g + rtop
    cells = [g + k for k in range(kface, min(kface + 4, grid.nx))]

    def reset(U):
        r0, mx0, my0, E0 = U[iref, jref]
        p0 = (gamma - 1.0) * (E0 - 0.5 * (mx0 * mx0 + my0 * my0) / r0)
        entropy = p0 / r0 ** gamma
        H0 = gamma * p0 / ((gamma - 1.0) * r0) + 0.5 * (mx0 * mx0 + my0 * my0) / r0 ** 2
        for i in cells:
            r, mx, my, E = U[i, jrow]
            p = (gamma - 1.0) * (E - 0.5 * (mx * mx + my * my) / r)
            rn = (p / entropy) ** (1.0 / gamma)
            u, v = mx / r, my / r
            q2 = u * u + v * v
            k2 = 2.0 * (H0 - gamma * p / ((gamma - 1.0) * rn))
            if k2 < 0.0:
                k2 = 0.0
            if q2 > 0.0:
                fac = math.sqrt(k2 / q2)
                u, v = u * fac, v * fac
            U[i, jrow, 0] = rn
            U[i, jrow, 1] = rn * u
            U[i, jrow, 2] = rn * v
            U[i, jrow, 3] = p / (gamma - 1.0) + 0.5 * rn * (u * u + v * v)

    return reset


def _uniform(state):
    rho, u, v, p = state

    def fn(X, Y):
        shape = np.shape(X)
        return (np.full(shape, rho), np.full(shape, u),
                np.full(shape, v), np.full(shape, p))

    return fn


def case_smooth():
    """Steady smooth density wave: rho = 1 + 0.2 sin(x - y), u = v = p = 1 on
    [0, 2pi]^2, exact solution imposed on all edges and as the start field."""

    def exact(X, Y):
        shape = np.shape(X)
        return (1.0 + 0.2 * np.sin(X - Y), np.ones(shape),
                np.ones(shape), np.ones(shape))

    two_pi = 2.0 * math.pi
    bc = ExactFunction(exact)
    return ProblemCase(
        name="smooth",
        x0=0.0, x1=two_pi, y0=0.0, y1=two_pi, nx=40, ny=40,
        initial=exact,
        boundary=BoundarySpec(left=bc, right=bc, bottom=bc, top=bc),
        exact=exact,
    )


def case_shock_reflection():
    """Regular shock reflection on [0,4]x[0,1], 120x30: supersonic inflow on
    the left, oblique-state Dirichlet on top, reflecting bottom wall,
    supersonic outflow on the right; started from the inflow state."""
    left = (1.0, 2.9, 0.0, 5.0 / 7.0)
    top = (1.69997, 2.61934, -0.50632, 1.52819)
    return ProblemCase(
        name="shock-reflection",
        x0=0.0, x1=4.0, y0=0.0, y1=1.0, nx=120, ny=30,
        initial=_uniform(left),
        boundary=BoundarySpec(
            left=Dirichlet(left),
            right=SupersonicOutflow(),
            bottom=ReflectiveWall(),
            top=Dirichlet(top),
        ),
        contour={"variable": "rho", "lo": 1.1, "hi": 2.6, "levels": 30},
    )


def case_plate(attack_angle_deg=10.0, mach=3.0):
    """Mach 3 flow at a 10-degree attack angle past a thin plate on y = 0,
    x in [1, 2], inside [0,10]x[-5,5] (200x200).  The plate is an internal
    slip wall on a grid interface; far field Dirichlet on left/top/bottom,
    supersonic outflow on the right."""
    gas = GasModel()
    alpha = math.radians(attack_angle_deg)
    state = (1.0, math.cos(alpha), math.sin(alpha),
             1.0 / (gas.gamma * mach * mach))
    return ProblemCase(
        name="plate",
        x0=0.0, x1=10.0, y0=-5.0, y1=5.0, nx=200, ny=200,
        initial=_uniform(state),
        boundary=BoundarySpec(
            left=Dirichlet(state),
            right=SupersonicOutflow(),
            bottom=Dirichlet(state),
            top=Dirichlet(state),
        ),
        plate=(1.0, 2.0, 0.0),
        contour={"variable": "p", "lo": 0.04, "hi": 0.17, "levels": 30},
        gas=gas,
    )


def case_forward_step():
    """Mach 3 tunnel with a forward-facing step: 3x1 tunnel, step of height
    0.2 from x = 0.6, 90x30 grid, inflow (1.4, 3, 0, 1), reflecting walls and
    step faces, corner singularity handled by the nearly-steady-flow reset."""
    inflow = (1.4, 3.0, 0.0, 1.0)
    return ProblemCase(
        name="forward-step",
        x0=0.0, x1=3.0, y0=0.0, y1=1.0, nx=90, ny=30,
        initial=_uniform(inflow),
        boundary=BoundarySpec(
            left=Dirichlet(inflow),
            right=SupersonicOutflow(),
            bottom=ReflectiveWall(),
            top=ReflectiveWall(),
        ),
        step=(0.6, 0.2),
        corner_fix=True,
        contour={"variable": "p", "lo": 0.1, "hi": 12.0, "levels": 30},
    )


CASES = {
    "smooth": case_smooth,
    "shock-reflection": case_shock_reflection,
    "plate": case_plate,
    "forward-step": case_forward_step,
}


def get_case(name):
    try:
        return CASES[name]()
    except KeyError:
        raise ConfigurationError(
            f"unknown case {name!r}; available: {', '.join(sorted(CASES))}"
        ) from None
