"""Steady-state iteration: fixed-point fast sweeping and RK3 pseudo-time
marching.

One iteration is one complete update of all grid points: a single
Gauss-Seidel pass in one of the four alternating traversal orders for the
fast-sweeping iterator, or one three-stage Runge-Kutta step for the
time-marching baseline.  Both use the pseudo-time step

    dt_n = cfl / (alpha_x/dx + alpha_y/dy)

with the per-direction maximum characteristic speeds frozen over the
iteration, and report the grid-averaged residue

    ResA = sum_{active points} (|R1|+|R2|+|R3|+|R4|) / (4 N)

with R = (u_new - u_old)/dt_n per point and component.
"""

import enum
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _kernels as _k
from .errors import ConfigurationError, InvalidStateError
from .euler import GasModel
from .grid import Field
from .interpolation import DEFAULT_PARAMS, InterpKind, WenoParams
from .residual import Discretization
from .riemann import FluxKind


class IteratorKind(enum.Enum):
    FAST_SWEEP = "fs"
    RK3 = "rk3"


class SweepOrder(enum.Enum):
    """The four alternating traversal orders, cycled in this sequence."""

    I_UP_J_UP = 0
    I_DOWN_J_UP = 1
    I_DOWN_J_DOWN = 2
    I_UP_J_DOWN = 3


_CYCLE = (
    SweepOrder.I_UP_J_UP,
    SweepOrder.I_DOWN_J_UP,
    SweepOrder.I_DOWN_J_DOWN,
    SweepOrder.I_UP_J_DOWN,
)


def sweep_schedule(n):
    """Traversal order used by iteration n (1-based): cycles the four orders."""
    return _CYCLE[(n - 1) % 4]


class Outcome(enum.Enum):
    CONVERGED = "converged"
    STALLED = "stalled"
    DIVERGED = "diverged"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class IterationRecord:
    n: int
    resA: float
    dt: float
    t: float
    cfl: float


@dataclass(frozen=True)
class SolveConfig:
    cfl: float
    tol: float = 1e-12
    max_iters: int = None
    scheme: InterpKind = InterpKind.HYBRID_US
    flux: FluxKind = FluxKind.LLF
    iterator: IteratorKind = IteratorKind.FAST_SWEEP
    params: WenoParams = DEFAULT_PARAMS
    gas: GasModel = GasModel()

    def __post_init__(self):
        if not self.cfl > 0.0:
            raise ConfigurationError("cfl must be positive")
        if not self.tol > 0.0:
            raise ConfigurationError("tol must be positive")

    def budget(self, grid):
        if self.max_iters is not None:
            return int(self.max_iters)
        n = max(grid.nx, grid.ny)
        return 200 * n if self.iterator is IteratorKind.FAST_SWEEP else 1000 * n


@dataclass
class SolveResult:
    field: Field
    history: list
    outcome: Outcome
    detail: str = ""
    wall_time: float = 0.0

    @property
    def iterations(self):
        return len(self.history)

    @property
    def final_resA(self):
        return self.history[-1].resA if self.history else np.nan

    @property
    def final_time(self):
        return self.history[-1].t if self.history else 0.0


def pseudo_dt(alpha_x, alpha_y, dx, dy, cfl):
    """cfl / (alpha_x/dx + alpha_y/dy)."""
    if not (alpha_x > 0.0 or alpha_y > 0.0):
        raise ConfigurationError("need a positive characteristic speed")
    return cfl / (alpha_x / dx + alpha_y / dy)


def _bounds(order, grid):
    g = grid.ghost
    if order in (SweepOrder.I_UP_J_UP, SweepOrder.I_UP_J_DOWN):
        ib = (g, g + grid.nx, 1)
    else:
        ib = (g + grid.nx - 1, g - 1, -1)
    if order in (SweepOrder.I_UP_J_UP, SweepOrder.I_DOWN_J_UP):
        jb = (g, g + grid.ny, 1)
    else:
        jb = (g + grid.ny - 1, g - 1, -1)
    return (*ib, *jb)


_NO_SRC = np.zeros((1, 1, 4))


def _resA_from(resid, disc):
    g = disc.grid.ghost
    block = resid[g:g + disc.grid.nx, g:g + disc.grid.ny]
    return float(np.sum(np.abs(block)) / (4.0 * disc.n_fluid))


def fast_sweep_iteration(field: Field, disc: Discretization, config: SolveConfig,
                         order: SweepOrder, resid=None):
    """One Gauss-Seidel pass over the field in the given order (in place).

    The wave-speed bounds and dt are frozen from the pre-sweep field; ghosts
    are refreshed once before the traversal.  Stencil reads of points already
    visited in this sweep see their updated values.  Returns
    (field, resid, resA, dt).
    """
    if disc.reset_hook is not None:
        disc.reset_hook(field.U)
    ax, ay = disc.alphas(field)
    dt = pseudo_dt(ax, ay, disc.grid.dx, disc.grid.dy, config.cfl)
    disc.fill_ghosts(field)
    if resid is None:
        resid = np.zeros_like(field.U)
    _k.sweep(
        field.U, disc.fluid, disc.xsegs, disc.xid, disc.xG,
        disc.ysegs, disc.yid, disc.yG, resid, _NO_SRC, False,
        *_bounds(order, disc.grid), dt,
        1.0 / disc.grid.dx, 1.0 / disc.grid.dy,
        config.scheme.code, config.flux.code, ax, ay,
        config.params.packed(), config.gas.gamma,
    )
    return field, resid, _resA_from(resid, disc), dt


def rk3_step(u0, dt, L_eval):
    """Three-stage strong-stability-preserving update, in increment form so a
    zero operator returns u0 bitwise."""
    u1 = u0 + dt * L_eval(u0)
    u2 = u0 + 0.25 * ((u1 - u0) + dt * L_eval(u1))
    return u0 + (2.0 / 3.0) * ((u2 - u0) + dt * L_eval(u2))


def rk3_iteration(field: Field, disc: Discretization, config: SolveConfig,
                  resid=None, _buffers=None):
    """One RK3 pseudo-time step (in place); ghosts are refreshed before every
    stage evaluation.  Returns (field, resid, resA, dt)."""
    if disc.reset_hook is not None:
        disc.reset_hook(field.U)
    ax, ay = disc.alphas(field)
    dt = pseudo_dt(ax, ay, disc.grid.dx, disc.grid.dy, config.cfl)
    if _buffers is None:
        L = np.zeros_like(field.U)
        fx = np.zeros_like(field.U)
        fy = np.zeros_like(field.U)
    else:
        L, fx, fy = _buffers
    stage = Field(disc.grid, np.empty_like(field.U), field.mask)
    wp = config.params.packed()

    def L_eval(arr):
        stage.U[:] = arr
        disc.fill_ghosts(stage)
        _k.eval_operator(
            stage.U, disc.xsegs, disc.xG, disc.ysegs, disc.yG, L, fx, fy,
            _NO_SRC, False, 1.0 / disc.grid.dx, 1.0 / disc.grid.dy,
            config.scheme.code, config.flux.code, ax, ay, wp,
            config.gas.gamma, disc._line, disc._faces,
        )
        return L

    u0 = field.U.copy()
    unew = rk3_step(u0, dt, L_eval)
    if resid is None:
        resid = np.zeros_like(field.U)
    np.subtract(unew, u0, out=resid)
    resid /= dt
    resid[~disc.fluid] = 0.0
    field.U[:] = unew
    return field, resid, _resA_from(resid, disc), dt


def _diverged_detail(field, gas):
    try:
        field.validate(gas)
    except InvalidStateError as err:
        return str(err)
    return "non-finite or runaway residue"


def solve(problem, config: SolveConfig, grid=None):
    """Iterate a benchmark case to steady state.

    ``problem`` is a ProblemCase (or a prepared (field, discretization)
    pair).  Stops when ResA < tol (Converged), on a non-finite/invalid state
    or a 1e6-fold residue growth (Diverged), or when the iteration budget is
    exhausted -- reported as Stalled when the running-minimum residue also
    failed to drop tenfold over the trailing 20% of the budget, otherwise as
    BudgetExceeded.
    """
    t_start = time.perf_counter()
    if isinstance(problem, tuple):
        field, disc = problem
    else:
        field, disc = problem.build(grid)
    cfg_grid = disc.grid
    budget = config.budget(cfg_grid)
    resid = np.zeros_like(field.U)
    buffers = None
    if config.iterator is IteratorKind.RK3:
        buffers = (np.zeros_like(field.U), np.zeros_like(field.U),
                   np.zeros_like(field.U))

    history = []
    t = 0.0
    outcome = None
    detail = ""
    res0 = None
    for n in range(1, budget + 1):
        if config.iterator is IteratorKind.FAST_SWEEP:
            _, _, resA, dt = fast_sweep_iteration(
                field, disc, config, sweep_schedule(n), resid=resid
            )
        else:
            _, _, resA, dt = rk3_iteration(
                field, disc, config, resid=resid, _buffers=buffers
            )
        t += dt
        history.append(IterationRecord(n, resA, dt, t, config.cfl))
        if not np.isfinite(resA):
            outcome = Outcome.DIVERGED
            detail = _diverged_detail(field, config.gas)
            break
        if res0 is None:
            res0 = resA
        if resA < config.tol:
            outcome = Outcome.CONVERGED
            break
        if res0 > 0.0 and resA > 1e6 * res0:
            outcome = Outcome.DIVERGED
            detail = "residue grew by more than 1e6 over its initial value"
            break

    if outcome is None:
        res = np.array([rec.resA for rec in history])
        k80 = max(1, int(0.8 * budget))
        m_end = float(np.min(res))
        m_80 = float(np.min(res[:k80]))
        if m_end >= config.tol and 10.0 * m_end > m_80:
            outcome = Outcome.STALLED
            detail = (
                f"running-minimum residue {m_end:.3e} plateaued above "
                f"tol={config.tol:.1e}"
            )
        else:
            outcome = Outcome.BUDGET_EXCEEDED
            detail = f"budget of {budget} iterations exhausted"

    return SolveResult(field, history, outcome, detail,
                       time.perf_counter() - t_start)
