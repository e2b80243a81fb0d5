"""Fifth-order fixed-point fast-sweeping hybrid alternative-WENO solver for
steady-state 2D compressible Euler flow, with RK3 time marching and
equal-sized-substencil WENO baselines."""

from .errors import ConfigurationError, InvalidStateError, SweepflowError
from .euler import (
    GasModel,
    flux_x,
    flux_y,
    max_wave_speeds,
    pressure,
    sound_speed,
    to_conserved,
    to_primitive,
)
from .grid import (
    BoundarySpec,
    Dirichlet,
    ExactFunction,
    Field,
    Grid2D,
    ReflectiveWall,
    SlipSegment,
    SupersonicOutflow,
)
from .interpolation import (
    InterpKind,
    StencilWindow,
    WenoParams,
    detect_troubled,
    interp_es,
    interp_hybrid,
    interp_minus_plus,
    interp_us_linear,
    interp_us_weno,
    smoothness_us,
)
from .iterators import (
    IterationRecord,
    IteratorKind,
    Outcome,
    SolveConfig,
    SolveResult,
    SweepOrder,
    fast_sweep_iteration,
    pseudo_dt,
    rk3_iteration,
    rk3_step,
    solve,
    sweep_schedule,
)
from .numflux import correction_fxx, correction_fxxxx, interface_flux
from .problems import (
    CASES,
    ProblemCase,
    case_forward_step,
    case_plate,
    case_shock_reflection,
    case_smooth,
    get_case,
)
from .residual import Discretization, fill_ghosts, spatial_operator_at, spatial_operator_field
from .riemann import FluxKind, WaveSpeeds, hllc_flux, hllc_wave_speeds, llf_flux

__version__ = "0.1.0"
