"""Ghost-cell population and the steady spatial operator

    L = -(fhat_{i+1/2} - fhat_{i-1/2})/dx - (ghat_{j+1/2} - ghat_{j-1/2})/dy + R.

A :class:`Discretization` binds a grid to its boundary conditions and
geometry.  Every grid line is decomposed into *segments* (maximal fluid runs
along a row or column); each segment end carries three closure states, frozen
once per sweep/stage into ghost banks:

* ends on the domain boundary copy the edge ghost strips, which are filled
  from the per-edge condition (Dirichlet, reflective wall, supersonic
  outflow, exact reference, slip segment);
* internal ends (step faces, the thin plate) mirror the segment's own
  interior with the wall-normal momentum negated.

Masked points (inside the step) are never updated and never read directly;
stencils that would reach them read the reflective banks instead.
"""

import numpy as np

from . import _kernels as _k
from .errors import ConfigurationError
from .euler import GasModel, to_conserved
from .grid import (
    BoundarySpec,
    Dirichlet,
    ExactFunction,
    Field,
    Grid2D,
    ReflectiveWall,
    SlipSegment,
    SupersonicOutflow,
    dirichlet_conserved,
)
from .interpolation import DEFAULT_PARAMS, InterpKind
from .riemann import FluxKind


def _evaluate_exact(fn, X, Y, gas):
    rho, u, v, p = fn(X, Y)
    W = np.empty((*np.shape(rho), 4))
    W[..., 0] = rho
    W[..., 1] = u
    W[..., 2] = v
    W[..., 3] = p
    return to_conserved(W, gas)


class Discretization:
    """Grid + boundary spec + geometry, with scratch space for the kernels.

    ``mask`` is an interior-shaped boolean array (False = solid, as for the
    forward-facing step).  ``plate`` is an optional (x_lo, x_hi, y_wall)
    internal slip wall lying on a grid interface; columns whose centers fall
    strictly inside (x_lo, x_hi) are split there with reflective closures on
    both sides.  ``reset_hook``, when set, is applied to the padded state
    array at the start of every iteration (the forward-step corner fix).
    """

    def __init__(self, grid: Grid2D, spec: BoundarySpec, gas=GasModel(),
                 mask=None, plate=None):
        self.grid = grid
        self.spec = spec
        self.gas = gas
        self.mask = (
            np.ones((grid.nx, grid.ny), dtype=bool)
            if mask is None
            else np.asarray(mask, dtype=bool)
        )
        self.reset_hook = None
        self._plate = plate
        self._build_geometry()
        self._prepare_edges()
        g = grid.ghost
        self._ix = slice(g, g + grid.nx)
        self._iy = slice(g, g + grid.ny)

    # -- construction -------------------------------------------------------

    def _plate_layout(self):
        grid = self.grid
        x_lo, x_hi, y_wall = self._plate
        xc = grid.x_centers()
        cols = np.where((xc > x_lo) & (xc < x_hi))[0]
        if cols.size == 0:
            raise ConfigurationError("plate covers no grid columns")
        yc = grid.y_centers()
        below = int(np.searchsorted(yc, y_wall))
        if below < 1 or below >= grid.ny:
            raise ConfigurationError("plate wall outside the domain")
        interface = grid.y0 + below * grid.dy
        if abs(interface - y_wall) > 1e-8 * grid.dy:
            raise ConfigurationError(
                f"plate wall y={y_wall} does not lie on a grid interface"
            )
        jw = below - 1 + grid.ghost  # padded row just below the wall
        return set((cols + grid.ghost).tolist()), jw

    def _build_geometry(self):
        grid = self.grid
        g = grid.ghost
        NI, NJ = grid.padded_shape
        fluid = np.zeros((NI, NJ), dtype=bool)
        fluid[g:g + grid.nx, g:g + grid.ny] = self.mask
        self.fluid = fluid
        self.n_fluid = int(np.count_nonzero(self.mask))

        splits, jw = (self._plate_layout() if self._plate is not None
                      else (set(), -1))

        xsegs, xclos = [], []
        xid = np.full((NI, NJ), -1, dtype=np.int64)
        for j in range(g, g + grid.ny):
            i = g
            while i < g + grid.nx:
                if not fluid[i, j]:
                    i += 1
                    continue
                a = i
                while i < g + grid.nx and fluid[i, j]:
                    i += 1
                b = i - 1
                xclos.append((0 if a == g else 1, 0 if b == g + grid.nx - 1 else 1))
                xsegs.append((j, a, b))
                xid[a:b + 1, j] = len(xsegs) - 1

        ysegs, yclos = [], []
        yid = np.full((NI, NJ), -1, dtype=np.int64)
        for i in range(g, g + grid.nx):
            split_at = jw if i in splits else -2
            j = g
            while j < g + grid.ny:
                if not fluid[i, j]:
                    j += 1
                    continue
                a = j
                while j < g + grid.ny and fluid[i, j]:
                    j += 1
                    if j - 1 == split_at:
                        break
                b = j - 1
                yclos.append((0 if a == g else 1, 0 if b == g + grid.ny - 1 else 1))
                ysegs.append((i, a, b))
                yid[i, a:b + 1] = len(ysegs) - 1

        self.xsegs = np.array(xsegs, dtype=np.int64).reshape(-1, 3)
        self.xclos = np.array(xclos, dtype=np.int64).reshape(-1, 2)
        self.ysegs = np.array(ysegs, dtype=np.int64).reshape(-1, 3)
        self.yclos = np.array(yclos, dtype=np.int64).reshape(-1, 2)
        self.xid = xid
        self.yid = yid
        self.xG = np.zeros((len(xsegs), 6, 4))
        self.yG = np.zeros((len(ysegs), 6, 4))

        seg_lengths = [b - a + 1 for (_, a, b) in xsegs] + [
            b - a + 1 for (_, a, b) in ysegs
        ]
        m = max(seg_lengths)
        self._line = np.empty((m + 6, 4))
        self._faces = np.empty((m + 7, 4))
        self._w7x = np.empty((7, 4))
        self._w7y = np.empty((7, 4))

    def _prepare_edges(self):
        """Precompute Dirichlet states and exact-solution ghost blocks."""
        grid, gas = self.grid, self.gas
        xg = grid.padded_x()
        yg = grid.padded_y()
        xc, yc = grid.x_centers(), grid.y_centers()
        self._edge_const = {}
        for name in ("left", "right", "bottom", "top"):
            cond = getattr(self.spec, name)
            if isinstance(cond, Dirichlet):
                self._edge_const[name] = dirichlet_conserved(cond, gas)
            elif isinstance(cond, ExactFunction):
                if name == "left":
                    X, Y = np.meshgrid(xg[:3], yc, indexing="ij")
                elif name == "right":
                    X, Y = np.meshgrid(xg[-3:], yc, indexing="ij")
                elif name == "bottom":
                    X, Y = np.meshgrid(xc, yg[:3], indexing="ij")
                else:
                    X, Y = np.meshgrid(xc, yg[-3:], indexing="ij")
                self._edge_const[name] = _evaluate_exact(cond.fn, X, Y, gas)
            elif isinstance(cond, SlipSegment):
                self._edge_const[name] = (xc > cond.x_lo) & (xc < cond.x_hi)

    # -- per-sweep refresh ---------------------------------------------------

    def fill_ghosts(self, field: Field):
        """Refresh the edge ghost strips and freeze the segment banks."""
        U = field.U
        g = self.grid.ghost
        nx, ny = self.grid.nx, self.grid.ny
        ix, iy = self._ix, self._iy

        for name in ("left", "right", "bottom", "top"):
            cond = getattr(self.spec, name)
            if isinstance(cond, Dirichlet):
                state = self._edge_const[name]
                if name == "left":
                    U[0:g, iy] = state
                elif name == "right":
                    U[g + nx:, iy] = state
                elif name == "bottom":
                    U[ix, 0:g] = state
                else:
                    U[ix, g + ny:] = state
            elif isinstance(cond, SupersonicOutflow):
                if name == "left":
                    U[0:g, iy] = U[g, iy]
                elif name == "right":
                    U[g + nx:, iy] = U[g + nx - 1, iy]
                elif name == "bottom":
                    U[ix, 0:g] = U[ix, g][:, None, :]
                else:
                    U[ix, g + ny:] = U[ix, g + ny - 1][:, None, :]
            elif isinstance(cond, ReflectiveWall):
                for m in range(g):
                    if name == "left":
                        U[g - 1 - m, iy] = U[g + m, iy]
                        U[g - 1 - m, iy, 1] *= -1.0
                    elif name == "right":
                        U[g + nx + m, iy] = U[g + nx - 1 - m, iy]
                        U[g + nx + m, iy, 1] *= -1.0
                    elif name == "bottom":
                        U[ix, g - 1 - m] = U[ix, g + m]
                        U[ix, g - 1 - m, 2] *= -1.0
                    else:
                        U[ix, g + ny + m] = U[ix, g + ny - 1 - m]
                        U[ix, g + ny + m, 2] *= -1.0
            elif isinstance(cond, ExactFunction):
                state = self._edge_const[name]
                if name == "left":
                    U[0:g, iy] = state
                elif name == "right":
                    U[g + nx:, iy] = state
                elif name == "bottom":
                    U[ix, 0:g] = state
                else:
                    U[ix, g + ny:] = state
            else:  # SlipSegment, bottom edge only
                on = self._edge_const[name]
                for m in range(g):
                    U[ix, g - 1 - m] = U[ix, g + m]
                    strip = U[ix, g - 1 - m]
                    strip[on, 2] *= -1.0
                    # off-segment: zeroth-order extrapolation of the edge row
                    strip[~on] = U[ix, g][~on]

        _k.fill_banks_x(U, self.xsegs, self.xclos, self.xG)
        _k.fill_banks_y(U, self.ysegs, self.yclos, self.yG)
        return field

    # -- spatial operator ----------------------------------------------------

    def alphas(self, field: Field):
        ax, ay = _k.wave_speed_maxima(field.U, self.fluid, self.gas.gamma)
        return float(ax), float(ay)

    def _resolve(self, field, scheme, flux, params, alphas, fill):
        if fill:
            self.fill_ghosts(field)
        if alphas is None:
            alphas = self.alphas(field)
        return scheme.code, flux.code, params.packed(), alphas

    def _source_array(self, source):
        if source is None:
            return np.empty((1, 1, 4)), False
        src = np.zeros((*self.grid.padded_shape, 4))
        if callable(source):
            X, Y = np.meshgrid(self.grid.x_centers(), self.grid.y_centers(),
                               indexing="ij")
            src[self._ix, self._iy] = source(X, Y)
        else:
            arr = np.asarray(source, dtype=float)
            if arr.shape == src.shape:
                src[:] = arr
            else:
                src[self._ix, self._iy] = arr
        return src, True

    def operator_at(self, field: Field, i, j,
                    scheme=InterpKind.HYBRID_US, flux=FluxKind.LLF,
                    params=DEFAULT_PARAMS, alphas=None, source=None, fill=True):
        """L at interior point (i, j); requires ghosts filled (default fills)."""
        g = self.grid.ghost
        if not (0 <= i < self.grid.nx and 0 <= j < self.grid.ny):
            raise IndexError(f"({i}, {j}) outside the interior")
        if not self.mask[i, j]:
            raise IndexError(f"({i}, {j}) is masked out of the domain")
        sc, fc, wp, (ax, ay) = self._resolve(field, scheme, flux, params,
                                             alphas, fill)
        L = _k.point_operator(
            field.U, self.xsegs, self.xid, self.xG, self.ysegs, self.yid,
            self.yG, g + i, g + j, 1.0 / self.grid.dx, 1.0 / self.grid.dy,
            sc, fc, ax, ay, wp, self.gas.gamma, self._w7x, self._w7y,
        )
        L = np.array(L)
        if source is not None:
            src, _ = self._source_array(source)
            L += src[g + i, g + j]
        return L

    def operator_field(self, field: Field,
                       scheme=InterpKind.HYBRID_US, flux=FluxKind.LLF,
                       params=DEFAULT_PARAMS, alphas=None, source=None,
                       fill=True, faces=None):
        """L over all active points (padded array, zero elsewhere), with each
        interface flux computed exactly once.  Pass ``faces=(fx, fy)`` arrays
        to also receive the interface fluxes."""
        sc, fc, wp, (ax, ay) = self._resolve(field, scheme, flux, params,
                                             alphas, fill)
        L = np.zeros((*self.grid.padded_shape, 4))
        if faces is None:
            fx = np.zeros_like(L)
            fy = np.zeros_like(L)
        else:
            fx, fy = faces
        src, has_src = self._source_array(source)
        _k.eval_operator(
            field.U, self.xsegs, self.xG, self.ysegs, self.yG, L, fx, fy,
            src, has_src, 1.0 / self.grid.dx, 1.0 / self.grid.dy,
            sc, fc, ax, ay, wp, self.gas.gamma, self._line, self._faces,
        )
        return L

    def face_fluxes(self, field: Field, **kw):
        fx = np.zeros((*self.grid.padded_shape, 4))
        fy = np.zeros_like(fx)
        self.operator_field(field, faces=(fx, fy), **kw)
        return fx, fy

    def troubled_mask(self, field: Field, fill=True):
        """Detector flag per active interior point (any component, either
        direction), as used by the hybrid scheme's x/y windows there."""
        if fill:
            self.fill_ghosts(field)
        out = np.zeros(self.grid.padded_shape, dtype=np.bool_)
        _k.troubled_mask(field.U, self.fluid, self.xsegs, self.xid, self.xG,
                         self.ysegs, self.yid, self.yG, out)
        return out[self._ix, self._iy]


# -- module-level conveniences mirroring the operation contracts -------------


def fill_ghosts(field: Field, spec: BoundarySpec, gas=GasModel()):
    return Discretization(field.grid, spec, gas).fill_ghosts(field)


def spatial_operator_at(field: Field, i, j, spec: BoundarySpec, gas=GasModel(),
                        **kw):
    return Discretization(field.grid, spec, gas).operator_at(field, i, j, **kw)


def spatial_operator_field(field: Field, spec: BoundarySpec, gas=GasModel(),
                           **kw):
    return Discretization(field.grid, spec, gas).operator_field(field, **kw)
