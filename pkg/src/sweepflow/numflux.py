"""Fifth-order interface flux: monotone flux of the interpolated interface
states plus second- and fourth-derivative central corrections,

    fhat = h(u-, u+) - (dx^2/24) f_xx + (7 dx^4/5760) f_xxxx,

with the derivatives approximated by 6-point central differences of the
physical fluxes at the grid states (the dx powers cancel, so the corrections
are dx-free combinations of flux values).
"""

import numpy as np

from . import _kernels as _k
from .euler import GasModel, to_primitive
from .interpolation import DEFAULT_PARAMS, InterpKind
from .riemann import FluxKind


def _window(fline, i):
    fline = np.asarray(fline, dtype=float)
    if i - 2 < 0 or i + 3 >= fline.shape[0]:
        raise IndexError(f"interface {i}+1/2 needs rows {i - 2}..{i + 3}")
    return fline[i - 2:i + 4]


def correction_fxx(fline, i, dx):
    """Central approximation of f_xx at interface i+1/2 from the 6 physical
    fluxes f_{i-2}..f_{i+3}; exact for quadratics."""
    f = _window(fline, i)
    r = f - f[2]
    s = -5.0 * r[0] + 39.0 * r[1] - 34.0 * r[3] + 39.0 * r[4] - 5.0 * r[5]
    return s / (48.0 * dx * dx)


def correction_fxxxx(fline, i, dx):
    """Central approximation of f_xxxx at interface i+1/2; annihilates
    polynomials of degree <= 3."""
    f = _window(fline, i)
    r = f - f[2]
    s = r[0] - 3.0 * r[1] + 2.0 * r[3] - 3.0 * r[4] + r[5]
    return s / (2.0 * dx ** 4)


def interface_flux(
    uline,
    i,
    axis=0,
    kind: InterpKind = InterpKind.HYBRID_US,
    flux: FluxKind = FluxKind.LLF,
    lam=None,
    params=DEFAULT_PARAMS,
    gas=GasModel(),
):
    """Numerical flux at interface i+1/2 of a line of conserved states.

    ``uline`` is (n, 4) with rows i-2..i+3 available.  ``lam`` is the LLF
    speed bound; when omitted a local bound over the six states is used.
    """
    uline = np.asarray(uline, dtype=float)
    if i - 2 < 0 or i + 3 >= uline.shape[0]:
        raise IndexError(f"interface {i}+1/2 needs rows {i - 2}..{i + 3}")
    w = np.ascontiguousarray(uline[i - 2:i + 4])
    W = to_primitive(w, gas)
    if lam is None:
        c = np.sqrt(gas.gamma * W[:, 3] / W[:, 0])
        lam = float(np.max(np.abs(W[:, 1 + axis]) + c))
    return np.array(
        _k.face_flux(w, axis, kind.code, flux.code, lam, params.packed(), gas.gamma)
    )
