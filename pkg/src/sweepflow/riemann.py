"""Monotone two-state numerical fluxes: local Lax-Friedrichs and HLLC."""

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels as _k
from .euler import GasModel, sound_speed, to_primitive


class FluxKind(enum.Enum):
    LLF = "llf"
    HLLC = "hllc"

    @property
    def code(self):
        return 0 if self is FluxKind.LLF else 1


@dataclass(frozen=True)
class WaveSpeeds:
    """Acoustic speeds S_L, S_R and the contact speed S_M, S_L <= S_M <= S_R."""

    S_L: float
    S_R: float
    S_M: float


def _as_state(U, gas):
    U = np.asarray(U, dtype=float)
    to_primitive(U, gas)  # validity check
    return U


def llf_flux(U_l, U_r, lam, axis, gas=GasModel()):
    """0.5*[F(U_l) + F(U_r) - lam*(U_r - U_l)] along the given axis.

    ``lam`` must bound |v_n| + c over both states; the solver passes the
    grid-wise per-direction maximum so the flux and the pseudo-time step stay
    consistent.
    """
    U_l = _as_state(U_l, gas)
    U_r = _as_state(U_r, gas)
    return np.array(_k.llf_flux4(*U_l, *U_r, axis, lam, gas.gamma))


def hllc_wave_speeds(W_l, W_r, axis, gas=GasModel()):
    """Acoustic/contact speed estimates from Roe-type averages of the
    direction-normal velocity and total enthalpy."""
    W_l = np.asarray(W_l, dtype=float)
    W_r = np.asarray(W_r, dtype=float)
    rl, pl = W_l[0], W_l[3]
    rr, pr = W_r[0], W_r[3]
    vnl = W_l[1 + axis]
    vnr = W_r[1 + axis]
    el = pl / (gas.gamma - 1.0) + 0.5 * rl * (W_l[1] ** 2 + W_l[2] ** 2)
    er = pr / (gas.gamma - 1.0) + 0.5 * rr * (W_r[1] ** 2 + W_r[2] ** 2)
    Hl = (el + pl) / rl
    Hr = (er + pr) / rr
    SL, SR, SM = _k.hllc_speeds(rl, vnl, pl, Hl, rr, vnr, pr, Hr, gas.gamma)
    return WaveSpeeds(float(SL), float(SR), float(SM))


def hllc_flux(U_l, U_r, axis, gas=GasModel()):
    """Four-branch HLLC flux; tangential velocity rides passively in the star
    states.  A degenerate contact-speed denominator falls back to LLF with a
    local speed bound."""
    U_l = _as_state(U_l, gas)
    U_r = _as_state(U_r, gas)
    W_l = to_primitive(U_l, gas)
    W_r = to_primitive(U_r, gas)
    lam = max(
        abs(W_l[1 + axis]) + sound_speed(W_l, gas),
        abs(W_r[1 + axis]) + sound_speed(W_r, gas),
    )
    return np.array(_k.hllc_flux4(*U_l, *U_r, axis, lam, gas.gamma))


def monotone_flux(U_l, U_r, kind: FluxKind, lam, axis, gas=GasModel()):
    if kind is FluxKind.LLF:
        return llf_flux(U_l, U_r, lam, axis, gas)
    return hllc_flux(U_l, U_r, axis, gas)
