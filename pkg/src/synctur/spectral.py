"""Bath spectral densities and frequency-domain damping/noise kernels.

Two bath models are supported: a strictly Ohmic density J(w) = m*gamma*w
(memory-less friction) and the Drude-Lorentz form
J(w) = m*gamma*w / (1 + w^2/wc^2) with cut-off frequency wc.

Units: hbar = k_B = 1, frequencies in units of the first oscillator
frequency, mass defaults to 1.

The module also hosts the numerically stable hyperbolic helpers used by
every thermal integrand downstream (coth, x*coth(x), x/sinh(x) and the
fused weight (x/sinh x)(y/sinh y)*f(y-x), which stays finite where the
naive products over/underflow).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "StrictOhmic",
    "DrudeLorentz",
    "SpectralModel",
    "spectral_density",
    "spectral_density_over_omega",
    "spectral_density_derivative",
    "damping_kernel_freq",
    "coth_stable",
    "x_coth_x",
    "x_over_sinh_x",
    "hyp_weight",
]

_LOG2 = math.log(2.0)

# Crossover to the Laurent series of coth; keeps the relative error of
# both branches below ~1e-12.
_COTH_SERIES_CUT = 1e-4

# Above this |x| the direct sinh/cosh products risk overflow and the
# fused weights switch to log-space evaluation.
_HYP_DIRECT_CUT = 300.0


@dataclass(frozen=True)
class StrictOhmic:
    """J(w) = m*gamma*w, no cut-off."""

    gamma: float
    m: float = 1.0

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")
        if self.m <= 0:
            raise ValueError("mass must be positive")


@dataclass(frozen=True)
class DrudeLorentz:
    """J(w) = m*gamma*w / (1 + w^2/omega_c^2)."""

    gamma: float
    omega_c: float
    m: float = 1.0

    def __post_init__(self):
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")
        if self.omega_c <= 0:
            raise ValueError("omega_c must be positive")
        if self.m <= 0:
            raise ValueError("mass must be positive")


SpectralModel = Union[StrictOhmic, DrudeLorentz]

ArrayLike = Union[float, np.ndarray]


def spectral_density(model: SpectralModel, w: ArrayLike) -> ArrayLike:
    """J(w); odd in w by construction."""
    return w * spectral_density_over_omega(model, w)


def spectral_density_over_omega(model: SpectralModel, w: ArrayLike) -> ArrayLike:
    """J(w)/w, continuously extended to w = 0 (even, strictly positive)."""
    if isinstance(model, StrictOhmic):
        return model.m * model.gamma * np.ones_like(np.asarray(w, dtype=float))
    w = np.asarray(w, dtype=float)
    return model.m * model.gamma / (1.0 + (w / model.omega_c) ** 2)


def spectral_density_derivative(model: SpectralModel, w: ArrayLike) -> ArrayLike:
    """dJ/dw, analytic (never finite-differenced)."""
    if isinstance(model, StrictOhmic):
        return model.m * model.gamma * np.ones_like(np.asarray(w, dtype=float))
    w = np.asarray(w, dtype=float)
    r2 = (w / model.omega_c) ** 2
    return model.m * model.gamma * (1.0 - r2) / (1.0 + r2) ** 2


def damping_kernel_freq(model: SpectralModel, w: ArrayLike):
    """Real and imaginary part (gamma', gamma'') of the Fourier-space
    memory damping kernel.

    Drude-Lorentz: gamma'(w) = J(w)/(m*w), gamma''(w) = J(w)/(m*omega_c).
    Strictly Ohmic: (gamma, 0).
    """
    if isinstance(model, StrictOhmic):
        shape = np.shape(w)
        g = np.broadcast_to(model.gamma, shape).copy() if shape else model.gamma
        z = np.zeros(shape) if shape else 0.0
        return g, z
    gp = spectral_density_over_omega(model, w) / model.m
    gpp = spectral_density(model, w) / (model.m * model.omega_c)
    return gp, gpp


def coth_stable(x: ArrayLike, *, strict: bool = False) -> ArrayLike:
    """coth(x) with a series branch near zero.

    For |x| < 1e-4 uses 1/x + x/3 - x^3/45, which avoids the cancellation
    of cosh/sinh near the pole.  Odd in x, |coth(x)| >= 1.  With
    ``strict=True`` an exact zero raises instead of returning +/-inf.
    """
    scalar = np.isscalar(x)
    x = np.asarray(x, dtype=float)
    if strict and np.any(x == 0.0):
        raise ValueError("coth is singular at x = 0")
    out = np.empty_like(x)
    ax = np.abs(x)
    small = ax < _COTH_SERIES_CUT
    xs = x[small]
    with np.errstate(divide="ignore"):
        out[small] = 1.0 / xs + xs / 3.0 - xs**3 / 45.0
    xl = x[~small]
    out[~small] = 1.0 / np.tanh(xl)
    return float(out) if scalar else out


def x_coth_x(x: ArrayLike) -> ArrayLike:
    """x*coth(x), continuously extended to 1 at x = 0; always >= 1."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < _COTH_SERIES_CUT
    xs = x[small]
    out[small] = 1.0 + xs * xs / 3.0 - xs**4 / 45.0
    xl = x[~small]
    out[~small] = xl / np.tanh(xl)
    return out


def x_over_sinh_x(x: ArrayLike) -> ArrayLike:
    """x/sinh(x), extended to 1 at x = 0; decays like 2|x|e^-|x|."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    ax = np.abs(x)
    small = ax < _COTH_SERIES_CUT
    mid = ~small & (ax < 700.0)
    xs = x[small]
    out[small] = 1.0 - xs * xs / 6.0 + 7.0 * xs**4 / 360.0
    out[mid] = x[mid] / np.sinh(x[mid])
    out[ax >= 700.0] = 0.0
    return out


def _log_sinh(t: np.ndarray) -> np.ndarray:
    """log(sinh(t)) for t > 0, overflow-free."""
    with np.errstate(divide="ignore"):
        return t + np.log1p(-np.exp(-2.0 * t)) - _LOG2


def _log_cosh(t: np.ndarray) -> np.ndarray:
    """log(cosh(t)) for t >= 0, overflow-free."""
    return t + np.log1p(np.exp(-2.0 * t)) - _LOG2


def _log_x_over_sinh(x: np.ndarray) -> np.ndarray:
    """log(x/sinh(x)) for any real x (even function)."""
    ax = np.abs(x)
    out = np.empty_like(ax)
    direct = ax < 600.0
    with np.errstate(divide="ignore"):
        out[direct] = np.log(x_over_sinh_x(ax[direct]))
        big = ~direct
        out[big] = np.log(ax[big]) - _log_sinh(ax[big])
    return out


def hyp_weight(x: ArrayLike, y: ArrayLike, mode: str) -> np.ndarray:
    """(x/sinh x) * (y/sinh y) * f(y - x) without over/underflow.

    mode selects f: "sinh" -> sinh(lam), "cosh" -> cosh(lam),
    "lamsinh" -> lam*sinh(lam), with lam = y - x.  The first two factors
    are positive; the result sign is that of f.  This is the common
    thermal weight of all power/current/fluctuation integrands, where
    x = (w+Omega)/2T1 and y = w/2T2.
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    lam = y - x
    out = np.empty(x.shape, dtype=float)
    direct = (np.abs(x) < _HYP_DIRECT_CUT) & (np.abs(y) < _HYP_DIRECT_CUT)
    xd, yd, ld = x[direct], y[direct], lam[direct]
    if mode == "sinh":
        f = np.sinh(ld)
    elif mode == "cosh":
        f = np.cosh(ld)
    elif mode == "lamsinh":
        f = ld * np.sinh(ld)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    out[direct] = (x_over_sinh_x(xd) * x_over_sinh_x(yd)) * f
    rest = ~direct
    if np.any(rest):
        xr, yr, lr = x[rest], y[rest], lam[rest]
        alr = np.abs(lr)
        logmag = _log_x_over_sinh(xr) + _log_x_over_sinh(yr)
        with np.errstate(divide="ignore"):
            if mode == "sinh":
                sign = np.sign(lr)
                logf = _log_sinh(alr)
            elif mode == "cosh":
                sign = 1.0
                logf = _log_cosh(alr)
            else:
                sign = 1.0
                logf = np.log(alr) + _log_sinh(alr)
        vals = sign * np.exp(logmag + logf)
        vals = np.where(alr == 0.0, 0.0 if mode != "cosh" else np.exp(logmag), vals)
        out[rest] = vals
    return out
