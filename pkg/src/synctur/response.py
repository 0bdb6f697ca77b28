"""Response matrix of the two oscillators dressed by the static Ohmic bath.

The 2x2 susceptibility chi(w) couples the two oscillators through the
shared strictly-Ohmic reservoir (damping gamma2):

    chi^(l,l)(w)  = -(w^2 - w_lbar^2 + i w gamma2) / D(w)
    chi^(l,lbar)(w) = i w gamma2 / D(w)
    D(w) = (w^2 - wA^2)(w^2 - wB^2) + i w (2w^2 - wA^2 - wB^2) gamma2

Entrywise complex arithmetic is the primary evaluation path.  For the
thermal integrands, closed forms of Im(chi)/w are also provided; they are
algebraically identical but stay finite and sign-definite through the
removable point w = 0:

    Im chi^(A,A)/w = gamma2 (w^2 - wB^2)^2 / |D|^2
    Im chi^(B,B)/w = gamma2 (w^2 - wA^2)^2 / |D|^2
    Im chi^(A,B)/w = gamma2 (w^2 - wA^2)(w^2 - wB^2) / |D|^2
    Re chi^(A,B)   = w^2 gamma2^2 (2w^2 - wA^2 - wB^2) / |D|^2
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "MachineParams",
    "ResponseMatrix",
    "ResponsePoleError",
    "denominator",
    "response_matrix",
    "chi_imag_parts",
    "chi_ab_real",
    "chi_eff_imag",
    "chi_eff_imag_closed",
    "chi_imag_eigenvalues",
]

_TWO_PI = 2.0 * math.pi

ArrayLike = Union[float, np.ndarray]


class ResponsePoleError(ZeroDivisionError):
    """|D(w)| underflowed; should not happen for valid parameters."""


@dataclass(frozen=True)
class MachineParams:
    """All physical parameters of the two-oscillator machine.

    omega_a fixes the frequency unit (default 1); the resonant case
    omega_a == omega_b is excluded.  phi is reduced into [0, 2*pi).
    """

    omega_b: float = 0.6
    omega_a: float = 1.0
    m: float = 1.0
    gamma1: float = 0.01
    gamma2: float = 100.0
    omega_c: float = 1.2
    phi: float = math.pi / 2
    omega_drive: float = 1.0
    t1: float = 1.0
    t2: float = 1.0

    def __post_init__(self):
        for name in ("omega_a", "omega_b", "m", "gamma1", "gamma2",
                     "omega_c", "omega_drive", "t1", "t2"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be finite and positive, got {v}")
        if self.omega_a == self.omega_b:
            raise ValueError("resonant case omega_a == omega_b is excluded")
        object.__setattr__(self, "phi", float(self.phi) % _TWO_PI)

    @property
    def omega_bar(self) -> float:
        """Common synchronization frequency sqrt((wA^2 + wB^2)/2)."""
        return math.sqrt(0.5 * (self.omega_a**2 + self.omega_b**2))

    def replace(self, **kw) -> "MachineParams":
        return dataclasses.replace(self, **kw)


@dataclass(frozen=True)
class ResponseMatrix:
    """chi entries at a single evaluation frequency (or array thereof)."""

    omega: ArrayLike
    chi_aa: ArrayLike
    chi_ab: ArrayLike
    chi_bb: ArrayLike

    @property
    def chi_ba(self) -> ArrayLike:
        # Off-diagonals coincide: both are i*w*gamma2/D(w).
        return self.chi_ab


def denominator(p: MachineParams, w: ArrayLike) -> ArrayLike:
    """D(w); its imaginary part vanishes exactly at w in {0, +-omega_bar}."""
    w = np.asarray(w, dtype=float)
    a = w * w - p.omega_a**2
    b = w * w - p.omega_b**2
    return a * b + 1j * w * (a + b) * p.gamma2


def response_matrix(p: MachineParams, w: ArrayLike) -> ResponseMatrix:
    """Entrywise chi(w) by direct complex arithmetic."""
    w = np.asarray(w, dtype=float)
    d = denominator(p, w)
    absd = np.abs(d)
    if np.any(absd < 1e4 * np.finfo(float).tiny):
        raise ResponsePoleError("response denominator underflowed")
    chi_aa = -(w * w - p.omega_b**2 + 1j * w * p.gamma2) / d
    chi_bb = -(w * w - p.omega_a**2 + 1j * w * p.gamma2) / d
    chi_ab = 1j * w * p.gamma2 / d
    return ResponseMatrix(omega=w, chi_aa=chi_aa, chi_ab=chi_ab, chi_bb=chi_bb)


def chi_imag_parts(p: MachineParams, w: ArrayLike):
    """(Im chi_AA / w, Im chi_BB / w, Im chi_AB / w), closed forms.

    Even, finite everywhere; the diagonal ratios are >= 0 (passivity).
    """
    w = np.asarray(w, dtype=float)
    w2 = w * w
    a = w2 - p.omega_a**2
    b = w2 - p.omega_b**2
    g2 = p.gamma2
    habs2 = (a * b) ** 2 + (w * (a + b) * g2) ** 2
    inv = g2 / habs2
    return b * b * inv, a * a * inv, a * b * inv


def chi_ab_real(p: MachineParams, w: ArrayLike) -> np.ndarray:
    """Re chi^(A,B)(w), closed form (even in w)."""
    w = np.asarray(w, dtype=float)
    w2 = w * w
    a = w2 - p.omega_a**2
    b = w2 - p.omega_b**2
    g2 = p.gamma2
    habs2 = (a * b) ** 2 + (w2 * (a + b) ** 2) * g2 * g2
    return w2 * g2 * g2 * (a + b) / habs2


def chi_eff_imag(p: MachineParams, w: ArrayLike, phi: float | None = None) -> np.ndarray:
    """Im chi_AA + Im chi_BB + 2 cos(phi) Im chi_AB (entrywise path)."""
    if phi is None:
        phi = p.phi
    rm = response_matrix(p, w)
    return np.imag(rm.chi_aa) + np.imag(rm.chi_bb) + 2.0 * math.cos(phi) * np.imag(rm.chi_ab)


def chi_eff_imag_closed(p: MachineParams, w: ArrayLike, phi: float | None = None) -> np.ndarray:
    """Closed form gamma2 * w * N(w) / |D(w)|^2 (cross-check path).

    N(w) = a^2 + b^2 + 2 cos(phi) a b with a = w^2-wA^2, b = w^2-wB^2 is a
    quadratic form in w^2 whose discriminant -4(wA^2-wB^2)^2 sin^2(phi)
    is <= 0, hence N >= 0 and w * chi_eff'' >= 0.
    """
    if phi is None:
        phi = p.phi
    caa, cbb, cab = chi_imag_parts(p, w)
    return np.asarray(w, dtype=float) * (caa + cbb + 2.0 * math.cos(phi) * cab)


def chi_imag_eigenvalues(p: MachineParams, w: ArrayLike):
    """Eigenvalues of the real symmetric matrix Im chi(w).

    Returns (lam_major, lam_minor) ordered by absolute value; lam_major is
    the dominant branch tracking the synchronized common mode at strong
    damping.
    """
    w = np.asarray(w, dtype=float)
    caa, cbb, cab = chi_imag_parts(p, w)
    a = w * caa
    b = w * cbb
    c = w * cab
    mean = 0.5 * (a + b)
    disc = np.sqrt((0.5 * (a - b)) ** 2 + c * c)
    lo = mean - disc
    hi = mean + disc
    swap = np.abs(lo) > np.abs(hi)
    lam_major = np.where(swap, lo, hi)
    lam_minor = np.where(swap, hi, lo)
    return lam_major, lam_minor
