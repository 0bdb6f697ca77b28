"""Adiabatic/diabatic closed-form coefficients and the TUR-bound certificate.

In the slow-drive (adiabatic) limit P -> Omega^2 (alpha_A + alpha_B) and
P_l -> Omega * dalpha_l; in the fast-drive (diabatic) limit
P_l^(0) -> Omega J1(Omega) alpha_l and
dP_l -> Omega J1(Omega) [dalpha_l Omega/omega_c + dbeta_l].
All coefficients are Omega-independent frequency integrals of the dressed
response (evaluated at phi = pi/2 conventions for the odd-in-phi parts;
the -+ sign pair enforces dalpha_A = -dalpha_B exactly).

The certificate numerically checks, on sampled frequency pairs, every
pointwise inequality entering the proof that the total-power trade-off
Q_P can never drop below 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .observables import characteristic_scales, standard_breakpoints, _j_over_w
from .quadrature import QuadratureConfig, integrate_real_line
from .response import MachineParams, chi_ab_real, chi_eff_imag_closed, chi_imag_parts
from .spectral import (
    DrudeLorentz,
    hyp_weight,
    spectral_density,
    spectral_density_derivative,
    x_coth_x,
    x_over_sinh_x,
)

__all__ = [
    "AsymptoticCoeffs",
    "CertificateReport",
    "adiabatic_coefficients",
    "diabatic_coefficients",
    "diabatic_fluctuation",
    "tur_certificate",
]

_FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class AsymptoticCoeffs:
    """Omega-independent expansion coefficients for one regime."""

    regime: str                      # "adiabatic" or "diabatic"
    alpha_a: float
    alpha_b: float
    dalpha_a: float
    dalpha_b: float
    dbeta_a: Optional[float] = None  # diabatic only
    dbeta_b: Optional[float] = None
    c_tilde: Optional[float] = None  # dalpha_a / alpha_a, diabatic only


def _integrate(p, cfg, f):
    res = integrate_real_line(f, standard_breakpoints(p), cfg,
                              scales=characteristic_scales(p))
    return res.value


def adiabatic_coefficients(p: MachineParams,
                           cfg: QuadratureConfig = QuadratureConfig()) -> AsymptoticCoeffs:
    """Slow-drive coefficients; the drive frequency field of p is ignored.

    alpha_l combines the dJ1/dw term with the 1/sinh^2 derivative of the
    bath-1 occupation; dalpha_l is the zero-frequency limit of the
    time-reversal-breaking integral.
    """
    pref = 1.0 / (_FOUR_PI * p.m)
    bath1 = DrudeLorentz(p.gamma1, p.omega_c, p.m)

    def f_alpha(which):
        def f(w):
            caa, cbb, _ = chi_imag_parts(p, w)
            c = caa if which == "A" else cbb
            x0 = w / (2.0 * p.t1)
            y = w / (2.0 * p.t2)
            # N(w,0) chi'' = 2 T2 c * hyp(x0,y,sinh)/x0 -> 2(T1-T2) c at w=0
            hw = hyp_weight(x0, y, "sinh")
            safe = np.where(np.abs(x0) < 1e-12, 1.0, x0)
            nchi = np.where(np.abs(x0) < 1e-12,
                            2.0 * (p.t1 - p.t2) * c,
                            2.0 * p.t2 * c * hw / safe)
            g1 = spectral_density_derivative(bath1, w) * nchi
            g2 = _j_over_w(p, w) * 2.0 * p.t1 * x_over_sinh_x(x0) ** 2 * c
            return -pref * (g1 - g2)
        return f

    def f_dalpha(w):
        x0 = w / (2.0 * p.t1)
        y = w / (2.0 * p.t2)
        jw = _j_over_w(p, w)
        _, _, cab = chi_imag_parts(p, w)
        term1 = jw * 2.0 * p.t1 * x_coth_x(x0) * chi_ab_real(p, w)
        term2 = (w * w * jw / p.omega_c) * 2.0 * p.t2 * x_coth_x(y) * cab
        return pref * (term1 - term2)

    alpha_a = _integrate(p, cfg, f_alpha("A"))
    alpha_b = _integrate(p, cfg, f_alpha("B"))
    dalpha_a = -_integrate(p, cfg, f_dalpha)
    return AsymptoticCoeffs(regime="adiabatic", alpha_a=alpha_a, alpha_b=alpha_b,
                            dalpha_a=dalpha_a, dalpha_b=-dalpha_a)


def diabatic_coefficients(p: MachineParams,
                          cfg: QuadratureConfig = QuadratureConfig()) -> AsymptoticCoeffs:
    """Fast-drive coefficients (Omega >> oscillator and cut-off scales).

    dbeta is the residual real-part integral; it becomes negligible once
    Omega/omega_c is large but is reported for completeness.
    """
    pref = 1.0 / (_FOUR_PI * p.m)

    def f_coth2(which):
        def f(w):
            caa, cbb, cab = chi_imag_parts(p, w)
            sel = {"A": caa, "B": cbb, "AB": cab}[which]
            y = w / (2.0 * p.t2)
            return pref * 2.0 * p.t2 * x_coth_x(y) * sel
        return f

    alpha_a = _integrate(p, cfg, f_coth2("A"))
    alpha_b = _integrate(p, cfg, f_coth2("B"))
    dalpha_a = _integrate(p, cfg, f_coth2("AB"))
    beta_int = _integrate(p, cfg, lambda w: pref * chi_ab_real(p, w))
    coth1 = float(x_coth_x(np.array([p.omega_drive / (2.0 * p.t1)]))[0]) / (
        p.omega_drive / (2.0 * p.t1))
    dbeta_a = -coth1 * beta_int
    return AsymptoticCoeffs(regime="diabatic", alpha_a=alpha_a, alpha_b=alpha_b,
                            dalpha_a=dalpha_a, dalpha_b=-dalpha_a,
                            dbeta_a=dbeta_a, dbeta_b=-dbeta_a,
                            c_tilde=dalpha_a / alpha_a)


def diabatic_fluctuation(p: MachineParams, coeffs: AsymptoticCoeffs):
    """(D_PA, D_PB) in the fast-drive limit:
    Omega^2 J1(Omega) coth(Omega/2T1) alpha_l."""
    if coeffs.regime != "diabatic":
        raise ValueError("diabatic coefficients required")
    bath1 = DrudeLorentz(p.gamma1, p.omega_c, p.m)
    om = p.omega_drive
    x = om / (2.0 * p.t1)
    coth1 = float(x_coth_x(np.array([x]))[0]) / x
    scale = om * om * float(spectral_density(bath1, om)) * coth1
    return scale * coeffs.alpha_a, scale * coeffs.alpha_b


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of the pointwise inequality checks behind Q_P >= 2."""

    n_pairs: int
    violations: list = field(default_factory=list)
    margins: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations


def tur_certificate(p: MachineParams, sample: Sequence, tol: float = 1e-10) -> CertificateReport:
    """Check, at every sampled (w, w') pair, the inequalities that make the
    total-power trade-off integrand non-negative:

    (i)   G(w,w') >= (lam_w - lam_w')^2
    (ii)  sign(N/lam) = sign(w (w+Omega))
    (iii) (w+Omega) J1(w+Omega) >= 0
    (iv)  w chi_eff''(w) >= 0
    (v)   the quadratic form behind (iv) has discriminant <= 0
    """
    pairs = np.asarray(sample, dtype=float).reshape(-1, 2)
    w = pairs[:, 0]
    wp = pairs[:, 1]
    om = p.omega_drive
    violations = []
    margins = {}

    def lam_of(v):
        return v / (2.0 * p.t2) - (v + om) / (2.0 * p.t1)

    lw, lwp = lam_of(w), lam_of(wp)
    xw = x_coth_x(lw)
    xwp = x_coth_x(lwp)
    g = lw * lw * xwp + lwp * lwp * xw - 2.0 * lw * lwp
    lhs = g - (lw - lwp) ** 2
    margins["G_minus_sq"] = float(np.min(lhs))
    if np.any(lhs < -tol):
        violations.append("G(w,w') < (lam_w - lam_w')^2")

    # (ii) via the stable cosh representation: sign(N/lam) = sign(x*y)
    for v in (w, wp):
        x = (v + om) / (2.0 * p.t1)
        y = v / (2.0 * p.t2)
        ok = np.abs(x * y) < 1e-300
        ratio = hyp_weight(x, y, "cosh") / np.where(ok, 1.0, x * y)
        n_over_lam = ratio / x_coth_x(y - x)
        bad = ~ok & (np.sign(n_over_lam) * np.sign(v * (v + om)) < 0)
        if np.any(bad):
            violations.append("sign(N/lam) != sign(w(w+Omega))")
            break

    u = w + om
    juj = u * u * _j_over_w(p, u)   # (w+Omega) J1(w+Omega)
    margins["uJ1"] = float(np.min(juj))
    if np.any(juj < -tol):
        violations.append("(w+Omega) J1(w+Omega) < 0")

    wchi = w * chi_eff_imag_closed(p, w)
    margins["w_chi_eff"] = float(np.min(wchi))
    if np.any(wchi < -tol):
        violations.append("w chi_eff''(w) < 0")

    disc = -4.0 * (p.omega_a**2 - p.omega_b**2) ** 2 * math.sin(p.phi) ** 2
    margins["discriminant"] = disc
    if disc > tol:
        violations.append("quadratic-form discriminant > 0")

    return CertificateReport(n_pairs=len(pairs), violations=violations, margins=margins)
