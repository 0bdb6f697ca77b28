"""Period-averaged thermodynamic observables and synchronization measures.

All quantities are frequency integrals of the dressed response times
thermal weights of the two baths (bath 1: Drude-Lorentz, driven; bath 2:
strictly Ohmic, static).  With x = (w+Omega)/2T1, y = w/2T2 and
lam = y - x, every integrand is assembled from the fused weight

    W(w) = [J1(w+Omega)/(w+Omega)] * 4 T1 T2 * (x/sinh x)(y/sinh y)

and Im(chi)/w ratios, so the removable singularities at w = 0 and
w = -Omega never materialize:

    P_l^(0) = -Omega Int dw/(4 pi m) W sinh(lam) [chi_ll''/w + cos(phi) chi_AB''/w]
    J_1     =        Int dw/(4 pi m) (w+Omega) W sinh(lam) chi_eff''/w
    D_P(l)  = Omega^2 Int dw/(4 pi m) W cosh(lam) chi''/w
    S_dot   =      2 Int dw/(4 pi m) W lam sinh(lam) chi_eff''/w   (cross-check)

J2 is fixed by the balance P + J1 + J2 = 0; the direct S_dot integral
provides the redundancy check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .quadrature import IntegralResult, QuadratureConfig, integrate_real_line
from .response import MachineParams, chi_ab_real, chi_imag_parts
from .spectral import (
    coth_stable,
    hyp_weight,
    x_coth_x,
)

__all__ = [
    "ThermoReport",
    "SyncReport",
    "QuadratureConvergenceError",
    "thermal_kernel",
    "power_components",
    "heat_currents",
    "entropy_rate",
    "entropy_rate_integral",
    "power_fluctuations",
    "tur_quantifiers",
    "sync_report",
    "efficiency",
    "thermo_report",
    "standard_breakpoints",
    "characteristic_scales",
]

_FOUR_PI = 4.0 * math.pi


class QuadratureConvergenceError(RuntimeError):
    """An observable integral failed to converge; carries its name."""

    def __init__(self, name: str, result: IntegralResult):
        super().__init__(f"integral {name!r} did not converge "
                         f"(error estimate {result.error_estimate:.3e})")
        self.name = name
        self.result = result


@dataclass(frozen=True)
class ThermoReport:
    """All period-averaged observables at one parameter point.

    Sign convention: positive power = injection into the working medium.
    Q fields are None when the corresponding mean power is numerically
    zero (sweeps cross P = 0 contours).
    """

    P_A0: float
    P_B0: float
    dP_A: float
    dP_B: float
    P_A: float
    P_B: float
    P: float
    J1: float
    J2: float
    S_dot: float
    D_PA: float
    D_PB: float
    D_P: float
    Q_P: Optional[float]
    Q_PA: Optional[float]
    Q_PB: Optional[float]
    eta: Optional[float]
    integral_errors: dict = field(default_factory=dict)
    integral_converged: dict = field(default_factory=dict)
    evaluations: int = 0

    @property
    def eps_num(self) -> float:
        """10x the summed quadrature error estimates of the ingredients."""
        return 10.0 * sum(self.integral_errors.values())

    @property
    def all_converged(self) -> bool:
        return all(self.integral_converged.values())


@dataclass(frozen=True)
class SyncReport:
    """Equal-time position correlators and Pearson coefficients."""

    var_AA: float
    var_BB: float
    cov_AB: float
    pearson_C: float
    pearson_tilde: float
    integral_errors: dict = field(default_factory=dict)
    integral_converged: dict = field(default_factory=dict)

    @property
    def eps_num(self) -> float:
        return 10.0 * sum(self.integral_errors.values())

    @property
    def all_converged(self) -> bool:
        return all(self.integral_converged.values())


def thermal_kernel(w: float, omega: float, t1: float, t2: float):
    """(N, lam, N/lam) with N = coth((w+O)/2T1) - coth(w/2T2),
    lam = w/2T2 - (w+O)/2T1.

    N/lam is evaluated through the cosh/sinh identity
    N/lam = cosh(lam) / [sinh(x) sinh(y) * lam coth(lam)], which is stable
    through lam -> 0 and carries sign(w (w+Omega)).
    """
    x = (w + omega) / (2.0 * t1)
    y = w / (2.0 * t2)
    lam = y - x
    if x == 0.0 or y == 0.0:
        # coth pole: N and N/lam diverge; the integrand assembly fuses
        # these with J1 ~ u and chi'' ~ w before they are ever evaluated.
        n = math.inf if (x == 0.0 and y < 0.0) or (y == 0.0 and x > 0.0) else -math.inf
        return n, lam, math.inf
    n = coth_stable(x) - coth_stable(y)
    # stable ratio: N/lam = cosh(lam) / [sinh(x) sinh(y) lam coth(lam)]
    num = float(hyp_weight(np.array([x]), np.array([y]), "cosh")[0])
    n_over_lam = num / (x * y * float(x_coth_x(np.array([lam]))[0]))
    return n, lam, n_over_lam


def characteristic_scales(p: MachineParams) -> tuple:
    return (p.omega_a, p.omega_b, p.omega_drive, p.omega_c, p.t1, p.t2, p.gamma2)


def standard_breakpoints(p: MachineParams) -> list:
    """Panel boundaries: removable points, resonances and their widths.

    The dressed response peaks at +-omega_bar with half-width
    ~ (wA^2-wB^2)^2/(16 gamma2 wbar^3) at strong damping and at
    +-omega_{A,B} with half-width ~ gamma2/2 at weak damping; anchoring
    panels there lets the adaptive refinement lock onto narrow lines.
    """
    wa, wb, wbar = p.omega_a, p.omega_b, p.omega_bar
    delta = 0.5 * abs(p.omega_a**2 - p.omega_b**2)
    width_strong = delta**2 / (4.0 * p.gamma2 * wbar**2 * wbar)
    width_weak = 0.5 * p.gamma2
    centers = []
    for c, wd in ((wa, width_weak), (wb, width_weak), (wbar, width_strong)):
        for s in (1.0, -1.0):
            centers.extend([s * c, s * c - wd, s * c + wd])
    om = p.omega_drive
    pts = [0.0, -om] + centers + [x - om for x in centers]
    pts += [p.omega_c, -p.omega_c, -om + p.omega_c, -om - p.omega_c]
    pts += [2.0 * p.t2, -2.0 * p.t2, -om + 2.0 * p.t1, -om - 2.0 * p.t1]
    return pts


def _j_over_w(p: MachineParams, u: np.ndarray) -> np.ndarray:
    """J1(u)/u for the driven Drude-Lorentz bath (even, finite)."""
    return p.m * p.gamma1 / (1.0 + (u / p.omega_c) ** 2)


def _fused_weight(p: MachineParams, w: np.ndarray, mode: str) -> np.ndarray:
    """J1(w+O)/(w+O) * 4 T1 T2 * (x/sinh x)(y/sinh y) * f_mode(lam)."""
    u = w + p.omega_drive
    x = u / (2.0 * p.t1)
    y = w / (2.0 * p.t2)
    return _j_over_w(p, u) * 4.0 * p.t1 * p.t2 * hyp_weight(x, y, mode)


def _integrate(p, cfg, f, name, results, strict):
    res = integrate_real_line(f, standard_breakpoints(p), cfg,
                              scales=characteristic_scales(p))
    if strict and not res.converged:
        raise QuadratureConvergenceError(name, res)
    results[name] = res
    return res.value


def power_components(p: MachineParams, cfg: QuadratureConfig = QuadratureConfig(),
                     *, strict: bool = True, results: dict | None = None) -> dict:
    """P_l^(0), delta P_l, P_l and the total power P.

    delta P carries the explicit time-reversal-breaking factor -+sin(phi);
    the total power P = P_A^(0) + P_B^(0) has no such term.
    """
    if results is None:
        results = {}
    pref = 1.0 / (_FOUR_PI * p.m)
    cphi, sphi = math.cos(p.phi), math.sin(p.phi)

    def f_pl0(which):
        def f(w):
            caa, cbb, cab = chi_imag_parts(p, w)
            diag = caa if which == "A" else cbb
            return -p.omega_drive * pref * _fused_weight(p, w, "sinh") * (diag + cphi * cab)
        return f

    p_a0 = _integrate(p, cfg, f_pl0("A"), "P_A0", results, strict)
    p_b0 = _integrate(p, cfg, f_pl0("B"), "P_B0", results, strict)

    def f_dp(w):
        u = w + p.omega_drive
        x = u / (2.0 * p.t1)
        y = w / (2.0 * p.t2)
        jw = _j_over_w(p, u)
        _, _, cab = chi_imag_parts(p, w)
        term1 = jw * 2.0 * p.t1 * x_coth_x(x) * chi_ab_real(p, w)
        term2 = (u * u * jw / p.omega_c) * 2.0 * p.t2 * x_coth_x(y) * cab
        return pref * (term1 - term2)

    if sphi == 0.0:
        dp_a = dp_b = 0.0
        results["dP_A"] = IntegralResult(0.0, 0.0, 0, True)
    else:
        base = _integrate(p, cfg, f_dp, "dP_A", results, strict)
        dp_a = -p.omega_drive * sphi * base
        dp_b = -dp_a
        r = results["dP_A"]
        results["dP_A"] = IntegralResult(dp_a, abs(p.omega_drive * sphi) * r.error_estimate,
                                         r.evaluations, r.converged)
    return {
        "P_A0": p_a0, "P_B0": p_b0, "dP_A": dp_a, "dP_B": dp_b,
        "P_A": p_a0 + dp_a, "P_B": p_b0 + dp_b, "P": p_a0 + p_b0,
    }


def heat_currents(p: MachineParams, cfg: QuadratureConfig = QuadratureConfig(),
                  *, power: float | None = None, strict: bool = True,
                  results: dict | None = None):
    """(J1, J2): J1 by its integral, J2 = -P - J1 by exact balance."""
    if results is None:
        results = {}
    if power is None:
        power = power_components(p, cfg, strict=strict, results=results)["P"]
    pref = 1.0 / (_FOUR_PI * p.m)
    cphi = math.cos(p.phi)

    def f_j1(w):
        caa, cbb, cab = chi_imag_parts(p, w)
        eff = caa + cbb + 2.0 * cphi * cab
        return (w + p.omega_drive) * pref * _fused_weight(p, w, "sinh") * eff

    j1 = _integrate(p, cfg, f_j1, "J1", results, strict)
    return j1, -power - j1


def entropy_rate(j1: float, j2: float, t1: float, t2: float) -> float:
    """S_dot = -J1/T1 - J2/T2 (>= 0 by the second law)."""
    return -j1 / t1 - j2 / t2


def entropy_rate_integral(p: MachineParams, cfg: QuadratureConfig = QuadratureConfig(),
                          *, strict: bool = True, results: dict | None = None) -> float:
    """Direct integral form of S_dot; manifestly non-negative integrand."""
    if results is None:
        results = {}
    pref = 2.0 / (_FOUR_PI * p.m)
    cphi = math.cos(p.phi)

    def f(w):
        caa, cbb, cab = chi_imag_parts(p, w)
        eff = caa + cbb + 2.0 * cphi * cab
        return pref * _fused_weight(p, w, "lamsinh") * eff

    return _integrate(p, cfg, f, "S_dot_integral", results, strict)


def power_fluctuations(p: MachineParams, cfg: QuadratureConfig = QuadratureConfig(),
                       *, strict: bool = True, results: dict | None = None):
    """(D_PA, D_PB, D_P); D_P includes the 2 cos(phi) cross term."""
    if results is None:
        results = {}
    pref = p.omega_drive**2 / (_FOUR_PI * p.m)
    cphi = math.cos(p.phi)

    def f_d(which):
        def f(w):
            caa, cbb, cab = chi_imag_parts(p, w)
            if which == "A":
                sel = caa
            elif which == "B":
                sel = cbb
            else:
                sel = caa + cbb + 2.0 * cphi * cab
            return pref * _fused_weight(p, w, "cosh") * sel
        return f

    d_pa = _integrate(p, cfg, f_d("A"), "D_PA", results, strict)
    d_pb = _integrate(p, cfg, f_d("B"), "D_PB", results, strict)
    d_p = _integrate(p, cfg, f_d("P"), "D_P", results, strict)
    return d_pa, d_pb, d_p


def tur_quantifiers(s_dot: float, d_vals: tuple, powers: tuple,
                    abs_tol: float = 1e-12):
    """Q_O = S_dot * D_O / O^2 for O in (P, P_A, P_B); None if |O| < abs_tol."""
    out = []
    for d, o in zip(d_vals, powers):
        out.append(None if abs(o) < abs_tol else s_dot * d / (o * o))
    return tuple(out)


def efficiency(p_a: float, p_b: float) -> Optional[float]:
    """eta = -P_A/P_B in the work-to-work converter regime, else None."""
    if p_b > 0.0 and p_a < 0.0:
        return -p_a / p_b
    return None


def sync_report(p: MachineParams, cfg: QuadratureConfig = QuadratureConfig(),
                *, strict: bool = True) -> SyncReport:
    """Position correlators of the statically dressed (undriven) system.

    <dx_l dx_l'> = Int dw/(4 pi m) coth(w/2T2) Im chi^(l,l')(w); only
    gamma2, T2, m and the oscillator frequencies enter.
    """
    results: dict = {}
    pref = 1.0 / (_FOUR_PI * p.m)

    def f_corr(which):
        def f(w):
            caa, cbb, cab = chi_imag_parts(p, w)
            sel = {"AA": caa, "BB": cbb, "AB": cab}[which]
            y = w / (2.0 * p.t2)
            return pref * 2.0 * p.t2 * x_coth_x(y) * sel
        return f

    var_aa = _integrate(p, cfg, f_corr("AA"), "var_AA", results, strict)
    var_bb = _integrate(p, cfg, f_corr("BB"), "var_BB", results, strict)
    cov_ab = _integrate(p, cfg, f_corr("AB"), "cov_AB", results, strict)
    if var_aa <= 0.0 or var_bb <= 0.0:
        raise ArithmeticError("position variance came out non-positive (bug guard)")
    return SyncReport(
        var_AA=var_aa, var_BB=var_bb, cov_AB=cov_ab,
        pearson_C=cov_ab / math.sqrt(var_aa * var_bb),
        pearson_tilde=cov_ab / var_aa,
        integral_errors={k: r.error_estimate for k, r in results.items()},
        integral_converged={k: r.converged for k, r in results.items()},
    )


def thermo_report(p: MachineParams, cfg: QuadratureConfig = QuadratureConfig(),
                  *, strict: bool = True) -> ThermoReport:
    """Evaluate every thermodynamic observable at one parameter point."""
    results: dict = {}
    pw = power_components(p, cfg, strict=strict, results=results)
    j1, j2 = heat_currents(p, cfg, power=pw["P"], strict=strict, results=results)
    s_dot = entropy_rate(j1, j2, p.t1, p.t2)
    d_pa, d_pb, d_p = power_fluctuations(p, cfg, strict=strict, results=results)
    q_p, q_pa, q_pb = tur_quantifiers(
        s_dot, (d_p, d_pa, d_pb), (pw["P"], pw["P_A"], pw["P_B"]), cfg.abs_tol)
    return ThermoReport(
        P_A0=pw["P_A0"], P_B0=pw["P_B0"], dP_A=pw["dP_A"], dP_B=pw["dP_B"],
        P_A=pw["P_A"], P_B=pw["P_B"], P=pw["P"],
        J1=j1, J2=j2, S_dot=s_dot,
        D_PA=d_pa, D_PB=d_pb, D_P=d_p,
        Q_P=q_p, Q_PA=q_pa, Q_PB=q_pb,
        eta=efficiency(pw["P_A"], pw["P_B"]),
        integral_errors={k: r.error_estimate for k, r in results.items()},
        integral_converged={k: r.converged for k, r in results.items()},
        evaluations=sum(r.evaluations for r in results.values()),
    )
