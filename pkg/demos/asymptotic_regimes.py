"""Slow-drive and fast-drive expansions versus the full calculation.

The steady-state powers admit closed expansions at the two ends of the
drive-frequency axis.  Slow drive: the total power is quadratic in
Omega with a coefficient set by a single zero-frequency integral, and
the per-oscillator powers carry an extra linear term of equal and
opposite sign (a circulating power that cancels in the sum).  Fast
drive: every power scales with Omega * J1(Omega), so the Drude cut-off
suppresses everything while shaping the precision quantifier tail
Q_PA ~ 1/Omega.  This demo checks both limits numerically.

Run:  python3 demos/asymptotic_regimes.py
"""

from synctur import (
    MachineParams,
    QuadratureConfig,
    adiabatic_coefficients,
    diabatic_coefficients,
    diabatic_fluctuation,
    thermo_report,
)

CFG = QuadratureConfig(rel_tol=1e-9)


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


def main():
    p = MachineParams(t1=0.1, t2=0.1)

    print("slow drive (Omega = 1e-3)")
    ad = adiabatic_coefficients(p, CFG)
    om = 1e-3
    r = thermo_report(p.replace(omega_drive=om), CFG)
    pred_p = om * om * (ad.alpha_a + ad.alpha_b)
    pred_pa = om * ad.dalpha_a
    print(f"  P    full {r.P: .6e}   expansion {pred_p: .6e}"
          f"   rel dev {rel(r.P, pred_p):.2e}")
    print(f"  P_A  full {r.P_A: .6e}   linear term {pred_pa: .6e}"
          f"   rel dev {rel(r.P_A, pred_pa):.2e}")
    print(f"  (delta coefficients opposite: {ad.dalpha_a: .4e}"
          f" vs {ad.dalpha_b: .4e})")

    print("\nfast drive (Omega = 1e3)")
    pf = p.replace(omega_drive=1e3)
    dia = diabatic_coefficients(pf, CFG)
    rf = thermo_report(pf, CFG)
    d_pa, _ = diabatic_fluctuation(pf, dia)
    print(f"  D_PA full {rf.D_PA: .6e}   closed form {d_pa: .6e}"
          f"   rel dev {rel(rf.D_PA, d_pa):.2e}")
    q1 = thermo_report(p.replace(omega_drive=1e3), CFG).Q_PA * 1e3
    q2 = thermo_report(p.replace(omega_drive=2e3), CFG).Q_PA * 2e3
    print(f"  Q_PA * Omega at 1e3: {q1:.4f}   at 2e3: {q2:.4f}"
          f"   (1/Omega tail)")


if __name__ == "__main__":
    main()
