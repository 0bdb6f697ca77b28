"""Render preset CSV files from the machine CLI into publication plots.

Standalone script: it talks to the numerical package only through the
documented CSV column schemas.  Any column mismatch is reported as an
explicit diff and the process exits with a non-zero status, so a silent
schema drift between the data producer and this renderer is impossible.

Usage:
    python3 figures/render.py --preset fig3 --in data.csv --out fig3.png
"""

import argparse
import csv
import math
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import TwoSlopeNorm  # noqa: E402

# expected CSV header per preset; order matters
SCHEMAS = {
    "fig2a": ["omega", "gamma2", "lambda_major", "lambda_minor"],
    "fig2b": ["gamma2", "t2", "pearson_C", "pearson_tilde", "converged"],
    "fig3": ["omega_drive", "t", "Q_PA", "P_A", "Q_P", "P", "S_dot",
             "converged"],
    "supfig1": ["omega_drive", "t", "Q_PB", "P_B", "Q_P", "P", "S_dot",
                "converged"],
    "supfig3": ["omega_drive", "t", "Q_PA", "P_A", "Q_P", "P", "S_dot",
                "converged"],
    "fig4": ["omega_drive", "tbar", "Q_PA", "P_A", "Q_P", "P", "S_dot",
             "converged"],
    "supfig4": ["dt_rel", "tbar", "omega_th"],
}


class SchemaError(Exception):
    pass


def load_csv(path, preset):
    expected = SCHEMAS[preset]
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header "
                              f"{','.join(expected)}")
        if header != expected:
            lines = [f"{path}: header does not match preset {preset!r}"]
            width = max(len(c) for c in expected + header)
            lines.append(f"  {'expected'.ljust(width)}   found")
            for i in range(max(len(expected), len(header))):
                e = expected[i] if i < len(expected) else "<missing>"
                f = header[i] if i < len(header) else "<missing>"
                mark = " " if e == f else "!"
                lines.append(f"{mark} {e.ljust(width)}   {f}")
            raise SchemaError("\n".join(lines))
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            if len(raw) != len(expected):
                raise SchemaError(f"{path}:{lineno}: expected "
                                  f"{len(expected)} fields, got {len(raw)}")
            rows.append(raw)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    cols = {}
    for j, name in enumerate(expected):
        vals = []
        for raw in rows:
            cell = raw[j]
            if cell == "":
                vals.append(math.nan)
            elif name == "converged":
                vals.append(1.0 if cell in ("True", "true", "1") else 0.0)
            else:
                vals.append(float(cell))
        cols[name] = np.array(vals)
    return cols


def pivot(cols, xname, yname, zname):
    """Rebuild the 2D grid from row-major sweep output."""
    x = np.unique(cols[xname])
    y = np.unique(cols[yname])
    if len(x) * len(y) != len(cols[zname]):
        raise SchemaError(
            f"rows do not form a full {len(x)}x{len(y)} grid over "
            f"{xname} and {yname}")
    z = np.full((len(y), len(x)), np.nan)
    xi = np.searchsorted(x, cols[xname])
    yi = np.searchsorted(y, cols[yname])
    z[yi, xi] = cols[zname]
    return x, y, z


def render_lines_fig2a(cols, ax):
    for g2 in np.unique(cols["gamma2"]):
        sel = cols["gamma2"] == g2
        ax.plot(cols["omega"][sel], cols["lambda_major"][sel],
                label=rf"$\gamma_2 = {g2:g}$")
    ax.set_xlabel(r"$\omega \,/\, \omega_A$")
    ax.set_ylabel(r"major eigenvalue of $\omega\,\mathrm{Im}\,\chi$")
    ax.legend()


def render_lines_fig2b(cols, ax):
    for g2 in np.unique(cols["gamma2"]):
        sel = cols["gamma2"] == g2
        order = np.argsort(cols["t2"][sel])
        ax.plot(cols["t2"][sel][order], cols["pearson_C"][sel][order],
                label=rf"$\gamma_2 = {g2:g}$")
    ax.set_xscale("log")
    ax.set_ylim(-1.0, 0.0)
    ax.set_xlabel(r"$T_2 \,/\, \omega_A$")
    ax.set_ylabel(r"Pearson coefficient $\mathcal{C}$")
    ax.legend()


def render_lines_supfig4(cols, ax):
    for tbar in np.unique(cols["tbar"]):
        sel = cols["tbar"] == tbar
        order = np.argsort(cols["dt_rel"][sel])
        ax.plot(cols["dt_rel"][sel][order], cols["omega_th"][sel][order],
                marker="o", label=rf"$\bar T = {tbar:g}$")
    ax.set_xlabel(r"$\Delta T \,/\, \bar T$")
    ax.set_ylabel(r"violation threshold $\Omega_{\mathrm{th}} / \omega_A$")
    ax.legend()


def render_heatmap(cols, ax, fig, preset):
    yname = "tbar" if preset == "fig4" else "t"
    qname = "Q_PB" if preset == "supfig1" else "Q_PA"
    pname = "P_B" if preset == "supfig1" else "P_A"
    x, y, q = pivot(cols, "omega_drive", yname, qname)
    _, _, p = pivot(cols, "omega_drive", yname, pname)

    # clip for display only; the bound Q = 2 splits the diverging map
    qm = np.ma.masked_invalid(q)
    vmax = float(np.nanpercentile(q, 95)) if np.isfinite(q).any() else 4.0
    vmax = max(vmax, 2.0 + 1e-6)
    norm = TwoSlopeNorm(vcenter=2.0, vmin=0.0, vmax=vmax)
    mesh = ax.pcolormesh(x, y, qm, norm=norm, cmap="RdBu_r",
                         shading="nearest")
    fig.colorbar(mesh, ax=ax, label=qname)

    # dashed contour at the precision bound and at zero output power
    ax.contour(x, y, q, levels=[2.0], colors="k", linestyles="--",
               linewidths=1.2)
    if np.nanmin(p) < 0.0 < np.nanmax(p):
        ax.contour(x, y, p, levels=[0.0], colors="0.3", linestyles="--",
                   linewidths=1.0)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel(r"$\Omega \,/\, \omega_A$")
    ax.set_ylabel(r"$\bar T \,/\, \omega_A$" if yname == "tbar"
                  else r"$T \,/\, \omega_A$")


def render(preset, cols, out_path):
    fig, ax = plt.subplots(figsize=(6.0, 4.5), dpi=150)
    if preset == "fig2a":
        render_lines_fig2a(cols, ax)
    elif preset == "fig2b":
        render_lines_fig2b(cols, ax)
    elif preset == "supfig4":
        render_lines_supfig4(cols, ax)
    else:
        render_heatmap(cols, ax, fig, preset)
    fig.tight_layout()
    fig.savefig(out_path, metadata={"Software": "figures/render.py"})
    plt.close(fig)


def main(argv=None):
    parser = argparse.ArgumentParser(
        description="render machine-sweep CSV presets into figures")
    parser.add_argument("--preset", required=True, choices=sorted(SCHEMAS))
    parser.add_argument("--in", dest="infile", required=True,
                        help="input CSV produced by the figure-data command")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        cols = load_csv(args.infile, args.preset)
        render(args.preset, cols, args.out)
    except SchemaError as exc:
        print(exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print(exc, file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
