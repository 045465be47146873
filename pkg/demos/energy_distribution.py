"""Gaussian distribution of the Casimir energy over disorder realizations.

For a few plate separations, computes the mean one-loop Casimir energy
of the Drude pair, the disorder-fluctuation width W, and plots the
resulting Gaussian probability density, marking the plasma-pair energy
to show whether the two models are statistically distinguishable.

Run from the repository root:

    python3 demos/energy_distribution.py

Writes energy_distribution.png next to this script and prints a summary
table (including the C1/C2 fits, so it takes a few minutes).
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from casimirwl import energy_distribution, fluctuation_report

SEPARATIONS = (250e-9, 500e-9, 1000e-9)
TEMPERATURE = 0.1


def main():
    fig, axes = plt.subplots(1, len(SEPARATIONS),
                             figsize=(3.2 * len(SEPARATIONS), 3.2))
    print(f"{'a [nm]':>7} {'E0_drude':>12} {'E0_plasma':>12} {'W':>10} "
          f"{'W/|E0|':>8} {'W/gap':>8} {'peaked':>7}")
    for ax, a in zip(np.atleast_1d(axes), SEPARATIONS):
        rep = fluctuation_report(separation_a=a, temperature=TEMPERATURE,
                                 run_fits=(a == SEPARATIONS[0]))
        print(f"{a * 1e9:7.0f} {rep.e0_drude:12.3e} {rep.e0_plasma:12.3e} "
              f"{rep.width_w:10.2e} {rep.ratio_w_over_e0:8.4f} "
              f"{rep.ratio_w_over_gap:8.4f} {str(rep.sharply_peaked):>7}")
        if a == SEPARATIONS[0]:
            print(f"        fits: C1 = {rep.c1:.4f}, C2 = {rep.c2:.4f}")
        es = np.linspace(rep.e0_drude - 4 * rep.width_w,
                         rep.e0_drude + 4 * rep.width_w, 401)
        ax.plot(es * 1e9, energy_distribution(rep.e0_drude, rep.width_w, es),
                color="tab:blue")
        ax.axvline(rep.e0_plasma * 1e9, color="tab:green", ls="--",
                   label="plasma")
        ax.set_xlabel(r"E  [nJ/m$^2$]")
        ax.set_title(f"a = {a * 1e9:.0f} nm", fontsize=9)
        ax.legend(fontsize=7)
    np.atleast_1d(axes)[0].set_ylabel("probability density")
    fig.tight_layout()
    out = pathlib.Path(__file__).with_name("energy_distribution.png")
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
