"""Temperature and distance dependence of the three response models.

Computes the normalized Casimir pressure P / P0(a) for the plasma,
Drude, and Drude+WL plate pairs over a temperature scan at fixed
separation and a separation scan at fixed temperature, then prints the
suppression metrics (the WL deficit relative to the plasma-Drude gap).

Run from the repository root:

    python3 demos/model_comparison.py

Writes model_comparison.png next to this script and prints tables.
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from casimirwl import suppression_metrics, ideal_pressure

TEMPS = np.array([0.1, 0.3, 1.0, 3.0, 10.0])
SEPARATIONS = np.array([150e-9, 250e-9, 400e-9, 700e-9, 1200e-9])


def scan(temps, seps):
    """suppression_metrics over a 1D scan (one of temps/seps has len 1)."""
    out = []
    for t in np.atleast_1d(temps):
        for a in np.atleast_1d(seps):
            m = suppression_metrics(t, a)
            p0 = ideal_pressure(a)
            out.append((t, a, m.p_plasma / p0, m.p_drude / p0, m.p_wl / p0,
                        m.ratio))
    return np.array(out)


def print_table(rows, label):
    print(f"\n{label}")
    print(f"{'T [K]':>7} {'a [nm]':>8} {'plasma':>9} {'Drude':>9} "
          f"{'Drude+WL':>9} {'WL/gap':>8}")
    for t, a, pl, dr, wl, ratio in rows:
        print(f"{t:7.2f} {a * 1e9:8.0f} {pl:9.5f} {dr:9.5f} {wl:9.5f} "
              f"{ratio:8.4f}")


def main():
    t_rows = scan(TEMPS, 250e-9)
    a_rows = scan(0.1, SEPARATIONS)
    print_table(t_rows, "temperature scan at a = 250 nm")
    print_table(a_rows, "separation scan at T = 0.1 K")

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    for idx, label, color in ((2, "plasma", "tab:green"),
                              (3, "Drude", "tab:blue"),
                              (4, "Drude+WL", "tab:red")):
        ax1.semilogx(t_rows[:, 0], t_rows[:, idx], "o-", color=color,
                     label=label)
        ax2.semilogx(a_rows[:, 1] * 1e9, a_rows[:, idx], "o-", color=color,
                     label=label)
    ax1.set_xlabel("T [K]")
    ax1.set_ylabel(r"$P / P_0(a)$")
    ax1.legend(fontsize=8)
    ax2.set_xlabel("a [nm]")
    fig.tight_layout()
    out = pathlib.Path(__file__).with_name("model_comparison.png")
    fig.savefig(out, dpi=150)
    print(f"\nwrote {out}")


if __name__ == "__main__":
    main()
