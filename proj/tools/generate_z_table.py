#!/usr/bin/env python3
"""Regenerate data/h2_compressibility_z.csv.

Compressibility factor of normal hydrogen from the correlation of
Lemmon, Huber & Leachman, J. Res. Natl. Inst. Stand. Technol. 113, 341 (2008):

    Z(p, T) = 1 + sum_i a_i * (100 K / T)^b_i * (p / 1 MPa)^c_i

valid for 220 K <= T <= 1000 K and p <= 70 MPa, which covers the shipped
table range (0.1..60 MPa, 270..370 K) with margin. The table is committed
so that the library itself only ever reads tabulated values; run this
script only when changing the grid.
"""

import sys

A = [0.05888460, -0.06136111, -0.002650473, 0.002731125, 0.001802374,
     -0.001150707, 0.9588528e-4, -0.1109040e-6, 0.1264403e-9]
B = [1.325, 1.87, 2.5, 2.8, 2.938, 3.14, 3.37, 3.75, 4.0]
C = [1.0, 1.0, 2.0, 2.0, 2.42, 2.63, 3.0, 4.0, 5.0]


def z_factor(p_mpa: float, temp_k: float) -> float:
    return 1.0 + sum(a * (100.0 / temp_k) ** b * p_mpa ** c
                     for a, b, c in zip(A, B, C))


def main(out_path: str) -> None:
    pressures = [0.1] + [0.5 * k for k in range(1, 121)]   # 0.1, 0.5 .. 60.0 MPa
    temps = [270.0 + 5.0 * k for k in range(21)]           # 270 .. 370 K

    with open(out_path, "w", encoding="utf-8", newline="\n") as f:
        f.write("p_MPa," + ",".join(f"{t:.1f}" for t in temps) + "\n")
        for p in pressures:
            row = ",".join(f"{z_factor(p, t):.8f}" for t in temps)
            f.write(f"{p:.2f},{row}\n")
    print(f"wrote {out_path}: {len(pressures)} pressures x {len(temps)} temperatures")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/h2_compressibility_z.csv")
