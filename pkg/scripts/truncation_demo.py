"""Truncations of the left regular tuple: stable defect rank and the Euler characteristic.

Each truncation is nilpotent, so its defect becomes the identity on the
``(n^l - 1)/(n - 1)`` words of length ``< l`` and the Euler characteristic is
0, while the untruncated tuple has Euler characteristic 1.

    python scripts/truncation_demo.py --n 2 --lmax 5
"""

import argparse
import csv
import sys

from ncurv import catalog
from ncurv import invariants as inv
from ncurv import scalars as sc
from ncurv.cpmap import defect_sequence
from ncurv.operators import LeftRegular


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--lmax", type=int, default=5)
    p.add_argument("--kmax", type=int, default=12)
    args = p.parse_args(argv)
    n = args.n

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["l", "ranks", "stable_rank", "(n^l-1)/(n-1)", "(n^l-l)/(n-1)", "chi_value"])
    for l in range(1, args.lmax + 1):
        seq = defect_sequence(catalog.truncation_tuple(n, l, sc.EXACT), args.kmax)
        chi = inv.euler_from(seq)
        w.writerow([l, " ".join(map(str, seq.ranks)), seq.ranks[-1], (n**l - 1) // (n - 1), ratio_text(n**l - l, n - 1), f"{float(chi.value):.6f}"])
    chi = inv.euler(LeftRegular(n, 1, sc.EXACT), args.kmax)
    w.writerow(["inf", "", "", "", "", f"{float(chi.value):.6f}"])


def ratio_text(a, b):
    return str(a // b) if a % b == 0 else f"{a}/{b}"


if __name__ == "__main__":
    main()
