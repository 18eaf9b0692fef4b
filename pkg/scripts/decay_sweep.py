"""Curvature and Euler characteristic of decaying atomic tuples as the decay weakens.

    python scripts/decay_sweep.py --n 2 --d 1 --kmax 14
"""

import argparse
import csv
import sys
from fractions import Fraction

from ncurv import catalog
from ncurv import invariants as inv
from ncurv.cpmap import defect_sequence

DEFAULT_LAMS = ["0", "1/4", "1/2", "3/4", "9/10", "99/100", "999/1000"]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--d", type=int, default=1, help="ring length; only the first letter decays")
    p.add_argument("--kmax", type=int, default=14)
    p.add_argument("--lams", nargs="+", default=DEFAULT_LAMS)
    args = p.parse_args(argv)

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["lambda", "K_value", "K_upper", "K_closed_form", "chi_value", "chi_expected"])
    for s in args.lams:
        lam = Fraction(s)
        e = catalog.entry_decaying_lambda(lam, args.n, args.d)
        seq = defect_sequence(e.make(), args.kmax)
        K, chi = inv.curvature_from(seq), inv.euler_from(seq)
        closed = catalog.one_dim_curvature(args.n, lam * lam) if args.d == 1 else ""
        w.writerow([s, f"{float(K.value):.8f}", f"{float(K.upper_bound):.8f}", closed and f"{float(closed):.8f}", chi.value, e.expected.get("euler", "")])


if __name__ == "__main__":
    main()
