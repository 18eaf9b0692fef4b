"""Curvature of the binary-expansion compressions for every bit string of a given length.

    python scripts/binary_sweep.py --length 4 --kmax 14
"""

import argparse
import csv
import itertools
import sys

from ncurv import catalog
from ncurv import invariants as inv
from ncurv.cpmap import defect_sequence


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--length", type=int, default=4)
    p.add_argument("--kmax", type=int, default=14)
    args = p.parse_args(argv)

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["bits", "r", "K_value", "chi_value", "abs_error", "allowed"])
    for bits in itertools.product((0, 1), repeat=args.length):
        e = catalog.entry_binary_expansion(bits)
        seq = defect_sequence(e.make(), args.kmax)
        K, chi = inv.curvature_from(seq), inv.euler_from(seq)
        r = e.params["r"]
        err = abs(K.value - r)
        w.writerow(["".join(map(str, bits)), r, f"{float(K.value):.8f}", f"{float(chi.value):.8f}", f"{float(err):.2e}", f"{float(e.allowed_gap(args.kmax, seq.ranks[0])):.2e}"])


if __name__ == "__main__":
    main()
