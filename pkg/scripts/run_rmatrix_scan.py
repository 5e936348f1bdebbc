#!/usr/bin/env python3
"""Reconstruct normalised R-matrices as rational functions of z and list
their poles and zeros as powers of u = v^2.

Set HECKE_IRRED_WORKERS to spread the sample solves over processes."""

import argparse
import json
from fractions import Fraction

from hecke_irred.partitions import Partition
from hecke_irred.rmatrix import singularity_scan
from hecke_irred.suites import RMATRIX_CASES


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lambda", dest="lam", help="single shape, e.g. 2,1 (default: the standard five cases)")
    ap.add_argument("--N", type=int, default=2)
    ap.add_argument("--v", type=Fraction, default=Fraction(2))
    args = ap.parse_args()
    cases = [(Partition.parse(args.lam).parts, args.N)] if args.lam else RMATRIX_CASES
    for lam, N in cases:
        rep = singularity_scan(Partition(lam), N, args.v)
        js = rep.to_json()
        for key in ("poles", "zeros"):
            js[key] = [p["u_exponent"] for p in js[key]]
        print(json.dumps(js, sort_keys=True))


if __name__ == "__main__":
    main()
