#!/usr/bin/env python3
"""Check K(1) against composition multiplicities of standard modules, and
print the K-matrix of one weight if asked."""

import argparse
import json

from hecke_irred.suites import kmatrix_gate
from hecke_irred.uqn_canonical import canonical_K


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=4)
    ap.add_argument("--N", type=int, default=4)
    ap.add_argument("--show", help='weight to print, e.g. "1:1,2:2,3:1"')
    args = ap.parse_args()
    if args.show:
        nu = {int(a): int(c) for a, c in (t.split(":") for t in args.show.split(","))}
        K = canonical_K(None, nu)
        for m, row in zip(K.index, K.to_json()["entries"]):
            print(f"{str(m):<28} " + "  ".join(f"{x:>8}" for x in row))
        return
    res = kmatrix_gate(args.max_degree, args.N)
    print(json.dumps({k: res[k] for k in ("cases", "ok", "failures")}, indent=1))
    print(f"{res['seconds']:.1f}s")


if __name__ == "__main__":
    main()
