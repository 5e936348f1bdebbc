#!/usr/bin/env python3
"""Compare the hook criterion, the dual canonical product test and the
Burnside test on S_lam(1) x S_lam(u^a) for every lam up to a given size."""

import argparse
import json
from fractions import Fraction

from hecke_irred.partitions import partitions_of
from hecke_irred.suites import CoefficientLog, triple_agreement


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--a-max", type=int, default=5)
    ap.add_argument("--u", type=Fraction, default=Fraction(3))
    args = ap.parse_args()
    shapes = [L for n in range(1, args.max_size + 1) for L in partitions_of(n)]
    log = CoefficientLog()
    res = triple_agreement(shapes, args.a_max, args.u, log)
    for r in res["rows"]:
        mark = "ok " if r["hook"] == r["product"] == r["burnside"] == r["expected"] else "BAD"
        print(f"{mark} lam={r['lambda']:<6} a={r['a']}  simple={r['hook']!s:<5} dim={r['dim']}")
    print(json.dumps({"cases": res["cases"], "failures": len(res["failures"]), "seconds": round(res["seconds"], 1),
                      "coefficients_nonnegative": log.all_nonnegative_integers}))


if __name__ == "__main__":
    main()
