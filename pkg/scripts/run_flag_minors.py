#!/usr/bin/env python3
"""Weak separation of column sets against simplicity of products of flag
minors: all pairs in small windows, and triples of evaluation minors."""

import argparse
import json

from hecke_irred.suites import CoefficientLog, flag_minor_equivalence, triple_flag_products


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs-window", type=int, default=4)
    ap.add_argument("--triples-window", type=int, default=6)
    args = ap.parse_args()
    log = CoefficientLog()
    pairs = flag_minor_equivalence(args.pairs_window, log)
    trips = triple_flag_products(args.triples_window, log)
    for res in (pairs, trips):
        print(json.dumps({k: res[k] for k in ("suite", "cases", "ok", "failures")}))
    print(f"{len(log.values)} coefficients, all nonnegative integers: {log.all_nonnegative_integers}")


if __name__ == "__main__":
    main()
