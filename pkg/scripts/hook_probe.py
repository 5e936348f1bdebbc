#!/usr/bin/env python3
"""List every shape where the rectangle formula lam_i + l_j - i - j + 1
reaches values (up to sign) that are not hook lengths."""

import argparse

from hecke_irred.suites import hook_probe


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=12)
    args = ap.parse_args()
    res = hook_probe(args.max_size)
    for row in res["counterexamples"]:
        print(f"{row['lambda']:<24} extra {row['extra']}")
    print(f"{len(res['counterexamples'])} of {res['cases']} shapes disagree")


if __name__ == "__main__":
    main()
