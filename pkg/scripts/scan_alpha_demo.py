#!/usr/bin/env python3
"""Walk the weight parameter for the bundled toy system and print the
wall structure: every crossing candidate, the filtration type on each
side, and the certified walls.

The interesting part is watching the section weight overtake the sheaf
slope: below the wall the system splits off its free part first, above
it the section-carrying subsystem rises to the top.
"""

import argparse
from fractions import Fraction

from commacat.acceptance import bundled_toy_system
from commacat.stability import alpha_grid_probe, alpha_scan


def fmt_type(t):
    return " + ".join(str(tuple(c)) for c in t)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lo", default="1/2")
    parser.add_argument("--hi", default="4")
    args = parser.parse_args()

    cat, system, geometry, _, _ = bundled_toy_system()
    lo, hi = Fraction(args.lo), Fraction(args.hi)
    print(f"system class: {cat.class_vector(system)}")
    print(f"geometry: deg={geometry.deg} rk={geometry.rk} "
          f"dim_gamma={geometry.dim_gamma}")
    print(f"scanning alpha in ({lo}, {hi})\n")

    report = alpha_scan(cat, system, geometry, lo, hi)
    for cert in report.certificates:
        extent = "WALL" if cert.is_wall else "no change"
        print(f"alpha = {cert.alpha}  [{extent}]")
        print(f"  below: {fmt_type(cert.type_below)}")
        print(f"  at:    {fmt_type(cert.type_at)}")
        print(f"  above: {fmt_type(cert.type_above)}")

    oracle = alpha_grid_probe(cat, system, geometry, lo, hi)
    print(f"\nwalls:       {[str(w) for w in report.walls]}")
    print(f"grid oracle: {[str(w) for w in oracle]}")
    print("oracle agrees" if tuple(report.walls) == oracle
          else "ORACLE DISAGREES")
    return 0 if tuple(report.walls) == oracle else 1


if __name__ == "__main__":
    raise SystemExit(main())
