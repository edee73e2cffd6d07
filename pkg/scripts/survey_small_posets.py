#!/usr/bin/env python3
"""Sweep every isomorphism class of posets up to a given size and run the
full verification stack on each, printing a per-size summary table.

Usage: python scripts/survey_small_posets.py [--max-n 6]
"""

import argparse
import time

from esakia.algebra import is_godel, lattice_of_sets, spectrum, upset_algebra
from esakia.constructions import downset_open_check, root_topology_check, staged_topology
from esakia.duality import double_dual_lattice, double_dual_poset, poset_isomorphism
from esakia.generators import enumerate_posets
from esakia.posets import is_root_system, is_tree
from esakia.topology import clopen_upsets, esakia_check, is_discrete


def survey(n: int) -> dict:
    row = {"classes": 0, "trees": 0, "root_systems": 0, "godel": 0,
           "duality_ok": 0, "root_ok": 0, "staged_ok": 0}
    for p in enumerate_posets(n):
        row["classes"] += 1
        double_dual_poset(p)
        double_dual_lattice(upset_algebra(p))
        row["duality_ok"] += 1
        if is_godel(upset_algebra(p)).holds:
            row["godel"] += 1
        if is_root_system(p):
            row["root_systems"] += 1
            topo = root_topology_check(p)
            lat = lattice_of_sets(clopen_upsets(p, topo))
            assert poset_isomorphism(spectrum(lat), p) is not None
            row["root_ok"] += 1
        if is_tree(p):
            row["trees"] += 1
            st = staged_topology(p)
            assert is_discrete(st.final) and esakia_check(p, st.final)
            assert downset_open_check(st)
            row["staged_ok"] += 1
    return row


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    cols = ["n", "classes", "trees", "root_systems", "godel",
            "duality_ok", "root_ok", "staged_ok", "seconds"]
    print("  ".join(f"{c:>12}" for c in cols))
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        row = survey(n)
        row["n"] = n
        row["seconds"] = f"{time.perf_counter() - t0:.2f}"
        print("  ".join(f"{row[c]:>12}" for c in cols))


if __name__ == "__main__":
    main()
