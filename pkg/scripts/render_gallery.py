#!/usr/bin/env python3
"""Emit the gallery posets (document + DOT) at a range of truncation sizes
and report their recognizer and topology verdicts.

Usage: python scripts/render_gallery.py [--out gallery_out] [--max-n 4]
"""

import argparse
from pathlib import Path

from esakia.constructions import gallery, root_topology_check, staged_topology
from esakia.documents import emit_poset, export_dot
from esakia.posets import is_root_system, is_tree
from esakia.topology import esakia_check, is_discrete


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="gallery_out")
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in ("figure1", "figure2"):
        for n in range(1, args.max_n + 1):
            p = gallery(name, n)
            stem = f"{name}_{n}"
            (out / f"{stem}.json").write_text(emit_poset(p))
            if is_tree(p):
                topo = staged_topology(p).final
            elif is_root_system(p):
                topo = root_topology_check(p)
            else:
                topo = None
            (out / f"{stem}.dot").write_text(export_dot(p, topo))
            verdict = ""
            if topo is not None:
                verdict = (f" discrete={is_discrete(topo)}"
                           f" esakia={esakia_check(p, topo)}")
            print(f"{stem}: n={p.n} tree={is_tree(p)}"
                  f" root_system={is_root_system(p)}{verdict}")


if __name__ == "__main__":
    main()
