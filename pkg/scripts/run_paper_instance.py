#!/usr/bin/env python3
"""Build the 920-entry family on [60], verify it both ways, print the bounds.

    python scripts/run_paper_instance.py [--workers 4] [--skip-scan] [--json out.json]
"""

import argparse
import json

from tricover.bounds import bounds_summary
from tricover.construction import ConstructionParams, Tag, build_family
from tricover.verifier import verify_exhaustive
from tricover.witness import verify_witness_total


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--skip-scan", action="store_true")
    ap.add_argument("--json")
    args = ap.parse_args()

    fam = build_family()
    print(f"PairA={fam.count(Tag.PAIR_A)} PairC={fam.count(Tag.PAIR_C)} Base={fam.count(Tag.BASE)} "
          f"tagged={len(fam)} distinct={len(fam.distinct_blocks())}")
    print(bounds_summary(ConstructionParams()).summary())

    results = {}
    w = verify_witness_total(workers=args.workers)
    print(f"\nwitness sweep: {w.checked:,} subsets, {w.failures} failures, {w.elapsed:.1f}s")
    results["witness"] = w.to_dict()
    if not args.skip_scan:
        for label, family in (("scan_920", fam), ("scan_910", build_family(ConstructionParams(15, False)))):
            rep = verify_exhaustive(family, 60, strategy="scan", workers=args.workers)
            print(f"\n[{label}]\n{rep.summary()}")
            results[label] = rep.to_dict()
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()
