#!/usr/bin/env python3
"""Run the desk-scale classification cross-checks and write JSON reports.

Three searches: the raw degree-1 sweep over the full {-1,0,1} grids in
weak and strict mode, and an odd-ansatz degree-3 sweep.  Every survivor
is independently re-verified with the full tensor computation; the exit
status is nonzero if any characterization failure shows up.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from ccybe import search

RUNS = {
    "weak_raw_deg1": search.SearchConfig(
        max_degree=1, coeff_grid=(-1, 0, 1), constants_grid=(-1, 0, 1),
        mode="weak", raw=True),
    "strict_raw_deg1": search.SearchConfig(
        max_degree=1, coeff_grid=(-1, 0, 1), constants_grid=(-1, 0, 1),
        mode="strict", raw=True),
    "weak_odd_deg3": search.SearchConfig(
        max_degree=3, coeff_grid=(0, 1), constants_grid=(-1, 0, 1),
        mode="weak"),
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    failures = 0
    for name, base in RUNS.items():
        cfg = search.SearchConfig(
            max_degree=base.max_degree, coeff_grid=base.coeff_grid,
            constants_grid=base.constants_grid, mode=base.mode, raw=base.raw,
            workers=args.jobs)
        t0 = time.time()
        report = search.run_search(cfg)
        path = out_dir / f"{name}.json"
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(report.as_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        cases = {}
        for record in report.survivors:
            cases[record["case"]] = cases.get(record["case"], 0) + 1
        print(f"{name}: {report.candidates_scanned} scanned, "
              f"{len(report.survivors)} survivors {cases}, "
              f"{len(report.characterization_failures)} failures "
              f"({time.time() - t0:.1f}s) -> {path}")
        failures += len(report.characterization_failures)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
