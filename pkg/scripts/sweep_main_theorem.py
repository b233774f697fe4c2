"""Certify the order-w sandwich over the guaranteed range and write a JSON report.

Also records where the bracket fails below the guaranteed threshold, which is
how the empirical thresholds in the notes were obtained.
"""

import argparse
import json
import time

from partition_certify import bounds, exact


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--w", type=int, nargs="+", default=list(range(1, 9)))
    ap.add_argument("--n-max", type=int, default=5000)
    ap.add_argument("--jobs", type=int, default=bounds.default_jobs())
    ap.add_argument("--below-threshold", action="store_true", help="also sweep 1 <= n below the threshold")
    ap.add_argument("--out", default=None, help="write the reports here as JSON")
    args = ap.parse_args()

    table = exact.partition_table(args.n_max)
    reports = []
    for w in args.w:
        start = time.perf_counter()
        rep = bounds.sandwich_sweep([w], bounds.guaranteed_range(w, args.n_max), table, jobs=args.jobs)
        line = f"w={w}: {rep.status} over {rep.total} n, max {rep.precision_bits_max} bits"
        if args.below_threshold:
            first = bounds.first_guaranteed_n(w)
            below = bounds.sandwich_sweep([w], range(1, first), table)
            line += f"; below threshold violations at n = {[p[0] for p in below.violations]}"
            reports.append(below.to_dict())
        print(f"{line} [{time.perf_counter() - start:.1f} s]")
        reports.append(rep.to_dict())
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(reports, fh, indent=1, sort_keys=True)


if __name__ == "__main__":
    main()
