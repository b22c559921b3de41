"""Sweep the law suites over scopes and term-size caps; print one row per setting.

    python scripts/law_sweep.py --instances 50 --jobs 4
"""

import argparse
import time

from eeq import laws

SCOPES = [(16, 64), (32, 128), (32, 256)]
CAPS = [3, 5, 7, 9]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=30)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--suites", nargs="*", default=["product-laws", "coproduct-laws", "coeq-laws"])
    args = ap.parse_args()

    print(f"{'suite':<16}{'s':>4}{'n':>5}{'cap':>5}{'ok':>6}{'commuting':>11}{'secs':>8}")
    for suite in args.suites:
        for s, n in SCOPES:
            for cap in CAPS:
                start = time.perf_counter()
                reports = laws.run_suite(suite, args.seed, args.instances, jobs=args.jobs, s=s, n=n, cap=cap)
                secs = time.perf_counter() - start
                ok = sum(r.ok for r in reports)
                commuting = sum(r.commuting for r in reports) / len(reports)
                print(f"{suite:<16}{s:>4}{n:>5}{cap:>5}{ok:>6}{commuting:>11.1f}{secs:>8.2f}")
                for r in reports:
                    if not r.ok:
                        print("   ", r.line())


if __name__ == "__main__":
    main()
