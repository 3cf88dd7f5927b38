#!/usr/bin/env python3
"""Drive the full check registry over the built-in groups.

Equivalent to `qvertex all --group ...` per group, with a compact summary.
Larger groups get the same relation suites at the default desk-scale bounds.
"""

import argparse
import sys
import time

from qvertex.cli import Config, run_all
from qvertex.groups import build_group

DEFAULT_GROUPS = ["cyclic:2", "cyclic:3", "cyclic:4", "bd:2", "bd:3", "bt"]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--groups", nargs="*", default=DEFAULT_GROUPS)
    ap.add_argument("--max-degree", type=int, default=2)
    ap.add_argument("--max-mode", type=int, default=2)
    args = ap.parse_args()

    failures = 0
    for spec in args.groups:
        g = build_group(spec)
        cfg = Config(group=spec, max_degree=args.max_degree, max_mode=args.max_mode)
        t0 = time.time()
        reports = run_all(cfg, g)
        bad = [r for r in reports if not r.passed]
        failures += len(bad)
        print(f"{spec:10s} {len(reports):4d} checks, {len(bad)} failed, {time.time() - t0:6.1f}s")
        for r in bad:
            print(f"  FAIL {r.check_id} {r.params}: {r.fail_detail}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
