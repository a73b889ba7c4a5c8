#!/usr/bin/env python3
"""Run the randomized inequality suites across a spread of channels.

Prints one summary line per channel and exits nonzero if any violation
is found.  Usage: python scripts/run_verification.py [--trials N] [--seed S]
"""

import argparse
import sys

from qepi.channels import MixingParams
from qepi.inequalities import random_qepi_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--stam", action="store_true",
                        help="also check the Fisher information inequality")
    args = parser.parse_args()

    channels = [MixingParams.beam_splitter(l) for l in (0.1, 0.3, 0.5, 0.7, 0.9)]
    channels += [MixingParams.amplifier(k) for k in (1.1, 1.5, 2.0, 4.0)]
    bad = 0
    for p in channels:
        summary = random_qepi_suite(args.trials, args.seed, p, with_stam=args.stam)
        bad += len(summary.failures)
        print(f"{p.kind:13s} lambda_A={p.lambda_A:<5g} "
              f"min_qepi_slack={summary.min_qepi_slack:+.3e} "
              f"min_linear_slack={summary.min_linear_slack:+.3e} "
              f"violations={len(summary.failures)}")
    print(f"total violations: {bad}")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
