#!/usr/bin/env python3
"""Export the figure data sets (gap surface, output-entropy bounds,
broadcast rate region) to CSV files.

Usage: python scripts/export_figures.py [--out DIR] [--lambda L] [--n-bar N]
"""

import sys

from qepi.cli import main

if __name__ == "__main__":
    sys.exit(main(["figures"] + sys.argv[1:]))
