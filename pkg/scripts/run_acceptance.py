#!/usr/bin/env python3
"""Run the acceptance suite and show the one-line verdict per criterion."""

import subprocess
import sys
from pathlib import Path

if __name__ == "__main__":
    root = Path(__file__).resolve().parent.parent
    code = subprocess.call(
        [sys.executable, "-m", "pytest", str(root / "tests" / "test_acceptance.py"), "-s", "-q", *sys.argv[1:]],
        cwd=root,
    )
    sys.exit(code)
