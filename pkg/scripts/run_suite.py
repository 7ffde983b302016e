"""Verify the full suite against the packaged constants and print the summary table."""

import sys
from pathlib import Path

from rho_interp.harness.cli import main

ROOT = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    config = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "configs" / "suite.json")
    code = main(["-v", "run", config])
    if code != 2:
        out = ROOT / "reports" / "suite" / "summary.csv"
        if out.exists():
            print(out.read_text(), end="")
    sys.exit(code)
