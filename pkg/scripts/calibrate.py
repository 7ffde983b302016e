"""Re-measure the suite constants on the calibration seeds and freeze them into the package."""

import sys
from pathlib import Path

from rho_interp.harness.cli import main

ROOT = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    config = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "configs" / "calibrate.json")
    sys.exit(main(["-v", "calibrate", config]))
