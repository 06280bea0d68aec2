"""Draw the deductible-with-coinsurance and deductible-with-limit panels as SVG.

Usage: python3 scripts/plot_panels.py [OUT_DIR]
"""

import sys
from pathlib import Path

from riskopt.contracts import deductible_coinsurance, deductible_limit
from riskopt.svg import render_contracts

D, X_MAX = 1.5, 3.5


def main() -> int:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(".")
    out.mkdir(parents=True, exist_ok=True)
    panels = {
        "ded_coinsurance.svg": (deductible_coinsurance(D, 0.75), "ded:1.5*0.75"),
        "ded_limit.svg": (deductible_limit(D, 1.0), "dedlim:1.5^1"),
    }
    for name, (f, label) in panels.items():
        (out / name).write_text(render_contracts([f], X_MAX, D, [label]), encoding="utf-8")
        print(out / name)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
