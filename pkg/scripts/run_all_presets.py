"""Run every built-in preset and print a one-line summary per scenario.

Writes each preset's artifacts (CSV curves, JSON reports, SVG plots) into a
subdirectory of --out. With --replicates the replicate budget of every run
is overridden, which gives a fast smoke pass; leave it unset to reproduce
the full-budget reference artifacts.
"""

import argparse
import json
from pathlib import Path

from singh_audit.presets import PRESETS
from singh_audit.runner import run_preset


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="out/presets", help="output root directory")
    parser.add_argument("--replicates", type=int, default=None,
                        help="override every run's replicate count m")
    args = parser.parse_args(argv)

    out_root = Path(args.out)
    header = f"{'scenario':<16} {'classification':<14} {'max_deficit':>11} {'area':>8} {'never':>6}"
    print(header)
    print("-" * len(header))
    for name in sorted(PRESETS):
        written = run_preset(name, out_root / name, replicates=args.replicates)
        for path in written:
            if path.suffix != ".json":
                continue
            report = json.loads(path.read_text(encoding="utf-8"))
            print(
                f"{report['name']:<16} {report['classification']:<14} "
                f"{report['max_deficit']:>11.5f} {report['conservatism_area']:>8.4f} "
                f"{report['never_count']:>6d}"
            )
    print(f"\nartifacts under {out_root}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
