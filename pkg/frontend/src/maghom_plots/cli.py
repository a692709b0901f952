"""`plots <figure-kind> --csv PATH --out PATH [--k LIST] [--log]`."""
from __future__ import annotations

import argparse
import sys

from .figures import plot_betti_curves, plot_threshold_region


def _parse_k(s: str) -> list[int]:
    return [int(x) for x in s.split(",")]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="plots")
    ap.add_argument("figure", choices=["threshold_region", "betti_curves"])
    ap.add_argument("--csv", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--k", type=_parse_k)
    ap.add_argument("--log", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.figure == "threshold_region":
            plot_threshold_region(args.csv, args.out, k_list=args.k)
        else:
            plot_betti_curves(args.csv, args.out, k_list=args.k,
                              log=args.log)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
