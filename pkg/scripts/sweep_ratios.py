"""Ratio of each construction's social cost to the optimum, over a size range, as CSV."""
import argparse
import csv
import sys

from tempo_ncg.cli import SWEEP_FIELDS, sweep_rows
from tempo_ncg.constructions import GENERATORS


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--constructions", default=",".join(GENERATORS))
    parser.add_argument("--min-size", type=int, default=3)
    parser.add_argument("--max-size", type=int, default=6)
    parser.add_argument("--verify", action="store_true", help="run is_nash on every row (slow for large grids)")
    parser.add_argument("--method", choices=["formula", "brute"], default="formula")
    args = parser.parse_args()

    writer = csv.DictWriter(sys.stdout, fieldnames=SWEEP_FIELDS, lineterminator="\n")
    writer.writeheader()
    sizes = range(args.min_size, args.max_size + 1)
    for row in sweep_rows(args.constructions.split(","), sizes, args.verify, args.method):
        writer.writerow(row)
        sys.stdout.flush()


if __name__ == "__main__":
    main()
