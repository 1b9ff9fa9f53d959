"""Write the crab picture to an SVG file."""

import argparse

from rank2ex.figure import crab_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("output", nargs="?", default="crab.svg")
    ap.add_argument("--extent", type=int, default=12)
    args = ap.parse_args()
    with open(args.output, "w") as fh:
        fh.write(crab_svg(args.extent))
    print(args.output)


if __name__ == "__main__":
    main()
