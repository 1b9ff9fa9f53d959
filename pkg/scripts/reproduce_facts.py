"""Run the four G2 enumerations and print a one-line summary for each."""

import argparse
import json

from rank2ex.search import fact_close, fact_forty, fact_nodmz, maxpts_search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--json", action="store_true", help="print full reports")
    args = ap.parse_args()
    reports = [fact_nodmz(args.jobs), fact_close(args.jobs), fact_forty(), maxpts_search()]
    for r in reports:
        if args.json:
            print(json.dumps(r.to_dict(), indent=2))
        else:
            print(f"{r.fact:7s} holds={r.holds} candidates={r.candidate_count} "
                  f"maximal={r.maximal_collection_count} max_length={r.max_length} "
                  f"elapsed={r.elapsed:.2f}s")
    raise SystemExit(0 if all(r.holds for r in reports) else 1)


if __name__ == "__main__":
    main()
