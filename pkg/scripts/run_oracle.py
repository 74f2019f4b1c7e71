"""Agreement table for the formula and reading oracles over several seeds."""
import argparse

from filesem.oracle import stats_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--instances", type=int, default=500)
    ap.add_argument("--skeletons", type=int, default=20)
    args = ap.parse_args()
    bad = 0
    for seed in args.seeds:
        text, data = stats_table(seed, args.instances, args.skeletons)
        print(text)
        print()
        bad += sum(row["cases"] - row["agree"] for row in data.values())
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
