"""Time the discrete DP and the continuous decision on growing instances and fit log-log slopes."""

import argparse
import json
import sys

from frechet_lb.harness import KINDS, bench_scaling


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--kind", choices=KINDS, default="plane")
    p.add_argument("--sizes", type=int, nargs="+", default=[128, 256, 512, 1024])
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    args = p.parse_args(argv)

    table = bench_scaling(args.kind, args.sizes, args.reps, seed=args.seed)
    if args.json:
        print(json.dumps(table.to_dict(), indent=2))
        return 0
    print(f"{'n':>6} {'m':>6} {'cells':>9} {'t_disc[s]':>11} {'t_cont[s]':>11}")
    for r in table.rows:
        print(f"{r.n:>6} {r.m:>6} {r.cells:>9} {r.t_discrete:>11.3e} {r.t_continuous:>11.3e}")
    print(f"slope discrete {table.slope_discrete:.2f}, continuous {table.slope_continuous:.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
