"""Run the verification campaign and write a JSON report."""

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from frechet_lb.harness import KINDS, CampaignConfig, run_campaign


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-vars", type=int, default=10)
    p.add_argument("--kinds", nargs="+", choices=KINDS, default=list(CampaignConfig.kinds))
    p.add_argument("--gamma", default="1/2")
    p.add_argument("--ell", type=int, default=2)
    p.add_argument("--eps", type=float, default=1e-4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=Path("campaign.json"))
    args = p.parse_args(argv)

    cfg = CampaignConfig(trials=args.trials, max_vars=args.max_vars, kinds=tuple(args.kinds),
                         gamma=Fraction(args.gamma), ell=args.ell, eps=args.eps, seed=args.seed)
    progress = lambda i, n: print(f"\r{i}/{n} formulas", end="", file=sys.stderr, flush=True)
    rep = run_campaign(cfg, progress=progress)
    print(file=sys.stderr)
    args.out.write_text(rep.to_json())
    s = rep.summary()
    print(f"{s['passed']}/{s['checks']} checks passed; {sum(not n.passed for n in rep.notes)} failing notes; report in {args.out}")
    for r in rep.failures[:20]:
        print(f"FAIL {r.name}: {r.claim}")
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
