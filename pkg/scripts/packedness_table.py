"""Packedness estimates of the planar, OR-composed and 5-D constructions against their claimed constants."""

import argparse

import numpy as np

from frechet_lb.harness import build_instance
from frechet_lb.or_gadget import plane_pair_family
from frechet_lb.packedness import FAST, THOROUGH, estimate_packedness
from frechet_lb.reduction_highdim import build_highdim_pair, packedness_claim
from frechet_lb.sat import enumerate_assignments, half_split, random_kcnf


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--sizes", type=int, nargs="+", default=[4, 6, 8])
    p.add_argument("--eps", type=float, default=1e-4)
    p.add_argument("--thorough", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    level = THOROUGH if args.thorough else FAST
    rng = np.random.default_rng(args.seed)

    print(f"{'kind':>8} {'N':>3} {'M':>3} {'|P1|':>6} {'estimate':>9} {'claim':>8} {'ratio':>6}")
    for n in args.sizes:
        phi = random_kcnf(n, 2 * n, 3, rng)
        plane, _ = build_instance(phi, "plane")
        est = estimate_packedness(plane.P1.to_float(), level).value
        print(f"{'plane':>8} {n:>3} {phi.num_clauses:>3} {plane.n:>6} {est:>9.2f} {'-':>8} {'-':>6}")
        for ell in (1, 2):
            fam = plane_pair_family(phi, ell)
            inst, _ = build_instance(phi, "or_packed", {"ell": ell})
            est = estimate_packedness(inst.P1, level).value
            print(f"{'or/' + str(ell):>8} {n:>3} {phi.num_clauses:>3} {inst.n:>6} {est:>9.2f} {fam.c:>8.2f} {est / fam.c:>6.2f}")
        s = half_split(phi)
        A1 = enumerate_assignments(s.v1)
        P1, _ = build_highdim_pair(phi, A1, enumerate_assignments(s.v2), args.eps)
        claim = packedness_claim(args.eps, phi.num_clauses, len(A1))
        est = estimate_packedness(P1, level).value
        print(f"{'highdim':>8} {n:>3} {phi.num_clauses:>3} {len(P1):>6} {est:>9.2f} {claim:>8.2f} {est / claim:>6.2f}")


if __name__ == "__main__":
    main()
