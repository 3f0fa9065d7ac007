"""Command-line interface: ``frechet-lb {reduce,dist,verify,pack,bench,ov}``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .frechet import continuous_decision, continuous_value, discrete_decision, discrete_frechet
from .geometry import Curve, to_fraction
from .harness import CampaignConfig, bench_scaling, build_instance, run_campaign
from .ov import load_ov, ov_brute, ov_to_curves
from .packedness import FAST, THOROUGH, estimate_packedness
from .report import jsonable
from .sat import parse_dimacs

KIND_NAMES = {"plane": "plane", "imbalanced": "imbalanced", "or-packed": "or_packed", "highdim": "highdim", "ov": "ov"}


def _emit(args, data: dict, text: str) -> None:
    print(json.dumps(jsonable(data), indent=2, sort_keys=True) if args.json else text)


def _number(s: str):
    return to_fraction(s) if "/" in s else float(s)


def cmd_reduce(args) -> int:
    phi = parse_dimacs(Path(args.input).read_text())
    params = {}
    if args.gamma is not None:
        params["gamma"] = to_fraction(args.gamma)
    if args.ell is not None:
        params["ell"] = args.ell
    if args.epsilon is not None:
        params["eps"] = float(args.epsilon)
    inst, _ = build_instance(phi, KIND_NAMES[args.kind], params)
    written = inst.save(args.out)
    data = {"kind": inst.kind, "n": inst.n, "m": inst.m, "files": [str(p) for p in written],
            "accept": inst.accept, "reject": inst.reject}
    _emit(args, data, f"{inst.kind}: |P1|={inst.n} |P2|={inst.m} -> " + ", ".join(map(str, written)))
    return 0


def cmd_dist(args) -> int:
    P1 = Curve.loads(Path(args.a).read_text())
    P2 = Curve.loads(Path(args.b).read_text())
    if args.decision is not None:
        delta = _number(args.decision)
        if args.mode == "discrete":
            ok = discrete_decision(P1, P2, delta, tol=args.tol)
        else:
            ok = continuous_decision(P1, P2, float(delta), tol=args.tol)
        _emit(args, {"mode": args.mode, "delta": delta, "decision": ok}, "YES" if ok else "NO")
        return 0
    if args.mode == "discrete":
        res = discrete_frechet(P1, P2)
        val = res.value
        data = {"mode": "discrete", "value": val, "squared": res.squared, "traversal": [list(s) for s in res.traversal]}
        text = str(val)
        if isinstance(val, Fraction) and val.denominator != 1:
            text = f"{val} ({float(val):.12g})"
        if isinstance(res.squared, Fraction) and not isinstance(val, Fraction):
            text = f"{val:.12g} (squared {res.squared})"
    else:
        br = continuous_value(P1, P2, tol=args.tol if args.tol > 1e-9 else 1e-6)
        data = {"mode": "continuous", "lower": br.lower, "upper": br.upper}
        text = f"[{br.lower:.12g}, {br.upper:.12g}]"
    _emit(args, data, text)
    return 0


def cmd_verify(args) -> int:
    kinds = tuple(KIND_NAMES[k] for k in args.kinds) if args.kinds else CampaignConfig.kinds
    sizes = tuple(n for n in CampaignConfig.sizes if n <= args.max_vars) or (2,)
    cfg = CampaignConfig(trials=args.trials, seed=args.seed, kinds=kinds, max_vars=args.max_vars, sizes=sizes)
    rep = run_campaign(cfg)
    if args.out:
        Path(args.out).write_text(rep.to_json())
    s = rep.summary()
    lines = [f"{s['passed']}/{s['checks']} checks passed, {len(rep.notes)} notes"]
    lines += [f"FAIL {r.name}: {r.claim}" for r in rep.failures]
    lines += [f"note {r.name}: {r.claim}" for r in rep.notes if not r.passed]
    _emit(args, rep.to_dict(), "\n".join(lines))
    return 0 if rep.ok else 1


def cmd_pack(args) -> int:
    curve = Curve.loads(Path(args.curve).read_text())
    est = estimate_packedness(curve, THOROUGH if args.thorough else FAST)
    _emit(args, est.__dict__, f"{est.value:.6g} (center {tuple(round(c, 6) for c in est.center)}, radius {est.radius:.6g})")
    return 0


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    table = bench_scaling(KIND_NAMES[args.kind], sizes, args.reps, seed=args.seed)
    lines = [f"{'n':>6} {'m':>6} {'cells':>9} {'c_est':>8} {'t_disc[s]':>11} {'t_cont[s]':>11}"]
    for r in table.rows:
        c = "-" if r.c_estimate is None else f"{r.c_estimate:.3g}"
        lines.append(f"{r.n:>6} {r.m:>6} {r.cells:>9} {c:>8} {r.t_discrete:>11.3e} {r.t_continuous:>11.3e}")
    lines.append(f"slope discrete {table.slope_discrete:.3f}, continuous {table.slope_continuous:.3f}")
    _emit(args, table.to_dict(), "\n".join(lines))
    return 0


def cmd_ov(args) -> int:
    inst = load_ov(args.s1, args.s2)
    pair = ov_brute(inst)
    data = {"n1": len(inst.S1), "n2": len(inst.S2), "d": inst.dim, "pair": pair}
    text = "no orthogonal pair" if pair is None else f"orthogonal pair S1[{pair[0]}], S2[{pair[1]}]"
    if args.to_curves:
        written = ov_to_curves(inst).save(args.to_curves)
        data["files"] = [str(p) for p in written]
        text += "\ncurves -> " + ", ".join(map(str, written))
    _emit(args, data, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="frechet-lb", description="SAT/OV to Fréchet distance reductions and checks.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("reduce", parents=[common], help="compile a DIMACS CNF into a curve pair")
    r.add_argument("--input", required=True)
    r.add_argument("--kind", choices=sorted(KIND_NAMES), default="plane")
    r.add_argument("--gamma")
    r.add_argument("--ell", type=int)
    r.add_argument("--epsilon")
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_reduce)

    d = sub.add_parser("dist", parents=[common], help="Fréchet distance of two curve files")
    d.add_argument("--mode", choices=["discrete", "continuous"], default="discrete")
    d.add_argument("--decision", metavar="DELTA")
    d.add_argument("--tol", type=float, default=1e-9)
    d.add_argument("a")
    d.add_argument("b")
    d.set_defaults(func=cmd_dist)

    v = sub.add_parser("verify", parents=[common], help="run a verification campaign")
    v.add_argument("--max-vars", type=int, default=10)
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--kinds", nargs="+", choices=sorted(KIND_NAMES))
    v.add_argument("--out", help="write the full report as JSON")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("pack", parents=[common], help="estimate packedness of a curve file")
    k.add_argument("curve")
    k.add_argument("--thorough", action="store_true")
    k.set_defaults(func=cmd_pack)

    b = sub.add_parser("bench", parents=[common], help="runtime scaling table")
    b.add_argument("--kind", choices=sorted(KIND_NAMES), default="plane")
    b.add_argument("--sizes", default="128,256,512,1024")
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_bench)

    o = sub.add_parser("ov", parents=[common], help="solve an orthogonal-vectors instance")
    o.add_argument("--s1", required=True, help="0/1 vectors, or a two-section file")
    o.add_argument("--s2")
    o.add_argument("--to-curves", metavar="OUT")
    o.set_defaults(func=cmd_ov)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
