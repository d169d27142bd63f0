"""Command-line front end.

Exit codes: 0 success / verified, 1 property violated or search failed,
2 usage or malformed input, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import loci
from .determinantal import bn_space, build_A, build_Abar, catalecticant_space, in_BW, in_W
from .exact import QQ, Field, PrimeField, parse_field
from .ribbon import BundleDatum, ProjBundlePoint, RibbonDatum, bundle_from_json
from .sections import h0, section_basis

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

_GLOBAL_DEFAULTS = {"field": "q", "seed": 0, "budget": loci.DEFAULT_BUDGET, "threads": 1, "output": "pretty"}


class UsageError(ValueError):
    pass


def _global_options(parser: argparse.ArgumentParser) -> None:
    S = argparse.SUPPRESS
    parser.add_argument("--field", default=S, help="coefficient field: q or fp:<p> (default q)")
    parser.add_argument("--seed", type=int, default=S, help="64-bit seed for every random draw (default 0)")
    parser.add_argument("--budget", type=int, default=S, help="max enumeration size")
    parser.add_argument("--threads", type=int, default=S, help="worker threads for partitioned enumeration")
    out = parser.add_mutually_exclusive_group()
    out.add_argument("--json", dest="output", action="store_const", const="json", default=S)
    out.add_argument("--csv", dest="output", action="store_const", const="csv", default=S)


def _coefficients(text: str | None, length: int, field: Field, rng: random.Random, name: str) -> list:
    if text is None or text.strip() in ("", "0"):
        return [field.zero] * length
    if text.strip() == "random":
        if isinstance(field, PrimeField):
            return [rng.randrange(field.p) for _ in range(length)]
        return [field(rng.randint(-5, 5)) for _ in range(length)]
    parts = [x for x in text.split(",") if x.strip()]
    if len(parts) > length:
        raise UsageError(f"{name}: expected at most {length} coefficients, got {len(parts)}")
    try:
        vals = [field.parse(x) for x in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{name}: {exc}") from None
    return vals + [field.zero] * (length - len(vals))


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x.strip()]


def _ribbon(args, field: Field, rng: random.Random) -> RibbonDatum:
    if args.g is None:
        raise UsageError("--g is required")
    if args.g < 3:
        raise UsageError("--g must be at least 3")
    return RibbonDatum.from_coefficients(args.g, _coefficients(args.F, args.g - 2, field, rng, "--F"), field)


def _bundle(args, field: Field, rng: random.Random) -> BundleDatum:
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as fh:
            return bundle_from_json(json.load(fh), field)
    R = _ribbon(args, field, rng)
    if args.n is None:
        raise UsageError("--n is required")
    return BundleDatum.from_coefficients(R, args.n, _coefficients(args.G, R.g, field, rng, "--G"))


def _emit(payload: dict, args, pretty: str | None = None, csv_text: str | None = None) -> None:
    if args.output == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    elif args.output == "csv" and csv_text is not None:
        sys.stdout.write(csv_text)
    else:
        sys.stdout.write((pretty if pretty is not None else json.dumps(payload, sort_keys=True, indent=2)) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_h0(args, field, rng) -> int:
    L = _bundle(args, field, rng)
    basis = section_basis(L)
    h = h0(L)
    payload = {"bundle": L.to_json(), "h0": h, "basis": basis.to_json()}
    status = EXIT_OK if h == len(basis) else EXIT_VIOLATION
    if 0 <= L.n <= L.g - 1:
        rank = build_A(L).rank()
        payload["matrix_rank"] = rank
        payload["matrix_h0"] = L.n + 1 - rank
        if L.n + 1 - rank != h:
            status = EXIT_VIOLATION
    lines = [f"h0={h}"]
    lines += [f"  q-part: t^{k} eta" for k in payload["basis"]["q_part"]]
    lines += [f"  p-part: p={pair['p']} p1={pair['p1']}" for pair in payload["basis"]["p_part"]]
    if "matrix_rank" in payload:
        lines.append(f"rank A_F(G)={payload['matrix_rank']} -> h0={payload['matrix_h0']}")
    _emit(payload, args, "\n".join(lines))
    return status


def cmd_matrix(args, field, rng) -> int:
    L = _bundle(args, field, rng)
    if args.G0 is not None:
        P = ProjBundlePoint(L.parent, L.n, (field.parse(args.G0),) + L.coefficients)
        M = build_Abar(P).matrix
    else:
        M = build_A(L).matrix
    payload = M.to_json()
    _emit(payload, args, str(M))
    return EXIT_OK


def cmd_membership(args, field, rng) -> int:
    L = _bundle(args, field, rng)
    if args.G0 is not None:
        P = ProjBundlePoint(L.parent, L.n, (field.parse(args.G0),) + L.coefficients)
        member = in_BW(P, args.r)
        rank = build_Abar(P).rank()
        payload = {"point": [field.format(c) for c in P.coords], "r": args.r, "rank": rank, "member": member, "locus": "BW"}
    else:
        member = in_W(L, args.r)
        rank = build_A(L).rank()
        payload = {"bundle": L.to_json(), "r": args.r, "rank": rank, "h0": h0(L), "member": member, "locus": "W"}
        if member != (payload["h0"] >= args.r + 1):
            _emit(payload, args)
            return EXIT_VIOLATION
    _emit(payload, args, f"{'member' if member else 'not a member'} (rank {rank}, bound {L.n - args.r})")
    return EXIT_OK


def cmd_clifford_scan(args, field, rng) -> int:
    scan = loci.clifford_scan(args.g, args.n, args.p, args.budget, args.threads)
    payload = scan.to_json()
    zero_only = all(not any(e["F"]) and not any(e["G"]) for e in scan.equality_cases)
    ok = not scan.violations and zero_only and len(scan.equality_cases) == 1
    eq = len(scan.equality_cases)
    text = f"{len(scan.violations)} violations, {eq} equality case{'s' if eq != 1 else ''}"
    if eq == 1 and zero_only:
        text += " (F=0,G=0)"
    _emit(payload, args, text + f" [{scan.total} bundles over F_{scan.prime}]")
    return EXIT_OK if ok else EXIT_VIOLATION


def _locus_spec(args, field) -> loci.LocusSpec:
    kind = args.kind
    rng = random.Random(args.seed)
    if kind == "global":
        return loci.LocusSpec(loci.LocusKind.GLOBAL_W, args.g, args.n, args.r)
    if kind == "boundary":
        return loci.LocusSpec(loci.LocusKind.PROJECTIVE_BW, args.g, args.n, args.r, None, boundary=True)
    if kind == "hyperelliptic":
        R = RibbonDatum.hyperelliptic(args.g, field)
        kind = "affine"
    else:
        R = _ribbon(args, field, rng)
    lk = loci.LocusKind.AFFINE_W if kind == "affine" else loci.LocusKind.PROJECTIVE_BW
    return loci.LocusSpec(lk, args.g, args.n, args.r, R)


def cmd_dim(args, field, rng) -> int:
    spec = _locus_spec(args, field)
    primes = _int_list(args.primes)
    counts = {}
    for p in primes:
        mode = loci.MonteCarlo(args.monte_carlo, args.seed) if args.monte_carlo else loci.EXHAUSTIVE
        counts[p] = loci.count_points(spec, p, mode, args.budget, args.threads)
    fit = None
    notes = []
    try:
        fit = loci.fit_dimension(counts)
    except loci.EmptyLocus as exc:
        notes.append(str(exc))
    payload = {
        "spec": spec.to_json(),
        "counts": {str(p): c.to_json() for p, c in sorted(counts.items())},
        "fit": fit.to_json() if fit else None,
        "fitted_dim": fit.dim if fit else None,
        "conclusive": bool(fit and fit.conclusive),
        "rho": loci.rho(spec.g, spec.n, spec.r),
        "notes": notes,
    }
    if args.tangent:
        if spec.kind is not loci.LocusKind.AFFINE_W:
            raise UsageError("--tangent needs an affine locus")
        tds = []
        for s in range(args.tangent):
            res = loci.sample_W_point(spec.ribbon, spec.n, spec.r, seed=args.seed + s, exact_rank=True)
            pt = list(res.bundle.coefficients)
            tds.append({"point": [field.format(x) for x in pt], "dim": loci.tangent_dim(spec, pt, field)})
        payload["tangent_dims"] = tds
    text = " ".join(f"N({p})={c.count}" for p, c in sorted(counts.items()))
    text += f" fitted_dim={payload['fitted_dim']}" + (f" residual={fit.residual:.3f}" if fit else " (empty locus)")
    _emit(payload, args, text)
    return EXIT_OK


def cmd_sample(args, field, rng) -> int:
    R = _ribbon(args, field, rng)
    try:
        res = loci.sample_W_point(R, args.n, args.r, seed=args.seed, max_draws=args.max_draws,
                                  exact_rank=args.exact_rank)
    except loci.SamplingFailure as exc:
        payload = {"failure": str(exc), "draws": exc.draws, "inconsistent_draws": exc.inconsistent,
                   "degenerate_draws": exc.degenerate}
        _emit(payload, args, f"failure: {exc}")
        return EXIT_VIOLATION
    payload = res.to_json()
    payload["member"] = in_W(res.bundle, args.r)
    if res.rank == args.n - args.r:
        spec = loci.LocusSpec(loci.LocusKind.AFFINE_W, R.g, args.n, args.r, R)
        payload["tangent_dim"] = loci.tangent_dim(spec, res.bundle.coefficients, field)
    payload["rho"] = loci.rho(R.g, args.n, args.r)
    text = f"G={payload['bundle']['G']} rank={res.rank} draws={res.draws}"
    if "tangent_dim" in payload:
        text += f" tangent_dim={payload['tangent_dim']} rho={payload['rho']}"
    _emit(payload, args, text)
    return EXIT_OK if payload["member"] else EXIT_VIOLATION


def cmd_generic(args, field, rng) -> int:
    space = catalecticant_space(args.g, args.n) if args.space == "catalecticant" else bn_space(args.g, args.n)
    verdict = loci.genericity_check(space, args.m, args.p, args.mode, args.trials, args.seed, args.budget, args.threads)
    payload = verdict.to_json()
    text = f"{verdict.space} m={verdict.m} over F_{verdict.prime}: {verdict.verdict} after {verdict.trials} checks"
    if verdict.witness:
        text += f" witness={verdict.witness}"
    _emit(payload, args, text)
    return EXIT_VIOLATION if verdict.verdict == loci.COUNTEREXAMPLE else EXIT_OK


def cmd_survey(args, field, rng) -> int:
    reports = loci.bn_survey(_int_list(args.g), args.n, args.r, _int_list(args.primes), args.budget,
                             args.ribbons, args.seed, args.threads, args.tangent)
    payload = {"reports": [rep.to_json() for rep in reports]}
    table = loci.survey_csv(reports)
    _emit(payload, args, table.rstrip("\n"), table)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ribbonseries", description="Linear series on ribbons over P^1.")
    _global_options(parser)
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common)

    def datum(p, need_G=True):
        p.add_argument("--g", type=int)
        p.add_argument("--F", help="F_1..F_{g-2}: comma list, 0, or random")
        p.add_argument("--n", type=int)
        if need_G:
            p.add_argument("--G", help="G_1..G_g: comma list, 0, or random")
            p.add_argument("--file", help="bundle JSON {g, F, n, G}")

    p = sub.add_parser("h0", parents=[common], help="sections and h0 of a line bundle")
    datum(p)
    p.set_defaults(func=cmd_h0)

    p = sub.add_parser("matrix", parents=[common], help="dump A_F(G), or Abar_F(G) with --G0")
    datum(p)
    p.add_argument("--G0")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("membership", parents=[common], help="test membership in W^r_2n (or BW with --G0)")
    datum(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--G0")
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("clifford-scan", parents=[common], help="exhaustive Clifford check over F_p")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_clifford_scan)

    p = sub.add_parser("dim", parents=[common], help="point counts and fitted dimension")
    p.add_argument("--kind", choices=["hyperelliptic", "affine", "projective", "boundary", "global"], required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--F")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--primes", default="3,5")
    p.add_argument("--monte-carlo", type=int, default=0, metavar="SAMPLES")
    p.add_argument("--tangent", type=int, default=0, metavar="K", help="tangent dimension at K sampled points")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("sample", parents=[common], help="constructive point of W^r_2n(C)")
    datum(p, need_G=False)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--max-draws", type=int, default=100)
    p.add_argument("--exact-rank", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("generic", parents=[common], help="m-genericity counterexample search")
    p.add_argument("--space", choices=["catalecticant", "bn"], required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, choices=[1, 2], required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--mode", choices=["auto", "exhaustive", "random"], default="auto")
    p.add_argument("--trials", type=int, default=100_000)
    p.set_defaults(func=cmd_generic)

    p = sub.add_parser("survey", parents=[common], help="Brill-Noether evidence table")
    p.add_argument("--g", required=True, help="genera: 5..8 or 5,6,7")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--primes", default="3,5")
    p.add_argument("--ribbons", type=int, default=3, help="random ribbons per genus")
    p.add_argument("--tangent", type=int, default=1, help="tangent samples per ribbon")
    p.set_defaults(func=cmd_survey)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        if args.budget <= 0 or args.threads <= 0:
            raise UsageError("--budget and --threads must be positive")
        field = parse_field(args.field)
        rng = random.Random(args.seed)
        return args.func(args, field, rng)
    except loci.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError, KeyError, OSError, json.JSONDecodeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
