"""Command-line surface: point queries, map tools, range sweeps, reports.

Exit codes: 0 success / all asserted bounds hold; 1 at least one asserted
bound violated; 2 usage or domain error; 3 resource cap exceeded.  Errors
print one line `error: <kind>: <detail>` on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import analytic, factorcore, regmaps, relations
from .errors import DomainError, ResourceLimitError
from .records import BoundCheckRecord

RELATION_BOUNDS = (
    "corollary1",
    "eq4.1",
    "eq4.2",
    "thm3a",
    "thm3b",
    "lemma6",
    "corollary3",
)
SQUAREFREE_ONLY_BOUNDS = frozenset({"eq4.1", "eq4.2", "thm3a", "corollary3", "thm2a"})
ALL_SWEEP_BOUNDS = RELATION_BOUNDS + regmaps.MAP_BOUND_IDS


def _fmt(x: float) -> str:
    if x != x or x in (math.inf, -math.inf):
        return str(x)
    return f"{x:.10g}"


def _params_str(params: tuple[tuple[str, object], ...]) -> str:
    items = []
    for key, val in params:
        items.append(f"{key}={_fmt(val) if isinstance(val, float) else val}")
    return ";".join(items)


def format_records_csv(records: list[BoundCheckRecord]) -> str:
    lines = ["n,bound_id,lhs,log_rhs,margin,pass,params"]
    for rec in sorted(records, key=lambda r: (r.n, r.bound_id, r.params)):
        lines.append(
            f"{rec.n},{rec.bound_id},{rec.lhs},{_fmt(rec.log_rhs)},"
            f"{_fmt(rec.margin)},{'true' if rec.passed else 'false'},"
            f"{_params_str(rec.params)}"
        )
    return "\n".join(lines) + "\n"


def format_records_json(records: list[BoundCheckRecord]) -> str:
    rows = [
        {
            "n": rec.n,
            "bound_id": rec.bound_id,
            "lhs": rec.lhs,
            "log_rhs": rec.log_rhs,
            "margin": rec.margin,
            "pass": rec.passed,
            "params": dict(rec.params),
        }
        for rec in sorted(records, key=lambda r: (r.n, r.bound_id, r.params))
    ]
    return json.dumps(rows, sort_keys=True, separators=(",", ":")) + "\n"


def parse_records_json(text: str) -> list[BoundCheckRecord]:
    rows = json.loads(text)
    return [
        BoundCheckRecord(
            row["bound_id"],
            row["n"],
            row["lhs"],
            row["log_rhs"],
            row["margin"],
            row["pass"],
            tuple(sorted(row["params"].items())),
        )
        for row in rows
    ]


def emit_report(records: list[BoundCheckRecord], fmt: str, path: str | None) -> None:
    text = format_records_csv(records) if fmt == "csv" else format_records_json(records)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as handle:
            handle.write(text)


def _exit_code(records: list[BoundCheckRecord]) -> int:
    bad = [r for r in records if r.asserted and not r.passed]
    if bad:
        worst = bad[0]
        print(
            f"error: bound-violation: {worst.bound_id} fails at n={worst.n}",
            file=sys.stderr,
        )
        return 1
    return 0


def _divisor_cap(args: argparse.Namespace) -> int | None:
    if getattr(args, "cap_divisors", None) is not None:
        return args.cap_divisors
    env = os.environ.get("DIVREL_CAP_DIVISORS")
    return int(env) if env else None


def _records_for_n(n: int, bounds: tuple[str, ...], cap: int | None) -> list[BoundCheckRecord]:
    """All requested bound rows for one n; inapplicable bounds are skipped."""
    out: list[BoundCheckRecord] = []
    squarefree = factorcore.arith_stats(factorcore.factor(n)).v_max <= 1
    for bound_id in bounds:
        if bound_id in SQUAREFREE_ONLY_BOUNDS and not squarefree:
            continue
        if bound_id in ("thm3b", "lemma6", "corollary2") and n < 2:
            continue
        if bound_id in RELATION_BOUNDS:
            out.extend(relations.inequality_report(n, bound_id, cap=cap))
            continue
        for kind in regmaps.BUILTIN_KINDS:
            table = regmaps.build_builtin(kind, n, cap)
            if bound_id == "thm1b" and table.j != 2:
                continue
            rec = regmaps.bound_check(table, bound_id)
            out.append(
                BoundCheckRecord(
                    rec.bound_id,
                    rec.n,
                    rec.lhs,
                    rec.log_rhs,
                    rec.margin,
                    rec.passed,
                    rec.params + (("map", kind),),
                )
            )
    return out


def _sweep_chunk(task: tuple[int, int, tuple[str, ...], bool, int | None]) -> list:
    lo, hi, bounds, squarefree_only, cap = task
    records = []
    for n in range(lo, hi + 1):
        if squarefree_only and factorcore.arith_stats(factorcore.factor(n)).v_max > 1:
            continue
        records.extend(_records_for_n(n, bounds, cap))
    return records


def _cmd_factor(args: argparse.Namespace) -> int:
    f = factorcore.factor(args.n)
    print(" * ".join(f"{p}^{v}" if v > 1 else str(p) for p, v in f.parts) or "1")
    return 0


def _cmd_kappa(args: argparse.Namespace) -> int:
    print(factorcore.kappa(factorcore.factor(args.n), args.j))
    return 0


def _cmd_divisors(args: argparse.Namespace) -> int:
    divs = factorcore.divisors(factorcore.factor(args.n), _divisor_cap(args))
    print(" ".join(map(str, divs)))
    return 0


def _cmd_triples(args: argparse.Namespace) -> int:
    print(relations.count_sum_triples(args.n, _divisor_cap(args)))
    return 0


def _cmd_energy(args: argparse.Namespace) -> int:
    cap = _divisor_cap(args)
    if args.decompose:
        dec = relations.energy_decomposition(args.n, cap)
        for e, m, u in dec.rows:
            print(f"{e} {m} {u}")
        print(f"total {dec.total_energy}")
    else:
        print(relations.additive_energy(args.n, cap))
    return 0


def _cmd_delta_hooley(args: argparse.Namespace) -> int:
    print(relations.hooley_delta(args.n, _divisor_cap(args)))
    return 0


def _cmd_residues(args: argparse.Namespace) -> int:
    profile = relations.residue_profile(args.n, args.q, _divisor_cap(args))
    nonzero = {t + 1: c for t, c in enumerate(profile.counts) if c}
    print(json.dumps({"n": profile.n, "q": profile.q, "h": profile.h_value,
                      "eta": profile.eta, "counts": nonzero}, sort_keys=True))
    return 0


def _load_table(args: argparse.Namespace) -> regmaps.MapTable:
    if getattr(args, "file", None):
        with open(args.file) as handle:
            return regmaps.map_from_json(handle.read())
    if getattr(args, "kind", None) and getattr(args, "n", None):
        return regmaps.build_builtin(args.kind, args.n, _divisor_cap(args))
    raise DomainError("map: provide --file or both --kind and --n")


def _cmd_map(args: argparse.Namespace) -> int:
    if args.map_cmd == "build":
        table = regmaps.build_builtin(args.kind, args.n, _divisor_cap(args))
        text = regmaps.map_to_json(table)
        if args.out:
            with open(args.out, "w") as handle:
                handle.write(text + "\n")
        else:
            print(text)
        return 0
    if args.map_cmd == "check":
        table = _load_table(args)
        report = regmaps.check_regularity(table)
        print(
            json.dumps(
                {
                    "n": table.n,
                    "j": table.j,
                    "size": regmaps.f_value(table),
                    "k1": report.k1,
                    "k2": report.k2,
                    "k3": report.k3,
                    "k": report.k,
                    "k_strong": report.k_strong,
                    "domain_regular": report.domain_regular,
                },
                sort_keys=True,
            )
        )
        return 0 if report.domain_regular else 1
    table = _load_table(args)
    rec = regmaps.bound_check(table, args.bound)
    emit_report([rec], "csv", None)
    return _exit_code([rec])


def _cmd_exact_e(args: argparse.Namespace) -> int:
    print(regmaps.exact_E(args.n, args.j, args.k, guard=args.guard))
    return 0


def _analytic_params(args: argparse.Namespace) -> analytic.AnalyticParams:
    return analytic.AnalyticParams.from_alpha_r(
        args.alpha, args.r, delta=getattr(args, "delta", analytic.DELTA2)
    )


def _cmd_analytic(args: argparse.Namespace) -> int:
    if args.analytic_cmd == "eval":
        if args.fn == "f":
            print(_fmt(analytic.f_alpha(args.alpha, args.x)))
        elif args.fn == "ell":
            print(_fmt(analytic.ell_alpha(args.alpha, args.x)))
        else:
            beta = analytic.beta_for(args.alpha, args.r)
            print(_fmt(analytic.xi(args.x, args.alpha, beta, args.j, args.r)))
        return 0
    if args.analytic_cmd == "delta-j":
        print(_fmt(analytic.delta_j(args.j)))
        return 0
    if args.analytic_cmd == "verify-xi":
        cert = analytic.verify_xi_range(_analytic_params(args), args.vmax)
        print(json.dumps(cert.to_json_dict(), sort_keys=True))
        return 0 if cert.valid else 1
    if args.analytic_cmd == "tail":
        report = analytic.tail_check(_analytic_params(args), args.v)
        for s in report.samples:
            print(
                f"v={s.v} numerator_margin={_fmt(s.numerator_margin)} "
                f"arg2_margin={_fmt(s.arg2_margin)} ratio_margin={_fmt(s.ratio_margin)}"
            )
        return 0 if report.ok else 1
    if args.analytic_cmd == "optimize":
        config = analytic.OptimizeConfig(v_search=args.vopt, v_certify=args.vcertify)
        alpha, r, delta = analytic.optimize_constants(config)
        print(f"alpha={_fmt(alpha)} r={_fmt(r)} delta={_fmt(delta)}")
        return 0
    report = analytic.lemma45_scan()
    print(
        f"ratio_monotone={report.ratio_monotone} "
        f"domination_ok={report.domination_ok} "
        f"odd_power_sum_ok={report.odd_power_sum_ok}"
    )
    return 0 if report.ok else 1


def _cmd_sweep(args: argparse.Namespace) -> int:
    bounds = tuple(args.bounds.split(","))
    for b in bounds:
        if b not in ALL_SWEEP_BOUNDS:
            raise DomainError(f"sweep: unknown bound id {b!r}")
    cap = _divisor_cap(args)
    lo, hi = args.n_lo, args.n_hi
    if lo < 1 or hi < lo:
        raise DomainError(f"sweep: bad range [{lo}, {hi}]")
    if args.workers > 1:
        size = max(1, (hi - lo + 1) // (4 * args.workers))
        tasks = [
            (start, min(hi, start + size - 1), bounds, args.squarefree_only, cap)
            for start in range(lo, hi + 1, size)
        ]
        records = []
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            for chunk in pool.map(_sweep_chunk, tasks):
                records.extend(chunk)
    else:
        records = _sweep_chunk((lo, hi, bounds, args.squarefree_only, cap))
    emit_report(records, args.format, args.out)
    return _exit_code(records)


def _cmd_split_thm4(args: argparse.Namespace) -> int:
    res = analytic.thm4_split(args.n, args.q)
    print(
        json.dumps(
            {
                "n": res.n,
                "q": res.q,
                "eta": res.eta,
                "epsilon": res.epsilon,
                "trivial": res.trivial,
                "a": res.a,
                "b": res.b,
                "split_size": res.split_size,
            },
            sort_keys=True,
        )
    )
    return _exit_code(list(res.records))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="divrel",
        description="Divisor-set relation counts, regular divisor maps, and bound reports.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_cap(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--cap-divisors",
            type=int,
            default=None,
            help="divisor-count cap (default: DIVREL_CAP_DIVISORS or 10^6)",
        )

    p = sub.add_parser("factor", help="prime factorization")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_factor)

    p = sub.add_parser("kappa", help="ordered pairwise-coprime divisor tuple count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(func=_cmd_kappa)

    p = sub.add_parser("divisors", help="sorted divisor list")
    p.add_argument("--n", type=int, required=True)
    add_cap(p)
    p.set_defaults(func=_cmd_divisors)

    p = sub.add_parser("triples", help="count of d1 + d2 = d3 in divisors")
    p.add_argument("--n", type=int, required=True)
    add_cap(p)
    p.set_defaults(func=_cmd_triples)

    p = sub.add_parser("energy", help="additive energy of the divisor set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--decompose", action="store_true", help="print (e, m, u) rows")
    add_cap(p)
    p.set_defaults(func=_cmd_energy)

    p = sub.add_parser("delta-hooley", help="max divisors in a window (x, e*x]")
    p.add_argument("--n", type=int, required=True)
    add_cap(p)
    p.set_defaults(func=_cmd_delta_hooley)

    p = sub.add_parser("residues", help="divisor counts per residue class mod q")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    add_cap(p)
    p.set_defaults(func=_cmd_residues)

    p = sub.add_parser("map", help="build/check/bound explicit divisor maps")
    msub = p.add_subparsers(dest="map_cmd", required=True)
    mb = msub.add_parser("build", help="emit a built-in map table as JSON")
    mb.add_argument("--kind", choices=regmaps.BUILTIN_KINDS, required=True)
    mb.add_argument("--n", type=int, required=True)
    mb.add_argument("--out", default=None)
    add_cap(mb)
    mc = msub.add_parser("check", help="regularity constants of a table")
    mc.add_argument("--file", default=None, help="map table JSON file")
    mc.add_argument("--kind", choices=regmaps.BUILTIN_KINDS, default=None)
    mc.add_argument("--n", type=int, default=None)
    add_cap(mc)
    mo = msub.add_parser("bound", help="check one bound for a table")
    mo.add_argument("--file", default=None)
    mo.add_argument("--kind", choices=regmaps.BUILTIN_KINDS, default=None)
    mo.add_argument("--n", type=int, default=None)
    mo.add_argument("--bound", choices=regmaps.MAP_BOUND_IDS, required=True)
    add_cap(mo)
    p.set_defaults(func=_cmd_map)

    p = sub.add_parser("exact-e", help="exhaustive max domain size of k-regular maps")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--guard", type=int, default=12, help="max tau(n)^j searched")
    p.set_defaults(func=_cmd_exact_e)

    p = sub.add_parser("analytic", help="weight functions, certificates, optimization")
    asub = p.add_subparsers(dest="analytic_cmd", required=True)
    ae = asub.add_parser("eval", help="evaluate f, ell, or xi at a point")
    ae.add_argument("--fn", choices=("f", "ell", "xi"), required=True)
    ae.add_argument("--alpha", type=float, required=True)
    ae.add_argument("--x", type=float, required=True)
    ae.add_argument("--j", type=int, default=2)
    ae.add_argument("--r", type=float, default=analytic.R_STAR)
    ad = asub.add_parser("delta-j", help="exponent saving at arity j")
    ad.add_argument("--j", type=int, required=True)
    av = asub.add_parser("verify-xi", help="scan xi(v)/log(j*v+1) >= delta")
    av.add_argument("--alpha", type=float, required=True)
    av.add_argument("--r", type=float, required=True)
    av.add_argument("--delta", type=float, required=True)
    av.add_argument("--vmax", type=int, required=True)
    at = asub.add_parser("tail", help="large-v envelope checks")
    at.add_argument("--alpha", type=float, default=analytic.ALPHA_STAR)
    at.add_argument("--r", type=float, default=analytic.R_STAR)
    at.add_argument("--v", type=int, nargs="+", default=[10**6, 10**7, 10**9])
    ao = asub.add_parser("optimize", help="re-derive (alpha, r) by direct search")
    ao.add_argument("--vopt", type=int, default=10_000)
    ao.add_argument("--vcertify", type=int, default=10**6)
    asub.add_parser("lemmas", help="grid checks behind the concentration bounds")
    p.set_defaults(func=_cmd_analytic)

    p = sub.add_parser("sweep", help="evaluate bounds over an n range; emit report")
    p.add_argument("--bounds", required=True, help="comma-separated bound ids")
    p.add_argument("--n-lo", type=int, default=1)
    p.add_argument("--n-hi", type=int, required=True)
    p.add_argument("--squarefree-only", action="store_true")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--workers", type=int, default=1)
    add_cap(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("split-thm4", help="coprime split n = a*b for coprime q")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=_cmd_split_thm4)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: domain: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"error: resource: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
