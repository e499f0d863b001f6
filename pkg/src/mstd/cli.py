"""Command-line entry point: ``mstd <subcommand> ...``.

Set literals use the ``1,2,3,5,8-9`` grammar. A literal that starts with a
minus sign must follow ``--`` so it is not taken for an option.

Exit status: 0 on success, 1 on a domain error (bad parameters, overflow,
failed verification), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import analysis, construction, density, gamma, repro, search
from .core import LinearForm, diffset, eval_form, format_set, parse_set, sumset, to_json_obj


@dataclass
class Output:
    obj: dict
    table: tuple[list[str], list[list]] | None = None
    text: str | None = None
    default: str = "plain"
    status: int = 0


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _render(out: Output, fmt: str | None) -> str:
    fmt = fmt or out.default
    if fmt == "json":
        return json.dumps(out.obj, indent=2) + "\n"
    if fmt == "csv":
        if out.table is not None:
            return _csv(*out.table)
        flat = {k: v for k, v in out.obj.items() if not isinstance(v, (list, dict))}
        return _csv(list(flat), [list(flat.values())])
    if out.text is not None:
        return out.text.rstrip("\n") + "\n"
    if out.table is not None:
        return _csv(*out.table)
    return json.dumps(out.obj, indent=2) + "\n"


def _int_list(text: str) -> list[int]:
    return parse_set(text).to_list()


def _form(text: str) -> LinearForm:
    try:
        j1, j2 = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"form must look like 'j1,j2', got {text!r}") from None
    return LinearForm(j1, j2)


def _set_output(S) -> Output:
    return Output(to_json_obj(S), (["element"], [[x] for x in S]), format_set(S))


def cmd_sumset(args) -> Output:
    A = parse_set(args.set)
    B = parse_set(args.other) if args.other is not None else A
    return _set_output(sumset(A, B))


def cmd_diffset(args) -> Output:
    A = parse_set(args.set)
    B = parse_set(args.other) if args.other is not None else A
    return _set_output(diffset(A, B))


def cmd_form(args) -> Output:
    return _set_output(eval_form(LinearForm(args.j1, args.j2), parse_set(args.set)))


def cmd_check_mstd(args) -> Output:
    c = analysis.classify(parse_set(args.set))
    rel = {">": "MSTD", "=": "balanced", "<": "MDTS"}
    op = next(k for k, v in rel.items() if v == c.kind.value)
    return Output(c.to_dict(), text=f"{c.kind.value}: |A+A| = {c.sum_card} {op} {c.diff_card} = |A-A|")


def cmd_check_pn(args) -> Output:
    rep = analysis.is_pn(parse_set(args.set), args.n)
    text = f"P_{args.n}: {rep.ok} (sums {rep.sum_ok}, differences {rep.diff_ok})"
    if rep.missing_sums:
        text += f"\nmissing sums: {rep.missing_sums}"
    if rep.missing_diffs:
        text += f"\nmissing differences: {rep.missing_diffs}"
    return Output({**rep.to_dict(), "ok": rep.ok}, text=text)


def cmd_check_pnj(args) -> Output:
    A = parse_set(args.set)
    ok = analysis.is_pnj(A, args.n, args.j)
    return Output({"n": args.n, "j": args.j, "ok": ok}, text=f"P_{args.n}^{args.j}: {ok}")


def cmd_construct(args) -> Output:
    spec = construction.FamilySpec(parse_set(args.seed_set), args.n, args.k, args.m, parse_set(args.M))
    rep = construction.construct_report(spec)
    return Output(rep.to_dict(), default="json", status=0 if rep.verified else 1)


def cmd_enumerate_family(args) -> Output:
    res = construction.sweep_family(parse_set(args.seed_set), args.n, _int_list(args.k_range), _int_list(args.m_range))
    rows = [[r.k, r.m, r.M_count, r.verified_count] for r in res.rows]
    obj = {
        "rows": [dict(zip(["k", "m", "M_count", "verified_count"], r)) for r in rows],
        "distinct": res.distinct,
        "ok": res.ok,
    }
    return Output(obj, (["k", "m", "M_count", "verified_count"], rows), default="csv", status=0 if res.ok else 1)


def cmd_census(args) -> Output:
    res = gamma.census(args.range, args.require_endpoints, args.pn, threads=args.threads)
    text = f"{res.mstd} MSTD sets among {res.examined} subsets of [1,{res.n}]"
    if res.pn is not None:
        text += f"; {res.pn_count} are P_{res.pn}-sets"
    return Output(res.to_dict(), text=text)


def cmd_density(args) -> Output:
    rows = density.density_rows(args.n, _int_list(args.exp_range), args.a, args.b, args.c, args.epsilon)
    header = ["r", "S", "lower_shape", "upper_shape", "k_star", "predicted_log2_umax"]
    return Output({"rows": rows}, (header, [[r[h] for h in header] for r in rows]), default="csv")


def cmd_search(args) -> Output:
    cfg = search.SearchConfig(
        n=args.n,
        j=args.j,
        target=(args.first, args.second),
        inclusion_prob=args.prob,
        budget=args.budget,
        seed=args.seed,
        fringe_width=args.fringe_width,
        fringe_prob=args.fringe_prob,
    )
    if args.hits_file:
        hits = list(search.iter_hits(cfg))
        with open(args.hits_file, "a") as fh:
            for h in hits:
                fh.write(json.dumps({"index": h.index, "set": h.set.to_list(), "first_card": h.first_card, "second_card": h.second_card}) + "\n")
        first = search.find_seed(cfg, threads=args.threads)
        obj = {**first.to_dict(), "hits_in_budget": len(hits)}
    else:
        obj = search.find_seed(cfg, threads=args.threads).to_dict()
    obj["config"] = {
        "n": cfg.n,
        "j": cfg.j,
        "first": [cfg.target[0].j1, cfg.target[0].j2],
        "second": [cfg.target[1].j1, cfg.target[1].j2],
        "inclusion_prob": cfg.prob,
        "budget": cfg.budget,
        "seed": cfg.seed,
    }
    return Output(obj, default="json")


def cmd_gamma(args) -> Output:
    if args.samples:
        est = gamma.mc_gamma(args.n, args.samples, seed=args.seed, threads=args.threads)
    else:
        est = gamma.exact_gamma(args.n, args.require_endpoints, threads=args.threads)
    sym = gamma.symmetry_check(est)
    rows = [list(r) for r in est.rows()]
    obj = {**est.summary(), "symmetric": sym.symmetric, "rows": [dict(zip(["k", "gamma", "stderr", "count"], r)) for r in rows]}
    return Output(obj, (["k", "gamma", "stderr", "count"], rows), default="csv")


def cmd_repro(args) -> Output:
    only = _int_list(args.only) if args.only else None
    results = repro.run_all(only)
    lines = []
    for r in results:
        lines.append(r.line)
        lines.extend(f"    {d}" for d in r.details)
    obj = {
        "criteria": [
            {"number": r.number, "title": r.title, "passed": r.passed, "details": r.details} for r in results
        ]
    }
    table = (["criterion", "title", "status"], [[r.number, r.title, "PASS" if r.passed else "FAIL"] for r in results])
    return Output(obj, table, "\n".join(lines), status=0 if all(r.passed for r in results) else 1)


def build_parser() -> argparse.ArgumentParser:
    def global_flags(parser, default):
        # separate option objects per parser: set_defaults mutates shared parent actions
        d = (lambda v: v) if default else (lambda v: argparse.SUPPRESS)
        parser.add_argument("--seed", type=int, default=d(0), help="RNG seed (default 0)")
        parser.add_argument("--threads", type=int, default=d(1), help="worker count (default 1)")
        parser.add_argument("--format", choices=["json", "csv", "plain"], default=d(None))
        parser.add_argument("--out", type=Path, default=d(None), help="write output here instead of stdout")
        parser.add_argument("-v", "--verbose", action="store_true", default=d(False))

    p = argparse.ArgumentParser(prog="mstd", description=__doc__.split("\n\n")[0])
    global_flags(p, True)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        global_flags(sp, False)
        sp.set_defaults(func=func)
        return sp

    for name, func, what in (("sumset", cmd_sumset, "A+B"), ("diffset", cmd_diffset, "A-B")):
        sp = add(name, func, f"compute {what} (B defaults to A)")
        sp.add_argument("set")
        sp.add_argument("other", nargs="?")

    sp = add("form", cmd_form, "evaluate A+...+A-...-A")
    sp.add_argument("--j1", type=int, required=True)
    sp.add_argument("--j2", type=int, required=True)
    sp.add_argument("set")

    sp = add("check-mstd", cmd_check_mstd, "classify as MSTD / balanced / MDTS")
    sp.add_argument("set")

    sp = add("check-pn", cmd_check_pn, "test the P_n fringe property")
    sp.add_argument("set")
    sp.add_argument("--n", type=int, required=True)

    sp = add("check-pnj", cmd_check_pnj, "test the order-j fringe property")
    sp.add_argument("set")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)

    sp = add("construct", cmd_construct, "build A(M;k) from a P_n MSTD seed")
    sp.add_argument("--seed-set", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--M", default="", help="set literal for M (default empty)")

    sp = add("enumerate-family", cmd_enumerate_family, "construct and verify every A(M;k) over k, m ranges")
    sp.add_argument("--seed-set", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k-range", required=True, help="e.g. 8-11")
    sp.add_argument("--m-range", required=True, help="e.g. 0-8")

    sp = add("census", cmd_census, "count MSTD (and P_n) subsets of [1,N]")
    sp.add_argument("--range", type=int, required=True, metavar="N")
    sp.add_argument("--require-endpoints", action="store_true")
    sp.add_argument("--pn", type=int)

    sp = add("density", cmd_density, "tabulate S(a,b,c;r) for r = 2^e")
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--a", type=float, default=2.0)
    sp.add_argument("--b", type=float, default=0.5)
    sp.add_argument("--c", type=float, default=0.5)
    sp.add_argument("--exp-range", default="7-17")
    sp.add_argument("--epsilon", type=float, default=0.1)

    sp = add("search", cmd_search, "random search for generalized MSTD seeds")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--first", type=_form, required=True, help="form that should be larger, 'j1,j2'")
    sp.add_argument("--second", type=_form, required=True, help="form that should be smaller, 'j1,j2'")
    sp.add_argument("--prob", type=float, help="inclusion probability (default 1/j)")
    sp.add_argument("--budget", type=int, default=1_000_000)
    sp.add_argument("--fringe-width", type=int, default=0)
    sp.add_argument("--fringe-prob", type=float)
    sp.add_argument("--hits-file", help="append every hit in the budget as a JSON line")

    sp = add("gamma", cmd_gamma, "element frequencies over MSTD subsets of [1,n]")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int, default=0, help="Monte Carlo MSTD samples; 0 for exhaustive")
    sp.add_argument("--require-endpoints", action="store_true", help="exhaustive mode only")

    sp = add("repro", cmd_repro, "run the reproduction checks and print a pass/fail table")
    sp.add_argument("--only", help="criterion numbers, e.g. 1-3,6")

    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        out = args.func(args)
    except (ValueError, OverflowError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = _render(out, args.format)
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return out.status


if __name__ == "__main__":
    sys.exit(main())
