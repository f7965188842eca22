"""Command-line front end.

Subcommands mirror the library layers: ``gamma`` (growth coefficients),
``eta`` (quotient expansion), ``op`` (operators on stored series),
``treneer`` (pipeline checks), ``verify`` / ``witness`` / ``scan``
(congruence engine).  Exit codes: 0 all claims pass, 1 a counterexample
or failed check was found, 2 resource or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import congruence, eta, treneer
from .cache import CACHE_ENV_VAR, DEFAULT_SEED, RunConfig, SeriesCache, registered_builders
from .growth import GrowthTables
from .operators import hecke, kronecker, u_op, v_op
from .qseries import ZZ, Zmod, dump_qseries, load_qseries
from .reports import reports_to_csv, reports_to_json

EXIT_PASS = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_CONFIG = 2


def _parse_bytes(text: str) -> int:
    """Plain integer or K/M/G-suffixed byte count."""
    text = text.strip()
    scale = {"K": 1 << 10, "M": 1 << 20, "G": 1 << 30}.get(text[-1:].upper())
    if scale:
        return int(float(text[:-1]) * scale)
    return int(text)


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--memory-budget", type=_parse_bytes, default=None,
                        help="abort instead of allocating past this many bytes (K/M/G suffixes ok)")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--long", action="store_true",
                        help="include the slow checks gated out of default runs")
    parser.add_argument("--cache-dir", type=Path, default=None,
                        help=f"coefficient cache directory (default ${CACHE_ENV_VAR} or ~/.cache)")


def _config(args) -> RunConfig:
    kwargs = dict(
        memory_budget=args.memory_budget, threads=args.threads,
        long_run=args.long, output_format=args.format, seed=args.seed,
    )
    if args.cache_dir is not None:
        kwargs["cache_dir"] = args.cache_dir
    return RunConfig(**kwargs)


def _emit_reports(reports, fmt: str) -> int:
    print(reports_to_json(reports) if fmt == "json" else reports_to_csv(reports), end="")
    if fmt == "json":
        print()
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_COUNTEREXAMPLE


# -- gamma -------------------------------------------------------------------


def cmd_gamma(args) -> int:
    if args.check_eq7:
        tables = GrowthTables(2 * (args.limit - 1))
        report = tables.check_eq7(args.limit)
        return _emit_reports([report], args.format)
    if args.n is None:
        print("gamma: need --n or --check-eq7", file=sys.stderr)
        return EXIT_CONFIG
    tables = GrowthTables(args.n, args.mod)
    value = tables.gamma_sym(args.n) if args.group == "sym" else tables.gamma_alt(args.n)
    print(json.dumps({"group": args.group, "n": args.n, "modulus": args.mod,
                      "value": value}, sort_keys=True))
    return EXIT_PASS


# -- eta ----------------------------------------------------------------------


def _parse_exponents(text: str) -> dict[int, int]:
    out = {}
    for piece in text.split(","):
        delta, _, r = piece.partition(":")
        out[int(delta)] = int(r)
    return out


def cmd_eta(args) -> int:
    quotient = eta.EtaQuotient(args.level, _parse_exponents(args.exp))
    doc: dict = {
        "level": quotient.level,
        "exponents": {str(d): r for d, r in quotient.exponents},
        "weight": str(quotient.weight),
        "leading_exponent_24": quotient.leading_exponent_24,
    }
    if args.check_modularity:
        info = eta.modularity_check(quotient)
        doc["modularity"] = {
            "weight_integral": info.integral_weight,
            "condition_delta": info.condition_delta,
            "condition_inverse": info.condition_inverse,
            "holomorphic_shape": info.satisfies_conditions,
            "character_top": info.kronecker_top,
        }
    if args.cusp_orders:
        doc["cusp_orders"] = {
            str(c): str(eta.cusp_order(quotient, c)) for c in eta.divisors(quotient.level)
        }
    if args.truncate is not None:
        series = eta.expand(quotient, args.truncate)
        doc["grain"] = series.grain
        doc["truncation_24"] = args.truncate
        doc["coefficients"] = {
            str(n): int(series.coeffs[n - series.start])
            for n in range(series.start, series.trunc)
            if series.coeffs[n - series.start]
        }
    print(json.dumps(doc, sort_keys=True))
    return EXIT_PASS


# -- op -----------------------------------------------------------------------


def cmd_op(args) -> int:
    name, _, param = args.apply.partition(":")
    try:
        d = int(param)
    except ValueError:
        print(f"op: bad operator parameter {param!r}", file=sys.stderr)
        return EXIT_CONFIG
    series = load_qseries(Path(args.input).read_bytes())
    name = name.lower()
    if name == "u":
        out = u_op(series, d)
    elif name == "v":
        out = v_op(series, d)
    elif name == "hecke":
        if args.weight is None:
            print("op: hecke needs --weight", file=sys.stderr)
            return EXIT_CONFIG
        out = hecke(series, d, args.weight, kronecker(args.chi_top, d))
    else:
        print(f"op: unknown operator {name!r}", file=sys.stderr)
        return EXIT_CONFIG
    if args.output:
        Path(args.output).write_bytes(dump_qseries(out))
    summary = {
        "operator": args.apply, "grain": out.grain, "start": out.start,
        "truncation": out.trunc, "nonzero": int(sum(1 for c in out.coeffs if c)),
        "output": args.output,
    }
    print(json.dumps(summary, sort_keys=True))
    return EXIT_PASS


# -- treneer -------------------------------------------------------------------


def cmd_treneer(args) -> int:
    ctx = treneer.make_context(args.ell, args.j, args.truncate)
    if not args.verify_g:
        doc = {"ell": ctx.ell, "j": ctx.j, "m": ctx.m, "beta": ctx.beta,
               "kappa": ctx.kappa, "truncation": ctx.trunc,
               "character_top": treneer.g_character_top(ctx)}
        print(json.dumps(doc, sort_keys=True))
        return EXIT_PASS
    report = treneer.pipeline_report(ctx)
    print(json.dumps(report, sort_keys=True))
    return EXIT_PASS if report["status"] == "PASS" else EXIT_COUNTEREXAMPLE


# -- verify ---------------------------------------------------------------------


def cmd_verify(args) -> int:
    config = _config(args)
    if args.example_block:
        reports = congruence.example_progression_block(
            long=config.long_run, memory_budget=config.memory_budget)
        return _emit_reports(reports, args.format)
    if args.examples_intro:
        reports = congruence.verify_examples_11_12(args.nmax, threads=config.threads)
        return _emit_reports(reports, args.format)
    if args.theorem is None:
        print("verify: need --theorem, --example-block, or --examples-intro",
              file=sys.stderr)
        return EXIT_CONFIG
    if args.ell is None or args.j is None:
        print("verify: --theorem needs --ell and --j", file=sys.stderr)
        return EXIT_CONFIG
    fn = {
        "cong1": congruence.verify_cong1,
        "ramanujan": congruence.verify_ramanujan,
        "atkin": congruence.verify_atkin_k2,
    }.get(args.theorem)
    if fn is None:
        print(f"verify: unknown theorem {args.theorem!r}", file=sys.stderr)
        return EXIT_CONFIG
    report = fn(args.ell, args.j, args.nmax, threads=config.threads)
    return _emit_reports([report], args.format)


# -- witness ----------------------------------------------------------------------


def cmd_witness(args) -> int:
    config = _config(args)
    candidates, rejected = congruence.witness_search(
        args.ell, args.j, args.qbound, args.truncate, include_rejected=True)
    doc = {
        "ell": args.ell, "j": args.j, "q_bound": args.qbound,
        "truncation": args.truncate,
        "primes_scanned": len(candidates) + len(rejected),
        "rejected": rejected,
        "candidates": [],
    }
    inconsistent = False
    for cand in candidates:
        recheck = congruence.verify_sym(
            cand.ell, cand.j, cand.q, args.recheck_nmax,
            threads=config.threads, memory_budget=config.memory_budget)
        if not recheck.passed:
            inconsistent = True
        doc["candidates"].append({
            "q": cand.q, "beta": cand.beta_l, "delta": cand.delta_l,
            "hecke_coefficients_checked": cand.evidence,
            "recheck": recheck.to_dict(),
        })
    doc["status"] = "FAIL" if inconsistent else "PASS"
    print(json.dumps(doc, sort_keys=True))
    return EXIT_COUNTEREXAMPLE if inconsistent else EXIT_PASS


# -- scan -------------------------------------------------------------------------


def cmd_scan(args) -> int:
    function = {"p2": "p_2"}.get(args.function, args.function)
    claims = congruence.scan_progressions(function, args.mod, args.abound, args.nmax)
    if args.format == "csv":
        print("function,A,B,modulus,note")
        for c in claims:
            print(f"{c.function},{c.progression[0]},{c.progression[1]},{c.modulus},{c.provenance}")
    else:
        print(json.dumps([
            {"function": c.function, "A": c.progression[0], "B": c.progression[1],
             "modulus": c.modulus, "filter": c.filter_desc, "note": c.provenance}
            for c in claims
        ], sort_keys=True))
    return EXIT_PASS


# -- cache ------------------------------------------------------------------------


def cmd_cache(args) -> int:
    config = _config(args)
    cache = SeriesCache(config.cache_dir)
    ring = ZZ if args.mod is None else Zmod(args.mod)
    builders = registered_builders()
    try:
        builder = builders[args.tag]
    except KeyError as exc:
        print(f"cache: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    config.check_budget(args.truncate)
    series = cache.get_or_build(args.tag, ring, args.truncate, builder)
    path = cache._entry_path(args.tag, ring, series.trunc)
    print(json.dumps({"tag": args.tag, "truncation": series.trunc,
                      "path": str(path)}, sort_keys=True))
    return EXIT_PASS


# -- wiring -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="growthcong",
        description="Partition congruences and conjugacy-growth verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gamma", help="growth coefficients and the defining identity")
    p.add_argument("--group", choices=("sym", "alt"), default="alt")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--mod", type=int, default=None)
    p.add_argument("--check-eq7", action="store_true",
                   help="check 2*gamma_alt(2n) = p(n) + p_2(2n) exactly")
    p.add_argument("--limit", type=int, default=1000)
    _add_common(p)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("eta", help="eta-quotient expansion and modularity data")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--exp", required=True, help='exponent map, e.g. "1:25,25:-1"')
    p.add_argument("--truncate", type=int, default=None,
                   help="truncation on the 24-grain exponent lattice")
    p.add_argument("--check-modularity", action="store_true")
    p.add_argument("--cusp-orders", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("op", help="apply U/V/Hecke to a stored series")
    p.add_argument("--apply", required=True, help="U:d, V:d, or hecke:Q")
    p.add_argument("--input", required=True, help="series file (cache format)")
    p.add_argument("--output", default=None, help="write the result here")
    p.add_argument("--weight", type=int, default=None, help="weight k for hecke")
    p.add_argument("--chi-top", type=int, default=1,
                   help="D with chi(Q) = kronecker(D, Q), for hecke")
    _add_common(p)
    p.set_defaults(func=cmd_op)

    p = sub.add_parser("treneer", help="cusp-form pipeline construction and checks")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--truncate", type=int, default=300)
    p.add_argument("--verify-g", action="store_true",
                   help="run every congruence check at this truncation")
    _add_common(p)
    p.set_defaults(func=cmd_treneer)

    p = sub.add_parser("verify", help="congruence theorem verification")
    p.add_argument("--theorem", choices=("cong1", "ramanujan", "atkin"), default=None)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--nmax", type=int, default=200)
    p.add_argument("--example-block", action="store_true",
                   help="the explicit growth-congruence progressions")
    p.add_argument("--examples-intro", action="store_true",
                   help="the introductory p_2 residue-class examples")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="Hecke-prefilter search for witness primes")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--qbound", type=int, required=True)
    p.add_argument("--truncate", type=int, required=True)
    p.add_argument("--recheck-nmax", type=int, default=20)
    _add_common(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("scan", help="prospect for vanishing progressions")
    p.add_argument("--function", required=True, help="p, p2, p_k:K, gamma_sym, gamma_alt, a")
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--abound", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("cache", help="build or load a registered coefficient table")
    p.add_argument("--tag", required=True, help="p, p_k:K, f, F:ell, g:ell:j")
    p.add_argument("--truncate", type=int, required=True)
    p.add_argument("--mod", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_cache)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except congruence.BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
