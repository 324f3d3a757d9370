"""Batch command-line surface.

Subcommands: count, stats, census, span, probe.  All randomness flows
from --seed (default 0).  Exit codes:

    0  success
    1  unexpected internal error
    2  validation failure (scenario, parsing, arguments)
    3  enumeration budget exceeded
    4  growth-exponent fit underdetermined
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .errors import (
    BudgetExceededError,
    FitUnderdeterminedError,
    HypersliceError,
    ScenarioError,
)
from .fields import field_of_order
from .irreddetect import census, classify, lw_estimate
from .projgeom import normalize, span_dim, span_locus_dim
from .report import census_document, render_json, write_census_csv, \
    write_census_figure
from .scenario import load_scenario
from .slicestats import SetMap, exact_stats, mc_stats, predicted_stats, \
    variance_bound
from .variety import count_points, fiber_profile

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_FIT = 4


def _parse_int_list(text: str):
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise ScenarioError(f"expected a comma-separated int list: {text!r}")


def _emit(doc, out):
    text = render_json(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_count(args) -> int:
    sc = load_scenario(args.scenario)
    X, _ = sc.instantiate(args.q, seed=args.seed)
    F = sc.field_for(args.q, args.seed)
    counts = []
    for m in range(1, args.m + 1):
        rec = count_points(X, m=m, budget=args.budget,
                           workers=args.workers, base_field=F)
        counts.append(rec.count)
        print(f"m={m}\tcount={rec.count}")
    _emit_maybe(args, {
        "tool": "hyperslice", "version": __version__,
        "scenario": sc.name, "q": args.q, "counts": counts,
    })
    return EXIT_OK


def _emit_maybe(args, doc):
    if getattr(args, "out", None):
        _emit(doc, args.out)


def cmd_stats(args) -> int:
    if args.setmap:
        with open(args.setmap, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        F = field_of_order(int(raw["q"]), args.seed)
        n = int(raw["n"])
        images = tuple(normalize(F, tuple(v)) for v in raw["images"])
        target = SetMap(F, n, images)
        q = F.order
        name = args.setmap
    else:
        sc = load_scenario(args.scenario)
        X, phi = sc.instantiate(args.q, seed=args.seed)
        target = (X, phi)
        q = sc.field_for(args.q, args.seed).order
        n = phi.target_dim
        name = sc.name
    doc = {
        "tool": "hyperslice", "version": __version__, "seed": args.seed,
        "source": name, "q": q, "n": n,
    }
    if args.samples:
        mc = mc_stats(target, args.samples, args.seed, budget=args.budget)
        doc.update({
            "mode": "monte-carlo", "samples": mc.samples,
            "mean": mc.mean, "variance": mc.variance,
            "mean_stderr": mc.mean_stderr,
            "variance_stderr": mc.variance_stderr,
        })
    else:
        st = exact_stats(target, budget=args.budget)
        mu_p, var_p = predicted_stats(st.domain_size, st.collision_sum,
                                      q, n)
        coarse, sharp = variance_bound(st.image_size, st.max_fiber, q, n,
                                       st.collision_sum)
        doc.update({
            "mode": "exhaustive",
            "hyperplanes": st.hyperplanes,
            "mean_exact": st.mean, "variance_exact": st.variance,
            "mean_predicted": mu_p, "variance_predicted": var_p,
            "closed_form_matches": (st.mean == mu_p
                                    and st.variance == var_p),
            "collision_sum": st.collision_sum,
            "max_fiber": st.max_fiber, "image_size": st.image_size,
            "variance_bound_coarse": coarse,
            "variance_bound_sharp": sharp,
        })
        print(f"mu = {st.mean}  sigma^2 = {st.variance}  "
              f"closed-form match: {doc['closed_form_matches']}")
    _emit_maybe(args, doc)
    if args.samples:
        print(f"mu_hat = {doc['mean']:.6g}  "
              f"sigma2_hat = {doc['variance']:.6g}")
    return EXIT_OK


def cmd_census(args) -> int:
    sc = load_scenario(args.scenario)
    q_list = _parse_int_list(args.q)
    mode = args.mode or sc.mode
    rep = census(
        lambda q: sc.instantiate(q, seed=args.seed),
        q_list, sc.r, sc.codim, mode=mode, M=args.M or sc.M,
        budget=args.budget, workers=args.workers)
    doc = census_document(rep, sc.name, args.seed, __version__,
                          redact_timings=args.redact_timings)
    if args.out:
        _emit(doc, args.out + ".json")
        write_census_csv(doc, args.out + ".csv")
        write_census_figure(doc, args.out + ".png")
    else:
        sys.stdout.write(render_json(doc))
    print(f"fitted exponent {rep.fitted_exponent:.3f} "
          f"(bound {rep.theoretical_exponent}); very-bad counts: "
          + ", ".join(f"q={row.q}:{row.very_bad}" for row in rep.rows),
          file=sys.stderr)
    return EXIT_OK


def cmd_span(args) -> int:
    with open(args.points, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    F = field_of_order(args.q, args.seed)
    pts = [normalize(F, tuple(c % F.char if F.base is None else c
                              for c in vec)) for vec in raw]
    for vec in pts:
        if len(vec) != args.n + 1:
            raise ScenarioError(
                f"point {vec} does not live in P^{args.n}")
    sd = span_dim(F, pts)
    ld = span_locus_dim(F, pts)
    doc = {"q": args.q, "n": args.n, "points": [list(p) for p in pts],
           "span_dim": sd, "span_locus_dim": ld}
    print(f"span_dim={sd}\tspan_locus_dim={ld}")
    _emit_maybe(args, doc)
    return EXIT_OK


def cmd_probe(args) -> int:
    sc = load_scenario(args.scenario)
    X, phi = sc.instantiate(args.q, seed=args.seed)
    F = phi.field
    coords = _parse_int_list(args.hyperplane)
    if len(coords) != phi.target_dim + 1:
        raise ScenarioError(
            f"hyperplane needs {phi.target_dim + 1} coordinates")
    H = normalize(F, tuple(c % F.char for c in coords))
    verdict = classify(X, phi, H, sc.r, mode=args.mode or sc.mode,
                       M=args.M or sc.M, budget=args.budget)
    label = verdict.verdict
    if verdict.reason:
        label += f"({verdict.reason})"
    print(f"hyperplane={list(H)}\tverdict={label}\t"
          f"counts={list(verdict.counts)}")
    _emit_maybe(args, {
        "scenario": sc.name, "q": args.q, "hyperplane": list(H),
        "verdict": verdict.verdict, "reason": verdict.reason,
        "counts": list(verdict.counts),
    })
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperslice",
        description="Finite-field hyperplane slicing experiments")
    parser.add_argument("--version", action="version",
                        version=f"hyperslice {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario=True):
        if scenario:
            p.add_argument("scenario",
                           help="scenario file path or bundled name")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=None)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out", default=None,
                       help="write the JSON report here")

    p = sub.add_parser("count", help="point counts over extensions")
    common(p)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--m", type=int, default=1,
                   help="count over F_{q^m} for m = 1..M")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("stats", help="slice statistics")
    common(p)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--setmap", default=None,
                   help="JSON set-map file instead of a scenario")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exhaustive", action="store_true", default=True)
    group.add_argument("--samples", type=int, default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("census", help="very-bad hyperplane census")
    common(p)
    p.add_argument("--q", required=True,
                   help="comma-separated field orders, e.g. 3,5,7")
    p.add_argument("--mode", choices=["threshold", "estimator"],
                   default=None)
    p.add_argument("--M", type=int, default=None)
    p.add_argument("--redact-timings", action="store_true",
                   help="zero runtime fields for byte-stable output")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("span", help="span and span-locus dimensions")
    common(p, scenario=False)
    p.add_argument("--points", required=True,
                   help="JSON file: list of coordinate vectors")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_span)

    p = sub.add_parser("probe", help="classify one hyperplane")
    common(p)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--hyperplane", required=True,
                   help="comma-separated dual coordinates c0,...,cn")
    p.add_argument("--mode", choices=["threshold", "estimator"],
                   default=None)
    p.add_argument("--M", type=int, default=None)
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: BudgetExceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FitUnderdeterminedError as exc:
        print(f"error: FitUnderdetermined: {exc}", file=sys.stderr)
        return EXIT_FIT
    except (ScenarioError, HypersliceError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
