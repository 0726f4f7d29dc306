"""Command line interface: ``hopfgk <command> <file-or-builtin> ...``."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import report
from .builtins import BUILTIN_ORDER, SAMPLES, load
from .coalgebra import verify_hopf_axioms
from .dsl import DSLError
from .growth import growth_function
from .linalg import ResourceLimitError
from .rewrite import InvalidSubalgebra, MalformedPresentation, NonConfluentError, SubalgebraSpec
from .structure import (
    ACEPreconditionError,
    CriterionInapplicable,
    anti_cocommutatives,
    bracket_criterion,
    check_almost_centralizing,
    check_normal,
    in_class,
    lemma10_equivalence,
    primitives,
    run_lemmas,
)

EXIT_OK, EXIT_FAIL, EXIT_RESOURCE = 0, 1, 2


def _subalgebra(p, text: str) -> SubalgebraSpec:
    names = [n.strip() for n in text.split(",") if n.strip()]
    return SubalgebraSpec.from_names(p, names, label=",".join(names))


def _warn(p, err) -> None:
    for d in p.diagnostics:
        print(f"{p.origin}:{d}", file=err)


def cmd_check(p, args, out, err) -> int:
    conf = p.confluence()
    if not conf.confluent:
        w = conf.witness
        print(f"{p.name}: NOT confluent ({conf.triples_checked} overlaps checked)", file=out)
        print(
            f"overlap {'*'.join(w['triple'])}: {w['left']}  !=  {w['right']}",
            file=err,
        )
        return EXIT_FAIL
    print(f"{p.name}: confluent ({conf.triples_checked} overlaps checked)", file=out)
    ax = verify_hopf_axioms(p)
    for name, ok in ax.by_axiom().items():
        print(f"  {name:24s} {'ok' if ok else 'FAILED'}", file=out)
    for f in ax.failures:
        print(f"{f.axiom} fails on {f.subject}: {f.witness}", file=err)
    return EXIT_OK if ax.passed else EXIT_FAIL


def cmd_gk(p, args, out, err) -> int:
    g = growth_function(p, args.max_degree, weighted=args.weighted)
    print(f"presentation   {g.presentation}", file=out)
    print(f"filtration     {'weighted' if g.weighted else 'word length'}", file=out)
    print(f"dims           {g.dims}", file=out)
    if g.pbw_count is not None:
        print(f"pbwCount       {g.pbw_count}", file=out)
    print(f"fittedExponent {g.fitted_exponent:.4f} (shift {g.fit_shift:.3f}, unshifted {g.unshifted_slope:.4f})", file=out)
    if g.exact_gk is None:
        print("exactGK        unknown (estimate only)", file=out)
    else:
        print(f"exactGK = {g.exact_gk}", file=out)
        print(f"certificate    {g.theorem_tag} {g.certificate or ''}".rstrip(), file=out)
    return EXIT_OK


def cmd_primitives(p, args, out, err) -> int:
    prim = primitives(p, args.bound)
    p2 = anti_cocommutatives(p, args.bound)
    print(f"degree bound {prim.degree_bound}", file=out)
    print(f"dim P(H)  = {prim.dim}: {', '.join(str(v) for v in prim)}", file=out)
    print(f"dim P2(H) = {p2.dim}: {', '.join(str(v) for v in p2)}", file=out)
    return EXIT_OK


def cmd_normal(p, args, out, err) -> int:
    rep = check_normal(p, _subalgebra(p, args.sub))
    if rep.is_normal:
        print(f"normal: subalgebra {{{', '.join(rep.subalgebra)}}} is a normal Hopf subalgebra", file=out)
    else:
        print(f"not normal: subalgebra {{{', '.join(rep.subalgebra)}}}", file=out)
        for w in rep.witnesses:
            print(f"  ad_{w['side'][0]}[{w['actor']}]({w['target']}) = {w['value']}", file=out)
    return EXIT_OK


def cmd_ace(p, args, out, err) -> int:
    sub = _subalgebra(p, args.sub)
    rep = check_almost_centralizing(p, sub)
    l10 = lemma10_equivalence(p, sub)
    verdict = "almost centralizing" if rep.passed else "not almost centralizing"
    print(f"{verdict}: extension of {{{', '.join(rep.subalgebra)}}} by {{{', '.join(rep.complement)}}}", file=out)
    for f in rep.condition1_failures:
        print(f"  [{f['r']},{f['x']}] = {f['bracket']} leaves the subalgebra", file=out)
    for f in rep.condition2_failures:
        print(f"  [{f['x_i']},{f['x_j']}] = {f['bracket']} not in the extension span", file=out)
    print(
        f"normal={l10.normal} delta-condition={l10.delta_condition} "
        f"equivalence {'agrees' if l10.agree else 'DISAGREES'}",
        file=out,
    )
    return EXIT_OK if l10.agree else EXIT_FAIL


def cmd_lemmas(p, args, out, err) -> int:
    if not in_class(p):
        print(f"{p.name}: not generated by anti-cocommutative elements with H != U_H; nothing to check", file=out)
        return EXIT_OK
    res = run_lemmas(p, args.samples, args.seed)
    n = res["samples"]
    print(f"delta_cc([s,t]) = [delta(s),delta(t)]: {n - len(res['bracket_identity_failures'])}/{n} pass", file=out)
    print(f"delta_cc/delta_ac membership equivalence: {n - len(res['split_membership_failures'])}/{n} pass", file=out)
    cvn = res["criterion_vs_normality"]
    if "inapplicable" in cvn:
        print(f"bracket criterion: inapplicable ({cvn['inapplicable']})", file=out)
        cvn_ok = True
    else:
        print(
            f"bracket criterion={cvn['bracket_criterion']} U_H normal={cvn['uh_normal']} "
            f"{'agree' if cvn['agree'] else 'DISAGREE'}",
            file=out,
        )
        cvn_ok = cvn["agree"]
    ok = not res["bracket_identity_failures"] and not res["split_membership_failures"] and cvn_ok
    return EXIT_OK if ok else EXIT_FAIL


def cmd_report(p, args, out, err) -> int:
    text = report.dumps(report.full_report(p, args.max_degree, args.samples, args.seed))
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfgk",
        description="Exact computations in presented connected Hopf algebras.",
        epilog=f"built-ins: {', '.join(BUILTIN_ORDER)}; samples: {', '.join(SAMPLES)}",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="DSL file or built-in name")
        sp.set_defaults(func=func)
        return sp

    add("check", cmd_check, "parse, check confluence and Hopf axioms")
    sp = add("gk", cmd_gk, "growth function and GK dimension")
    sp.add_argument("--max-degree", type=int, default=12)
    sp.add_argument("--weighted", action="store_true", help="use declared degrees instead of word length")
    sp = add("primitives", cmd_primitives, "bases of P(H) and P2(H)")
    sp.add_argument("--bound", type=int, default=None)
    sp = add("normal", cmd_normal, "normality of a generator subalgebra")
    sp.add_argument("--sub", required=True, help="comma-separated generator names")
    sp = add("ace", cmd_ace, "almost-centralizing extension check")
    sp.add_argument("--sub", required=True)
    sp = add("lemmas", cmd_lemmas, "randomized checks of the delta identities")
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp = add("report", cmd_report, "full machine-readable report")
    sp.add_argument("-o", "--output", default=None)
    sp.add_argument("--max-degree", type=int, default=12)
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        p = load(args.file)
    except DSLError as exc:
        for d in exc.diagnostics:
            print(f"{exc.origin}:{d}", file=err)
        return EXIT_FAIL
    except OSError as exc:
        print(f"hopfgk: {exc}", file=err)
        return EXIT_FAIL
    _warn(p, err)
    try:
        return args.func(p, args, out, err)
    except (ResourceLimitError, MalformedPresentation) as exc:
        print(f"hopfgk: resource limit: {exc}", file=err)
        return EXIT_RESOURCE
    except (NonConfluentError, InvalidSubalgebra, ACEPreconditionError, CriterionInapplicable) as exc:
        print(f"hopfgk: {exc}", file=err)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
