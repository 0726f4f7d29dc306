"""Machine-readable report documents.

Rationals are written as ``"p/q"`` strings, words as arrays of generator
names; every section is keyed by the operation that produced it.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra import AlgebraElement
from .coalgebra import verify_hopf_axioms
from .growth import growth_function, theorem00_check
from .rewrite import Presentation, SubalgebraSpec
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
from .tensor import TensorElement

SCHEMA_VERSION = 1


def rational(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def encode(obj: Any, p: Presentation) -> Any:
    syms = p.symbols
    if isinstance(obj, AlgebraElement):
        return [{"word": syms.word_names(w), "coeff": rational(c)} for w, c in obj.sorted_terms()]
    if isinstance(obj, TensorElement):
        return [{"legs": [syms.word_names(w) for w in k], "coeff": rational(c)} for k, c in obj.sorted_terms()]
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, dict):
        return {str(k): encode(v, p) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v, p) for v in obj]
    if isinstance(obj, float):
        return round(obj, 6)
    return obj


def presentation_section(p: Presentation) -> dict:
    syms = p.symbols
    return {
        "name": p.name,
        "generators": [{"name": g.name, "degree": g.degree} for g in syms],
        "relations": [
            {"hi": r.hi.name, "lo": r.lo.name, "rhs": encode(r.rhs, p)}
            for _, r in sorted(p.relations.items(), reverse=True)
        ],
        "deltaTails": {syms[i].name: encode(t, p) for i, t in sorted(p.tails.items())},
        "diagnostics": [
            {"line": d.line, "column": d.column, "severity": d.severity, "message": d.message}
            for d in p.diagnostics
        ],
    }


def confluence_section(p: Presentation) -> dict:
    rep = p.confluence()
    return {
        "confluent": rep.confluent,
        "triplesChecked": rep.triples_checked,
        "failures": [
            {"triple": f["triple"], "left": encode(f["left"], p), "right": encode(f["right"], p)}
            for f in rep.failures
        ],
    }


def axioms_section(p: Presentation) -> dict:
    rep = verify_hopf_axioms(p)
    return {
        "passed": rep.passed,
        "axioms": rep.by_axiom(),
        "failures": [
            {"axiom": c.axiom, "subject": c.subject, "witness": encode(c.witness, p) if not isinstance(c.witness, str) else c.witness}
            for c in rep.failures
        ],
    }


def growth_section(p: Presentation, max_degree: int, weighted: bool = False) -> dict:
    g = growth_function(p, max_degree, weighted=weighted)
    return {
        "maxDegree": g.max_degree,
        "weighted": g.weighted,
        "dims": g.dims,
        "pbwCount": g.pbw_count,
        "fittedExponent": round(g.fitted_exponent, 6),
        "fitShift": round(g.fit_shift, 6),
        "unshiftedSlope": round(g.unshifted_slope, 6),
        "exactGK": g.exact_gk,
        "estimateOnly": g.estimate_only,
        "theoremTag": g.theorem_tag,
        "certificate": g.certificate,
        "notes": g.notes,
    }


def space_section(p: Presentation, space) -> dict:
    return {"degreeBound": space.degree_bound, "dim": space.dim, "basis": [encode(v, p) for v in space]}


def normality_section(p: Presentation, sub: SubalgebraSpec) -> dict:
    rep = check_normal(p, sub)
    return {
        "subalgebra": rep.subalgebra,
        "isNormal": rep.is_normal,
        "witnesses": [
            {"actor": w["actor"], "target": w["target"], "side": w["side"], "value": encode(w["value"], p)}
            for w in rep.witnesses
        ],
    }


def ace_section(p: Presentation, sub: SubalgebraSpec) -> dict:
    try:
        rep = check_almost_centralizing(p, sub)
        l10 = lemma10_equivalence(p, sub)
    except ACEPreconditionError as exc:
        return {"subalgebra": sub.names(p), "precondition": str(exc)}
    return {
        "subalgebra": rep.subalgebra,
        "complement": rep.complement,
        "passed": rep.passed,
        "condition1Failures": encode(rep.condition1_failures, p),
        "condition2Failures": encode(rep.condition2_failures, p),
        "lemma10Equivalence": {
            "almostCentralizing": l10.almost_centralizing,
            "normal": l10.normal,
            "deltaCondition": l10.delta_condition,
            "agree": l10.agree,
        },
    }


def lemmas_section(p: Presentation, samples: int = 20, seed: int = 0) -> dict:
    if not in_class(p):
        return {"skipped": "presentation is not generated by anti-cocommutative elements with H != U_H"}
    res = run_lemmas(p, samples, seed)
    return {
        "samples": res["samples"],
        "seed": res["seed"],
        "bracketIdentityFailures": len(res["bracket_identity_failures"]),
        "splitMembershipFailures": len(res["split_membership_failures"]),
        "criterion_vs_normality": res["criterion_vs_normality"],
    }


def theorem00_section(p: Presentation) -> dict:
    t = theorem00_check(p)
    return {
        "status": t.status,
        "inClass": t.in_class,
        "hypothesis": t.hypothesis,
        "uhNormal": t.uh_normal,
        "exactGK": t.exact_gk,
        "dimP": t.dim_p,
        "dimP2": t.dim_p2,
        "agree": t.agree,
    }


def full_report(p: Presentation, max_degree: int = 12, samples: int = 20, seed: int = 0) -> dict:
    doc: dict = {"schemaVersion": SCHEMA_VERSION, "parse": presentation_section(p)}
    doc["checkConfluence"] = confluence_section(p)
    doc["growthFunction"] = growth_section(p, max_degree)
    if not p.is_confluent:
        skipped = {"skipped": "presentation is not confluent"}
        for key in (
            "verifyHopfAxioms", "primitiveSpace", "antiCocommutativeSpace", "checkNormal",
            "bracketCriterion", "checkAlmostCentralizing", "theorem00Check", "lemmas",
        ):
            doc[key] = skipped
        return doc
    uh = SubalgebraSpec.primitive_part(p)
    doc["verifyHopfAxioms"] = axioms_section(p)
    doc["primitiveSpace"] = space_section(p, primitives(p))
    doc["antiCocommutativeSpace"] = space_section(p, anti_cocommutatives(p))
    doc["checkNormal"] = normality_section(p, uh)
    try:
        doc["bracketCriterion"] = {"value": bracket_criterion(p)}
    except CriterionInapplicable as exc:
        doc["bracketCriterion"] = {"inapplicable": str(exc)}
    doc["checkAlmostCentralizing"] = ace_section(p, uh) if uh.generators else {"skipped": "no primitive generators"}
    doc["theorem00Check"] = theorem00_section(p)
    doc["lemmas"] = lemmas_section(p, samples, seed)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
