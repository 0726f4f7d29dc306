"""Adjoint actions, normality and almost-centralizing extensions."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import AlgebraElement, Word
from .coalgebra import antipode_word, delta_ac, delta_cc, delta_map, sweedler
from .linalg import (
    SubspaceBasis,
    anti_cocommutative_space,
    default_bound,
    enumerate_words,
    in_span,
    primitive_space,
)
from .rewrite import InvalidSubalgebra, Presentation, SubalgebraSpec, is_member

IDENTITY_BOUND = 4


class CriterionInapplicable(RuntimeError):
    pass


class ACEPreconditionError(ValueError):
    """A complement generator has a coproduct tail outside sub⊗sub."""


class DomainError(ValueError):
    pass


def _cached(p: Presentation, key, compute):
    memo = p.memo.setdefault("spaces", {})
    if key not in memo:
        memo[key] = compute()
    return memo[key]


def primitives(p: Presentation, bound: Optional[int] = None) -> SubspaceBasis:
    bound = default_bound(p) if bound is None else bound
    return _cached(p, ("P", bound), lambda: primitive_space(p, bound))


def anti_cocommutatives(p: Presentation, bound: Optional[int] = None) -> SubspaceBasis:
    bound = default_bound(p) if bound is None else bound
    return _cached(
        p, ("P2", bound), lambda: anti_cocommutative_space(p, bound, primitives=primitives(p, bound))
    )


# -- adjoint actions ------------------------------------------------------


def adjoint_left(p: Presentation, h: AlgebraElement, a: AlgebraElement) -> AlgebraElement:
    """Σ h1 a S(h2)."""
    out = AlgebraElement.zero(p.symbols)
    for h1, h2 in sweedler(p, h):
        for w, c in h2.terms.items():
            out = out + (h1 * a * antipode_word(p, w)).scale(c)
    return p.normalize(out)


def adjoint_right(p: Presentation, h: AlgebraElement, a: AlgebraElement) -> AlgebraElement:
    """Σ S(h1) a h2."""
    out = AlgebraElement.zero(p.symbols)
    for h1, h2 in sweedler(p, h):
        for w, c in h1.terms.items():
            out = out + (antipode_word(p, w) * a * h2).scale(c)
    return p.normalize(out)


@dataclass
class NormalityReport:
    is_normal: bool
    subalgebra: list[str]
    witnesses: list[dict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.is_normal


def _require_hopf_sub(p: Presentation, sub: SubalgebraSpec) -> None:
    if not p.relation_closed(sub):
        raise InvalidSubalgebra(f"{sub.names(p)} is not closed under the relations")
    if not p.tails_closed(sub):
        raise InvalidSubalgebra(f"{sub.names(p)} is not closed under the coproduct")


def check_normal(p: Presentation, sub: SubalgebraSpec, audit_bound: Optional[int] = None) -> NormalityReport:
    """Test ad_l[h](a), ad_r[h](a) ∈ sub for generators h of H and a of sub.

    With ``audit_bound`` every normal word of weighted degree up to the bound
    is used as actor and every sub-word up to the bound as target.
    """
    p.require_confluent()
    _require_hopf_sub(p, sub)
    syms = p.symbols
    if audit_bound is None:
        actors: list[Word] = [(g.index,) for g in syms]
        targets: list[Word] = [(i,) for i in sorted(sub.generators)]
    else:
        weights = [g.degree for g in syms]
        actors = [w for w in enumerate_words(weights, audit_bound) if w]
        targets = [w for w in enumerate_words(weights, audit_bound, letters=sorted(sub.generators)) if w]
    witnesses = []
    for hw in actors:
        h = AlgebraElement.word(syms, hw)
        for aw in targets:
            a = AlgebraElement.word(syms, aw)
            for side, fn in (("left", adjoint_left), ("right", adjoint_right)):
                value = fn(p, h, a)
                if not value.letters() <= sub.generators:
                    witnesses.append(
                        {
                            "actor": syms.format_word(hw),
                            "target": syms.format_word(aw),
                            "value": value,
                            "side": side,
                        }
                    )
    return NormalityReport(not witnesses, sub.names(p), witnesses)


# -- bracket criterion ----------------------------------------------------


def bracket_failures(p: Presentation) -> list[dict]:
    syms = p.symbols
    out = []
    for t in p.degree2_generators():
        for g in p.primitive_generators():
            val = p.bracket(AlgebraElement.word(syms, (t,)), AlgebraElement.word(syms, (g,)))
            if not all(len(w) == 1 and syms[w[0]].degree == 1 for w in val.terms):
                out.append({"t": syms[t].name, "g": syms[g].name, "bracket": val})
    return out


def bracket_criterion(p: Presentation) -> bool:
    """True iff [t, g] lies in the span of the primitive generators for all degree-2 t, degree-1 g."""
    p.require_confluent()
    n_prim = len(p.primitive_generators())
    dim_p = primitives(p).dim
    if dim_p != n_prim:
        raise CriterionInapplicable(
            f"degree-1 generators span a {n_prim}-dimensional space but P(H) has dimension {dim_p}"
        )
    return not bracket_failures(p)


def in_class(p: Presentation) -> bool:
    """Generated by P₂ with at least one non-primitive generator (so H ≠ U_H)."""
    if not p.is_confluent:
        return False
    syms = p.symbols
    for idx, t in p.tails.items():
        if not (t + t.twist()).is_zero():
            return False
        if not all(len(w) == 1 and syms[w[0]].degree == 1 for k in t.terms for w in k):
            return False
    return bool(p.tails)


# -- almost centralizing extensions --------------------------------------


@dataclass
class ACEReport:
    passed: bool
    subalgebra: list[str]
    complement: list[str]
    condition1_failures: list[dict] = field(default_factory=list)
    condition2_failures: list[dict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def _complement_checked(p: Presentation, sub: SubalgebraSpec) -> list[int]:
    p.require_confluent()
    if not p.relation_closed(sub):
        raise InvalidSubalgebra(f"{sub.names(p)} is not closed under the relations")
    comp = sub.complement(p)
    for h in comp:
        for key in p.tail(h).terms:
            if not all(set(w) <= sub.generators for w in key):
                raise ACEPreconditionError(
                    f"delta({p.symbols[h].name}) is not in sub⊗sub for sub = {sub.names(p)}"
                )
    return comp


def _extension_span(p: Presentation, sub: SubalgebraSpec, comp: list[int], bound: int) -> list[AlgebraElement]:
    """Spanning set of Σ h_m·sub + sub, truncated at weighted degree ``bound``."""
    syms = p.symbols
    weights = [g.degree for g in syms]
    sub_words = enumerate_words(weights, bound, letters=sorted(sub.generators))
    out = [p.normalize_word(w) for w in sub_words]
    for m in comp:
        for w in sub_words:
            out.append(p.normalize_word((m,) + w))
    return out


def _bound_for(p: Presentation, comp: list[int], degree_bound: Optional[int]) -> int:
    top = max((p.symbols[i].degree + p.symbols[j].degree for i in comp for j in comp), default=0)
    return max(IDENTITY_BOUND if degree_bound is None else degree_bound, top)


def check_almost_centralizing(
    p: Presentation, sub: SubalgebraSpec, degree_bound: Optional[int] = None
) -> ACEReport:
    comp = _complement_checked(p, sub)
    syms = p.symbols
    c1 = []
    for h in comp:
        for a in sorted(sub.generators):
            val = p.bracket(AlgebraElement.word(syms, (a,)), AlgebraElement.word(syms, (h,)))
            if not val.letters() <= sub.generators:
                c1.append({"r": syms[a].name, "x": syms[h].name, "bracket": val})
    c2 = []
    pairs = list(itertools.combinations(comp, 2))
    if pairs:
        bound = _bound_for(p, comp, degree_bound)
        span = [v.terms for v in _extension_span(p, sub, comp, bound)]
        for i, j in pairs:
            val = p.bracket(AlgebraElement.word(syms, (i,)), AlgebraElement.word(syms, (j,)))
            if not in_span(span, val.terms):
                c2.append({"x_i": syms[i].name, "x_j": syms[j].name, "bracket": val})
    return ACEReport(
        not c1 and not c2,
        sub.names(p),
        [syms[h].name for h in comp],
        c1,
        c2,
    )


@dataclass
class AceEquivalenceReport:
    almost_centralizing: bool
    normal: bool
    delta_condition: bool

    @property
    def rhs(self) -> bool:
        return self.normal and self.delta_condition

    @property
    def agree(self) -> bool:
        return self.almost_centralizing == self.rhs

    def __bool__(self) -> bool:
        return self.agree


def delta_condition(p: Presentation, sub: SubalgebraSpec, degree_bound: Optional[int] = None) -> bool:
    """δ([h_i,h_j]) ∈ Σ δ(h_m·sub) + δ(sub) for all complement pairs."""
    comp = _complement_checked(p, sub)
    pairs = list(itertools.combinations(comp, 2))
    if not pairs:
        return True
    syms = p.symbols
    bound = _bound_for(p, comp, degree_bound)
    images = [delta_map(p, v).terms for v in _extension_span(p, sub, comp, bound)]
    for i, j in pairs:
        val = p.bracket(AlgebraElement.word(syms, (i,)), AlgebraElement.word(syms, (j,)))
        if not in_span(images, delta_map(p, val).terms):
            return False
    return True


def lemma10_equivalence(p: Presentation, sub: SubalgebraSpec, degree_bound: Optional[int] = None) -> AceEquivalenceReport:
    """Evaluate both sides of the almost-centralizing ⇔ (normal and δ-condition) equivalence independently."""
    ace = check_almost_centralizing(p, sub, degree_bound).passed
    normal = check_normal(p, sub).is_normal
    return AceEquivalenceReport(ace, normal, delta_condition(p, sub, degree_bound))


# -- δ identities on P₂ ---------------------------------------------------


def bracket_delta_identity(p: Presentation, s: AlgebraElement, t: AlgebraElement) -> bool:
    """δ_cc([s,t]) = [δ(s), δ(t)] in H⊗H."""
    ds, dt = delta_map(p, s), delta_map(p, t)
    rhs = p.normalize_tensor(ds * dt - dt * ds)
    return delta_cc(p, p.bracket(s, t)) == rhs


@dataclass
class DeltaSplitReport:
    cc_in_delta_u3: bool
    ac_in_delta_p2: bool

    @property
    def holds(self) -> bool:
        return self.cc_in_delta_u3 == self.ac_in_delta_p2

    def __bool__(self) -> bool:
        return self.holds


def lemma14_check(
    p: Presentation, s: AlgebraElement, t: AlgebraElement, degree_bound: int = IDENTITY_BOUND
) -> DeltaSplitReport:
    """δ_cc([s,t]) ∈ δ(U₃)  ⇔  δ_ac([s,t]) ∈ δ(P₂), both decided by exact span membership.

    U₃ is the span of words of length at most 3 in the primitive generators.
    """
    p2 = anti_cocommutatives(p, degree_bound)
    for name, x in (("s", s), ("t", t)):
        if not p2.contains(p.normalize(x)):
            raise DomainError(f"{name} = {x} is not in the anti-cocommutative space")
    c = p.bracket(s, t)
    weights = [1] * len(p.symbols)
    u3 = [w for w in enumerate_words(weights, 3, letters=p.primitive_generators()) if w]
    u3_images = [delta_map(p, AlgebraElement.word(p.symbols, w)).terms for w in u3]
    p2_images = [delta_map(p, v).terms for v in p2]
    return DeltaSplitReport(
        in_span(u3_images, delta_cc(p, c).terms),
        in_span(p2_images, delta_ac(p, c).terms),
    )


def random_combination(basis: SubspaceBasis, rng: random.Random, spread: int = 3) -> AlgebraElement:
    out = None
    for v in basis:
        coeff = Fraction(rng.randint(-spread, spread), rng.randint(1, spread))
        term = v.scale(coeff)
        out = term if out is None else out + term
    return out


def criterion_matches_normality(p: Presentation) -> tuple[bool, bool]:
    """(bracket criterion, U_H normal) computed on independent paths."""
    return bracket_criterion(p), check_normal(p, SubalgebraSpec.primitive_part(p)).is_normal


def run_lemmas(p: Presentation, samples: int = 20, seed: int = 0, degree_bound: int = IDENTITY_BOUND) -> dict:
    """Randomized property runs of the δ identities plus the normality cross-check."""
    rng = random.Random(seed)
    p2 = anti_cocommutatives(p, degree_bound)
    bracket_fail, split_fail = [], []
    for _ in range(samples):
        s, t = random_combination(p2, rng), random_combination(p2, rng)
        if not bracket_delta_identity(p, s, t):
            bracket_fail.append((s, t))
        if not lemma14_check(p, s, t, degree_bound).holds:
            split_fail.append((s, t))
    result = {
        "samples": samples,
        "seed": seed,
        "bracket_identity_failures": bracket_fail,
        "split_membership_failures": split_fail,
    }
    try:
        crit, normal = criterion_matches_normality(p)
        result["criterion_vs_normality"] = {"bracket_criterion": crit, "uh_normal": normal, "agree": crit == normal}
    except CriterionInapplicable as exc:
        result["criterion_vs_normality"] = {"inapplicable": str(exc)}
    return result
