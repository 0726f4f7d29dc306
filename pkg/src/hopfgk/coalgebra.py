"""Coproduct, counit, antipode and the δ maps of a presented connected Hopf algebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import UNIT, AlgebraElement, Word, _accumulate
from .rewrite import Presentation
from .tensor import TensorElement

HALF = Fraction(1, 2)


def _letter_coproduct(p: Presentation, i: int) -> TensorElement:
    syms = p.symbols
    g = (i,)
    base = TensorElement(syms, {(g, UNIT): 1, (UNIT, g): 1})
    return base + p.tail(i)


def coproduct_word(p: Presentation, w: Word) -> TensorElement:
    memo = p.memo.setdefault("coproduct", {})
    hit = memo.get(w)
    if hit is None:
        # legs are multiplied freely and normalized once at the end
        free = TensorElement.one(p.symbols)
        for i in w:
            free = free * _letter_coproduct(p, i)
        hit = memo[w] = p.normalize_tensor(free)
    return hit


def coproduct(p: Presentation, a: AlgebraElement) -> TensorElement:
    """Δ, extended from generators as an algebra morphism."""
    p.require_confluent()
    a = p.normalize(a)
    acc: dict = {}
    for w, c in a.terms.items():
        for key, d in coproduct_word(p, w).terms.items():
            _accumulate(acc, key, c * d)
    return TensorElement._raw(p.symbols, acc, 2)


def counit(a: AlgebraElement) -> Fraction:
    return a.counit()


def delta_map(p: Presentation, a: AlgebraElement) -> TensorElement:
    """δ(a) = Δ(a) - a⊗1 - 1⊗a."""
    a = p.normalize(a)
    one = AlgebraElement.one(p.symbols)
    return coproduct(p, a) - TensorElement.pure(a, one) - TensorElement.pure(one, a)


def delta_cc(p: Presentation, a: AlgebraElement) -> TensorElement:
    d = delta_map(p, a)
    return (d + d.twist()).scale(HALF)


def delta_ac(p: Presentation, a: AlgebraElement) -> TensorElement:
    d = delta_map(p, a)
    return (d - d.twist()).scale(HALF)


def _antipode_generator(p: Presentation, i: int) -> AlgebraElement:
    # S(g) = -g - Σ g1 S(g2) over the tail of Δ(g)
    syms = p.symbols
    out = -AlgebraElement.word(syms, (i,))
    for (w1, w2), c in p.tail(i).terms.items():
        out = out - (AlgebraElement.word(syms, w1) * antipode_word(p, w2)).scale(c)
    return p.normalize(out)


def antipode_word(p: Presentation, w: Word) -> AlgebraElement:
    memo = p.memo.setdefault("antipode", {})
    hit = memo.get(w)
    if hit is None:
        if not w:
            hit = AlgebraElement.one(p.symbols)
        elif len(w) == 1:
            hit = _antipode_generator(p, w[0])
        else:
            # anti-morphism: S(uv) = S(v)S(u)
            hit = p.normalize(antipode_word(p, w[1:]) * antipode_word(p, w[:1]))
        memo[w] = hit
    return hit


def antipode(p: Presentation, a: AlgebraElement) -> AlgebraElement:
    p.require_confluent()
    a = p.normalize(a)
    acc: dict = {}
    for w, c in a.terms.items():
        for nw, d in antipode_word(p, w).terms.items():
            _accumulate(acc, nw, c * d)
    return AlgebraElement._raw(p.symbols, acc)


@dataclass
class SweedlerDecomposition:
    pairs: list[tuple[AlgebraElement, AlgebraElement]]

    def reassemble(self) -> TensorElement:
        syms = self.pairs[0][0].symbols
        total = TensorElement.zero(syms)
        for left, right in self.pairs:
            total = total + TensorElement.pure(left, right)
        return total

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


def sweedler(p: Presentation, h: AlgebraElement) -> SweedlerDecomposition:
    """Pure-tensor pairs (h1, h2) with Σ h1⊗h2 = Δ(h); coefficients sit on the left leg."""
    d = coproduct(p, h)
    syms = p.symbols
    pairs = [
        (AlgebraElement.word(syms, w1, c), AlgebraElement.word(syms, w2))
        for (w1, w2), c in d.sorted_terms()
    ]
    return SweedlerDecomposition(pairs)


def tensor_map_leg(p: Presentation, t: TensorElement, leg: int, f) -> TensorElement:
    """Apply a linear map ``f: Word -> TensorElement`` (arity m) to one leg of ``t``."""
    acc: dict = {}
    arity = None
    for key, c in t.terms.items():
        image = f(key[leg])
        arity = t.arity - 1 + image.arity
        for ikey, d in image.terms.items():
            _accumulate(acc, key[:leg] + ikey + key[leg + 1 :], c * d)
    return TensorElement._raw(p.symbols, acc, arity or t.arity + 1)


def multiply_legs(p: Presentation, t: TensorElement, left=None, right=None) -> AlgebraElement:
    """m∘(left⊗right) on H⊗H, where left/right are word maps to elements (identity if None)."""
    syms = p.symbols
    out = AlgebraElement.zero(syms)
    for (w1, w2), c in t.terms.items():
        a = left(w1) if left else AlgebraElement.word(syms, w1)
        b = right(w2) if right else AlgebraElement.word(syms, w2)
        out = out + (a * b).scale(c)
    return p.normalize(out)


@dataclass
class AxiomCheck:
    axiom: str
    subject: str
    passed: bool
    witness: object = None


@dataclass
class AxiomReport:
    checks: list[AxiomCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def by_axiom(self) -> dict[str, bool]:
        """Verdict per axiom; an axiom with no instances (e.g. no tails) holds vacuously."""
        out: dict[str, bool] = dict.fromkeys(AXIOMS, True)
        for c in self.checks:
            out[c.axiom] = out.get(c.axiom, True) and c.passed
        return out


AXIOMS = (
    "delta-well-defined",
    "counit-well-defined",
    "antipode-well-defined",
    "coassociativity",
    "counit",
    "antipode",
    "tail-antisymmetry",
)


def verify_hopf_axioms(p: Presentation) -> AxiomReport:
    """Check the Hopf axioms exactly on every generator and relation."""
    p.require_confluent()
    syms = p.symbols
    report = AxiomReport()
    add = report.checks.append
    one = AlgebraElement.one(syms)

    for (hi, lo), rel in sorted(p.relations.items(), reverse=True):
        label = f"[{syms[hi].name},{syms[lo].name}]"
        dh, dl = coproduct_word(p, (hi,)), coproduct_word(p, (lo,))
        image = p.normalize_tensor(dh * dl - dl * dh) - coproduct(p, rel.rhs)
        add(AxiomCheck("delta-well-defined", label, image.is_zero(), image or None))
        eps = rel.as_element().counit()
        add(AxiomCheck("counit-well-defined", label, eps == 0, eps or None))
        sh, sl = antipode_word(p, (hi,)), antipode_word(p, (lo,))
        s_rel = p.normalize(sl * sh - sh * sl) - antipode(p, rel.rhs)
        add(AxiomCheck("antipode-well-defined", label, s_rel.is_zero(), s_rel or None))

    for g in syms:
        w = (g.index,)
        gel = AlgebraElement.word(syms, w)
        d = coproduct_word(p, w)
        lhs = tensor_map_leg(p, d, 0, lambda u: coproduct_word(p, u))
        rhs = tensor_map_leg(p, d, 1, lambda u: coproduct_word(p, u))
        diff = lhs - rhs
        add(AxiomCheck("coassociativity", g.name, diff.is_zero(), diff or None))

        left_counit = AlgebraElement(syms, {w2: c for (w1, w2), c in d.terms.items() if not w1})
        right_counit = AlgebraElement(syms, {w1: c for (w1, w2), c in d.terms.items() if not w2})
        ok = left_counit == gel and right_counit == gel
        add(AxiomCheck("counit", g.name, ok, None if ok else (left_counit, right_counit)))

        s_left = multiply_legs(p, d, left=lambda u: antipode_word(p, u))
        s_right = multiply_legs(p, d, right=lambda u: antipode_word(p, u))
        target = one.scale(gel.counit())
        ok = s_left == target and s_right == target
        add(AxiomCheck("antipode", g.name, ok, None if ok else (s_left, s_right)))

    for g in syms:
        if g.degree != 2:
            continue
        t = p.tail(g.index)
        sym_part = t + t.twist()
        legs_ok = all(len(w) == 1 and syms[w[0]].degree == 1 for key in t.terms for w in key)
        ok = sym_part.is_zero() and legs_ok
        witness = None
        if not ok:
            witness = sym_part if not sym_part.is_zero() else "tail leg is not a primitive generator"
        add(AxiomCheck("tail-antisymmetry", g.name, ok, witness))
    return report
