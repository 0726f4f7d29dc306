"""Presentations by ordered commutation relations and PBW normal forms.

A relation for generators ``hi > lo`` (declaration order) is the rewrite rule
``hi*lo -> lo*hi + rhs``.  Normal words are nondecreasing.  Reduction always
rewrites the leftmost descent, and every step lowers
``(weighted degree, inversion count)`` lexicographically, because the rhs
drops weighted degree and a swap removes one inversion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .algebra import (
    AlgebraElement,
    GeneratorSymbol,
    PresentationMismatch,
    SymbolTable,
    Word,
    _accumulate,
    is_normal_word,
)
from .tensor import TensorElement

DEFAULT_STEP_BUDGET = 2_000_000


class PresentationError(ValueError):
    """A presentation violates a structural rule (pairing, rhs shape, tails)."""


class MalformedPresentation(RuntimeError):
    """Reduction did not terminate within the step budget."""


class NonConfluentError(RuntimeError):
    """An operation that needs a PBW basis was called on a non-confluent presentation."""


class InvalidSubalgebra(ValueError):
    """A generator subset is not closed under the relations (or coproduct tails)."""


@dataclass(frozen=True)
class Relation:
    """hi*lo = lo*hi + rhs, with hi.index > lo.index."""

    hi: GeneratorSymbol
    lo: GeneratorSymbol
    rhs: AlgebraElement

    @property
    def pair(self) -> tuple[int, int]:
        return (self.hi.index, self.lo.index)

    def as_element(self) -> AlgebraElement:
        """hi*lo - lo*hi - rhs, which vanishes in the algebra."""
        syms = self.rhs.symbols
        return (
            AlgebraElement.word(syms, (self.hi.index, self.lo.index))
            - AlgebraElement.word(syms, (self.lo.index, self.hi.index))
            - self.rhs
        )


def _first_descent(w: Word) -> int:
    for i in range(len(w) - 1):
        if w[i] > w[i + 1]:
            return i
    return -1


def inversions(w: Word) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])


@dataclass(frozen=True)
class SubalgebraSpec:
    generators: frozenset[int]
    label: str = ""

    @classmethod
    def from_names(cls, p: "Presentation", names: Iterable[str], label: str = "") -> "SubalgebraSpec":
        names = list(names)
        for n in names:
            if n not in p.symbols:
                raise InvalidSubalgebra(f"unknown generator {n!r}")
        return cls(frozenset(p.symbols.index(n) for n in names), label)

    @classmethod
    def primitive_part(cls, p: "Presentation") -> "SubalgebraSpec":
        """U_H: the subalgebra generated by the degree-1 generators."""
        return cls(frozenset(g.index for g in p.symbols if g.degree == 1), "U_H")

    @classmethod
    def everything(cls, p: "Presentation") -> "SubalgebraSpec":
        return cls(frozenset(range(len(p.symbols))), "H")

    def names(self, p: "Presentation") -> list[str]:
        return [p.symbols[i].name for i in sorted(self.generators)]

    def complement(self, p: "Presentation") -> list[int]:
        return [g.index for g in p.symbols if g.index not in self.generators]


@dataclass
class ConfluenceReport:
    confluent: bool
    triples_checked: int
    failures: list[dict] = field(default_factory=list)

    @property
    def witness(self) -> Optional[dict]:
        return self.failures[0] if self.failures else None


class Presentation:
    """Generators, one relation per pair of distinct generators, and coproduct tails.

    ``tails`` maps the index of a degree-2 generator to its δ-value in H⊗H.
    Tail antisymmetry is not enforced here (the parser enforces it, and
    :func:`hopfgk.coalgebra.verify_hopf_axioms` reports violations), so that
    deliberately broken inputs can still be built and audited.
    """

    def __init__(
        self,
        name: str,
        symbols: SymbolTable,
        relations: Iterable[Relation],
        tails: Mapping[int, TensorElement] | None = None,
        step_budget: int = DEFAULT_STEP_BUDGET,
    ):
        self.name = name
        self.symbols = symbols
        self.step_budget = step_budget
        rels: dict[tuple[int, int], Relation] = {}
        for r in relations:
            if r.rhs.symbols != symbols:
                raise PresentationMismatch("relation rhs uses a different symbol table")
            if r.hi.index <= r.lo.index:
                raise PresentationError(f"relation ({r.hi.name},{r.lo.name}) must have hi after lo")
            if r.pair in rels:
                raise PresentationError(f"duplicate relation for pair ({r.lo.name},{r.hi.name})")
            self._check_rhs(r)
            rels[r.pair] = r
        for hi, lo in itertools.combinations(reversed(range(len(symbols))), 2):
            if (hi, lo) not in rels:
                raise PresentationError(
                    f"missing relation for pair ({symbols[lo].name},{symbols[hi].name})"
                )
        self.relations = rels
        self.tails: dict[int, TensorElement] = {}
        for idx, t in (tails or {}).items():
            g = symbols[idx]
            if g.degree != 2:
                raise PresentationError(f"delta tail on degree-1 generator {g.name!r}")
            if t.symbols != symbols or t.arity != 2:
                raise PresentationMismatch(f"tail of {g.name!r} is not in H⊗H of this presentation")
            if t:
                self.tails[idx] = t
        self._nf_cache: dict[Word, dict[Word, Fraction]] = {}
        # memo tables for derived maps (coproduct, antipode, ...), keyed by map name
        self.memo: dict[str, dict] = {}
        self._confluence: Optional[ConfluenceReport] = None
        self.origin: Optional[str] = None
        self.diagnostics: list = []

    def _check_rhs(self, r: Relation) -> None:
        limit = r.hi.degree + r.lo.degree
        for w in r.rhs.terms:
            if len(w) > 2:
                raise PresentationError(f"rhs of [{r.hi.name},{r.lo.name}] has a word longer than 2")
            if not is_normal_word(w):
                raise PresentationError(f"rhs of [{r.hi.name},{r.lo.name}] is not in normal form")
            if self.symbols.degree(w) >= limit:
                raise PresentationError(
                    f"rhs of [{r.hi.name},{r.lo.name}] does not drop degree "
                    f"({self.symbols.format_word(w)} has degree {self.symbols.degree(w)} >= {limit})"
                )

    @classmethod
    def from_brackets(
        cls,
        name: str,
        generators: Iterable[tuple[str, int]],
        brackets: Mapping[tuple[str, str], AlgebraElement | str | int] | None = None,
        tails: Mapping[str, Iterable[tuple[str, str, object]]] | None = None,
    ) -> "Presentation":
        """Build from bracket values ``[a,b] = rhs``; unlisted pairs default to 0.

        ``tails`` maps a degree-2 generator name to ``(x, y, coeff)`` triples
        meaning ``coeff * x⊗y``.  String rhs values are parsed by the DSL
        polynomial reader.
        """
        from .dsl import parse_polynomial

        symbols = SymbolTable.from_pairs(generators)
        given: dict[tuple[int, int], AlgebraElement] = {}
        for (a, b), rhs in (brackets or {}).items():
            if isinstance(rhs, AlgebraElement):
                val = rhs
            elif isinstance(rhs, str):
                val = parse_polynomial(rhs, symbols)
            else:
                val = AlgebraElement(symbols, {(): rhs}) if rhs else AlgebraElement.zero(symbols)
            ia, ib = symbols.index(a), symbols.index(b)
            key = (max(ia, ib), min(ia, ib))
            if key in given:
                raise PresentationError(f"duplicate relation for pair ({a},{b})")
            given[key] = val if ia > ib else -val
        relations = []
        for hi, lo in itertools.combinations(reversed(range(len(symbols))), 2):
            rhs = given.get((hi, lo), AlgebraElement.zero(symbols))
            relations.append(Relation(symbols[hi], symbols[lo], rhs))
        tail_elems = {}
        for gname, triples in (tails or {}).items():
            terms: dict = {}
            for x, y, c in triples:
                key = ((symbols.index(x),), (symbols.index(y),))
                terms[key] = terms.get(key, 0) + Fraction(c)
            tail_elems[symbols.index(gname)] = TensorElement(symbols, terms)
        return cls(name, symbols, relations, tail_elems)

    # -- element helpers -------------------------------------------------

    def gen(self, name: str) -> AlgebraElement:
        return AlgebraElement.gen(self.symbols, name)

    def one(self) -> AlgebraElement:
        return AlgebraElement.one(self.symbols)

    def zero(self) -> AlgebraElement:
        return AlgebraElement.zero(self.symbols)

    def element(self, text: str) -> AlgebraElement:
        """Parse a polynomial such as ``"x1*x2 - 1/2*z"`` and normalize it."""
        from .dsl import parse_polynomial

        return self.normalize(parse_polynomial(text, self.symbols))

    def primitive_generators(self) -> list[int]:
        return [g.index for g in self.symbols if g.degree == 1]

    def degree2_generators(self) -> list[int]:
        return [g.index for g in self.symbols if g.degree == 2]

    def tail(self, index: int) -> TensorElement:
        return self.tails.get(index, TensorElement.zero(self.symbols))

    # -- normal form -----------------------------------------------------

    def _reduce_word(self, w: Word) -> dict[Word, Fraction]:
        cache = self._nf_cache
        hit = cache.get(w)
        if hit is not None:
            return hit
        steps = 0
        stack = [w]
        while stack:
            cur = stack[-1]
            if cur in cache:
                stack.pop()
                continue
            i = _first_descent(cur)
            if i < 0:
                cache[cur] = {cur: Fraction(1)}
                stack.pop()
                continue
            rel = self.relations[(cur[i], cur[i + 1])]
            head, tail = cur[:i], cur[i + 2 :]
            children = [(head + (cur[i + 1], cur[i]) + tail, Fraction(1))]
            children += [(head + r + tail, c) for r, c in rel.rhs.terms.items()]
            missing = [c for c, _ in children if c not in cache]
            if missing:
                steps += 1
                if steps > self.step_budget:
                    raise MalformedPresentation(
                        f"reduction of {self.symbols.format_word(w)} exceeded {self.step_budget} steps"
                    )
                stack.extend(missing)
                continue
            acc: dict[Word, Fraction] = {}
            for child, c in children:
                for nw, d in cache[child].items():
                    _accumulate(acc, nw, c * d)
            cache[cur] = acc
            stack.pop()
        return cache[w]

    def normalize(self, a: AlgebraElement) -> AlgebraElement:
        if a.symbols != self.symbols:
            raise PresentationMismatch(f"element does not belong to presentation {self.name!r}")
        acc: dict[Word, Fraction] = {}
        for w, c in a.terms.items():
            for nw, d in self._reduce_word(w).items():
                _accumulate(acc, nw, c * d)
        return AlgebraElement._raw(self.symbols, acc)

    def normalize_word(self, w: Word) -> AlgebraElement:
        return AlgebraElement._raw(self.symbols, dict(self._reduce_word(tuple(w))))

    def rewrite_step(self, a: AlgebraElement) -> Optional[AlgebraElement]:
        """Apply one rule at the leftmost descent of the first non-normal word, or None."""
        for w in sorted(a.terms, key=lambda w: (self.symbols.degree(w), w), reverse=True):
            i = _first_descent(w)
            if i < 0:
                continue
            rel = self.relations[(w[i], w[i + 1])]
            head, tail = w[:i], w[i + 2 :]
            c = a.terms[w]
            repl = AlgebraElement.word(self.symbols, head + (w[i + 1], w[i]) + tail, c)
            for r, d in rel.rhs.terms.items():
                repl = repl + AlgebraElement.word(self.symbols, head + r + tail, c * d)
            return a - AlgebraElement.word(self.symbols, w, c) + repl
        return None

    def mul(self, *factors: AlgebraElement) -> AlgebraElement:
        """Product in the algebra (free product followed by normal form)."""
        out = self.one()
        for f in factors:
            out = self.normalize(out * f)
        return out

    def bracket(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        return self.normalize(a * b - b * a)

    def normalize_tensor(self, t: TensorElement) -> TensorElement:
        acc: dict = {}
        for key, c in t.terms.items():
            partial: dict = {(): c}
            for w in key:
                reduced = self._reduce_word(w)
                nxt: dict = {}
                for k, d in partial.items():
                    for nw, e in reduced.items():
                        _accumulate(nxt, k + (nw,), d * e)
                partial = nxt
            for k, d in partial.items():
                _accumulate(acc, k, d)
        return TensorElement._raw(self.symbols, acc, t.arity)

    # -- confluence ------------------------------------------------------

    def confluence(self) -> ConfluenceReport:
        if self._confluence is None:
            self._confluence = check_confluence(self)
        return self._confluence

    @property
    def is_confluent(self) -> bool:
        return self.confluence().confluent

    def require_confluent(self) -> None:
        if not self.is_confluent:
            w = self.confluence().witness
            raise NonConfluentError(
                f"presentation {self.name!r} is not confluent (overlap {'*'.join(w['triple'])})"
            )

    # -- sub-presentations -----------------------------------------------

    def relation_closed(self, sub: SubalgebraSpec) -> bool:
        for (hi, lo), r in self.relations.items():
            if hi in sub.generators and lo in sub.generators:
                if not r.rhs.letters() <= sub.generators:
                    return False
        return True

    def tails_closed(self, sub: SubalgebraSpec) -> bool:
        for idx in sub.generators:
            for key in self.tail(idx).terms:
                if not all(set(w) <= sub.generators for w in key):
                    return False
        return True

    def restrict(self, names: Iterable[str], name: Optional[str] = None) -> "Presentation":
        """The presentation generated by a relation- and tail-closed subset of generators."""
        sub = SubalgebraSpec.from_names(self, names)
        if not self.relation_closed(sub):
            raise InvalidSubalgebra(f"{sub.names(self)} is not closed under the relations")
        if not self.tails_closed(sub):
            raise InvalidSubalgebra(f"{sub.names(self)} is not closed under the coproduct")
        keep = sorted(sub.generators)
        remap = {old: new for new, old in enumerate(keep)}
        symbols = SymbolTable(
            tuple(GeneratorSymbol(self.symbols[o].name, remap[o], self.symbols[o].degree) for o in keep)
        )

        def move(w: Word) -> Word:
            return tuple(remap[i] for i in w)

        relations = []
        for (hi, lo), r in sorted(self.relations.items()):
            if hi in remap and lo in remap:
                rhs = AlgebraElement(symbols, {move(w): c for w, c in r.rhs.terms.items()})
                relations.append(Relation(symbols[remap[hi]], symbols[remap[lo]], rhs))
        tails = {
            remap[i]: TensorElement(symbols, {tuple(move(w) for w in k): c for k, c in t.terms.items()})
            for i, t in self.tails.items()
            if i in remap
        }
        return Presentation(name or f"{self.name}[{','.join(s.name for s in symbols)}]", symbols, relations, tails)

    def __repr__(self) -> str:
        return f"Presentation({self.name!r}, generators={self.symbols.names})"


def normal_form(p: Presentation, a: AlgebraElement) -> AlgebraElement:
    return p.normalize(a)


def check_confluence(p: Presentation) -> ConfluenceReport:
    """Resolve every overlap g_i g_j g_k (i > j > k) both ways and compare normal forms."""
    syms = p.symbols
    failures = []
    checked = 0
    for i, j, k in itertools.combinations(reversed(range(len(syms))), 3):
        checked += 1
        r_ij = p.relations[(i, j)]
        r_jk = p.relations[(j, k)]
        gk = AlgebraElement.word(syms, (k,))
        gi = AlgebraElement.word(syms, (i,))
        left = AlgebraElement.word(syms, (j, i, k)) + r_ij.rhs * gk
        right = AlgebraElement.word(syms, (i, k, j)) + gi * r_jk.rhs
        nl, nr = p.normalize(left), p.normalize(right)
        if nl != nr:
            failures.append(
                {
                    "triple": [syms[i].name, syms[j].name, syms[k].name],
                    "left": nl,
                    "right": nr,
                    "difference": nl - nr,
                }
            )
    return ConfluenceReport(not failures, checked, failures)


def is_member(p: Presentation, a: AlgebraElement, sub: SubalgebraSpec) -> bool:
    """True iff the normal form of ``a`` only uses generators of ``sub``."""
    if not p.relation_closed(sub):
        raise InvalidSubalgebra(f"{sub.names(p)} is not closed under the relations")
    return p.normalize(a).letters() <= sub.generators
