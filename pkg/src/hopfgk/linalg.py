"""Degree-bounded exact linear algebra over the PBW basis.

Elimination is fraction-free: every row is scaled to a primitive integer
vector, rows are combined as ``p*row - a*pivot`` and then divided by their
content, so no rational arithmetic happens inside the solver.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Hashable, Iterable, Mapping, Optional, Sequence, Union

from .algebra import AlgebraElement, Word
from .coalgebra import delta_map
from .rewrite import Presentation
from .tensor import TensorElement

DEFAULT_MAX_BASIS = 250_000
ENV_MAX_BASIS = "HOPFGK_MAX_BASIS"


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured size cap."""


def max_basis_size() -> int:
    raw = os.environ.get(ENV_MAX_BASIS)
    return int(raw) if raw else DEFAULT_MAX_BASIS


# -- integer elimination --------------------------------------------------

Vector = Mapping[Hashable, Fraction]


def _clear_denominators(vec: Mapping[int, Fraction]) -> tuple[dict[int, int], int]:
    """(den * vec, den) with den the lcm of the denominators."""
    den = reduce(math.lcm, (Fraction(c).denominator for c in vec.values()), 1)
    return {k: int(Fraction(c) * den) for k, c in vec.items() if c}, den


def _integral(vec: Mapping[int, Fraction]) -> dict[int, int]:
    """Scale a rational sparse vector to a primitive integer vector."""
    ints, _ = _clear_denominators(vec)
    g = reduce(math.gcd, ints.values(), 0)
    return {k: v // g for k, v in ints.items()} if g else {}


def _combine(row: dict[int, int], a: int, pivot: dict[int, int], b: int) -> dict[int, int]:
    """a*row - b*pivot, divided by its content."""
    out = {k: a * v for k, v in row.items()}
    for k, v in pivot.items():
        nv = out.get(k, 0) - b * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    g = reduce(math.gcd, out.values(), 0)
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


class Eliminator:
    """Incremental echelon form of integer row vectors with an optional tag part.

    Image columns are nonnegative; tag entry ``j`` is stored at column
    ``-1 - j`` so image and tag are combined in one pass.  The pivot is the
    smallest image column.  A row whose image reduces to zero yields its tag
    as a linear relation among the inserted rows.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}
        self.relations: list[dict[int, int]] = []

    def _reduce(self, row: dict[int, int]) -> tuple[dict[int, int], int]:
        while True:
            lead = min((k for k in row if k >= 0), default=-1)
            if lead < 0:
                return row, -1
            pivot = self.pivots.get(lead)
            if pivot is None:
                return row, lead
            a, b = pivot[lead], row[lead]
            g = math.gcd(a, b)
            row = _combine(row, a // g, pivot, b // g)

    @staticmethod
    def _pack(image: dict[int, int], tag: dict[int, int] | None) -> dict[int, int]:
        row = dict(image)
        if tag:
            row.update({-1 - j: v for j, v in tag.items()})
        return row

    def reduce(self, image: dict[int, int], tag: dict[int, int] | None = None):
        row, _ = self._reduce(self._pack(image, tag))
        return (
            {k: v for k, v in row.items() if k >= 0},
            {-1 - k: v for k, v in row.items() if k < 0},
        )

    def insert(self, image: dict[int, int], tag: dict[int, int] | None = None) -> bool:
        """Add a row; return True if it increased the rank."""
        row, lead = self._reduce(self._pack(image, tag))
        if lead >= 0:
            self.pivots[lead] = row
            return True
        if row:
            self.relations.append({-1 - k: v for k, v in row.items()})
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


class _Columns:
    def __init__(self):
        self.index: dict[Hashable, int] = {}

    def encode(self, vec: Vector) -> dict[int, Fraction]:
        out = {}
        for k, c in vec.items():
            if c:
                col = self.index.setdefault(k, len(self.index))
                out[col] = Fraction(c)
        return out


def kernel(vectors: Sequence[Vector]) -> list[dict[int, Fraction]]:
    """Basis of {c : Σ c_j vectors[j] = 0}, as sparse dicts over input positions."""
    cols = _Columns()
    elim = Eliminator()
    for j, v in enumerate(vectors):
        # the tag must carry the same scale as the image
        ints, den = _clear_denominators(cols.encode(v))
        elim.insert(ints, {j: den})
    return [{j: Fraction(c) for j, c in rel.items()} for rel in elim.relations]


def rank(vectors: Iterable[Vector]) -> int:
    cols = _Columns()
    elim = Eliminator()
    for v in vectors:
        elim.insert(_integral(cols.encode(v)))
    return elim.rank


def in_span(vectors: Iterable[Vector], target: Vector) -> bool:
    cols = _Columns()
    elim = Eliminator()
    for v in vectors:
        elim.insert(_integral(cols.encode(v)))
    image, _ = elim.reduce(_integral(cols.encode(target)))
    return not image


def solve_in_span(vectors: Sequence[Vector], target: Vector) -> Optional[dict[int, Fraction]]:
    """Coefficients c with Σ c_j vectors[j] = target, or None."""
    rel = kernel(list(vectors) + [target])
    n = len(vectors)
    for r in rel:
        t = r.get(n)
        if t:
            return {j: -c / t for j, c in r.items() if j != n}
    return None


def _as_vector(x) -> Vector:
    if isinstance(x, (AlgebraElement, TensorElement)):
        return x.terms
    return x


def canonical_rows(vectors: Sequence[Mapping], order: Callable) -> list[dict]:
    """Reduced row echelon form with pivots on the largest key under ``order``; pivots scaled to 1."""
    rows: list[dict] = []
    for v in vectors:
        row = {k: Fraction(c) for k, c in v.items() if c}
        for piv, prow in rows:
            c = row.get(piv)
            if c:
                for k, d in prow.items():
                    nv = row.get(k, 0) - c * d
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            continue
        piv = max(row, key=order)
        inv = 1 / row[piv]
        row = {k: c * inv for k, c in row.items()}
        new_rows = []
        for opiv, orow in rows:
            c = orow.get(piv)
            if c:
                orow = dict(orow)
                for k, d in row.items():
                    nv = orow.get(k, 0) - c * d
                    if nv:
                        orow[k] = nv
                    else:
                        orow.pop(k, None)
            new_rows.append((opiv, orow))
        rows = new_rows + [(piv, row)]
    rows.sort(key=lambda pr: order(pr[0]))
    return [r for _, r in rows]


# -- filtered bases -------------------------------------------------------


@dataclass
class FilteredBasis:
    """All normal words of (weighted) degree at most ``degree_bound``, graded-lex ordered."""

    degree_bound: int
    words: list[Word]
    weighted: bool = True
    index_of: dict[Word, int] = field(init=False)

    def __post_init__(self):
        self.index_of = {w: i for i, w in enumerate(self.words)}

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


def _weights(p: Presentation, weighted: bool) -> list[int]:
    return [g.degree if weighted else 1 for g in p.symbols]


def enumerate_words(
    weights: Sequence[int],
    bound: int,
    letters: Optional[Sequence[int]] = None,
    cap: Optional[int] = None,
) -> list[Word]:
    """Nondecreasing words over ``letters`` with total weight <= bound."""
    letters = sorted(letters if letters is not None else range(len(weights)))
    cap = max_basis_size() if cap is None else cap
    out: list[Word] = []

    def rec(prefix: Word, start: int, budget: int):
        out.append(prefix)
        if len(out) > cap:
            raise ResourceLimitError(f"basis enumeration exceeded {cap} words")
        for pos in range(start, len(letters)):
            g = letters[pos]
            if weights[g] <= budget:
                rec(prefix + (g,), pos, budget - weights[g])

    if bound >= 0:
        rec((), 0, bound)
    return out


def graded_lex_key(weights: Sequence[int]):
    return lambda w: (sum(weights[i] for i in w), w)


def enumerate_basis(
    p: Presentation,
    degree_bound: int,
    weighted: bool = True,
    reverse: bool = False,
    letters: Optional[Sequence[int]] = None,
    cap: Optional[int] = None,
) -> FilteredBasis:
    weights = _weights(p, weighted)
    words = enumerate_words(weights, degree_bound, letters, cap)
    words.sort(key=graded_lex_key(weights), reverse=reverse)
    return FilteredBasis(degree_bound, words, weighted)


def default_bound(p: Presentation) -> int:
    return 2 * max((g.degree for g in p.symbols), default=1) + 1


# -- subspaces ------------------------------------------------------------


@dataclass
class SubspaceBasis:
    vectors: list[AlgebraElement]
    degree_bound: int = 0
    label: str = ""

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def contains(self, a: AlgebraElement) -> bool:
        return in_span([v.terms for v in self.vectors], a.terms)

    def within(self, other: "SubspaceBasis") -> bool:
        return all(other.contains(v) for v in self.vectors)

    def same_span(self, other: "SubspaceBasis") -> bool:
        return self.dim == other.dim and self.within(other)


def _element_order(p: Presentation):
    key = graded_lex_key([g.degree for g in p.symbols])
    return key


def _to_elements(p: Presentation, rows: list[dict]) -> list[AlgebraElement]:
    return [AlgebraElement(p.symbols, r) for r in rows]


LinearMap = Callable[[AlgebraElement], Union[AlgebraElement, TensorElement, Mapping]]


def kernel_of(
    p: Presentation,
    linear_map: LinearMap,
    basis: FilteredBasis,
    augmentation_zero: bool = True,
) -> SubspaceBasis:
    """Exact kernel of ``linear_map`` restricted to the span of ``basis``.

    With ``augmentation_zero`` the unit word is dropped, which restricts to
    the counit-zero slice.
    """
    p.require_confluent()
    domain = [w for w in basis.words if w or not augmentation_zero]
    images = [_as_vector(linear_map(AlgebraElement.word(p.symbols, w))) for w in domain]
    rels = kernel(images)
    rows = [{domain[j]: c for j, c in r.items()} for r in rels]
    rows = canonical_rows(rows, _element_order(p))
    return SubspaceBasis(_to_elements(p, rows), basis.degree_bound)


def primitive_space(p: Presentation, degree_bound: Optional[int] = None, reverse: bool = False) -> SubspaceBasis:
    """P(H) within the degree filtration piece: kernel of δ on the counit-zero slice."""
    bound = default_bound(p) if degree_bound is None else degree_bound
    basis = enumerate_basis(p, bound, reverse=reverse)
    out = kernel_of(p, lambda a: delta_map(p, a), basis)
    out.label = "P(H)"
    return out


def anti_cocommutative_space(
    p: Presentation,
    degree_bound: Optional[int] = None,
    primitives: Optional[SubspaceBasis] = None,
    reverse: bool = False,
) -> SubspaceBasis:
    """P₂(H) within the degree filtration piece.

    Solves for (c, λ) with δ(c) + τδ(c) = 0 and δ(c) = Σ λ_ab p_a⊗p_b over a
    basis {p_a} of P(H) at the same bound; the c-components span P₂(H).
    """
    p.require_confluent()
    bound = default_bound(p) if degree_bound is None else degree_bound
    if primitives is None:
        primitives = primitive_space(p, bound)
    basis = enumerate_basis(p, bound, reverse=reverse)
    domain = [w for w in basis.words if w]
    images: list[dict] = []
    for w in domain:
        d = delta_map(p, AlgebraElement.word(p.symbols, w))
        vec = {("sym", k): c for k, c in (d + d.twist()).terms.items()}
        vec.update({("delta", k): c for k, c in d.terms.items()})
        images.append(vec)
    for pa in primitives:
        for pb in primitives:
            t = TensorElement.pure(pa, pb)
            images.append({("delta", k): -c for k, c in t.terms.items()})
    rels = kernel(images)
    n = len(domain)
    rows = [{domain[j]: c for j, c in r.items() if j < n} for r in rels]
    rows = canonical_rows([r for r in rows if r], _element_order(p))
    return SubspaceBasis(_to_elements(p, rows), bound, "P2(H)")
