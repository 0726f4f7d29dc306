"""Exact free-algebra kernel: generator symbols, words and rational linear combinations.

Words are tuples of generator indices; the empty tuple is the unit monomial.
Coefficients are :class:`fractions.Fraction`, which keeps every scalar reduced
with a positive denominator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Scalar = Fraction
Word = tuple[int, ...]
ScalarLike = Union[int, str, Fraction]

UNIT: Word = ()


class PresentationMismatch(ValueError):
    """Raised when two elements are built over different symbol tables."""


def to_scalar(value: ScalarLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    return Fraction(value)


@dataclass(frozen=True)
class GeneratorSymbol:
    name: str
    index: int
    degree: int

    def __post_init__(self):
        if self.degree not in (1, 2):
            raise ValueError(f"generator {self.name!r}: degree must be 1 or 2, got {self.degree}")


@dataclass(frozen=True)
class SymbolTable:
    """Ordered generators of a presentation; index equals declaration position."""

    generators: tuple[GeneratorSymbol, ...]
    _by_name: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        by_name = {}
        for pos, g in enumerate(self.generators):
            if g.index != pos:
                raise ValueError(f"generator {g.name!r} has index {g.index}, expected {pos}")
            if g.name in by_name:
                raise ValueError(f"duplicate generator name {g.name!r}")
            by_name[g.name] = g
        object.__setattr__(self, "_by_name", by_name)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> "SymbolTable":
        return cls(tuple(GeneratorSymbol(n, i, d) for i, (n, d) in enumerate(pairs)))

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[GeneratorSymbol]:
        return iter(self.generators)

    def __getitem__(self, key: Union[int, str]) -> GeneratorSymbol:
        if isinstance(key, str):
            return self._by_name[key]
        return self.generators[key]

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def index(self, name: str) -> int:
        try:
            return self._by_name[name].index
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def degree(self, word: Word) -> int:
        """Weighted degree of a word (sum of coradical degrees of its letters)."""
        gens = self.generators
        return sum(gens[i].degree for i in word)

    def word_names(self, word: Word) -> list[str]:
        return [self.generators[i].name for i in word]

    def format_word(self, word: Word) -> str:
        return "*".join(self.word_names(word)) if word else "1"


def is_normal_word(word: Word) -> bool:
    return all(word[i] <= word[i + 1] for i in range(len(word) - 1))


def _accumulate(acc: dict, key, coeff: Fraction) -> None:
    new = acc.get(key, 0) + coeff
    if new:
        acc[key] = new
    else:
        acc.pop(key, None)


def format_scalar_prefix(coeff: Fraction, first: bool) -> str:
    sign = "-" if coeff < 0 else ("" if first else "+")
    mag = abs(coeff)
    body = "" if mag == 1 else f"{mag}*"
    if first:
        return f"{sign}{body}"
    return f" {sign} {body}"


class AlgebraElement:
    """Finite rational linear combination of words over a symbol table.

    Instances are treated as immutable; arithmetic returns new objects.
    Products are free concatenation; reduction modulo relations is done by
    :meth:`hopfgk.rewrite.Presentation.normalize`.
    """

    __slots__ = ("symbols", "terms")

    def __init__(self, symbols: SymbolTable, terms: Mapping[Word, ScalarLike] | None = None):
        self.symbols = symbols
        clean: dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = to_scalar(c)
                if c:
                    clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, symbols: SymbolTable, terms: dict[Word, Fraction]) -> "AlgebraElement":
        obj = cls.__new__(cls)
        obj.symbols = symbols
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, symbols: SymbolTable) -> "AlgebraElement":
        return cls._raw(symbols, {})

    @classmethod
    def one(cls, symbols: SymbolTable) -> "AlgebraElement":
        return cls._raw(symbols, {UNIT: Fraction(1)})

    @classmethod
    def word(cls, symbols: SymbolTable, word: Word, coeff: ScalarLike = 1) -> "AlgebraElement":
        return cls(symbols, {tuple(word): coeff})

    @classmethod
    def gen(cls, symbols: SymbolTable, name: str) -> "AlgebraElement":
        return cls._raw(symbols, {(symbols.index(name),): Fraction(1)})

    @classmethod
    def monomial(cls, symbols: SymbolTable, *names: str) -> "AlgebraElement":
        return cls._raw(symbols, {tuple(symbols.index(n) for n in names): Fraction(1)})

    def _check(self, other: "AlgebraElement") -> None:
        if other.symbols is not self.symbols and other.symbols != self.symbols:
            raise PresentationMismatch("elements belong to different presentations")

    def _coerce(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return AlgebraElement(self.symbols, {UNIT: other})
        return NotImplemented

    def __add__(self, other) -> "AlgebraElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(acc, w, c)
        return AlgebraElement._raw(self.symbols, acc)

    __radd__ = __add__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement._raw(self.symbols, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "AlgebraElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "AlgebraElement":
        return (-self) + other

    def scale(self, k: ScalarLike) -> "AlgebraElement":
        k = to_scalar(k)
        if not k:
            return AlgebraElement.zero(self.symbols)
        return AlgebraElement._raw(self.symbols, {w: c * k for w, c in self.terms.items()})

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        acc: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _accumulate(acc, w1 + w2, c1 * c2)
        return AlgebraElement._raw(self.symbols, acc)

    def __rmul__(self, other) -> "AlgebraElement":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return self.symbols == other.symbols and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.terms == ({UNIT: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Word) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    def counit(self) -> Fraction:
        """Augmentation: every generator has counit zero, so only the unit word survives."""
        return self.terms.get(UNIT, Fraction(0))

    def letters(self) -> set[int]:
        return {i for w in self.terms for i in w}

    def degree(self) -> int:
        """Maximal weighted degree of a word, -1 for zero."""
        return max((self.symbols.degree(w) for w in self.terms), default=-1)

    def length(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def is_normal(self) -> bool:
        return all(is_normal_word(w) for w in self.terms)

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        syms = self.symbols
        return sorted(self.terms.items(), key=lambda t: (syms.degree(t[0]), len(t[0]), t[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, (w, c) in enumerate(self.sorted_terms()):
            if not w:
                sign = "-" if c < 0 else ("" if k == 0 else "+")
                parts.append(f"{sign}{abs(c)}" if k == 0 else f" {sign} {abs(c)}")
            else:
                parts.append(format_scalar_prefix(c, k == 0) + self.symbols.format_word(w))
        return "".join(parts)

    def __repr__(self) -> str:
        return f"AlgebraElement({self})"


def commutator_free(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Free commutator ab - ba (no reduction)."""
    return a * b - b * a
