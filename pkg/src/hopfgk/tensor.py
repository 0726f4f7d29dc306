"""Elements of tensor powers of the free algebra.

A term key is a tuple of words, one per tensor leg.  Most of the package works
in H⊗H (arity 2); coassociativity checks use arity 3.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .algebra import (
    UNIT,
    AlgebraElement,
    PresentationMismatch,
    ScalarLike,
    SymbolTable,
    Word,
    _accumulate,
    to_scalar,
)

TensorKey = tuple[Word, ...]


class TensorElement:
    __slots__ = ("symbols", "arity", "terms")

    def __init__(self, symbols: SymbolTable, terms: Mapping[TensorKey, ScalarLike] | None = None, arity: int = 2):
        self.symbols = symbols
        self.arity = arity
        clean: dict[TensorKey, Fraction] = {}
        if terms:
            for key, c in terms.items():
                key = tuple(tuple(w) for w in key)
                if len(key) != arity:
                    raise ValueError(f"tensor key {key} does not have arity {arity}")
                c = to_scalar(c)
                if c:
                    clean[key] = clean.get(key, 0) + c
                    if not clean[key]:
                        del clean[key]
        self.terms = clean

    @classmethod
    def _raw(cls, symbols, terms, arity=2) -> "TensorElement":
        obj = cls.__new__(cls)
        obj.symbols = symbols
        obj.arity = arity
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, symbols: SymbolTable, arity: int = 2) -> "TensorElement":
        return cls._raw(symbols, {}, arity)

    @classmethod
    def pure(cls, *legs: AlgebraElement) -> "TensorElement":
        """The tensor product legs[0] ⊗ legs[1] ⊗ ... expanded bilinearly."""
        symbols = legs[0].symbols
        acc: dict[TensorKey, Fraction] = {(): Fraction(1)}
        for leg in legs:
            if leg.symbols != symbols:
                raise PresentationMismatch("tensor legs belong to different presentations")
            nxt: dict[TensorKey, Fraction] = {}
            for key, c in acc.items():
                for w, d in leg.terms.items():
                    _accumulate(nxt, key + (w,), c * d)
            acc = nxt
        return cls._raw(symbols, acc, len(legs))

    @classmethod
    def one(cls, symbols: SymbolTable, arity: int = 2) -> "TensorElement":
        return cls._raw(symbols, {(UNIT,) * arity: Fraction(1)}, arity)

    def _check(self, other: "TensorElement") -> None:
        if other.symbols != self.symbols:
            raise PresentationMismatch("tensors belong to different presentations")
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(acc, k, c)
        return TensorElement._raw(self.symbols, acc, self.arity)

    def __neg__(self) -> "TensorElement":
        return TensorElement._raw(self.symbols, {k: -c for k, c in self.terms.items()}, self.arity)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def scale(self, k: ScalarLike) -> "TensorElement":
        k = to_scalar(k)
        if not k:
            return TensorElement.zero(self.symbols, self.arity)
        return TensorElement._raw(self.symbols, {key: c * k for key, c in self.terms.items()}, self.arity)

    def __mul__(self, other):
        """Leg-wise free product: (a⊗b)(c⊗d) = ac⊗bd."""
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check(other)
        acc: dict[TensorKey, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                _accumulate(acc, tuple(a + b for a, b in zip(k1, k2)), c1 * c2)
        return TensorElement._raw(self.symbols, acc, self.arity)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def twist(self) -> "TensorElement":
        """τ(v⊗w) = w⊗v."""
        if self.arity != 2:
            raise ValueError("twist is defined on H⊗H only")
        return TensorElement._raw(self.symbols, {(k[1], k[0]): c for k, c in self.terms.items()}, 2)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.symbols == other.symbols and self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[TensorKey, Fraction]]:
        syms = self.symbols
        return sorted(
            self.terms.items(),
            key=lambda t: (sum(syms.degree(w) for w in t[0]), tuple(len(w) for w in t[0]), t[0]),
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for n, (key, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else ("" if n == 0 else "+")
            mag = abs(c)
            body = " ⊗ ".join(self.symbols.format_word(w) for w in key)
            coeff = "" if mag == 1 else f"{mag}*"
            out.append(f"{sign}{coeff}{body}" if n == 0 else f" {sign} {coeff}{body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"TensorElement({self})"
