"""Hypothesis strategies for random elements of a presentation."""

from fractions import Fraction

from hypothesis import strategies as st

from hopfgk.algebra import AlgebraElement

coefficients = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


def words(p, max_len=3):
    return st.lists(st.integers(0, len(p.symbols) - 1), max_size=max_len).map(tuple)


def elements(p, max_terms=3, max_len=3):
    """Random (not necessarily normal) elements of the free algebra."""
    terms = st.lists(st.tuples(words(p, max_len), coefficients), max_size=max_terms)
    return terms.map(lambda ts: sum((AlgebraElement.word(p.symbols, w, c) for w, c in ts), AlgebraElement.zero(p.symbols)))
