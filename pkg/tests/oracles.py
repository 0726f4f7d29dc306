"""Independent reference computations used to derive expected values.

Nothing here touches the package's eliminator or enumeration code: the
basis is built with itertools and ranks come from a plain dense
Gauss-Jordan pass over Fractions (with sympy as a second opinion).
"""

import itertools
from fractions import Fraction

import sympy

from hopfgk.algebra import AlgebraElement
from hopfgk.coalgebra import delta_map
from hopfgk.tensor import TensorElement


def dense_rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        lead = m[rank][col]
        m[rank] = [x / lead for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def sympy_rank(rows):
    return sympy.Matrix(rows).rank() if rows else 0


def weighted_words(p, bound, weighted=True):
    """Nondecreasing words of weight <= bound, via combinations_with_replacement."""
    n = len(p.symbols)
    deg = [g.degree if weighted else 1 for g in p.symbols]
    out = []
    for length in range(bound + 1):
        for w in itertools.combinations_with_replacement(range(n), length):
            if sum(deg[i] for i in w) <= bound:
                out.append(w)
    return out


def _matrix(vectors):
    keys = sorted({k for v in vectors for k in v}, key=repr)
    return [[v.get(k, 0) for k in keys] for v in vectors], keys


def primitive_dim(p, bound):
    words = [w for w in weighted_words(p, bound) if w]
    images = [delta_map(p, AlgebraElement.word(p.symbols, w)).terms for w in words]
    rows, _ = _matrix(images)
    r = dense_rank(rows) if rows and rows[0] else 0
    return len(words) - r, words, images


def primitive_basis(p, bound):
    """Kernel vectors of δ by brute-force nullspace (sympy), as AlgebraElements."""
    _, words, images = primitive_dim(p, bound)
    keys = sorted({k for v in images for k in v}, key=repr)
    mat = sympy.Matrix([[img.get(k, 0) for img in images] for k in keys]) if keys else sympy.zeros(1, len(words))
    basis = []
    for vec in mat.nullspace():
        terms = {words[j]: Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for j, c in enumerate(vec) if c != 0}
        basis.append(AlgebraElement(p.symbols, terms))
    return basis


def anti_cocommutative_dim(p, bound):
    """dim of {c : δc + τδc = 0, δc ∈ P⊗P} from one dense joint system over (c, λ)."""
    words = [w for w in weighted_words(p, bound) if w]
    prims = primitive_basis(p, bound)
    cols = []
    for w in words:
        d = delta_map(p, AlgebraElement.word(p.symbols, w))
        v = {("s", k): c for k, c in (d + d.twist()).terms.items()}
        v.update({("d", k): c for k, c in d.terms.items()})
        cols.append(v)
    for a in prims:
        for b in prims:
            t = TensorElement.pure(a, b)
            cols.append({("d", k): -c for k, c in t.terms.items()})
    keys = sorted({k for v in cols for k in v}, key=repr)
    mat = sympy.Matrix([[v.get(k, 0) for v in cols] for k in keys])
    null = mat.nullspace()
    projected = [[vec[j] for j in range(len(words))] for vec in null]
    return dense_rank(projected)
