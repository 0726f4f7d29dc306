"""Growth of the generating filtration and Gelfand-Kirillov dimension."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .linalg import enumerate_words
from .rewrite import Presentation, SubalgebraSpec
from .structure import (
    ACEPreconditionError,
    CriterionInapplicable,
    anti_cocommutatives,
    bracket_criterion,
    check_almost_centralizing,
    check_normal,
    in_class,
    primitives,
)

TAG_ENVELOPING = "enveloping-algebra"
TAG_DIM_P2 = "gk-equals-dim-P2"
TAG_ACE = "almost-centralizing-extension"
TAG_PBW = "pbw-count"


def pbw_counts(weights: list[int], max_degree: int) -> list[int]:
    """Number of monomials of weight <= n, from the series 1/((1-t) Π (1-t^w))."""
    series = [1] + [0] * max_degree
    for w in weights:
        for n in range(w, max_degree + 1):
            series[n] += series[n - w]
    return list(itertools.accumulate(series))


def fit_exponent(dims: list[int], window_start: Optional[int] = None) -> tuple[float, float, float]:
    """Least-squares slope of log dims(n) against log(n + c) over the upper half of the samples.

    The shift ``c >= 0`` is chosen to minimize the residual; polynomial counts
    such as C(n+d, d) are then fitted by a pure power law.  Returns
    ``(slope, shift, unshifted_slope)``.
    """
    n_max = len(dims) - 1
    start = max(1, (n_max + 1) // 2) if window_start is None else window_start
    ns = np.arange(start, n_max + 1, dtype=float)
    ys = np.log(np.asarray(dims[start:], dtype=float))
    if len(ns) < 2:
        return float("nan"), 0.0, float("nan")

    def fit(c: float) -> tuple[float, float]:
        xs = np.log(ns + c)
        slope, icept = np.polyfit(xs, ys, 1)
        resid = float(np.sum((ys - (slope * xs + icept)) ** 2))
        return float(slope), resid

    raw = fit(0.0)[0]
    best = minimize_scalar(lambda c: fit(c)[1], bounds=(0.0, float(n_max)), method="bounded")
    shift = float(best.x) if fit(float(best.x))[1] < fit(0.0)[1] else 0.0
    return fit(shift)[0], shift, raw


@dataclass
class GrowthReport:
    presentation: str
    max_degree: int
    weighted: bool
    dims: list[int]
    pbw_count: Optional[list[int]]
    fitted_exponent: float
    fit_shift: float
    unshifted_slope: float
    exact_gk: Optional[int]
    theorem_tag: Optional[str]
    certificate: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def estimate_only(self) -> bool:
        return self.exact_gk is None


def _find_ace_subalgebra(p: Presentation) -> Optional[SubalgebraSpec]:
    n = len(p.symbols)
    if n > 12:
        return None
    for size in range(n - 1, 0, -1):
        for combo in itertools.combinations(range(n), size):
            sub = SubalgebraSpec(frozenset(combo))
            if not (p.relation_closed(sub) and p.tails_closed(sub)):
                continue
            try:
                if check_almost_centralizing(p, sub).passed and check_normal(p, sub).is_normal:
                    return sub
            except ACEPreconditionError:
                continue
    return None


def certify(p: Presentation) -> tuple[str, dict]:
    """Which structural result accounts for GK dimension = number of PBW generators."""
    if not p.degree2_generators():
        return TAG_ENVELOPING, {}
    if in_class(p):
        try:
            if bracket_criterion(p):
                return TAG_DIM_P2, {"U_H": SubalgebraSpec.primitive_part(p).names(p)}
        except CriterionInapplicable:
            pass
    sub = _find_ace_subalgebra(p)
    if sub is not None:
        return TAG_ACE, {"A": sub.names(p), "extension": [p.symbols[i].name for i in sub.complement(p)]}
    return TAG_PBW, {}


def growth_function(
    p: Presentation,
    max_degree: int,
    weighted: bool = False,
    with_certificate: bool = True,
) -> GrowthReport:
    """dims(n) = number of PBW words of degree <= n, n = 0..max_degree.

    Unweighted degree is word length, so dims(n) = dim V^n for V = k + span(generators).
    Weighted degree uses the declared coradical degrees.
    """
    weights = [g.degree if weighted else 1 for g in p.symbols]
    words = enumerate_words(weights, max_degree)
    per_degree = [0] * (max_degree + 1)
    for w in words:
        per_degree[sum(weights[i] for i in w)] += 1
    dims = list(itertools.accumulate(per_degree))
    slope, shift, raw = fit_exponent(dims)
    notes = ["dimensions are relative to the declared-degree filtration"]
    if p.is_confluent:
        exact = len(p.symbols)
        pbw = pbw_counts(weights, max_degree)
        tag, cert = certify(p) if with_certificate else (TAG_PBW, {})
    else:
        exact, pbw, tag, cert = None, None, None, {}
        notes.append("estimate only: presentation is not confluent, normal words may be dependent")
    return GrowthReport(
        p.name, max_degree, weighted, dims, pbw, slope, shift, raw, exact, tag, cert, notes
    )


@dataclass
class DimensionEqualityReport:
    status: str
    in_class: bool
    hypothesis: Optional[bool]
    uh_normal: Optional[bool]
    exact_gk: Optional[int]
    dim_p: Optional[int]
    dim_p2: Optional[int]

    @property
    def agree(self) -> Optional[bool]:
        if self.exact_gk is None or self.dim_p2 is None:
            return None
        return self.exact_gk == self.dim_p2


def theorem00_check(p: Presentation, degree_bound: Optional[int] = None) -> DimensionEqualityReport:
    """Compare GK dimension with dim P₂ and decide whether U_H normality certifies equality."""
    p.require_confluent()
    exact = len(p.symbols)
    dim_p = primitives(p, degree_bound).dim
    dim_p2 = anti_cocommutatives(p, degree_bound).dim
    if not in_class(p):
        return DimensionEqualityReport("not-in-class", False, None, None, exact, dim_p, dim_p2)
    try:
        hyp = bracket_criterion(p)
    except CriterionInapplicable:
        hyp = None
    normal = check_normal(p, SubalgebraSpec.primitive_part(p)).is_normal
    if not hyp:
        status = "inapplicable"
    elif exact == dim_p2:
        status = "confirmed"
    else:
        status = "violated"
    return DimensionEqualityReport(status, True, hyp, normal, exact, dim_p, dim_p2)
