from math import comb

import pytest
from hypothesis import given, settings

from conftest import cached
from hopfgk import (
    InvalidSubalgebra,
    NonConfluentError,
    PresentationError,
    SubalgebraSpec,
    builtins,
    check_confluence,
    is_member,
    load,
    normal_form,
    parse,
)
from hopfgk.algebra import AlgebraElement
from hopfgk.growth import growth_function
from hopfgk.rewrite import inversions
from strategies import elements, words

P = cached("wzz-3-5a")


def test_worked_normal_forms(example):
    e = example.element
    assert normal_form(example, e("z*x1")) == e("x1*z - z")
    assert normal_form(example, e("x1")) == e("x1")
    assert normal_form(example, e("x2*x1")) == e("x1*x2 - x2")
    assert normal_form(example, e("z*x3 - x3*z")) == e("x2")


def test_longer_reduction(example):
    e = example.element
    # z x2 x1 = z (x1 x2 - x2) = (x1 z - z) x2 - x2 z
    assert example.normalize(e("z*x2*x1")) == e("x1*x2*z - 2*x2*z")


@settings(max_examples=500, deadline=None, derandomize=True)
@given(elements(P, max_terms=4, max_len=4))
def test_normal_form_is_idempotent_and_normal(a):
    nf = P.normalize(a)
    assert nf.is_normal()
    assert P.normalize(nf) == nf


def _measure(p, w):
    return (p.symbols.degree(w), inversions(w))


@settings(max_examples=200, deadline=None, derandomize=True)
@given(words(P, max_len=5))
def test_each_rewrite_step_decreases_the_measure(w):
    a = AlgebraElement.word(P.symbols, w)
    step = P.rewrite_step(a)
    if step is None:
        assert a.is_normal()
        return
    assert all(_measure(P, v) < _measure(P, w) for v in step.terms)


@settings(max_examples=100, deadline=None, derandomize=True)
@given(words(P, max_len=4), words(P, max_len=4), words(P, max_len=4))
def test_association_order_does_not_matter(u, v, w):
    wd = lambda x: AlgebraElement.word(P.symbols, x)
    whole = P.normalize_word(u + v + w)
    assert P.normalize(P.normalize(wd(u + v)) * wd(w)) == whole
    assert P.normalize(wd(u) * P.normalize(wd(v + w))) == whole


@pytest.mark.parametrize("src", builtins(), ids=lambda s: s.origin)
def test_pbw_counts_for_builtins(src):
    p = parse(src)
    d = len(p.symbols)
    dims = growth_function(p, 6, with_certificate=False).dims
    assert dims == [comb(n + d, d) for n in range(7)]


def test_example_confluence(example):
    rep = check_confluence(example)
    assert rep.confluent and rep.triples_checked == 4


def test_abelian_confluence(abelian3):
    assert check_confluence(abelian3).confluent


def test_jacobi_violation_witness(jacobi):
    rep = check_confluence(jacobi)
    assert not rep.confluent
    w = rep.witness
    assert w["triple"] == ["z", "y", "x"]
    # hand reduction of z*y*x both ways leaves z - x between them
    assert w["difference"] == jacobi.element("z - x")


def test_positive_sign_variant_is_inconsistent():
    src = load("wzz-3-5a")
    text = (
        'hopf "variant"\ngen x1 deg 1\ngen x2 deg 1\ngen x3 deg 1\ngen z deg 2\n'
        "rel [x1,x2] = x2\nrel [x1,x3] = 0\nrel [x2,x3] = 0\n"
        "rel [z,x1] = z\nrel [z,x2] = 0\nrel [z,x3] = x2\n"
        "delta z = x1 ox x2 - x2 ox x1\n"
    )
    variant = parse(text)
    assert src.is_confluent
    rep = check_confluence(variant)
    assert not rep.confluent
    assert rep.witness["triple"] == ["z", "x3", "x1"]


def test_non_confluent_blocks_downstream(jacobi):
    from hopfgk import coproduct

    with pytest.raises(NonConfluentError):
        coproduct(jacobi, jacobi.gen("x"))


def test_membership(example):
    uh = SubalgebraSpec.from_names(example, ["x1", "x2", "x3"])
    e = example.element
    assert is_member(example, e("x1*x2 - x2"), uh)
    assert not is_member(example, e("z - x2*x1"), uh)
    assert is_member(example, example.zero(), uh)
    assert is_member(example, e("x2*x1"), uh)


def test_membership_needs_closed_subset(example):
    with pytest.raises(InvalidSubalgebra):
        is_member(example, example.gen("z"), SubalgebraSpec.from_names(example, ["z", "x3"]))


def test_restriction_keeps_relations(example):
    a = example.restrict(["x1", "x2", "z"])
    assert a.symbols.names == ["x1", "x2", "z"]
    assert a.normalize(a.element("z*x1")) == a.element("x1*z - z")
    assert a.is_confluent


def test_rhs_must_drop_degree():
    with pytest.raises(PresentationError):
        from hopfgk import Presentation

        Presentation.from_brackets("bad", [("x", 1), ("y", 1)], {("y", "x"): "x*y"})
