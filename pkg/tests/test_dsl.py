import pytest

from hopfgk import DSLError, builtins, format_presentation, parse, samples
from hopfgk.dsl import parse_with_diagnostics

EXAMPLE_HEAD = 'hopf "t"\ngen x1 deg 1\ngen x2 deg 1\ngen x3 deg 1\ngen z deg 2\n'
EXAMPLE_RELS = (
    "rel [x1,x2] = x2\nrel [x1,x3] = 0\nrel [x2,x3] = 0\n"
    "rel [z,x1] = -z\nrel [z,x2] = 0\nrel [z,x3] = x2\n"
)


def shape(p):
    rels = {(r.hi.name, r.lo.name): r.rhs.sorted_terms() for r in p.relations.values()}
    tails = {p.symbols[i].name: t.sorted_terms() for i, t in p.tails.items()}
    return p.name, [(g.name, g.degree) for g in p.symbols], rels, tails


def messages(text, severity="error"):
    _, diags = parse_with_diagnostics(text)
    return [d.message for d in diags if d.severity == severity]


def test_builtin_list():
    names = [s.origin for s in builtins()]
    for required in ("wzz-3-5a", "env-abelian-3", "central-acc"):
        assert f"builtin:{required}" in names
    assert [s.origin for s in samples()] == ["builtin:jacobi-violating"]
    assert names == [s.origin for s in builtins()]


def test_example_parses():
    p = parse(next(s for s in builtins() if s.origin.endswith("wzz-3-5a")))
    assert len(p.symbols) == 4
    assert len(p.relations) == 6
    assert len(p.tails) == 1
    assert p.diagnostics == []


def test_central_builtin_shape():
    p = parse(next(s for s in builtins() if s.origin.endswith("central-acc")))
    assert p.symbols.names == ["x1", "x2", "x3", "z"]
    assert all(r.rhs.is_zero() for r in p.relations.values())
    t = p.tail(3)
    assert {(p.symbols.format_word(a), p.symbols.format_word(b), c) for (a, b), c in t.terms.items()} == {
        ("x1", "x2", 1),
        ("x2", "x1", -1),
    }


@pytest.mark.parametrize("src", builtins() + samples(), ids=lambda s: s.origin)
def test_round_trip(src):
    p = parse(src)
    again = parse(format_presentation(p))
    assert shape(again) == shape(p)
    assert format_presentation(again) == format_presentation(p)


def test_round_trip_with_rationals():
    text = 'hopf "q"\ngen a deg 1\ngen b deg 1\ngen c deg 1\nrel [a,b] = 3/2*c\nrel [a,c] = 0\nrel [b,c] = 0\n'
    p = parse(text)
    assert shape(parse(format_presentation(p))) == shape(p)


def test_missing_relation():
    text = EXAMPLE_HEAD + EXAMPLE_RELS.replace("rel [x1,x3] = 0\n", "") + "delta z = x1 ox x2 - x2 ox x1\n"
    assert "missing relation for pair (x1,x3)" in messages(text)


def test_symmetric_delta_rejected():
    text = EXAMPLE_HEAD + EXAMPLE_RELS + "delta z = x1 ox x2\n"
    assert any(m.startswith("tail not antisymmetric") for m in messages(text))


def test_other_diagnostics():
    base = EXAMPLE_HEAD + EXAMPLE_RELS
    assert any("unknown identifier 'w'" in m for m in messages(base.replace("= x2\nrel [x1,x3]", "= w\nrel [x1,x3]")))
    assert any(m.startswith("duplicate relation") for m in messages(base + "rel [x2,x1] = -x2\n"))
    assert any(m.startswith("delta on degree-1 generator") for m in messages(base + "delta x1 = x2 ox x3 - x3 ox x2\n"))
    assert any(m.startswith("malformed rational") for m in messages(base.replace("= x2\nrel [x1,x3]", "= 1/0*x2\nrel [x1,x3]")))
    assert any(m.startswith("unknown directive") for m in messages(base + "frobnicate z\n"))
    assert messages(base, "warning") == ["degree-2 generator 'z' has no delta; it is primitive"]


def test_diagnostics_are_positioned():
    text = EXAMPLE_HEAD + EXAMPLE_RELS + "delta z = x1 ox x2\n"
    _, diags = parse_with_diagnostics(text)
    (d,) = [d for d in diags if d.severity == "error"]
    assert d.line == 12 and d.column > 1


def test_parse_raises_with_all_errors():
    with pytest.raises(DSLError) as info:
        parse('hopf "x"\ngen a deg 3\n')
    assert info.value.diagnostics


def test_comments_and_whitespace():
    text = '# header\nhopf   "w"\ngen a deg 1  # first\n  gen b   deg 1\nrel [ a , b ] = a\n'
    p = parse(text)
    assert p.normalize(p.element("b*a")) == p.element("a*b - a")
