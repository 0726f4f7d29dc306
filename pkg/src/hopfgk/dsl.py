"""Line-oriented presentation format.

::

    hopf "name"
    gen x1 deg 1
    gen z deg 2
    rel [z,x1] = -z
    delta z = x1 ox x2 - x2 ox x1

``#`` starts a comment.  Every unordered pair of generators needs exactly one
``rel`` line.  Polynomials use ``+ - *`` and rational literals ``p/q``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import AlgebraElement, SymbolTable, Word, is_normal_word
from .rewrite import Presentation, PresentationError, Relation
from .tensor import TensorElement


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    severity: str
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


@dataclass
class PresentationSource:
    text: str
    origin: str = "<string>"


class DSLError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic], origin: str = "<string>"):
        self.diagnostics = diagnostics
        self.origin = origin
        errors = [d for d in diagnostics if d.severity == "error"]
        super().__init__("\n".join(f"{origin}:{d}" for d in errors))


class _Fail(Exception):
    def __init__(self, column: int, message: str):
        self.column = column
        self.message = message


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\s*/\s*\d*)?(?:\.\d*)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<tensor>⊗)
  | (?P<op>[-+*\[\],=])
  | (?P<bad>.)
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str, col0: int = 1) -> list[_Tok]:
    out = []
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        if kind == "ws":
            continue
        col = col0 + m.start()
        if kind == "bad":
            raise _Fail(col, f"unexpected character {m.group()!r}")
        tok_text = m.group()
        if kind == "ident" and tok_text == "ox":
            kind = "tensor"
        out.append(_Tok(kind, tok_text, col))
    return out


def _rational(tok: _Tok) -> Fraction:
    text = tok.text.replace(" ", "")
    m = re.fullmatch(r"(\d+)(?:/(\d+))?", text)
    if not m:
        raise _Fail(tok.col, f"malformed rational {tok.text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise _Fail(tok.col, f"malformed rational {tok.text!r} (zero denominator)")
    return Fraction(int(num), int(den) if den else 1)


class _Stream:
    def __init__(self, toks: list[_Tok], end_col: int):
        self.toks = toks
        self.pos = 0
        self.end_col = end_col

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise _Fail(self.end_col, "unexpected end of line")
        self.pos += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.next()
        if tok.text != text:
            raise _Fail(tok.col, f"expected {text!r}, found {tok.text!r}")
        return tok

    def at_end(self) -> bool:
        return self.pos >= len(self.toks)


def _lookup(symbols: SymbolTable, tok: _Tok) -> int:
    if tok.kind != "ident" or tok.text not in symbols:
        raise _Fail(tok.col, f"unknown identifier {tok.text!r}")
    return symbols.index(tok.text)


def _signed_terms(stream: _Stream, read_term):
    """sum := [sign] term (sign term)*"""
    out = []
    sign = 1
    tok = stream.peek()
    if tok is not None and tok.text in "+-" and tok.kind == "op":
        stream.next()
        sign = -1 if tok.text == "-" else 1
    while True:
        out.append((sign, read_term(stream)))
        tok = stream.peek()
        if tok is None:
            return out
        if tok.kind == "op" and tok.text in "+-":
            stream.next()
            sign = -1 if tok.text == "-" else 1
            continue
        raise _Fail(tok.col, f"unexpected {tok.text!r}")


def _poly_term(symbols: SymbolTable):
    def read(stream: _Stream) -> tuple[Fraction, Word, int]:
        coeff = Fraction(1)
        word: list[int] = []
        first = stream.peek()
        while True:
            tok = stream.next()
            if tok.kind == "num":
                coeff *= _rational(tok)
            elif tok.kind == "ident":
                word.append(_lookup(symbols, tok))
            else:
                raise _Fail(tok.col, f"expected a generator or rational, found {tok.text!r}")
            nxt = stream.peek()
            if nxt is not None and nxt.text == "*":
                stream.next()
                continue
            if nxt is not None and nxt.kind in ("num", "ident"):
                continue
            return coeff, tuple(word), first.col

    return read


def _parse_poly_tokens(stream: _Stream, symbols: SymbolTable) -> list[tuple[Fraction, Word, int]]:
    terms = _signed_terms(stream, _poly_term(symbols))
    return [(sign * c, w, col) for sign, (c, w, col) in terms]


def parse_polynomial(text: str, symbols: SymbolTable) -> AlgebraElement:
    """Parse a polynomial in the declared generators (free product, no reduction)."""
    try:
        stream = _Stream(_tokenize(text), len(text) + 1)
        terms = _parse_poly_tokens(stream, symbols)
    except _Fail as exc:
        raise ValueError(f"column {exc.column}: {exc.message}") from None
    acc: dict = {}
    for c, w, _ in terms:
        acc[w] = acc.get(w, 0) + c
    return AlgebraElement(symbols, acc)


def _tensor_term(symbols: SymbolTable):
    def read(stream: _Stream):
        coeff = Fraction(1)
        tok = stream.next()
        start = tok.col
        if tok.kind == "num":
            coeff = _rational(tok)
            if stream.peek() is not None and stream.peek().text == "*":
                stream.next()
            tok = stream.next()
        left = _lookup(symbols, tok)
        t = stream.next()
        if t.kind != "tensor":
            raise _Fail(t.col, f"expected 'ox', found {t.text!r}")
        right_tok = stream.next()
        right = _lookup(symbols, right_tok)
        return coeff, left, right, (start, tok, right_tok)

    return read


_HEADER = re.compile(r'\s*hopf\s+"([^"]*)"\s*$')
_GEN = re.compile(r"\s*gen\s+(\S+)\s+deg\s+(\S+)\s*$")


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def parse_with_diagnostics(
    text: str, origin: str = "<string>"
) -> tuple[Optional[Presentation], list[Diagnostic]]:
    diags: list[Diagnostic] = []

    def error(line, col, msg):
        diags.append(Diagnostic(line, col, "error", msg))

    def warn(line, col, msg):
        diags.append(Diagnostic(line, col, "warning", msg))

    lines = text.splitlines()
    name: Optional[str] = None
    gens: list[tuple[str, int]] = []
    gen_line: dict[str, int] = {}
    rel_lines: list[tuple[int, str, int]] = []
    delta_lines: list[tuple[int, str, int]] = []

    for lineno, raw in enumerate(lines, start=1):
        body = _strip_comment(raw)
        stripped = body.strip()
        if not stripped:
            continue
        col = body.index(stripped[0]) + 1
        keyword = stripped.split(None, 1)[0]
        if keyword == "hopf":
            m = _HEADER.match(body)
            if not m:
                error(lineno, col, 'malformed header, expected: hopf "<name>"')
            elif name is not None:
                error(lineno, col, "duplicate hopf header")
            else:
                name = m.group(1)
        elif keyword == "gen":
            m = _GEN.match(body)
            if not m:
                error(lineno, col, "malformed generator line, expected: gen <ident> deg <1|2>")
                continue
            gname, deg = m.group(1), m.group(2)
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", gname) or gname == "ox":
                error(lineno, m.start(1) + 1, f"invalid generator name {gname!r}")
            elif gname in gen_line:
                error(lineno, m.start(1) + 1, f"duplicate generator {gname!r} (first declared on line {gen_line[gname]})")
            elif deg not in ("1", "2"):
                error(lineno, m.start(2) + 1, f"generator degree must be 1 or 2, got {deg!r}")
            else:
                gens.append((gname, int(deg)))
                gen_line[gname] = lineno
        elif keyword == "rel":
            rel_lines.append((lineno, body, body.index("rel") + 4))
        elif keyword == "delta":
            delta_lines.append((lineno, body, body.index("delta") + 6))
        else:
            error(lineno, col, f"unknown directive {keyword!r}")

    if name is None:
        error(1, 1, 'missing header: hopf "<name>"')
    if not gens:
        error(1, 1, "no generators declared")
        return None, diags

    symbols = SymbolTable.from_pairs(gens)
    brackets: dict[tuple[int, int], tuple[AlgebraElement, int]] = {}

    for lineno, body, col0 in rel_lines:
        try:
            stream = _Stream(_tokenize(body[col0 - 1 :], col0), len(body) + 1)
            stream.expect("[")
            ta = stream.next()
            a = _lookup(symbols, ta)
            stream.expect(",")
            tb = stream.next()
            b = _lookup(symbols, tb)
            stream.expect("]")
            stream.expect("=")
            terms = _parse_poly_tokens(stream, symbols)
        except _Fail as exc:
            error(lineno, exc.column, exc.message)
            continue
        if a == b:
            error(lineno, ta.col, f"bracket of {ta.text!r} with itself")
            continue
        key = (max(a, b), min(a, b))
        lo_name, hi_name = symbols[key[1]].name, symbols[key[0]].name
        if key in brackets:
            error(
                lineno, ta.col,
                f"duplicate relation for pair ({lo_name},{hi_name}) (first on line {brackets[key][1]})",
            )
            continue
        limit = symbols[a].degree + symbols[b].degree
        ok = True
        acc: dict = {}
        for c, w, tcol in terms:
            if len(w) > 2:
                error(lineno, tcol, f"rhs word {symbols.format_word(w)} is longer than 2 letters")
                ok = False
            elif not is_normal_word(w):
                error(
                    lineno, tcol,
                    f"rhs word {symbols.format_word(w)} is not in normal form "
                    f"(letters must follow declaration order)",
                )
                ok = False
            elif symbols.degree(w) >= limit:
                error(
                    lineno, tcol,
                    f"rhs word {symbols.format_word(w)} has degree {symbols.degree(w)}, "
                    f"must be below {limit} (relations must drop degree)",
                )
                ok = False
            acc[w] = acc.get(w, 0) + c
        if not ok:
            continue
        rhs = AlgebraElement(symbols, acc)
        # [a,b] = rhs  means  hi*lo = lo*hi + (rhs if a is hi else -rhs)
        brackets[key] = (rhs if a > b else -rhs, lineno)

    last_line = max(len(lines), 1)
    for hi, lo in itertools.combinations(reversed(range(len(symbols))), 2):
        if (hi, lo) not in brackets:
            error(
                last_line, 1,
                f"missing relation for pair ({symbols[lo].name},{symbols[hi].name})",
            )

    tails: dict[int, TensorElement] = {}
    tail_line: dict[int, int] = {}
    for lineno, body, col0 in delta_lines:
        try:
            stream = _Stream(_tokenize(body[col0 - 1 :], col0), len(body) + 1)
            tg = stream.next()
            g = _lookup(symbols, tg)
            stream.expect("=")
            terms = _signed_terms(stream, _tensor_term(symbols))
        except _Fail as exc:
            error(lineno, exc.column, exc.message)
            continue
        if symbols[g].degree != 2:
            error(lineno, tg.col, f"delta on degree-1 generator {tg.text!r} (primitive generators have delta 0)")
            continue
        if g in tails:
            error(lineno, tg.col, f"duplicate delta for {tg.text!r} (first on line {tail_line[g]})")
            continue
        ok = True
        acc = {}
        for sign, (c, left, right, (tcol, ltok, rtok)) in terms:
            for leg, tok in ((left, ltok), (right, rtok)):
                if symbols[leg].degree != 1:
                    error(lineno, tok.col, f"delta leg {tok.text!r} must be a degree-1 generator")
                    ok = False
            key = ((left,), (right,))
            acc[key] = acc.get(key, 0) + sign * c
        if not ok:
            continue
        tail = TensorElement(symbols, acc)
        if not (tail + tail.twist()).is_zero():
            error(lineno, tg.col, f"tail not antisymmetric: delta {tg.text} must satisfy τ(δ) = -δ")
            continue
        tails[g] = tail
        tail_line[g] = lineno

    for gsym in symbols:
        if gsym.degree == 2 and gsym.index not in tails and not any(
            d.severity == "error" and "delta" in d.message and gsym.name in d.message for d in diags
        ):
            warn(gen_line[gsym.name], 1, f"degree-2 generator {gsym.name!r} has no delta; it is primitive")

    if any(d.severity == "error" for d in diags):
        return None, diags
    relations = [Relation(symbols[hi], symbols[lo], rhs) for (hi, lo), (rhs, _) in sorted(brackets.items(), reverse=True)]
    try:
        p = Presentation(name, symbols, relations, tails)
    except PresentationError as exc:  # pragma: no cover - parser checks mirror the constructor
        error(1, 1, str(exc))
        return None, diags
    p.origin = origin
    p.diagnostics = diags
    return p, diags


def parse(source: PresentationSource | str, origin: Optional[str] = None) -> Presentation:
    """Parse DSL text into a :class:`Presentation`; raise :class:`DSLError` on errors."""
    if isinstance(source, PresentationSource):
        text, origin = source.text, origin or source.origin
    else:
        text, origin = source, origin or "<string>"
    p, diags = parse_with_diagnostics(text, origin)
    if p is None:
        raise DSLError(diags, origin)
    return p


def _format_tensor(t: TensorElement) -> str:
    if not t.terms:
        return "0"
    parts = []
    for n, ((w1, w2), c) in enumerate(t.sorted_terms()):
        sign = "-" if c < 0 else ("" if n == 0 else "+")
        mag = abs(c)
        coeff = "" if mag == 1 else f"{mag}*"
        body = f"{coeff}{t.symbols.format_word(w1)} ox {t.symbols.format_word(w2)}"
        parts.append(f"{sign}{body}" if n == 0 else f" {sign} {body}")
    return "".join(parts)


def format_presentation(p: Presentation) -> str:
    """Render a presentation back to DSL text."""
    syms = p.symbols
    lines = [f'hopf "{p.name}"']
    lines += [f"gen {g.name} deg {g.degree}" for g in syms]
    for lo, hi in itertools.combinations(range(len(syms)), 2):
        rhs = -p.relations[(hi, lo)].rhs
        lines.append(f"rel [{syms[lo].name},{syms[hi].name}] = {rhs}")
    for idx in sorted(p.tails):
        lines.append(f"delta {syms[idx].name} = {_format_tensor(p.tails[idx])}")
    return "\n".join(lines) + "\n"
