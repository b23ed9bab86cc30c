"""Parser for O_n expressions such as ``(0+1i) v1 + v2 v2*`` or ``(1.0,0.0) v1 v2*``.

Grammar::

    expression := ['+'|'-'] term (('+'|'-') term)*
    term       := [complex] word
    complex    := '(' float [('+'|'-') float 'i'] ')' | '(' float ',' float ')'
    word       := '1' | vtok+
    vtok       := 'v' digits ['*']

Juxtaposition is multiplication, so ``v1* v1`` parses to ``1`` and
``v1 v2*`` to the monomial with ``s = (1,)`` and ``t = (2,)``.
"""

from __future__ import annotations

import re

from .algebra import AlgebraElement, Monomial, UNIT, mono_mul


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class LetterRangeError(ValueError):
    pass


_FLOAT = r"[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?|[0-9]+\.(?:[eE][+-]?[0-9]+)?|inf|nan"
_TOKEN = re.compile(
    rf"\s*(?:(?P<num>{_FLOAT})|(?P<v>v(?P<idx>[0-9]+)(?P<star>\*)?)|(?P<op>[-+(),i])|(?P<bad>\S))"
)


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group("bad") is not None:
            raise ParseError(f"unexpected character {m.group('bad')!r}", m.start("bad"))
        if m.group("num") is not None:
            toks.append(("num", m.group("num"), m.start("num")))
        elif m.group("v") is not None:
            toks.append(("v", (int(m.group("idx")), bool(m.group("star"))), m.start("v")))
        else:
            toks.append((m.group("op"), m.group("op"), m.start("op")))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, n: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def expression(self) -> AlgebraElement:
        acc: dict[Monomial, complex] = {}
        sign = 1.0
        if self.peek()[0] in "+-":
            sign = -1.0 if self.take()[0] == "-" else 1.0
        while True:
            c, m = self.term()
            if m is not None:
                acc[m] = acc.get(m, 0j) + sign * c
            kind = self.peek()[0]
            if kind == "end":
                break
            if kind not in ("+", "-"):
                tok = self.peek()
                raise ParseError(f"expected '+' or '-', found {tok[1]!r}", tok[2])
            sign = -1.0 if self.take()[0] == "-" else 1.0
        return AlgebraElement(self.n, acc)

    def term(self):
        coeff = 1 + 0j
        if self.peek()[0] == "(":
            coeff = self.complex()
        return coeff, self.word()

    def signed_float(self) -> float:
        sign = 1.0
        while self.peek()[0] in "+-":
            if self.take()[0] == "-":
                sign = -sign
        return sign * float(self.take("num")[1])

    def complex(self) -> complex:
        self.take("(")
        re_ = self.signed_float()
        im = 0.0
        kind = self.peek()[0]
        if kind == ",":
            self.take(",")
            im = self.signed_float()
        elif kind in "+-":
            sign = -1.0 if self.take()[0] == "-" else 1.0
            if self.peek()[0] == "i":
                self.take("i")
                im = sign
            else:
                im = sign * float(self.take("num")[1])
                self.take("i")
        elif kind == "i":
            self.take("i")
            re_, im = 0.0, re_
        self.take(")")
        return complex(re_, im)

    def word(self) -> Monomial | None:
        tok = self.peek()
        if tok[0] == "num":
            if tok[1] not in ("1", "1.0"):
                raise ParseError(f"a word is '1' or generators, found {tok[1]!r}", tok[2])
            self.take()
            return UNIT
        if tok[0] != "v":
            raise ParseError(f"expected a word, found {tok[1]!r}", tok[2])
        m: Monomial | None = UNIT
        while self.peek()[0] == "v":
            (a, star), pos = self.take()[1:]
            if not 1 <= a <= self.n:
                raise LetterRangeError(f"letter v{a} out of range 1..{self.n} at position {pos}")
            g = Monomial((), (a,)) if star else Monomial((a,), ())
            if m is not None:
                m = g if m.is_unit() else mono_mul(m, g)
        return m


def parse_element(text: str, n: int) -> AlgebraElement:
    if n < 2:
        raise ValueError("n must be at least 2")
    return _Parser(text, n).expression()
