"""Tokenizer, recursive-descent parser and printer for the construction language.

    expr    := "{}" | "∅" | "{" expr ("," expr)* "}" ("_0" | "_1")
             | "pair(" expr "," expr ")" | "union0(" expr ")" | "union1(" expr ")"
             | "vn" NAT | "fuzzy" NAT | "exp(" expr "," expr ")"
             | "bg(" NAT ";" [perm ("," perm)*] ")"
             | "sep0(" expr ";" [NAT ("," NAT)*] ")"
             | "sep1(" expr ";" [NAT "=" fiber ("," NAT "=" fiber)*] ")"
             | "replace0(" expr ";" [NAT "=" expr ("," ...)*] ")" | "replace1(" ... ")"
             | IDENT
    fiber   := "triv" NAT | "reg" | "coset(" [perm ("," perm)*] ")"
    perm    := "()" | ("(" NAT+ ")")+
    command := "let" IDENT "=" expr | "eq" expr expr | "idcount" expr expr
             | "mult" expr expr | ("aut" | "el" | "canon" | "rank" | "pi0" | "card") expr
             | "save" PATH | "load" PATH | "help"

NAT indices in sep0/sep1/replace name El components of the argument in
the order reported by ``el``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union as _U

from ..errors import ParseError
from ..terms import (Bg, Coset, Cycles, Empty, Expo, FuzzyNat, Ident, Pair, Reg, Replace,
                     Sep0, Sep1, Triv, Tuple, Union, Vn)

__all__ = ["Let", "Query", "Save", "Load", "Help", "Command", "QUERY_ARITY",
           "parse", "parse_expr", "expr_text", "command_text"]


@dataclass(frozen=True)
class Let:
    name: str
    expr: object


@dataclass(frozen=True)
class Query:
    kind: str
    args: tuple


@dataclass(frozen=True)
class Save:
    path: str


@dataclass(frozen=True)
class Load:
    path: str


@dataclass(frozen=True)
class Help:
    pass


Command = _U[Let, Query, Save, Load, Help]

QUERY_ARITY = {"eq": 2, "idcount": 2, "mult": 2, "aut": 1, "el": 1, "canon": 1,
               "rank": 1, "pi0": 1, "card": 1}
EXPR_KEYWORDS = {"pair", "union0", "union1", "vn", "fuzzy", "bg", "exp", "sep0", "sep1",
                 "replace0", "replace1"}
RESERVED = EXPR_KEYWORDS | set(QUERY_ARITY) | {"let", "save", "load", "help", "triv", "reg",
                                                "coset"}

_PUNCT = {"{": "{", "}": "}", "(": "(", ")": ")", ",": ",", ";": ";", "=": "=",
          "｛": "{", "｝": "}"}
_SUBSCRIPTS = {"₀": 0, "₁": 1}


@dataclass(frozen=True)
class Token:
    kind: str  # punctuation text, "SUB", "NAT", "IDENT", "EMPTY", "EOF"
    value: object
    line: int
    col: int


def tokenize(text: str, line: int = 1) -> list[Token]:
    tokens = []
    i, col = 0, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start = col
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, line, start))
            i += 1
            col += 1
        elif ch == "∅":
            tokens.append(Token("EMPTY", ch, line, start))
            i += 1
            col += 1
        elif ch in _SUBSCRIPTS:
            tokens.append(Token("SUB", _SUBSCRIPTS[ch], line, start))
            i += 1
            col += 1
        elif ch == "_":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            digits = text[i + 1:j]
            if digits not in ("0", "1"):
                raise ParseError("bad truncation level", line, start, ["_0", "_1"])
            tokens.append(Token("SUB", int(digits), line, start))
            col += j - i
            i = j
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("NAT", int(text[i:j]), line, start))
            col += j - i
            i = j
        elif ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_") and text[j] not in _SUBSCRIPTS:
                j += 1
            tokens.append(Token("IDENT", text[i:j], line, start))
            col += j - i
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", line, start)
    tokens.append(Token("EOF", None, line, col))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, expected, message=None):
        t = self.tok
        got = "end of input" if t.kind == "EOF" else repr(t.value)
        raise ParseError(message or f"unexpected {got}", t.line, t.col, expected)

    def take(self, kind, expected=None):
        if self.tok.kind != kind:
            self.fail([expected or kind])
        t = self.tok
        self.pos += 1
        return t

    def accept(self, kind):
        if self.tok.kind == kind:
            self.pos += 1
            return True
        return False

    def keyword(self, word):
        t = self.tok
        if t.kind == "IDENT" and t.value == word:
            self.pos += 1
            return True
        return False

    def nat(self):
        return self.take("NAT", "NAT").value

    def expr(self):
        t = self.tok
        span = (t.line, t.col)
        if t.kind == "EMPTY":
            self.pos += 1
            return Empty(span=span)
        if t.kind == "{":
            self.pos += 1
            if self.accept("}"):
                self.accept("SUB")
                return Empty(span=span)
            items = [self.expr()]
            while self.accept(","):
                items.append(self.expr())
            if not self.accept("}"):
                self.fail(["}", ","])
            if self.tok.kind != "SUB":
                self.fail(["_0", "_1"])
            level = self.take("SUB").value
            return Tuple(level, tuple(items), span=span)
        if t.kind == "IDENT":
            word = t.value
            self.pos += 1
            if word == "vn":
                return Vn(self.nat(), span=span)
            if word == "fuzzy":
                return FuzzyNat(self.nat(), span=span)
            if word in ("pair", "exp"):
                self.take("(", "(")
                a = self.expr()
                self.take(",", ",")
                b = self.expr()
                self.take(")", ")")
                return Pair(a, b, span=span) if word == "pair" else Expo(a, b, span=span)
            if word in ("union0", "union1"):
                self.take("(", "(")
                a = self.expr()
                self.take(")", ")")
                return Union(int(word[-1]), a, span=span)
            if word == "bg":
                self.take("(", "(")
                degree = self.nat()
                self.take(";", ";")
                gens = self.perm_list()
                self.take(")", ")")
                return Bg(degree, gens, span=span)
            if word == "sep0":
                a = self.head()
                keep = self.separated(self.nat)
                self.take(")", ")")
                return Sep0(a, tuple(keep), span=span)
            if word == "sep1":
                a = self.head()
                specs = self.separated(lambda: self.assignment(self.fiber))
                self.take(")", ")")
                return Sep1(a, tuple(specs), span=span)
            if word in ("replace0", "replace1"):
                a = self.head()
                pairs = self.separated(lambda: self.assignment(self.expr))
                self.take(")", ")")
                return Replace(int(word[-1]), a, tuple(pairs), span=span)
            if word in RESERVED:
                self.pos -= 1
                self.fail(["expression"], f"keyword {word!r} cannot be used as a name")
            return Ident(word, span=span)
        self.fail(["{", "∅", "IDENT", *sorted(EXPR_KEYWORDS)])

    def head(self):
        self.take("(", "(")
        a = self.expr()
        self.take(";", ";")
        return a

    def separated(self, item):
        if self.tok.kind == ")":
            return []
        out = [item()]
        while self.accept(","):
            out.append(item())
        return out

    def assignment(self, value):
        k = self.nat()
        self.take("=", "=")
        return (k, value())

    def fiber(self):
        if self.keyword("triv"):
            return Triv(self.nat())
        if self.keyword("reg"):
            return Reg()
        if self.keyword("coset"):
            self.take("(", "(")
            gens = self.perm_list()
            self.take(")", ")")
            return Coset(gens)
        self.fail(["triv", "reg", "coset"])

    def perm_list(self) -> tuple[Cycles, ...]:
        if self.tok.kind == ")":
            return ()
        out = [self.perm()]
        while self.accept(","):
            out.append(self.perm())
        return tuple(out)

    def perm(self) -> Cycles:
        cycles = []
        self.take("(", "(")
        while True:
            cycle = []
            while self.tok.kind == "NAT":
                cycle.append(self.nat())
            self.take(")", ")")
            if cycle:
                cycles.append(tuple(cycle))
            if not self.accept("("):
                break
        return tuple(cycles)

    def command(self):
        t = self.tok
        if t.kind != "IDENT":
            self.fail(["command"])
        word = t.value
        self.pos += 1
        if word == "let":
            name = self.take("IDENT", "IDENT").value
            if name in RESERVED:
                self.pos -= 1
                self.fail(["IDENT"], f"keyword {name!r} cannot be bound")
            self.take("=", "=")
            return Let(name, self.expr())
        if word in QUERY_ARITY:
            args = tuple(self.expr() for _ in range(QUERY_ARITY[word]))
            return Query(word, args)
        if word == "help":
            return Help()
        self.pos -= 1
        self.fail(["let", "help", "save", "load", *QUERY_ARITY])

    def end(self):
        if self.tok.kind != "EOF":
            self.fail(["end of line"])


def parse(text: str, line: int = 1) -> Command | None:
    """Parse one command; returns None for a blank or comment-only line."""
    stripped = text.strip()
    word = stripped.split(None, 1)[0] if stripped else ""
    if word in ("save", "load"):
        path = stripped[len(word):].strip()
        if not path:
            col = text.index(word) + len(word) + 1
            raise ParseError("missing path", line, col, ["PATH"])
        return Save(path) if word == "save" else Load(path)
    tokens = tokenize(text, line)
    if tokens[0].kind == "EOF":
        return None
    p = _Parser(tokens)
    cmd = p.command()
    p.end()
    return cmd


def parse_expr(text: str, line: int = 1):
    p = _Parser(tokenize(text, line))
    e = p.expr()
    p.end()
    return e


# -- printing ------------------------------------------------------------------

def cycles_text(c: Cycles) -> str:
    return "".join("(" + " ".join(map(str, cyc)) + ")" for cyc in c) or "()"


def _fiber_text(f) -> str:
    if isinstance(f, Triv):
        return f"triv {f.count}"
    if isinstance(f, Reg):
        return "reg"
    return "coset(" + ", ".join(cycles_text(g) for g in f.gens) + ")"


def expr_text(e) -> str:
    if isinstance(e, Empty):
        return "{}"
    if isinstance(e, Tuple):
        return "{" + ", ".join(expr_text(i) for i in e.items) + "}_" + str(e.level)
    if isinstance(e, Pair):
        return f"pair({expr_text(e.left)}, {expr_text(e.right)})"
    if isinstance(e, Union):
        return f"union{e.level}({expr_text(e.arg)})"
    if isinstance(e, Vn):
        return f"vn {e.k}"
    if isinstance(e, FuzzyNat):
        return f"fuzzy {e.k}"
    if isinstance(e, Ident):
        return e.name
    if isinstance(e, Bg):
        gens = ", ".join(cycles_text(g) for g in e.gens)
        return f"bg({e.degree}; {gens})" if gens else f"bg({e.degree};)"
    if isinstance(e, Expo):
        return f"exp({expr_text(e.base)}, {expr_text(e.target)})"
    if isinstance(e, Sep0):
        keep = ", ".join(map(str, e.keep))
        return f"sep0({expr_text(e.arg)}; {keep})" if keep else f"sep0({expr_text(e.arg)};)"
    if isinstance(e, Sep1):
        specs = ", ".join(f"{k} = {_fiber_text(f)}" for k, f in e.specs)
        return f"sep1({expr_text(e.arg)}; {specs})" if specs else f"sep1({expr_text(e.arg)};)"
    if isinstance(e, Replace):
        body = ", ".join(f"{k} = {expr_text(v)}" for k, v in e.assignments)
        head = f"replace{e.level}({expr_text(e.arg)};"
        return f"{head} {body})" if body else f"{head})"
    raise TypeError(f"not an expression: {e!r}")


def command_text(c) -> str:
    if isinstance(c, Let):
        return f"let {c.name} = {expr_text(c.expr)}"
    if isinstance(c, Query):
        return " ".join([c.kind, *(expr_text(a) for a in c.args)])
    if isinstance(c, Save):
        return f"save {c.path}"
    if isinstance(c, Load):
        return f"load {c.path}"
    if isinstance(c, Help):
        return "help"
    raise TypeError(f"not a command: {c!r}")
