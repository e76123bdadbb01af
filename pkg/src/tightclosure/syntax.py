"""Workbench script grammar: tokenizer, parser and canonical renderer.

::

    script   := decl+
    decl     := ring | ideal | element | task
    ring     := "ring" NAME "=" "char" (INT | "Z") "vars" names
                ["weights" ints] ["relations" polys] ["domain"] ";"
    ideal    := "ideal" NAME ["in" NAME] "=" polys ";"
    element  := "element" NAME ["in" NAME] "=" poly ";"
    task     := "task" OP NAME* (KEY INT)* ";"

Polynomials use ``+ - * ^`` and parentheses with integer coefficients;
juxtaposition is not allowed.  Element names may appear inside later
polynomials of the same ring and are substituted on the spot.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NameClash, ParseError, UnresolvedName
from .field import is_prime
from .poly import MAX_EXPONENT, format_terms

OPS = (
    "tc-membership", "tc-hull", "certificate", "bracket-power",
    "hk", "hs", "hk-compare",
    "colon-capture", "monomial-colon", "integral-closure", "briancon-skoda", "mather",
    "f-regular", "f-rational",
    "lc-zero", "lc-frobenius", "zero-star", "a-invariant", "fujita", "kodaira",
    "regular-sequence", "test-candidates", "dimension",
)
KEYS = ("bound", "emax", "kpow", "smax", "t", "n", "index", "nmax", "e", "window", "degree")

# hyphenated words lex as one name only when they spell an op, so "c-a" stays a difference
_HYPHENATED = "|".join(re.escape(op) for op in sorted((o for o in OPS if "-" in o), key=len, reverse=True))
_TOKEN = re.compile(rf"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<int>\d+)
  | (?P<name>(?:{_HYPHENATED})(?![A-Za-z0-9_])|[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[=,;+\-*^()])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # int, name, punct, eof
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    if text.startswith("﻿"):
        text = text[1:]
    out = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col,
                             ["name", "integer", "operator"])
        kind = m.lastgroup
        s = m.group()
        if kind != "ws":
            out.append(Token(kind, s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


# ---------------------------------------------------------------------------
# integer polynomials as {exponent tuple: int}

def _padd(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _ppow(a: dict, n: int) -> dict:
    nvars = len(next(iter(a))) if a else 0
    result = {(0,) * nvars: 1}
    base = a
    while n:
        if n & 1:
            result = _pmul(result, base)
        n >>= 1
        if n:
            base = _pmul(base, base)
    return result


def _grevlex_key(m: tuple):
    return (sum(m), tuple(-x for x in reversed(m)))


def render_poly(names, terms: dict) -> str:
    items = sorted(terms.items(), key=lambda t: _grevlex_key(t[0]), reverse=True)
    return format_terms(names, items)


# ---------------------------------------------------------------------------
# declarations

@dataclass(frozen=True)
class RingDecl:
    name: str
    char: int | None  # None: integers
    vars: tuple
    weights: tuple | None
    relations: tuple  # of frozen term tuples
    domain: bool
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        parts = [f"ring {self.name} = char {'Z' if self.char is None else self.char}",
                 "vars " + ", ".join(self.vars)]
        if self.weights is not None:
            parts.append("weights " + ", ".join(str(w) for w in self.weights))
        if self.relations:
            parts.append("relations " + ", ".join(render_poly(self.vars, dict(r)) for r in self.relations))
        if self.domain:
            parts.append("domain")
        return " ".join(parts) + ";"


@dataclass(frozen=True)
class IdealDecl:
    name: str
    ring: str
    generators: tuple
    line: int = field(default=0, compare=False)

    def render(self, names) -> str:
        return f"ideal {self.name} in {self.ring} = " + ", ".join(
            render_poly(names, dict(g)) for g in self.generators) + ";"


@dataclass(frozen=True)
class ElementDecl:
    name: str
    ring: str
    poly: tuple
    line: int = field(default=0, compare=False)

    def render(self, names) -> str:
        return f"element {self.name} in {self.ring} = {render_poly(names, dict(self.poly))};"


@dataclass(frozen=True)
class TaskDecl:
    op: str
    args: tuple
    options: tuple  # ((key, value), ...)
    line: int = field(default=0, compare=False)

    @property
    def opts(self) -> dict:
        return dict(self.options)

    def render(self) -> str:
        parts = ["task", self.op] + list(self.args)
        for k, v in self.options:
            parts += [k, str(v)]
        return " ".join(parts) + ";"


@dataclass
class WorkbenchScript:
    declarations: list

    def ring(self, name: str) -> RingDecl:
        for d in self.declarations:
            if isinstance(d, RingDecl) and d.name == name:
                return d
        raise UnresolvedName(f"unknown ring {name}", 0, 0)

    def lookup(self, name: str):
        for d in self.declarations:
            if not isinstance(d, TaskDecl) and d.name == name:
                return d
        raise UnresolvedName(f"unknown name {name}", 0, 0)

    @property
    def tasks(self) -> list[TaskDecl]:
        return [d for d in self.declarations if isinstance(d, TaskDecl)]


def _freeze(terms: dict) -> tuple:
    return tuple(sorted(terms.items()))


# ---------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.decls: list = []
        self.names: dict = {}  # name -> declaration
        self.current_ring: RingDecl | None = None

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, expected, msg=None):
        t = self.tok
        shown = t.text if t.kind != "eof" else "end of input"
        raise ParseError(msg or f"unexpected {shown!r}", t.line, t.column, sorted(expected))

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind in ("name", "punct"):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        t = self.tok
        if not self.accept(text):
            self.error([text])
        return t

    def name(self) -> Token:
        t = self.tok
        if t.kind != "name":
            self.error(["name"])
        self.i += 1
        return t

    def integer(self) -> int:
        t = self.tok
        if t.kind != "int":
            self.error(["integer"])
        self.i += 1
        return int(t.text)

    def declare(self, tok: Token, decl):
        if tok.text in self.names:
            raise NameClash(f"{tok.text} is already declared", tok.line, tok.column, [])
        self.names[tok.text] = decl

    # script
    def parse(self) -> WorkbenchScript:
        starts = ["ring", "ideal", "element", "task"]
        if self.tok.kind == "eof":
            self.error(starts, "empty script")
        while self.tok.kind != "eof":
            t = self.tok.text
            if t == "ring":
                self.ring_decl()
            elif t == "ideal":
                self.ideal_decl()
            elif t == "element":
                self.element_decl()
            elif t == "task":
                self.task_decl()
            else:
                self.error(starts)
        return WorkbenchScript(self.decls)

    def ring_decl(self):
        start = self.expect("ring")
        ntok = self.name()
        self.expect("=")
        self.expect("char")
        if self.tok.kind == "int":
            t = self.tok
            char = self.integer()
            if not is_prime(char):
                raise ParseError(f"characteristic {char} is not prime", t.line, t.column, ["prime", "Z"])
        elif self.accept("Z"):
            char = None
        else:
            self.error(["prime", "Z"])
        self.expect("vars")
        names = [self.name().text]
        while self.accept(","):
            names.append(self.name().text)
        if len(set(names)) != len(names):
            raise NameClash("repeated variable name", ntok.line, ntok.column, [])
        weights = None
        if self.accept("weights"):
            weights = [self.integer()]
            while self.accept(","):
                weights.append(self.integer())
            if len(weights) != len(names):
                self.error([","], f"expected {len(names)} weights, got {len(weights)}")
            if any(w <= 0 for w in weights):
                self.error(["positive integer"], "weights must be positive")
        decl_vars = tuple(names)
        self._ring_vars = decl_vars
        self._ring_name = ntok.text
        relations = []
        if self.accept("relations"):
            relations.append(_freeze(self.poly()))
            while self.accept(","):
                relations.append(_freeze(self.poly()))
        domain = self.accept("domain")
        self.expect(";")
        decl = RingDecl(ntok.text, char, decl_vars, None if weights is None else tuple(weights),
                        tuple(relations), domain, start.line)
        self.declare(ntok, decl)
        self.decls.append(decl)
        self.current_ring = decl

    def _ring_for(self) -> RingDecl:
        if self.accept("in"):
            t = self.name()
            d = self.names.get(t.text)
            if not isinstance(d, RingDecl):
                raise UnresolvedName(f"unknown ring {t.text}", t.line, t.column, ["ring name"])
            return d
        if self.current_ring is None:
            self.error(["ring declaration"], "no ring declared yet")
        return self.current_ring

    def ideal_decl(self):
        start = self.expect("ideal")
        ntok = self.name()
        ring = self._ring_for()
        self.current_ring = ring
        self._ring_vars = ring.vars
        self._ring_name = ring.name
        self.expect("=")
        gens = [_freeze(self.poly())]
        while self.accept(","):
            gens.append(_freeze(self.poly()))
        self.expect(";")
        decl = IdealDecl(ntok.text, ring.name, tuple(gens), start.line)
        self.declare(ntok, decl)
        self.decls.append(decl)

    def element_decl(self):
        start = self.expect("element")
        ntok = self.name()
        ring = self._ring_for()
        self.current_ring = ring
        self._ring_vars = ring.vars
        self._ring_name = ring.name
        self.expect("=")
        poly = _freeze(self.poly())
        self.expect(";")
        decl = ElementDecl(ntok.text, ring.name, poly, start.line)
        self.declare(ntok, decl)
        self.decls.append(decl)

    def task_decl(self):
        start = self.expect("task")
        t = self.tok
        if t.kind != "name" or t.text not in OPS:
            self.error(OPS)
        self.i += 1
        args = []
        options = []
        while self.tok.kind == "name" and self.tok.text not in KEYS:
            a = self.name()
            if a.text not in self.names:
                raise UnresolvedName(f"unknown name {a.text}", a.line, a.column, ["declared name"])
            args.append(a.text)
        while self.tok.kind == "name":
            k = self.tok
            if k.text not in KEYS:
                self.error(KEYS + (";",))
            self.i += 1
            options.append((k.text, self.integer()))
        if self.tok.text != ";":
            self.error(["name", ";"] + list(KEYS))
        self.expect(";")
        self.decls.append(TaskDecl(t.text, tuple(args), tuple(options), start.line))

    # polynomials
    def poly(self) -> dict:
        neg = False
        if self.accept("-"):
            neg = True
        elif self.accept("+"):
            pass
        acc = self.term()
        if neg:
            acc = {m: -c for m, c in acc.items()}
        while self.tok.text in ("+", "-") and self.tok.kind == "punct":
            sign = 1 if self.tok.text == "+" else -1
            self.i += 1
            acc = _padd(acc, self.term(), sign)
        return acc

    def term(self) -> dict:
        acc = self.factor()
        while self.accept("*"):
            acc = _pmul(acc, self.factor())
        t = self.tok
        if t.kind == "int" or t.text == "(" or (t.kind == "name" and t.text != "domain"):
            self.error(["*", "+", "-", ",", ";"], "juxtaposition is not allowed; use *")
        return acc

    def factor(self) -> dict:
        base = self.atom()
        if self.accept("^"):
            t = self.tok
            n = self.integer()
            if n > MAX_EXPONENT:
                raise ParseError(f"exponent {n} too large", t.line, t.column, ["integer"])
            base = _ppow(base, n)
        return base

    def atom(self) -> dict:
        nv = len(self._ring_vars)
        t = self.tok
        if t.kind == "int":
            self.i += 1
            c = int(t.text)
            return {(0,) * nv: c} if c else {}
        if self.accept("("):
            inner = self.poly()
            self.expect(")")
            return inner
        if t.kind == "name":
            self.i += 1
            if t.text in self._ring_vars:
                j = self._ring_vars.index(t.text)
                return {tuple(int(k == j) for k in range(nv)): 1}
            d = self.names.get(t.text)
            if isinstance(d, ElementDecl) and d.ring == self._ring_name:
                return dict(d.poly)
            raise UnresolvedName(f"unknown name {t.text}", t.line, t.column,
                                 ["variable of " + self._ring_name])
        self.error(["integer", "name", "("])


def parse_script(text: str) -> WorkbenchScript:
    return _Parser(text).parse()


def render_script(script: WorkbenchScript) -> str:
    lines = []
    rings = {}
    for d in script.declarations:
        if isinstance(d, RingDecl):
            rings[d.name] = d
            lines.append(d.render())
        elif isinstance(d, (IdealDecl, ElementDecl)):
            lines.append(d.render(rings[d.ring].vars))
        else:
            lines.append(d.render())
    return "\n".join(lines) + "\n"


def parse_poly(text: str, names) -> dict:
    """Parse one polynomial over the given variable names."""
    p = _Parser(text)
    p._ring_vars = tuple(names)
    p._ring_name = ""
    out = p.poly()
    if p.tok.kind != "eof":
        p.error(["end of input"])
    return out
