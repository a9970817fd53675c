"""Recursive-descent parser for the ideal-description language.

Grammar (statements end with ``;``, ``#`` starts a comment)::

    script   := (stmt ';')*
    stmt     := 'ring' ringdecl
              | 'ideal' NAME '=' (polylist | iexpr)
              | 'poly' NAME '=' poly
              | COMMAND arg*            # args split on top-level whitespace
    ringdecl := ('Q' | 'QQ' | 'GF(' INT ')') '[' NAME (',' NAME)* ']' [order]
    order    := 'lex' | 'grevlex' | 'block(' INT ')'
    iexpr    := iterm (('+' | '&') iterm)*          # & is intersection
    iterm    := ifactor ('*' ifactor)*
    ifactor  := iatom ('^' INT | '_(' INT ')')*     # _(n) is the symbolic power
    iatom    := NAME | '<' polylist '>' | '(' iexpr ')'
    polylist := poly (',' poly)*
    poly     := ['+'|'-'] term (('+'|'-') term)*
    term     := unary (('*'|'/') unary)*
    unary    := '-' unary | atom ['^' INT]
    atom     := INT | NAME | '(' poly ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError, SympowError
from .poly import MonomialOrder, Polynomial, PolyRing

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z][A-Za-z0-9]*(?:_[A-Za-z0-9]+)*)
  | (?P<op>_\(|[-+*/^(),<>&:\[\]=])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1, col: int = 1) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        chunk = m.group()
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, chunk, line, col))
        for ch in chunk:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


class _Cursor:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def accept(self, text: str) -> Token | None:
        if self.tok.text == text and self.tok.kind in ("op", "name"):
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            self.fail(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return t

    def expect_kind(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail(f"expected {kind}, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t

    def fail(self, msg: str):
        raise ParseError(msg, self.tok.line, self.tok.col)

    def at_end(self) -> bool:
        return self.tok.kind == "eof"


# -- polynomials -------------------------------------------------------------------


class _PolyParser:
    def __init__(self, cur: _Cursor, ring: PolyRing, env: dict | None = None):
        self.cur = cur
        self.ring = ring
        self.env = env or {}

    def poly(self) -> Polynomial:
        cur = self.cur
        sign = -1 if cur.accept("-") else (cur.accept("+") and 1) or 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            if cur.accept("+"):
                acc = acc + self.term()
            elif cur.accept("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> Polynomial:
        cur = self.cur
        acc = self.unary()
        while True:
            if cur.accept("*"):
                acc = acc * self.unary()
            elif cur.tok.text == "/" and cur.tok.kind == "op":
                t = cur.tok
                cur.i += 1
                d = self.unary()
                if not d.is_constant() or d.is_zero():
                    raise ParseError("can only divide by a nonzero constant", t.line, t.col)
                acc = acc / d.terms[self.ring.zero_exp()]
            else:
                return acc

    def unary(self) -> Polynomial:
        if self.cur.accept("-"):
            return -self.unary()
        base = self.atom()
        if self.cur.accept("^"):
            n = int(self.cur.expect_kind("int").text)
            base = base ** n
        return base

    def atom(self) -> Polynomial:
        cur = self.cur
        t = cur.tok
        if t.kind == "int":
            cur.i += 1
            return self.ring.const(int(t.text))
        if t.kind == "name":
            cur.i += 1
            if t.text in self.ring.variables:
                return self.ring.var(t.text)
            bound = self.env.get(t.text)
            if isinstance(bound, Polynomial):
                return bound
            if bound is not None:
                raise ParseError(f"{t.text!r} is an ideal, not a polynomial", t.line, t.col)
            raise ParseError(f"unknown variable or unbound name {t.text!r}", t.line, t.col)
        if cur.accept("("):
            p = self.poly()
            cur.expect(")")
            return p
        cur.fail(f"unexpected {t.text or 'end of input'!r} in polynomial")


def parse_polynomial(text: str, ring: PolyRing, env: dict | None = None) -> Polynomial:
    cur = _Cursor(tokenize(text))
    p = _PolyParser(cur, ring, env).poly()
    if not cur.at_end():
        cur.fail(f"trailing input {cur.tok.text!r}")
    return p


def parse_polylist(text: str, ring: PolyRing, env: dict | None = None) -> list:
    cur = _Cursor(tokenize(text))
    pp = _PolyParser(cur, ring, env)
    out = [pp.poly()]
    while cur.accept(","):
        out.append(pp.poly())
    if not cur.at_end():
        cur.fail(f"trailing input {cur.tok.text!r}")
    return out


# -- rings -------------------------------------------------------------------------


def _ring_decl(cur: _Cursor) -> PolyRing:
    t = cur.tok
    modulus = None
    if cur.accept("GF"):
        cur.expect("(")
        modulus = int(cur.expect_kind("int").text)
        cur.expect(")")
    elif not (cur.accept("Q") or cur.accept("QQ")):
        cur.fail("ring must start with Q or GF(q)")
    cur.expect("[")
    names = [cur.expect_kind("name").text]
    while cur.accept(","):
        names.append(cur.expect_kind("name").text)
    cur.expect("]")
    order = MonomialOrder("grevlex")
    if cur.tok.kind == "name":
        word = cur.tok.text
        cur.i += 1
        if word == "block":
            cur.expect("(")
            k = int(cur.expect_kind("int").text)
            cur.expect(")")
            order = MonomialOrder("block", k)
        elif word in ("lex", "grevlex"):
            order = MonomialOrder(word)
        else:
            raise ParseError(f"unknown monomial order {word!r}", cur.toks[cur.i - 1].line, cur.toks[cur.i - 1].col)
    try:
        return PolyRing(tuple(names), order, modulus)
    except SympowError as exc:
        raise ParseError(str(exc), t.line, t.col) from None


def parse_ring_decl(text: str) -> PolyRing:
    cur = _Cursor(tokenize(text))
    ring = _ring_decl(cur)
    if not cur.at_end():
        cur.fail(f"trailing input {cur.tok.text!r}")
    return ring


# -- ideal expressions ---------------------------------------------------------------


@dataclass(frozen=True)
class IdealExpr:
    """Tiny AST: op in {name, gens, sum, meet, prod, pow, sym}."""

    op: str
    args: tuple


class _IdealParser(_PolyParser):
    def iexpr(self) -> IdealExpr:
        acc = self.iterm()
        while True:
            if self.cur.accept("+"):
                acc = IdealExpr("sum", (acc, self.iterm()))
            elif self.cur.accept("&"):
                acc = IdealExpr("meet", (acc, self.iterm()))
            else:
                return acc

    def iterm(self) -> IdealExpr:
        acc = self.ifactor()
        while self.cur.accept("*"):
            acc = IdealExpr("prod", (acc, self.ifactor()))
        return acc

    def ifactor(self) -> IdealExpr:
        acc = self.iatom()
        while True:
            if self.cur.accept("^"):
                acc = IdealExpr("pow", (acc, int(self.cur.expect_kind("int").text)))
            elif self.cur.accept("_("):
                n = int(self.cur.expect_kind("int").text)
                self.cur.expect(")")
                acc = IdealExpr("sym", (acc, n))
            else:
                return acc

    def iatom(self) -> IdealExpr:
        cur = self.cur
        t = cur.tok
        if t.kind == "name":
            cur.i += 1
            if t.text not in self.env or isinstance(self.env[t.text], Polynomial):
                raise ParseError(f"unbound ideal name {t.text!r}", t.line, t.col)
            return IdealExpr("name", (t.text,))
        if cur.accept("<"):
            gens = [self.poly()]
            while cur.accept(","):
                gens.append(self.poly())
            cur.expect(">")
            return IdealExpr("gens", tuple(gens))
        if cur.accept("("):
            e = self.iexpr()
            cur.expect(")")
            return e
        cur.fail(f"unexpected {t.text or 'end of input'!r} in ideal expression")


def parse_ideal_expr(text: str, ring: PolyRing, env: dict) -> IdealExpr:
    cur = _Cursor(tokenize(text))
    e = _IdealParser(cur, ring, env).iexpr()
    if not cur.at_end():
        cur.fail(f"trailing input {cur.tok.text!r}")
    return e


# -- scripts --------------------------------------------------------------------------

COMMANDS = {
    "gb", "print", "sum", "product", "power", "intersect", "colon", "saturate",
    "sympow", "contain", "equal", "closure", "multiplier", "testideal-snc",
    "minprimes", "rees", "chart", "kcanonical", "asymptotic", "pipeline", "member",
    "radical-member",
}


@dataclass
class Arg:
    text: str
    line: int
    col: int


@dataclass
class Statement:
    kind: str  # ring | ideal | poly | command
    name: str
    line: int
    col: int
    value: object = None
    args: list = field(default_factory=list)


@dataclass
class Script:
    ring: PolyRing | None
    statements: list
    env: dict  # name -> Polynomial | IdealExpr (binding order preserved)


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.split("\n"))


def _split_statements(text: str):
    """Yield (chunk, line, col) for each ``;``-terminated statement."""
    line, col = 1, 1
    start_line, start_col = 1, 1
    buf = []
    for ch in text:
        if not buf and ch.isspace():
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
            start_line, start_col = line, col
            continue
        if ch == ";":
            yield "".join(buf), start_line, start_col
            buf = []
            col += 1
            start_line, start_col = line, col
            continue
        buf.append(ch)
        if ch == "\n":
            line, col = line + 1, 1
        else:
            col += 1
    if "".join(buf).strip():
        yield "".join(buf), start_line, start_col


def _split_args(text: str, line: int, col: int) -> list:
    """Split on whitespace outside (), <>, []."""
    args, depth, buf = [], 0, []
    a_line, a_col = line, col
    for ch in text:
        if ch in "(<[":
            depth += 1
        elif ch in ")>]":
            depth -= 1
        if ch.isspace() and depth <= 0:
            if buf:
                args.append(Arg("".join(buf), a_line, a_col))
                buf = []
        else:
            if not buf:
                a_line, a_col = line, col
            buf.append(ch)
        if ch == "\n":
            line, col = line + 1, 1
        else:
            col += 1
    if buf:
        args.append(Arg("".join(buf), a_line, a_col))
    return args


def _relocate(exc: ParseError, line: int, col: int) -> ParseError:
    if exc.line <= 1:
        c = col + exc.column - 1
    else:
        c = exc.column
    msg = str(exc).split(": ", 1)[-1]
    return ParseError(msg, line + exc.line - 1, c)


KEYWORDS = {"powers", "symbolic"}


def _check_arg_names(arg: Arg, ring: PolyRing, env: dict) -> None:
    if arg.text in KEYWORDS and arg.text not in ring.variables and arg.text not in env:
        return
    for t in tokenize(arg.text, arg.line, arg.col):
        if t.kind == "name" and t.text not in ring.variables and t.text not in env:
            raise ParseError(f"unknown variable or unbound name {t.text!r}", t.line, t.col)


_HEAD = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")


def parse_script(text: str) -> Script:
    ring = None
    env: dict = {}
    stmts = []
    for chunk, line, col in _split_statements(_strip_comments(text)):
        m = _HEAD.match(chunk)
        if not m:
            raise ParseError(f"expected a statement, found {chunk[:1]!r}", line, col)
        head = m.group()
        rest = chunk[m.end():]
        rest_col = col + m.end()
        if head == "ring":
            if ring is not None:
                raise ParseError("only one ring per script", line, col)
            try:
                ring = parse_ring_decl(rest)
            except ParseError as exc:
                raise _relocate(exc, line, rest_col) from None
            stmts.append(Statement("ring", "ring", line, col, ring))
            continue
        if ring is None:
            raise ParseError("no ring declared", line, col)
        if head in ("ideal", "poly"):
            bm = re.match(r"\s*([A-Za-z][A-Za-z0-9]*)\s*=", rest)
            if not bm:
                raise ParseError(f"expected '{head} NAME = ...'", line, rest_col)
            name = bm.group(1)
            if name in ring.variables:
                raise ParseError(f"name {name!r} shadows a ring variable", line, rest_col)
            body = rest[bm.end():]
            body_col = rest_col + bm.end()
            try:
                if head == "poly":
                    value = parse_polynomial(body, ring, env)
                else:
                    first = tokenize(body)[0]
                    if first.text == "<" or (first.kind == "name" and isinstance(env.get(first.text), IdealExpr)) or (
                        first.text == "(" and _looks_like_iexpr(body, env)
                    ):
                        value = parse_ideal_expr(body, ring, env)
                    else:
                        value = IdealExpr("gens", tuple(parse_polylist(body, ring, env)))
            except ParseError as exc:
                raise _relocate(exc, line, body_col) from None
            env[name] = value
            stmts.append(Statement(head, name, line, col, value))
            continue
        if head not in COMMANDS:
            raise ParseError(f"unknown command {head!r}", line, col)
        args = _split_args(rest, line, rest_col)
        for a in args:
            _check_arg_names(a, ring, env)
        stmts.append(Statement("command", head, line, col, args=args))
    return Script(ring, stmts, env)


def _looks_like_iexpr(body: str, env: dict) -> bool:
    for t in tokenize(body):
        if t.kind == "name" and isinstance(env.get(t.text), IdealExpr):
            return True
        if t.text == "<":
            return True
    return False


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational number, found {text!r}") from None
