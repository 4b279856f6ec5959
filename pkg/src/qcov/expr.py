"""Surface syntax: tokenizer, recursive-descent parser, and pretty-printer.

Grammar (whitespace-insensitive, ASCII):

    expr   := '-'? term (('+' | '-') term)*
    term   := factor ('*'? factor)*
    factor := atom ('^' '-'? integer)?
    atom   := ('al' | 'bt' | 'gt' | 't' | 'z' | 'q' | rational
               | '(' expr ')' | 'tensor(' expr ',' expr ')') star*
    star   := "'"

The postfix star binds tighter than '^', so al'^2 is (al')^2.  ``bt`` is
sugar for gt^n at covering parameter n; ``q`` is sugar for t^n; ``gt`` is
rejected in the base algebra (n = 1).  Rationals are written p/q.

Printing is canonical: terms sorted with unstarred alpha powers first, each
term as an optional coefficient (parenthesised when it has several
monomials) followed by the word; ``parse(print(x)) == x`` exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .nfalgebra import Element, Word
from .qtensor import TensorElement, tensor_of
from .scalars import Scalar, _monomial_str


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# -- tokens ---------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[a-z]+)|(?P<sym>[-+*^(),'/]))")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if not m or m.end() == i:
            stripped = text[i:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", i)
        if m.group("int"):
            out.append(Token("int", m.group("int"), m.start("int")))
        elif m.group("name"):
            out.append(Token("name", m.group("name"), m.start("name")))
        else:
            out.append(Token("sym", m.group("sym"), m.start("sym")))
        i = m.end()
    out.append(Token("end", "", len(text)))
    return out


# -- abstract syntax --------------------------------------------------------------

@dataclass(frozen=True)
class Rat:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class StarNode:
    inner: object


@dataclass(frozen=True)
class PowNode:
    base: object
    exp: int


@dataclass(frozen=True)
class ProdNode:
    factors: tuple


@dataclass(frozen=True)
class SumNode:
    parts: tuple  # of (sign, node)


@dataclass(frozen=True)
class TensNode:
    left: object
    right: object


_ATOM_NAMES = {"al", "bt", "gt", "t", "z", "q"}


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def cur(self) -> Token:
        return self.tokens[self.i]

    def eat(self, kind: str, value: str | None = None) -> Token:
        tok = self.cur
        if tok.kind != kind or (value is not None and tok.value != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok.value or 'end of input'!r}", tok.pos)
        self.i += 1
        return tok

    def at_sym(self, value: str) -> bool:
        return self.cur.kind == "sym" and self.cur.value == value

    def parse_expr(self):
        parts = []
        sign = 1
        if self.at_sym("-"):
            self.eat("sym", "-")
            sign = -1
        parts.append((sign, self.parse_term()))
        while self.at_sym("+") or self.at_sym("-"):
            sign = 1 if self.cur.value == "+" else -1
            self.i += 1
            parts.append((sign, self.parse_term()))
        return parts[0][1] if len(parts) == 1 and parts[0][0] == 1 else SumNode(tuple(parts))

    def parse_term(self):
        factors = [self.parse_factor()]
        while True:
            if self.at_sym("*"):
                self.eat("sym", "*")
                factors.append(self.parse_factor())
            elif self.cur.kind in ("int", "name") or self.at_sym("("):
                factors.append(self.parse_factor())
            else:
                break
        return factors[0] if len(factors) == 1 else ProdNode(tuple(factors))

    def parse_factor(self):
        node = self.parse_atom()
        if self.at_sym("^"):
            self.eat("sym", "^")
            neg = False
            if self.at_sym("-"):
                self.eat("sym", "-")
                neg = True
            tok = self.eat("int")
            exp = int(tok.value)
            node = PowNode(node, -exp if neg else exp)
        return node

    def parse_atom(self):
        tok = self.cur
        if tok.kind == "int":
            self.i += 1
            num = int(tok.value)
            if self.at_sym("/"):
                self.eat("sym", "/")
                den = int(self.eat("int").value)
                if den == 0:
                    raise ParseError("zero denominator", tok.pos)
                node = Rat(Fraction(num, den))
            else:
                node = Rat(Fraction(num))
        elif tok.kind == "name" and tok.value == "tensor":
            self.i += 1
            self.eat("sym", "(")
            left = self.parse_expr()
            self.eat("sym", ",")
            right = self.parse_expr()
            self.eat("sym", ")")
            node = TensNode(left, right)
        elif tok.kind == "name":
            if tok.value not in _ATOM_NAMES:
                raise ParseError(f"unknown symbol {tok.value!r}", tok.pos)
            self.i += 1
            node = Sym(tok.value)
        elif self.at_sym("("):
            self.eat("sym", "(")
            node = self.parse_expr()
            self.eat("sym", ")")
        else:
            raise ParseError(f"expected an atom, found {tok.value or 'end of input'!r}", tok.pos)
        while self.at_sym("'"):
            self.eat("sym", "'")
            node = StarNode(node)
        return node


def parse(text: str):
    """Parse surface syntax into an abstract expression."""
    parser = _Parser(tokenize(text))
    node = parser.parse_expr()
    parser.eat("end")
    return node


# -- elaboration ------------------------------------------------------------------

def _scalar_like(x) -> Scalar | None:
    """The coefficient when x is a pure-scalar element, else None."""
    if isinstance(x, Element):
        if x.is_zero:
            return Scalar.zero(x.order)
        if set(x.terms) == {Word(0, 0, 0)}:
            return x.terms[Word(0, 0, 0)]
    return None


def elaborate(node, n: int, order: int | None = None):
    """Turn an expression into an Element or TensorElement at parameter n."""
    if n < 1:
        raise DomainError("covering parameter must be positive")
    order = order or n

    def ev(nd):
        if isinstance(nd, Rat):
            return Element.one(n, order).scale(Scalar.rational(order, nd.value))
        if isinstance(nd, Sym):
            if nd.name == "al":
                return Element.alpha(n, order)
            if nd.name == "bt":
                return Element.beta(n, order)
            if nd.name == "gt":
                if n == 1:
                    raise DomainError("gt is not defined in the base algebra (n=1); use bt")
                return Element.gamma(n, order)
            if nd.name == "t":
                return Element.one(n, order).scale(Scalar.t(order))
            if nd.name == "z":
                return Element.one(n, order).scale(Scalar.zeta(order))
            if nd.name == "q":
                return Element.one(n, order).scale(Scalar.q(order))
            raise DomainError(f"unhandled symbol {nd.name}")
        if isinstance(nd, StarNode):
            return ev(nd.inner).star()
        if isinstance(nd, PowNode):
            base = ev(nd.base)
            if nd.exp >= 0:
                return base ** nd.exp
            c = _scalar_like(base)
            if c is None:
                raise DomainError("negative powers are defined for scalar units only")
            return Element.one(n, order).scale(c.unit_power(nd.exp))
        if isinstance(nd, ProdNode):
            out = None
            for f in nd.factors:
                v = ev(f)
                out = v if out is None else _mul_values(out, v)
            return out
        if isinstance(nd, SumNode):
            out = None
            for sign, part in nd.parts:
                v = ev(part)
                if sign < 0:
                    v = -v
                out = v if out is None else _add_values(out, v)
            return out
        if isinstance(nd, TensNode):
            left = ev(nd.left)
            right = ev(nd.right)
            if not isinstance(left, Element) or not isinstance(right, Element):
                raise DomainError("tensor legs must be plain elements")
            return tensor_of(left, right)
        raise DomainError(f"cannot elaborate {type(nd).__name__}")

    return ev(node)


def _mul_values(a, b):
    if isinstance(a, Element) and isinstance(b, Element):
        return a * b
    if isinstance(a, TensorElement) and isinstance(b, TensorElement):
        return a * b
    # scalar element times tensor (either side)
    if isinstance(a, Element) and isinstance(b, TensorElement):
        c = _scalar_like(a)
        if c is not None:
            return b.scale(c.promote(b.order))
    if isinstance(a, TensorElement) and isinstance(b, Element):
        c = _scalar_like(b)
        if c is not None:
            return a.scale(c.promote(a.order))
    raise DomainError("cannot multiply a tensor by a non-scalar element")


def _add_values(a, b):
    if type(a) is not type(b):
        raise DomainError("cannot add a tensor to a plain element")
    return a + b


def parse_element(text: str, n: int, order: int | None = None):
    return elaborate(parse(text), n, order)


# -- printing --------------------------------------------------------------------

_PRETTY = {"al": "α", "bt": "β", "gt": "γ", "z": "ζ"}


def render_word(w: Word, n: int, pretty: bool = False) -> str:
    gname = "bt" if n == 1 else "gt"
    parts = []

    def emit(sym, star, k):
        if pretty:
            sym = _PRETTY.get(sym, sym)
            star_txt = "*" if star else ""
        else:
            star_txt = "'" if star else ""
        parts.append(sym + star_txt + (f"^{k}" if k > 1 else ""))

    if w.apow > 0:
        emit("al", False, w.apow)
    elif w.apow < 0:
        emit("al", True, -w.apow)
    if w.g:
        emit(gname, False, w.g)
    if w.gs:
        emit(gname, True, w.gs)
    return " ".join(parts)


def _coeff_prefix(c: Scalar, has_word: bool) -> tuple[str, str]:
    """Return (sign, body-prefix); body-prefix may be empty for unit 1."""
    monos = c.monomials()
    if len(monos) == 1:
        (zexp, texp), r = monos[0]
        sign = "-" if r < 0 else "+"
        body = _monomial_str(abs(r), zexp, texp)
        if body == "1" and has_word:
            body = ""
        return sign, body
    return "+", f"({c})"


def _render_terms(items, word_fn) -> str:
    if not items:
        return "0"
    chunks = []
    for key, c in items:
        word = word_fn(key)
        sign, prefix = _coeff_prefix(c, bool(word))
        body = " ".join(x for x in (prefix, word) if x) or "1"
        if not chunks:
            chunks.append(body if sign == "+" else f"-{body}")
        else:
            chunks.append(("+ " if sign == "+" else "- ") + body)
    return " ".join(chunks)


def render_element(x: Element, pretty: bool = False) -> str:
    return _render_terms(x.sorted_terms(), lambda w: render_word(w, x.n, pretty))


def render_tensor(x: TensorElement, pretty: bool = False) -> str:
    sep = " ⊗ " if pretty else " (x) "

    def word_fn(pair):
        l, r = pair
        ls = render_word(l, x.nleft, pretty) or "1"
        rs = render_word(r, x.nright, pretty) or "1"
        return ls + sep + rs

    return _render_terms(x.sorted_terms(), word_fn)
