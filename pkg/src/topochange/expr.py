"""A small language for manifolds built from catalog pieces.

Grammar (whitespace is insignificant, ``x`` binds tighter than ``#``)::

    expr := term ('#' term)*
    term := atom ('x' atom)*
    atom := NAME INT? | '(' expr ')'

``x`` may also be written ``*`` or ``×``. Both operators are associative, so
nested sums inside sums (and products inside products) are flattened.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import DimensionMismatch, ManifoldSyntaxError, UnknownAtom, UnknownName
from .manifolds import Catalog, ManifoldDescriptor, connected_sum, product

PARAMETRIC = ("S", "T", "CP", "HP", "RP")
FIXED = ("K3", "point")


@dataclass(frozen=True)
class Atom:
    name: str
    param: Optional[int] = None

    def __str__(self):
        return self.name if self.param is None else f"{self.name}{self.param}"


@dataclass(frozen=True)
class Product:
    factors: tuple[Node, ...]

    def __str__(self):
        return " x ".join(f"({f})" if isinstance(f, Sum) else str(f) for f in self.factors)


@dataclass(frozen=True)
class Sum:
    terms: tuple[Node, ...]

    def __str__(self):
        return " # ".join(str(t) for t in self.terms)


Node = Union[Atom, Product, Sum]


def to_text(node: Node) -> str:
    """Canonical printer; ``parse(to_text(e)) == e`` for every parsed ``e``."""
    return str(node)


@dataclass
class _Token:
    kind: str  # ATOM, HASH, TIMES, LPAREN, RPAREN, END
    pos: int
    value: object = None


class _Lexer:
    def __init__(self, text: str, catalog: Catalog):
        self.text = text
        self.catalog = catalog
        self.fixed = sorted(set(FIXED) | set(catalog.registered), key=len, reverse=True)

    def tokens(self) -> list[_Token]:
        text, i, out = self.text, 0, []
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch == "#":
                out.append(_Token("HASH", i))
                i += 1
            elif ch == "(":
                out.append(_Token("LPAREN", i))
                i += 1
            elif ch == ")":
                out.append(_Token("RPAREN", i))
                i += 1
            elif ch in "*×" or (ch == "x" and (_after_operand(out) or not _name_char(text, i + 1))):
                out.append(_Token("TIMES", i))
                i += 1
            elif ch.isalpha() or ch == "_":
                tok, i = self._atom(i)
                out.append(tok)
            elif ch.isdigit():
                raise ManifoldSyntaxError("number without a manifold name", i, text)
            else:
                raise ManifoldSyntaxError(f"unexpected character {ch!r}", i, text)
        out.append(_Token("END", len(text)))
        return out

    def _atom(self, i):
        text = self.text
        for name in self.fixed:
            end = i + len(name)
            if text.startswith(name, i) and _boundary(text, end):
                return _Token("ATOM", i, Atom(name)), end
        j = i
        while j < len(text) and (text[j].isalpha() or text[j] == "_"):
            j += 1
        name = text[i:j]
        k = j
        while k < len(text) and text[k].isdigit():
            k += 1
        if k == j:
            if name in PARAMETRIC:
                raise ManifoldSyntaxError(f"{name} needs an integer parameter", j, text)
            return _Token("ATOM", i, Atom(name)), j
        return _Token("ATOM", i, Atom(name, int(text[j:k]))), k


def _name_char(text, i):
    return i < len(text) and (text[i].isalnum() or text[i] == "_")


def _after_operand(tokens):
    return bool(tokens) and tokens[-1].kind in ("ATOM", "RPAREN")


def _boundary(text, end):
    # "K3xS2", "pointxS3": an 'x' right after a fixed name is the product operator
    return not _name_char(text, end) or text[end] == "x"


class _Parser:
    def __init__(self, text: str, tokens: list[_Token]):
        self.text = text
        self.toks = tokens
        self.i = 0

    @property
    def cur(self) -> _Token:
        return self.toks[self.i]

    def error(self, msg, pos):
        return ManifoldSyntaxError(msg, pos, self.text)

    def parse(self) -> Node:
        node = self.expr()
        if self.cur.kind != "END":
            tok = self.cur
            if tok.kind == "RPAREN":
                raise self.error("unmatched ')'", tok.pos)
            raise self.error(f"unexpected {_DESCR[tok.kind]}", tok.pos)
        return node

    def expr(self) -> Node:
        terms = [self.term()]
        while self.cur.kind == "HASH":
            self.i += 1
            terms.append(self.term())
        return _flatten(Sum, terms)

    def term(self) -> Node:
        factors = [self.atom()]
        while self.cur.kind == "TIMES":
            self.i += 1
            factors.append(self.atom())
        return _flatten(Product, factors)

    def atom(self) -> Node:
        tok = self.cur
        if tok.kind == "ATOM":
            self.i += 1
            return tok.value
        if tok.kind == "LPAREN":
            self.i += 1
            inner = self.expr()
            if self.cur.kind != "RPAREN":
                if self.cur.kind == "END":
                    raise self.error("unclosed '('", tok.pos)
                raise self.error(f"expected ')', found {_DESCR[self.cur.kind]}", self.cur.pos)
            self.i += 1
            return inner
        raise self.error(f"expected a manifold, found {_DESCR[tok.kind]}", tok.pos)


_DESCR = {
    "ATOM": "a manifold name",
    "HASH": "'#'",
    "TIMES": "'x'",
    "LPAREN": "'('",
    "RPAREN": "')'",
    "END": "end of input",
}


def _flatten(cls, items):
    if len(items) == 1:
        return items[0]
    out = []
    for it in items:
        out.extend(it.terms if cls is Sum and isinstance(it, Sum) else
                   it.factors if cls is Product and isinstance(it, Product) else (it,))
    return cls(tuple(out))


def parse(text: str, catalog: Optional[Catalog] = None) -> Node:
    """Parse a manifold expression.

    >>> parse("HP1 x S2 # T6")
    Sum(terms=(Product(factors=(Atom(name='HP', param=1), Atom(name='S', param=2))), Atom(name='T', param=6)))
    """
    catalog = catalog or Catalog()
    return _Parser(text, _Lexer(text, catalog).tokens()).parse()


def elaborate(node: Node, catalog: Optional[Catalog] = None) -> ManifoldDescriptor:
    """Evaluate an expression to a descriptor named by its canonical text."""
    catalog = catalog or Catalog()
    if isinstance(node, Atom):
        try:
            params = () if node.param is None else (node.param,)
            return catalog(node.name, *params).renamed(str(node))
        except UnknownName as exc:
            raise UnknownAtom(f"{node}: {exc}") from None
    parts = [elaborate(child, catalog) for child in (node.terms if isinstance(node, Sum) else node.factors)]
    out = parts[0]
    for nxt in parts[1:]:
        if isinstance(node, Sum):
            if nxt.dim != out.dim:
                raise DimensionMismatch(f"'#' operands differ in dimension: {out.name} ({out.dim}) and {nxt.name} ({nxt.dim})")
            out = connected_sum(out, nxt)
        else:
            out = product(out, nxt)
    return out.renamed(to_text(node))


def manifold(text: str, catalog: Optional[Catalog] = None) -> ManifoldDescriptor:
    """Parse and elaborate in one step: ``manifold("S2 x S2 # K3")``."""
    catalog = catalog or Catalog()
    return elaborate(parse(text, catalog), catalog)
