"""Concrete syntax for types and terms.

Grammar (ASCII)::

    type  ::= atype ('>' type)?
    atype ::= 'o' | sort | 'tvar | '(' type ')'
    term  ::= binder | app
    binder::= ('\' | 'λ') var (':' type)? '.' term
            | ('forall' | 'exists' | 'eps') var (':' type)? '.' term
    app   ::= atom+ binder?
    atom  ::= ident ('[' type (',' type)* ']')?
            | '$' prim ('[' type (',' type)* ']')?
            | '(' term ')'

Schematic type instances are inferred by unification; anything left open
defaults to ``o``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import count
from typing import Iterable, Mapping

from .catalog import Catalog, default_catalog
from .terms import PRIMITIVES, Abbr, App, Const, Lam, Prim, Term, Var
from .types import O, Base, Fun, TVar, Type, subst_type

__all__ = ["ParseError", "parse_term", "parse_type", "parse_formula", "BINDERS", "Signature"]

BINDERS = ("forall", "exists", "eps")


class ParseError(ValueError):
    """Lexical, scoping or typing error at a source position."""

    def __init__(self, message: str, pos: int = 0, text: str = ""):
        self.message = message
        self.pos = pos
        self.text = text
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.col = line, col
        super().__init__(f"{message} (line {line}, col {col})")


@dataclass
class Signature:
    """Declared sorts, constants and free variables for parsing."""

    sorts: tuple[str, ...] = ()
    consts: dict[str, Type] = field(default_factory=dict)
    variables: dict[str, Type] = field(default_factory=dict)

    def parse(self, text: str, **kw) -> Term:
        return parse_term(text, sorts=self.sorts, consts=self.consts, variables=self.variables, **kw)


# -- lexer -------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<lam>\\|λ)
  | (?P<prim>\$[A-Za-z]+)
  | (?P<tvar>'[A-Za-z_][A-Za-z0-9_]*)
  | (?P<ident>[A-Za-z0-9_][A-Za-z0-9_']*)
  | (?P<punct>[().:\[\],>])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    value: str
    pos: int


def _lex(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", i, text)
        kind = m.lastgroup
        if kind != "ws":
            v = m.group()
            toks.append(_Tok(v if kind == "punct" else kind, v, i))
        i = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


# -- raw syntax --------------------------------------------------------------


@dataclass
class _RIdent:
    name: str
    tyargs: list | None
    pos: int


@dataclass
class _RPrim:
    name: str
    tyargs: list | None
    pos: int


@dataclass
class _RApp:
    fn: object
    arg: object
    pos: int


@dataclass
class _RLam:
    var: str
    vtype: object  # Type or None
    body: object
    pos: int
    binder: str | None = None


class _Parser:
    def __init__(self, text: str, sorts: Iterable[str], allow_tvars: bool):
        self.text = text
        self.toks = _lex(text)
        self.i = 0
        self.sorts = set(sorts)
        self.allow_tvars = allow_tvars

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, n: int = 1) -> _Tok:
        return self.toks[min(self.i + n, len(self.toks) - 1)]

    def error(self, msg: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.pos, self.text)

    def expect(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            found = self.tok.value or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    # types

    def type_(self) -> Type:
        left = self.atype()
        if self.tok.kind == ">":
            self.i += 1
            return Fun(left, self.type_())
        return left

    def atype(self) -> Type:
        t = self.tok
        if t.kind == "(":
            self.i += 1
            ty = self.type_()
            self.expect(")")
            return ty
        if t.kind == "tvar":
            if not self.allow_tvars:
                raise self.error(f"type variable {t.value} not allowed here")
            self.i += 1
            return TVar(t.value[1:])
        if t.kind == "ident":
            self.i += 1
            if t.value == "o":
                return O
            if t.value not in self.sorts:
                raise self.error(f"unknown sort {t.value!r}", t)
            return Base(t.value)
        raise self.error("expected a type")

    def tyargs(self) -> list | None:
        if self.tok.kind != "[":
            return None
        self.i += 1
        out = [self.type_()]
        while self.tok.kind == ",":
            self.i += 1
            out.append(self.type_())
        self.expect("]")
        return out

    # terms

    def starts_binder(self) -> bool:
        t = self.tok
        if t.kind == "lam":
            return True
        if t.kind == "ident" and t.value in BINDERS and self.peek().kind == "ident":
            return self.peek(2).kind in (":", ".")
        return False

    def term(self):
        if self.starts_binder():
            return self.binder()
        return self.app()

    def binder(self):
        t = self.tok
        self.i += 1
        name = self.expect("ident").value
        vtype = None
        if self.tok.kind == ":":
            self.i += 1
            vtype = self.type_()
        self.expect(".")
        body = self.term()
        return _RLam(name, vtype, body, t.pos, None if t.kind == "lam" else t.value)

    def app(self):
        head = self.atom()
        while True:
            if self.starts_binder():
                head = _RApp(head, self.binder(), head.pos)
                break
            if self.tok.kind in ("ident", "prim", "("):
                head = _RApp(head, self.atom(), head.pos)
            else:
                break
        return head

    def atom(self):
        t = self.tok
        if t.kind == "(":
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        if t.kind == "ident":
            self.i += 1
            return _RIdent(t.value, self.tyargs(), t.pos)
        if t.kind == "prim":
            self.i += 1
            name = t.value[1:]
            if name not in PRIMITIVES:
                raise self.error(f"unknown primitive {t.value!r}", t)
            return _RPrim(name, self.tyargs(), t.pos)
        found = t.value or "end of input"
        raise self.error(f"expected a term, found {found!r}")


# -- elaboration -------------------------------------------------------------


class _Meta:
    """Unification variable for a not-yet-known type."""

    __slots__ = ("id", "ref")

    def __init__(self, id: int):
        self.id = id
        self.ref: object = None

    def __repr__(self) -> str:
        return f"?{self.id}"


def _resolve(t):
    while isinstance(t, _Meta) and t.ref is not None:
        t = t.ref
    return t


def _zonk(t, default: Type = O) -> Type:
    t = _resolve(t)
    if isinstance(t, _Meta):
        t.ref = default
        return default
    if isinstance(t, Fun):
        return Fun(_zonk(t.arg, default), _zonk(t.res, default))
    return t


def _show(t) -> str:
    t = _resolve(t)
    if isinstance(t, _Meta):
        return "?"
    if isinstance(t, Fun):
        a = _show(t.arg)
        if isinstance(_resolve(t.arg), Fun):
            a = f"({a})"
        return f"{a}>{_show(t.res)}"
    return str(t)


def _occurs(m: _Meta, t) -> bool:
    t = _resolve(t)
    if t is m:
        return True
    if isinstance(t, Fun):
        return _occurs(m, t.arg) or _occurs(m, t.res)
    return False


def _unify(a, b) -> bool:
    a, b = _resolve(a), _resolve(b)
    if a is b:
        return True
    if isinstance(a, _Meta):
        if _occurs(a, b):
            return False
        a.ref = b
        return True
    if isinstance(b, _Meta):
        return _unify(b, a)
    if isinstance(a, Fun) and isinstance(b, Fun):
        return _unify(a.arg, b.arg) and _unify(a.res, b.res)
    return a == b


class _Elaborator:
    def __init__(self, text, consts, variables, catalog, implicit_atoms):
        self.text = text
        self.consts = consts
        self.variables = variables
        self.catalog = catalog
        self.implicit_atoms = implicit_atoms
        self.implicit: dict[str, object] = {}
        self.counter = count()

    def meta(self) -> _Meta:
        return _Meta(next(self.counter))

    def error(self, msg: str, pos: int) -> ParseError:
        return ParseError(msg, pos, self.text)

    def schema(self, params, schema, tyargs, name, pos):
        if tyargs is None:
            inst = {p: self.meta() for p in params}
        else:
            if len(tyargs) != len(params):
                raise self.error(f"{name} takes {len(params)} type argument(s), got {len(tyargs)}", pos)
            inst = dict(zip(params, tyargs))
        return inst, subst_type(schema, inst)

    def elab(self, r, scope: dict):
        """Returns (term with possibly-meta types, its type)."""
        if isinstance(r, _RIdent):
            return self.ident(r, scope)
        if isinstance(r, _RPrim):
            params, schema = PRIMITIVES[r.name]
            inst, ty = self.schema(params, schema, r.tyargs, "$" + r.name, r.pos)
            return Prim(r.name, tuple(inst[p] for p in params)), ty
        if isinstance(r, _RApp):
            f, ft = self.elab(r.fn, scope)
            a, at = self.elab(r.arg, scope)
            res = self.meta()
            if not _unify(ft, Fun(at, res)):
                fr = _resolve(ft)
                if isinstance(fr, Fun):
                    msg = f"type mismatch: argument of type {_show(at)} where {_show(fr.arg)} expected"
                else:
                    msg = f"type mismatch: applying a term of type {_show(ft)} as a function"
                raise self.error(msg, _pos_of(r.arg))
            return App(f, a), res
        if isinstance(r, _RLam):
            vt = r.vtype if r.vtype is not None else self.meta()
            body, bt = self.elab(r.body, {**scope, r.var: vt})
            lam = Lam(r.var, vt, body)
            if r.binder is None:
                return lam, Fun(vt, bt)
            if not _unify(bt, O):
                raise self.error(f"type mismatch: {r.binder} body has type {_show(bt)}, expected o", _pos_of(r.body))
            d = self.catalog[r.binder]
            ref = Abbr(d.name, (vt,), d)
            res = vt if r.binder == "eps" else O
            return App(ref, lam), res
        raise TypeError(r)

    def ident(self, r: _RIdent, scope: dict):
        name = r.name
        if name in scope and r.tyargs is None:
            return Var(name, scope[name]), scope[name]
        if name in self.consts and r.tyargs is None:
            ty = self.consts[name]
            return Const(name, ty), ty
        if name in self.variables and r.tyargs is None:
            ty = self.variables[name]
            return Var(name, ty), ty
        d = self.catalog.get(name) if self.catalog is not None else None
        if d is not None:
            inst, ty = self.schema(d.tparams, d.type, r.tyargs, name, r.pos)
            return Abbr(d.name, tuple(inst[p] for p in d.tparams), d), ty
        if r.tyargs is not None:
            raise self.error(f"{name!r} takes no type arguments", r.pos)
        if self.implicit_atoms:
            ty = self.implicit.get(name)
            if ty is None:
                ty = self.implicit[name] = self.meta()
            return Const(name, ty), ty
        raise self.error(f"unbound identifier {name!r}", r.pos)


def _pos_of(r) -> int:
    return r.pos


def _finish(t: Term) -> Term:
    """Replace metas by their solutions (open metas become ``o``)."""
    if isinstance(t, Var):
        return Var(t.name, _zonk(t.vtype))
    if isinstance(t, Const):
        return Const(t.name, _zonk(t.ctype))
    if isinstance(t, Prim):
        return Prim(t.name, tuple(_zonk(x) for x in t.tyargs))
    if isinstance(t, Abbr):
        return Abbr(t.name, tuple(_zonk(x) for x in t.tyargs), t.defn)
    if isinstance(t, App):
        return App(_finish(t.fn), _finish(t.arg))
    return Lam(t.var, _zonk(t.var_type), _finish(t.body))


# -- entry points ------------------------------------------------------------


def parse_type(text: str, sorts: Iterable[str] = (), allow_tvars: bool = False) -> Type:
    p = _Parser(text, sorts, allow_tvars)
    ty = p.type_()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.value!r} after type")
    return ty


def parse_term(
    text: str,
    sorts: Iterable[str] = (),
    consts: Mapping[str, Type] | None = None,
    variables: Mapping[str, Type] | None = None,
    catalog: Catalog | None = None,
    *,
    implicit_atoms: bool = False,
    expected: Type | None = None,
    allow_tvars: bool = False,
) -> Term:
    """Parse and type a term.

    Identifiers resolve, in order, to bound variables, declared constants,
    declared free variables, and catalog abbreviations.  With
    ``implicit_atoms`` any other identifier becomes a constant whose type is
    inferred (default ``o``).
    """
    sorts = tuple(sorts)
    p = _Parser(text, sorts, allow_tvars)
    raw = p.term()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.value!r}")
    el = _Elaborator(
        text,
        dict(consts or {}),
        dict(variables or {}),
        default_catalog() if catalog is None else catalog,
        implicit_atoms,
    )
    t, ty = el.elab(raw, {})
    if expected is not None and not _unify(ty, expected):
        raise ParseError(f"type mismatch: term has type {_show(ty)}, expected {expected}", 0, text)
    return _finish(t)


def parse_formula(text: str, **kw) -> Term:
    """Parse a term of type ``o``."""
    return parse_term(text, expected=O, **kw)
