"""Typed lambda terms and the kernel operations on them.

Variables are identified by name; the type annotation travels with every
occurrence.  Terms are immutable and freely shared, so derived data (type,
free variables) is cached per node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Mapping, Union

from .types import O, Fun, Type, TVar, arrow_parts, fun, subst_type

if TYPE_CHECKING:
    from .catalog import AbbrevDef

__all__ = [
    "Term",
    "Var",
    "Const",
    "Prim",
    "Abbr",
    "App",
    "Lam",
    "TermTypeError",
    "PRIMITIVES",
    "prim",
    "apply",
    "spine",
    "lams",
    "type_of",
    "substitute",
    "subst_many",
    "subst_hereditary",
    "alpha_equal",
    "alpha_key",
    "beta_normalize",
    "is_beta_normal",
    "instantiate_types",
    "fresh_name",
    "term_size",
]


class TermTypeError(TypeError):
    """Ill-typed term; ``term`` is the offending subterm."""

    def __init__(self, message: str, term: "Term | None" = None):
        super().__init__(message)
        self.term = term


class _Node:
    """Mixin with cached structural data."""

    @cached_property
    def free_vars(self) -> frozenset[str]:
        return _free_vars(self)  # type: ignore[arg-type]

    @cached_property
    def type(self) -> Type:
        return _type_of(self)  # type: ignore[arg-type]

    @cached_property
    def constants(self) -> frozenset[str]:
        """Names of the non-logical constants occurring in the term."""
        return _constants(self)  # type: ignore[arg-type]

    _fields: tuple[str, ...] = ()

    def __hash__(self) -> int:
        # Terms are DAGs after macro expansion; the derived hash would
        # rewalk shared subterms, so cache it per node.
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((type(self).__name__, *(getattr(self, f) for f in self._fields)))
            self.__dict__["_hash"] = h
        return h

    def __str__(self) -> str:
        from .printer import print_term

        return print_term(self)  # type: ignore[arg-type]


@dataclass(frozen=True, eq=True)
class Var(_Node):
    _fields = ("name", "vtype")
    __hash__ = _Node.__hash__

    name: str
    vtype: Type


@dataclass(frozen=True, eq=True)
class Const(_Node):
    _fields = ("name", "ctype")
    __hash__ = _Node.__hash__

    name: str
    ctype: Type


@dataclass(frozen=True, eq=True)
class Prim(_Node):
    """A logical primitive ``D Q A C V`` or a combinator ``S K``."""

    _fields = ("name", "tyargs")
    __hash__ = _Node.__hash__

    name: str
    tyargs: tuple[Type, ...] = ()


@dataclass(frozen=True, eq=True)
class Abbr(_Node):
    """Reference to a catalog abbreviation at a type instance."""

    _fields = ("name", "tyargs")
    __hash__ = _Node.__hash__

    name: str
    tyargs: tuple[Type, ...] = ()
    defn: "AbbrevDef" = field(default=None, compare=False, repr=False)  # type: ignore[assignment]

    @cached_property
    def definition(self) -> "Term":
        """The defining closed term at this instance."""
        return self.defn.instance(self.tyargs)


@dataclass(frozen=True, eq=True)
class App(_Node):
    _fields = ("fn", "arg")
    __hash__ = _Node.__hash__

    fn: "Term"
    arg: "Term"


@dataclass(frozen=True, eq=True)
class Lam(_Node):
    _fields = ("var", "var_type", "body")
    __hash__ = _Node.__hash__

    var: str
    var_type: Type
    body: "Term"


Term = Union[Var, Const, Prim, Abbr, App, Lam]


# -- primitives --------------------------------------------------------------

# name -> (type parameters, type schema)
PRIMITIVES: dict[str, tuple[tuple[str, ...], Type]] = {
    "D": ((), fun(O, O, O)),
    "Q": (("t",), fun(TVar("t"), TVar("t"), O)),
    "A": (("t",), Fun(Fun(TVar("t"), O), O)),
    "C": (("t",), Fun(Fun(TVar("t"), O), TVar("t"))),
    "V": ((), Fun(O, O)),
    "S": (
        ("a", "b", "c"),
        fun(fun(TVar("a"), TVar("b"), TVar("c")), fun(TVar("a"), TVar("b")), TVar("a"), TVar("c")),
    ),
    "K": (("a", "b"), fun(TVar("a"), TVar("b"), TVar("a"))),
}


def prim(name: str, *tyargs: Type) -> Prim:
    params, _ = PRIMITIVES[name]
    if len(tyargs) != len(params):
        raise TermTypeError(f"primitive {name} takes {len(params)} type argument(s)")
    return Prim(name, tuple(tyargs))


def prim_type(p: Prim) -> Type:
    params, schema = PRIMITIVES[p.name]
    return subst_type(schema, dict(zip(params, p.tyargs)))


# -- construction helpers ----------------------------------------------------


def apply(fn: Term, *args: Term) -> Term:
    for a in args:
        fn = App(fn, a)
    return fn


def spine(t: Term) -> tuple[Term, list[Term]]:
    args: list[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def lams(params: Iterable[tuple[str, Type]], body: Term) -> Term:
    params = list(params)
    for name, ty in reversed(params):
        body = Lam(name, ty, body)
    return body


def term_size(t: Term) -> int:
    """Size of the term as a tree (shared subterms counted per occurrence)."""
    memo: dict[int, int] = {}

    def go(u: Term) -> int:
        n = memo.get(id(u))
        if n is None:
            if isinstance(u, App):
                n = 1 + go(u.fn) + go(u.arg)
            elif isinstance(u, Lam):
                n = 1 + go(u.body)
            else:
                n = 1
            memo[id(u)] = n
        return n

    return go(t)


# -- cached structural data --------------------------------------------------


def _free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, App):
        return t.fn.free_vars | t.arg.free_vars
    if isinstance(t, Lam):
        return t.body.free_vars - {t.var}
    return frozenset()


def _constants(t: Term) -> frozenset[str]:
    if isinstance(t, Const):
        return frozenset((t.name,))
    if isinstance(t, App):
        return t.fn.constants | t.arg.constants
    if isinstance(t, Lam):
        return t.body.constants
    if isinstance(t, Abbr):
        return t.definition.constants
    return frozenset()


def _type_of(t: Term) -> Type:
    if isinstance(t, Var):
        return t.vtype
    if isinstance(t, Const):
        return t.ctype
    if isinstance(t, Prim):
        return prim_type(t)
    if isinstance(t, Abbr):
        return subst_type(t.defn.type, dict(zip(t.defn.tparams, t.tyargs)))
    if isinstance(t, Lam):
        return Fun(t.var_type, t.body.type)
    if isinstance(t, App):
        ft = t.fn.type
        if not isinstance(ft, Fun):
            raise TermTypeError(f"applying a non-function of type {ft}", t)
        at = t.arg.type
        if ft.arg != at:
            raise TermTypeError(f"argument of type {at} where {ft.arg} expected", t)
        return ft.res
    raise TypeError(f"not a term: {t!r}")


def type_of(t: Term) -> Type:
    """Type of ``t``; raises :class:`TermTypeError` on ill-typed input."""
    return t.type


# -- renaming and substitution -----------------------------------------------


def fresh_name(base: str, avoid: Iterable[str] | frozenset[str]) -> str:
    avoid = set(avoid)
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


def substitute(t: Term, v: Var | str, s: Term) -> Term:
    """Capture-avoiding substitution of ``s`` for the free variable ``v``."""
    if isinstance(v, Var):
        if s.type != v.vtype:
            raise TermTypeError(f"cannot substitute a term of type {s.type} for {v.name}:{v.vtype}", s)
        name = v.name
    else:
        name = v
        for ty in _free_occurrence_types(t, name):
            if ty != s.type:
                raise TermTypeError(f"cannot substitute a term of type {s.type} for {name}:{ty}", s)
    return _subst(t, {name: s})


def _free_occurrence_types(t: Term, name: str) -> set[Type]:
    out: set[Type] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if name not in u.free_vars:
            continue
        if isinstance(u, Var):
            out.add(u.vtype)
        elif isinstance(u, App):
            stack += [u.fn, u.arg]
        elif isinstance(u, Lam) and u.var != name:
            stack.append(u.body)
    return out


def subst_many(t: Term, sub: Mapping[str, Term]) -> Term:
    return _subst(t, dict(sub)) if sub else t


def _subst(t: Term, sub: dict[str, Term]) -> Term:
    return _Substituter(sub, hereditary=False).run(t)


def subst_hereditary(t: Term, sub: Mapping[str, Term]) -> Term:
    """Substitution that contracts the redexes it creates.

    Where a substituted lambda lands in head position, the application is
    reduced on the spot; redexes already present in ``t`` are left alone.
    """
    return _Substituter(dict(sub), hereditary=True).run(t) if sub else t


class _Substituter:
    """One substitution pass; memoized by node so shared subterms stay shared."""

    def __init__(self, sub: dict[str, Term], hereditary: bool):
        self.sub = sub
        self.hereditary = hereditary
        self.memo: dict[int, Term] = {}
        self.keep: list[Term] = []

    def run(self, t: Term) -> Term:
        if not (t.free_vars & self.sub.keys()):
            return t
        r = self.memo.get(id(t))
        if r is not None:
            return r
        r = self._run(t)
        self.memo[id(t)] = r
        self.keep.append(t)
        return r

    def _run(self, t: Term) -> Term:
        if isinstance(t, Var):
            return self.sub[t.name]
        if isinstance(t, Lam):
            var, body = t.var, t.body
            if var in self.sub:
                inner = {x: s for x, s in self.sub.items() if x != var}
                return Lam(var, t.var_type, _Substituter(inner, self.hereditary).run(body)) if inner else t
            live = [s for x, s in self.sub.items() if x in body.free_vars]
            incoming = frozenset().union(*(s.free_vars for s in live))
            if var in incoming:
                new = fresh_name(var, incoming | body.free_vars | set(self.sub))
                body = _Substituter({var: Var(new, t.var_type)}, False).run(body)
                var = new
            return Lam(var, t.var_type, self.run(body))
        if not self.hereditary:
            return App(self.run(t.fn), self.run(t.arg))  # type: ignore[union-attr]
        head, args = spine(t)
        new_args = [self.run(a) for a in args]
        if isinstance(head, Var) and head.name in self.sub:
            return _happly(self.sub[head.name], new_args)
        return apply(self.run(head), *new_args)


def _happly(fn: Term, args: list[Term]) -> Term:
    while args and isinstance(fn, Lam):
        fn = subst_hereditary(fn.body, {fn.var: args[0]})
        args = args[1:]
    return apply(fn, *args)


# -- alpha equivalence -------------------------------------------------------


def alpha_equal(a: Term, b: Term) -> bool:
    """Identity up to renaming of bound variables."""
    if a is b:
        return True
    return _AlphaEq().eq(a, b, {}, {}, 0)


class _AlphaEq:
    def __init__(self):
        self.memo: dict[tuple, bool] = {}

    def eq(self, a: Term, b: Term, ea: dict[str, int], eb: dict[str, int], depth: int) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, Var):
            ia, ib = ea.get(a.name), eb.get(b.name)  # type: ignore[union-attr]
            if ia is None and ib is None:
                return a.name == b.name and a.vtype == b.vtype  # type: ignore[union-attr]
            return ia == ib
        if not isinstance(a, (App, Lam)):
            return a == b
        if a is b and not (a.free_vars & (ea.keys() | eb.keys())):
            return True
        key = (id(a), id(b), _ctx(a, ea, depth), _ctx(b, eb, depth))
        r = self.memo.get(key)
        if r is None:
            if isinstance(a, App):
                r = self.eq(a.fn, b.fn, ea, eb, depth) and self.eq(a.arg, b.arg, ea, eb, depth)  # type: ignore[union-attr]
            else:
                r = a.var_type == b.var_type and self.eq(  # type: ignore[union-attr]
                    a.body, b.body, {**ea, a.var: depth}, {**eb, b.var: depth}, depth + 1  # type: ignore[union-attr]
                )
            self.memo[key] = r
        return r


def _ctx(t: Term, env: dict[str, int], depth: int) -> tuple:
    """The part of a binder environment visible to ``t``, depth-relative."""
    return tuple(sorted((v, depth - env[v]) for v in t.free_vars if v in env))


def alpha_key(t: Term) -> tuple:
    """Hashable nameless form; equal keys iff alpha-equal terms."""
    return _akey(t, {}, 0)


def _akey(t: Term, env: dict[str, int], depth: int) -> tuple:
    if isinstance(t, Var):
        i = env.get(t.name)
        return ("v", t.name, t.vtype) if i is None else ("b", depth - i)
    if isinstance(t, App):
        return ("@", _akey(t.fn, env, depth), _akey(t.arg, env, depth))
    if isinstance(t, Lam):
        return ("L", t.var_type, _akey(t.body, {**env, t.var: depth}, depth + 1))
    if isinstance(t, Const):
        return ("c", t.name, t.ctype)
    if isinstance(t, Prim):
        return ("p", t.name, t.tyargs)
    return ("a", t.name, t.tyargs)


# -- beta reduction ----------------------------------------------------------


def beta_normalize(t: Term) -> Term:
    """Beta normal form (abbreviations stay opaque)."""
    memo: dict[int, Term] = {}
    keep: list[Term] = []

    def nf(u: Term) -> Term:
        r = memo.get(id(u))
        if r is not None:
            return r
        if isinstance(u, Lam):
            body = nf(u.body)
            r = u if body is u.body else Lam(u.var, u.var_type, body)
        elif isinstance(u, App):
            head, args = spine(u)
            if isinstance(head, Lam):
                r = nf(apply(_subst(head.body, {head.var: args[0]}), *args[1:]))
            else:
                new_args = [nf(a) for a in args]
                r = u if all(x is y for x, y in zip(new_args, args)) else apply(head, *new_args)
        else:
            r = u
        memo[id(u)] = r
        keep.append(u)
        return r

    return nf(t)


def is_beta_normal(t: Term) -> bool:
    if isinstance(t, Lam):
        return is_beta_normal(t.body)
    if isinstance(t, App):
        head, args = spine(t)
        return not isinstance(head, Lam) and all(is_beta_normal(a) for a in args)
    return True


# -- type instantiation ------------------------------------------------------


def instantiate_types(t: Term, sub: Mapping[str, Type]) -> Term:
    """Replace schematic type variables throughout a term."""
    if not sub:
        return t
    if isinstance(t, Var):
        return Var(t.name, subst_type(t.vtype, sub))
    if isinstance(t, Const):
        return Const(t.name, subst_type(t.ctype, sub))
    if isinstance(t, Prim):
        return Prim(t.name, tuple(subst_type(x, sub) for x in t.tyargs))
    if isinstance(t, Abbr):
        return Abbr(t.name, tuple(subst_type(x, sub) for x in t.tyargs), t.defn)
    if isinstance(t, App):
        return App(instantiate_types(t.fn, sub), instantiate_types(t.arg, sub))
    return Lam(t.var, subst_type(t.var_type, sub), instantiate_types(t.body, sub))


def result_type(t: Term) -> Type:
    return arrow_parts(t.type)[1]
