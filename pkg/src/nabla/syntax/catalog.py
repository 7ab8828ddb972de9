"""The abbreviation catalog.

Every derived notion of the logic is a definitional macro over the
primitives.  Definitions are written in the concrete term syntax, one per
line, as ``name param:type ... := body``; parameters default to type ``o`` and
``'t`` marks a schematic type variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .terms import Abbr, Term, apply, instantiate_types, lams
from .types import O, Type, fun, type_vars

__all__ = ["AbbrevDef", "Catalog", "CATALOG_SOURCE", "default_catalog", "UnknownAbbreviation"]


class UnknownAbbreviation(KeyError):
    pass


@dataclass(eq=False)
class AbbrevDef:
    name: str
    params: tuple[tuple[str, Type], ...]
    body: Term
    tparams: tuple[str, ...]
    source: str = ""
    _instances: dict = field(default_factory=dict, repr=False)

    @cached_property
    def term(self) -> Term:
        """The definition as a closed lambda term (schematic in ``tparams``)."""
        return lams(self.params, self.body)

    @cached_property
    def type(self) -> Type:
        return fun(*(ty for _, ty in self.params), self.body.type)

    @property
    def arity(self) -> int:
        return len(self.params)

    def instance(self, tyargs: Sequence[Type] = ()) -> Term:
        tyargs = tuple(tyargs)
        if len(tyargs) != len(self.tparams):
            raise TypeError(f"{self.name} takes {len(self.tparams)} type argument(s), got {len(tyargs)}")
        t = self._instances.get(tyargs)
        if t is None:
            t = instantiate_types(self.term, dict(zip(self.tparams, tyargs)))
            self._instances[tyargs] = t
        return t

    def ref(self, *tyargs: Type) -> Abbr:
        return Abbr(self.name, tuple(tyargs), self)

    def __call__(self, *args: Term, tyargs: Sequence[Type] = ()) -> Term:
        return apply(self.ref(*tyargs), *args)


_DEF_RE = re.compile(r"^\s*(?P<name>[A-Za-z0-9_][A-Za-z0-9_']*)(?P<params>[^=]*?)\s*:=\s*(?P<body>.+?)\s*$")
_PARAM_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_']*)(?::(\S+))?")


class Catalog:
    """An ordered, extensible set of abbreviation definitions."""

    def __init__(self, parent: "Catalog | None" = None):
        self.parent = parent
        self._own: dict[str, AbbrevDef] = {}

    # -- lookup --

    def get(self, name: str) -> AbbrevDef | None:
        d = self._own.get(name)
        if d is None and self.parent is not None:
            return self.parent.get(name)
        return d

    def __getitem__(self, name: str) -> AbbrevDef:
        d = self.get(name)
        if d is None:
            raise UnknownAbbreviation(name)
        return d

    def __contains__(self, name: object) -> bool:
        return isinstance(name, str) and self.get(name) is not None

    def __iter__(self) -> Iterator[AbbrevDef]:
        seen: set[str] = set()
        for d in self._chain():
            if d.name not in seen:
                seen.add(d.name)
                yield d

    def _chain(self) -> Iterator[AbbrevDef]:
        if self.parent is not None:
            yield from self.parent._chain()
        yield from self._own.values()

    def names(self) -> list[str]:
        return [d.name for d in self]

    def __len__(self) -> int:
        return len(self.names())

    # -- definition --

    def define(
        self,
        line: str,
        *,
        consts: Mapping[str, Type] | None = None,
        sorts: Iterable[str] = (),
    ) -> AbbrevDef:
        from .parser import parse_term, parse_type

        m = _DEF_RE.match(line)
        if m is None:
            raise ValueError(f"malformed definition: {line!r}")
        name = m.group("name")
        sorts = tuple(sorts)
        params: list[tuple[str, Type]] = []
        for pm in _PARAM_RE.finditer(m.group("params")):
            ptype = parse_type(pm.group(2), sorts=sorts, allow_tvars=True) if pm.group(2) else O
            params.append((pm.group(1), ptype))
        body = parse_term(
            m.group("body"),
            sorts=sorts,
            consts=consts,
            variables=dict(params),
            catalog=self,
            allow_tvars=True,
        )
        tparams: list[str] = []
        for _, ty in params:
            tparams += [v for v in type_vars(ty) if v not in tparams]
        for v in _term_tvars(body):
            if v not in tparams:
                tparams.append(v)
        d = AbbrevDef(name, tuple(params), body, tuple(tparams), line.strip())
        self._own[name] = d
        return d

    def define_all(self, source: str, **kw) -> list[AbbrevDef]:
        out = []
        for line in source.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(self.define(line, **kw))
        return out

    def extend(self, source: str, **kw) -> "Catalog":
        """A child catalog with additional definitions."""
        child = Catalog(self)
        child.define_all(source, **kw)
        return child

    def ref(self, name: str, *tyargs: Type) -> Abbr:
        return self[name].ref(*tyargs)


def _term_tvars(t: Term) -> list[str]:
    from .terms import Abbr as A, App, Const, Lam, Prim, Var

    out: list[str] = []

    def add(ty: Type) -> None:
        for v in type_vars(ty):
            if v not in out:
                out.append(v)

    def walk(u: Term) -> None:
        if isinstance(u, Var):
            add(u.vtype)
        elif isinstance(u, Const):
            add(u.ctype)
        elif isinstance(u, (Prim, A)):
            for ty in u.tyargs:
                add(ty)
        elif isinstance(u, App):
            walk(u.fn)
            walk(u.arg)
        elif isinstance(u, Lam):
            add(u.var_type)
            walk(u.body)

    walk(t)
    return out


# Order matters twice: definitions may only use earlier names, and when two
# entries expand to the same pattern the earlier name is preferred by the
# folding printer.
CATALOG_SOURCE = r"""
True := $Q[o>o] (\x:o. x) (\x:o. x)
nand a b := $D a b
not a := nand a a
and a b := not (nand a b)
False := not True
or a b := not (and (not a) (not b))
Eq a:'t b:'t := $Q['t] a b
sing a:'t := $Q['t] a
forall p:'t>o := $A['t] p
exists p:'t>o := not (forall (\x:'t. not (p x)))
eps p:'t>o := $C['t] p
sel p:'t>o := $C['t] p
next a := $V a
Simp a b := Eq a (and a b)
box a := Eq a True
bnot a := not (box a)
limp a b := or (bnot a) b
liff a b := and (limp a b) (limp b a)
qimp a b := or (not a) b
qiff a b := and (qimp a b) (qimp b a)
det a := box (or a (not a))
ind a := not (det a)
iff a b := and (limp (Eq a b) True) (and (limp a b) (and (limp b a) (and (limp (not a) (not b)) (and (limp (not b) (not a)) (limp (and (not (Eq a b)) (and (ind a) (ind b))) False)))))
imp a b := iff a (and a b)
excl a b := imp a (not b)
bexcl a b := and (excl a b) (excl b a)
dag := next False
ddag := next dag
inf := True
0 := False
1 := next 0
2 := next 1
3 := next 2
N := \x:o. not (Eq x inf)
Univ := \x:'t. True
Empty := \x:'t. False
hat a := and a (not a)
check a := or a (not a)
EqAll p:'a>'b q:'a>'b := forall (\x:'a. Eq (p x) (q x))
I := $S['t,'t>'t,'t] $K['t,'t>'t] $K['t,'t]
"""

_DEFAULT: Catalog | None = None


def default_catalog() -> Catalog:
    global _DEFAULT
    if _DEFAULT is None:
        cat = Catalog()
        cat.define_all(CATALOG_SOURCE)
        _DEFAULT = cat
    return _DEFAULT
