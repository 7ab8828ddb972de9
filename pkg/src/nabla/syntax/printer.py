"""Printing terms back to the concrete syntax.

Without folding, the output re-parses to an alpha-equal term.  With folding,
subterms that are instances of a catalog pattern print by name; re-parsing
then gives a term with the same expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .catalog import AbbrevDef, Catalog, default_catalog
from .terms import PRIMITIVES, Abbr, App, Const, Lam, Prim, Term, Var, apply, spine, term_size
from .types import Type, arrow_parts, match_type, subst_type, type_vars

__all__ = ["print_term", "print_type", "fold_abbreviations"]

_UNICODE_BINDERS = {"forall": "∀", "exists": "∃", "eps": "ε"}
_BINDERS = ("forall", "exists", "eps")


def print_type(t: Type) -> str:
    return str(t)


def print_term(t: Term, fold: bool = False, unicode: bool = False, catalog: Catalog | None = None) -> str:
    if fold:
        t = fold_abbreviations(t, catalog)
    return _Printer(unicode).term(t)


# -- plain printing ----------------------------------------------------------


def _schema_of(head: Prim | Abbr) -> tuple[tuple[str, ...], Type]:
    if isinstance(head, Prim):
        return PRIMITIVES[head.name]
    return head.defn.tparams, head.defn.type


@lru_cache(maxsize=None)
def _needed_args(params: tuple[str, ...], schema: Type) -> int:
    """How many leading arguments pin down every type parameter."""
    if not params:
        return 0
    args, _ = arrow_parts(schema)
    seen: set[str] = set()
    for n, a in enumerate(args, 1):
        seen.update(type_vars(a))
        if seen >= set(params):
            return n
    return len(args) + 1


class _Printer:
    def __init__(self, unicode: bool):
        self.unicode = unicode

    def term(self, t: Term) -> str:
        if isinstance(t, Lam):
            return self.lam(t)
        if isinstance(t, App):
            head, args = spine(t)
            if self.is_binder_app(head, args):
                return self.binder(head, args[0])
            parts = [self.head(head, len(args))]
            for i, a in enumerate(args):
                parts.append(self.arg(a))
            return " ".join(parts)
        return self.head(t, 0)

    def lam(self, t: Lam) -> str:
        lam = "λ" if self.unicode else "\\"
        return f"{lam}{t.var}:{t.var_type}. {self.term(t.body)}"

    @staticmethod
    def is_binder_app(head: Term, args: list[Term]) -> bool:
        return isinstance(head, Abbr) and head.name in _BINDERS and len(args) == 1 and isinstance(args[0], Lam)

    def binder(self, head: Abbr, lam: Lam) -> str:
        kw = _UNICODE_BINDERS[head.name] if self.unicode else head.name
        sep = "" if self.unicode else " "
        return f"{kw}{sep}{lam.var}:{lam.var_type}. {self.term(lam.body)}"

    def head(self, t: Term, nargs: int) -> str:
        if isinstance(t, (Var, Const)):
            return t.name
        if isinstance(t, (Prim, Abbr)):
            name = ("$" + t.name) if isinstance(t, Prim) else t.name
            params, schema = _schema_of(t)
            if params and nargs < _needed_args(tuple(params), schema):
                name += "[" + ",".join(str(x) for x in t.tyargs) + "]"
            return name
        return f"({self.term(t)})"

    def arg(self, t: Term) -> str:
        if isinstance(t, (App, Lam)):
            return f"({self.term(t)})"
        return self.head(t, 0)


# -- folding -----------------------------------------------------------------


@dataclass(frozen=True)
class _Pattern:
    defn: AbbrevDef
    holes: dict
    body: Term
    size: int
    linear: bool
    order: int


def _patterns(catalog: Catalog) -> list[_Pattern]:
    cached = getattr(catalog, "_fold_patterns", None)
    if cached is not None:
        return cached
    from .expand import expand_all

    pats: list[_Pattern] = []
    for order, d in enumerate(catalog):
        body = expand_all(d.body)
        holes = dict(d.params)
        counts = _occurrences(body, set(holes))
        linear = all(c <= 1 for c in counts.values())
        pats.append(_Pattern(d, holes, body, term_size(body), linear, order))
    pats.sort(key=lambda p: (-p.size, p.linear, p.order))
    catalog._fold_patterns = pats  # type: ignore[attr-defined]
    return pats


def _occurrences(t: Term, names: set[str]) -> dict[str, int]:
    out: dict[str, int] = {}

    def walk(u: Term, bound: frozenset) -> None:
        if isinstance(u, Var):
            if u.name in names and u.name not in bound:
                out[u.name] = out.get(u.name, 0) + 1
        elif isinstance(u, App):
            walk(u.fn, bound)
            walk(u.arg, bound)
        elif isinstance(u, Lam):
            walk(u.body, bound | {u.var})

    walk(t, frozenset())
    return out


class _NoMatch(Exception):
    pass


class _Matcher:
    def __init__(self, pat: _Pattern):
        self.pat = pat
        self.tsub: dict[str, Type] = {}
        self.sub: dict[str, Term] = {}
        self.done: set[tuple] = set()

    def ty(self, p: Type, t: Type) -> None:
        if not match_type(p, t, self.tsub):
            raise _NoMatch

    def run(self, p: Term, t: Term, pb: dict, tb: dict) -> None:
        """``pb``/``tb`` map binder names to their depth on each side."""
        holes = self.pat.holes
        # hole, possibly applied to pattern-bound variables
        ph, pargs = spine(p)
        if isinstance(ph, Var) and ph.name in holes and ph.name not in pb:
            if all(isinstance(a, Var) and a.name in pb for a in pargs):
                self.hole(ph, pargs, t, pb, tb)
                return
        if isinstance(p, Var):
            if not isinstance(t, Var):
                raise _NoMatch
            ip, it = pb.get(p.name), tb.get(t.name)
            if ip is None or ip != it:
                raise _NoMatch
            return
        if isinstance(p, Lam):
            if not isinstance(t, Lam):
                raise _NoMatch
            self.ty(p.var_type, t.var_type)
            d = len(pb)
            self.run(p.body, t.body, {**pb, p.var: d}, {**tb, t.var: d})
            return
        if isinstance(p, App):
            if not isinstance(t, App):
                raise _NoMatch
            # shared subterms: a pair matched once in the same binder context
            # needs no second visit
            key = (id(p), id(t), _ctx(p, pb), _ctx(t, tb))
            if key in self.done:
                return
            self.run(p.fn, t.fn, pb, tb)
            self.run(p.arg, t.arg, pb, tb)
            self.done.add(key)
            return
        if type(p) is not type(t):
            raise _NoMatch
        if isinstance(p, Const):
            if p.name != t.name:  # type: ignore[union-attr]
                raise _NoMatch
            self.ty(p.ctype, t.ctype)  # type: ignore[union-attr]
            return
        if isinstance(p, (Prim, Abbr)):
            if p.name != t.name or len(p.tyargs) != len(t.tyargs):  # type: ignore[union-attr]
                raise _NoMatch
            for x, y in zip(p.tyargs, t.tyargs):  # type: ignore[union-attr]
                self.ty(x, y)
            return
        raise _NoMatch

    def hole(self, ph: Var, pargs: list, t: Term, pb: dict, tb: dict) -> None:
        # term-side names of the pattern-bound arguments
        inv = {d: name for name, d in tb.items()}
        names = []
        for a in pargs:
            nm = inv.get(pb[a.name])
            if nm is None or nm in names:
                raise _NoMatch
            names.append(nm)
        bad = {n for n in tb if n not in names}
        if t.free_vars & bad:
            raise _NoMatch
        # innermost binder wins on shadowing; make sure names resolve right
        for nm in names:
            if tb[nm] != pb[pargs[names.index(nm)].name]:
                raise _NoMatch
        types = [self.pat_type(a) for a in pargs]
        value = t
        for nm, ty in reversed(list(zip(names, types))):
            value = Lam(nm, ty, value)
        try:
            vt = value.type
        except TypeError:
            raise _NoMatch
        self.ty(ph.vtype, vt)
        prev = self.sub.get(ph.name)
        if prev is None:
            self.sub[ph.name] = value
        else:
            from .terms import alpha_equal

            if not alpha_equal(prev, value):
                raise _NoMatch

    def pat_type(self, v: Var) -> Type:
        return subst_type(v.vtype, self.tsub)


def _ctx(t: Term, env: dict) -> tuple:
    return tuple(sorted((v, env[v]) for v in t.free_vars if v in env))


def _try(pat: _Pattern, t: Term) -> Term | None:
    m = _Matcher(pat)
    try:
        m.run(pat.body, t, {}, {})
    except _NoMatch:
        return None
    d = pat.defn
    if any(tp not in m.tsub for tp in d.tparams):
        return None
    if any(name not in m.sub for name, _ in d.params):
        return None
    tyargs = tuple(m.tsub[tp] for tp in d.tparams)
    return apply(Abbr(d.name, tyargs, d), *(m.sub[name] for name, _ in d.params))


def _rough_key(t: Term):
    head, args = spine(t)
    if isinstance(head, (Prim, Abbr, Const)):
        return (type(head).__name__, head.name, len(args))
    if isinstance(head, Lam) and not args:
        return ("Lam",)
    return None


def fold_abbreviations(t: Term, catalog: Catalog | None = None) -> Term:
    """Rewrite catalog pattern instances into abbreviation applications.

    Matching is top-down; among competing patterns the larger one wins,
    then non-linear ones, then catalog order.
    """
    catalog = catalog or default_catalog()
    pats = _patterns(catalog)
    index: dict = {}
    for p in pats:
        index.setdefault(_rough_key(p.body), []).append(p)
    memo: dict[int, Term] = {}

    def go(u: Term) -> Term:
        r = memo.get(id(u))
        if r is not None:
            return r
        r = None
        key = _rough_key(u)
        for p in index.get(key, ()) if key is not None else ():
            hit = _try(p, u)
            if hit is not None:
                head, args = spine(hit)
                r = apply(head, *(go(a) for a in args))
                break
        if r is None:
            if isinstance(u, App):
                head, args = spine(u)
                r = apply(go(head) if isinstance(head, Lam) else head, *(go(a) for a in args))
            elif isinstance(u, Lam):
                r = Lam(u.var, u.var_type, go(u.body))
            else:
                r = u
        memo[id(u)] = r
        return r

    return go(t)
