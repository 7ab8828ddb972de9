"""Abbreviation expansion and conversion checking."""

from __future__ import annotations

from typing import Collection, Literal

from .terms import Abbr, App, Lam, Term, Var, apply, beta_normalize, spine, subst_hereditary

__all__ = ["expand_abbreviations", "expand_all", "has_abbreviations", "convertible", "normal_form"]

_EXPANDED: dict[tuple, Term] = {}


def _expanded_definition(a: Abbr) -> Term:
    key = (a.name, a.tyargs, id(a.defn))
    t = _EXPANDED.get(key)
    if t is None:
        t = _expand(a.definition, "all", None)
        _EXPANDED[key] = t
    return t


def expand_abbreviations(
    t: Term,
    depth: Literal["all", "one"] = "all",
    only: Collection[str] | None = None,
) -> Term:
    """Replace abbreviation occurrences by their definitions.

    Redexes created by plugging arguments into a definition are contracted
    immediately; redexes already present in ``t`` are kept.  ``depth="one"``
    unfolds each occurrence in ``t`` once; ``only`` restricts unfolding to the
    named entries (their definitions are then unfolded with the same
    restriction).
    """
    if depth not in ("all", "one"):
        raise ValueError(f"depth must be 'all' or 'one', got {depth!r}")
    return _expand(t, depth, None if only is None else frozenset(only))


def expand_all(t: Term) -> Term:
    return _expand(t, "all", None)


def _target(t: Term, only) -> bool:
    return isinstance(t, Abbr) and (only is None or t.name in only)


def _definition(a: Abbr, depth: str, only) -> Term:
    if depth == "one":
        return a.definition
    if only is None:
        return _expanded_definition(a)
    return _expand(a.definition, depth, only)


def _expand(t: Term, depth: str, only) -> Term:
    memo: dict[int, Term] = {}

    def go(u: Term) -> Term:
        r = memo.get(id(u))
        if r is not None:
            return r
        if isinstance(u, Lam):
            body = go(u.body)
            r = u if body is u.body else Lam(u.var, u.var_type, body)
        elif isinstance(u, App):
            head, args = spine(u)
            new_args = [go(a) for a in args]
            if _target(head, only):
                r = _plug(_definition(head, depth, only), new_args)
            else:
                new_head = go(head)
                same = new_head is head and all(x is y for x, y in zip(new_args, args))
                r = u if same else apply(new_head, *new_args)
        elif _target(u, only):
            r = _definition(u, depth, only)
        else:
            r = u
        memo[id(u)] = r
        return r

    return go(t)


def _plug(defn: Term, args: list[Term]) -> Term:
    while args and isinstance(defn, Lam):
        defn = subst_hereditary(defn.body, {defn.var: args[0]})
        args = args[1:]
    return apply(defn, *args)


def has_abbreviations(t: Term) -> bool:
    if isinstance(t, Abbr):
        return True
    if isinstance(t, App):
        return has_abbreviations(t.fn) or has_abbreviations(t.arg)
    if isinstance(t, Lam):
        return has_abbreviations(t.body)
    return False


def normal_form(t: Term) -> Term:
    """Fully expanded beta normal form."""
    return beta_normalize(expand_all(t))


# -- lazy conversion ---------------------------------------------------------


def _whnf(t: Term) -> Term:
    """Contract head beta redexes only."""
    while True:
        head, args = spine(t)
        if isinstance(head, Lam) and args:
            t = apply(subst_hereditary(head.body, {head.var: args[0]}), *args[1:])
            continue
        return t


def _unfold_head(t: Term) -> Term | None:
    head, args = spine(t)
    if not isinstance(head, Abbr):
        return None
    return _whnf(_plug(head.definition, list(args)))


def convertible(a: Term, b: Term) -> bool:
    """Equality up to alpha, beta and abbreviation expansion.

    Abbreviations are unfolded lazily: only when the two sides disagree at
    the head.  Equal-headed abbreviation applications are first compared
    argument-wise, falling back to unfolding.
    """
    return _conv(a, b, {}, {}, 0)


def _conv(a: Term, b: Term, ea: dict, eb: dict, depth: int) -> bool:
    if a is b and not ea and not eb:
        return True
    a, b = _whnf(a), _whnf(b)
    if isinstance(a, Lam) and isinstance(b, Lam):
        if a.var_type != b.var_type:
            return False
        return _conv(a.body, b.body, {**ea, a.var: depth}, {**eb, b.var: depth}, depth + 1)
    if isinstance(a, Lam) or isinstance(b, Lam):
        # one side may be an abbreviation that unfolds to a lambda
        ua = _unfold_head(a) if not isinstance(a, Lam) else None
        ub = _unfold_head(b) if not isinstance(b, Lam) else None
        if ua is not None:
            return _conv(ua, b, ea, eb, depth)
        if ub is not None:
            return _conv(a, ub, ea, eb, depth)
        return False
    ha, aa = spine(a)
    hb, ab = spine(b)
    if _same_head(ha, hb, ea, eb) and len(aa) == len(ab):
        if all(_conv(x, y, ea, eb, depth) for x, y in zip(aa, ab)):
            return True
        if not isinstance(ha, Abbr):
            return False
    ua = _unfold_head(a) if isinstance(ha, Abbr) else None
    ub = _unfold_head(b) if isinstance(hb, Abbr) else None
    if ua is None and ub is None:
        return False
    # unfold the side whose head was defined later first (it is "bigger")
    if ua is not None and ub is not None:
        return _conv(ua, ub, ea, eb, depth)
    if ua is not None:
        return _conv(ua, b, ea, eb, depth)
    return _conv(a, ub, ea, eb, depth)


def _same_head(x: Term, y: Term, ea: dict, eb: dict) -> bool:
    if type(x) is not type(y):
        return False
    if isinstance(x, Var):
        ix, iy = ea.get(x.name), eb.get(y.name)  # type: ignore[union-attr]
        if ix is None and iy is None:
            return x.name == y.name and x.vtype == y.vtype  # type: ignore[union-attr]
        return ix == iy
    return x == y
