"""Compilation to S/K combinators by bracket abstraction."""

from __future__ import annotations

from .terms import Abbr, App, Lam, Prim, Term, Var, apply, spine
from .types import Fun, Type

__all__ = ["compile_sk", "combinator_I", "weak_reduce", "is_lambda_free"]


def _S(a: Type, b: Type, c: Type) -> Prim:
    return Prim("S", (a, b, c))


def _K(a: Type, b: Type) -> Prim:
    return Prim("K", (a, b))


def combinator_I(a: Type) -> Term:
    """``S K K`` at type ``a>a``."""
    return apply(_S(a, Fun(a, a), a), _K(a, Fun(a, a)), _K(a, a))


def compile_sk(t: Term) -> Term:
    """Eliminate every lambda.

    Abbreviations are replaced by their compiled (closed) definitions rather
    than expanded in place, so shared definitions stay shared.
    """
    return _Compiler().term(t)


class _Compiler:
    def __init__(self) -> None:
        self.abbrs: dict[tuple, Term] = {}
        self.memo: dict[int, tuple[Term, Term]] = {}

    def term(self, t: Term) -> Term:
        hit = self.memo.get(id(t))
        if hit is not None and hit[0] is t:
            return hit[1]
        if isinstance(t, Abbr):
            key = (t.name, t.tyargs, id(t.defn))
            out = self.abbrs.get(key)
            if out is None:
                out = self.abbrs[key] = self.term(t.definition)
        elif isinstance(t, Lam):
            out = _abstract(t.var, t.var_type, self.term(t.body), {})
        elif isinstance(t, App):
            out = App(self.term(t.fn), self.term(t.arg))
        else:
            out = t
        self.memo[id(t)] = (t, out)
        return out


def _abstract(x: str, a: Type, m: Term, memo: dict) -> Term:
    """``[x]m`` for a lambda-free ``m``."""
    hit = memo.get(id(m))
    if hit is not None and hit[0] is m:
        return hit[1]
    if isinstance(m, Var) and m.name == x:
        out = combinator_I(a)
    elif x not in m.free_vars:
        out = App(_K(m.type, a), m)
    else:
        assert isinstance(m, App)
        ft = m.fn.type
        assert isinstance(ft, Fun)
        out = apply(_S(a, ft.arg, ft.res), _abstract(x, a, m.fn, memo), _abstract(x, a, m.arg, memo))
    memo[id(m)] = (m, out)
    return out


def weak_reduce(t: Term, limit: int = 100_000) -> Term:
    """Normalize with the combinator rules ``K a b -> a`` and ``S f g x -> f x (g x)``."""
    steps = 0

    def go(u: Term) -> Term:
        nonlocal steps
        while True:
            head, args = spine(u)
            if isinstance(head, Prim) and head.name == "K" and len(args) >= 2:
                u = apply(args[0], *args[2:])
            elif isinstance(head, Prim) and head.name == "S" and len(args) >= 3:
                f, g, x = args[:3]
                u = apply(App(App(f, x), App(g, x)), *args[3:])
            else:
                break
            steps += 1
            if steps > limit:
                raise RuntimeError("combinator reduction did not terminate within the step limit")
        if isinstance(u, App):
            head, args = spine(u)
            return apply(go(head) if not isinstance(head, Prim) else head, *(go(a) for a in args))
        if isinstance(u, Lam):
            return Lam(u.var, u.var_type, go(u.body))
        return u

    return go(t)


def is_lambda_free(t: Term) -> bool:
    if isinstance(t, Lam):
        return False
    if isinstance(t, App):
        return is_lambda_free(t.fn) and is_lambda_free(t.arg)
    return True
