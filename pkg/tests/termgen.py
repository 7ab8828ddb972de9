"""Seeded generator of well-typed terms for property tests."""

import random

from nabla.syntax import O, Abbr, App, Const, Fun, Lam, Prim, Var, default_catalog

OO = Fun(O, O)
OOO = Fun(OO, O)
CONSTS = {"p": O, "q": O, "r": O, "f": OO, "g": OO, "h": OOO}

_CAT = default_catalog()
_UNARY = ["not", "box", "bnot", "det", "ind", "next"]
_BINARY = ["and", "or", "imp", "iff", "nand", "Simp", "limp", "liff", "qimp", "excl", "bexcl"]
_NULLARY = ["True", "False", "1", "inf"]


class TermGen:
    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)
        self.n = 0

    def _fresh(self) -> str:
        self.n += 1
        return f"x{self.n}"

    def _bound(self, env, ty):
        return [Var(n, t) for n, t in env if t == ty]

    def term(self, ty=O, depth: int = 4, env=()):
        rng = self.rng
        leaves = [Const(n, t) for n, t in CONSTS.items() if t == ty] + self._bound(env, ty)
        if ty == O:
            leaves += [_CAT[n].ref() for n in _NULLARY]
        if depth <= 0 or rng.random() < 0.15:
            if leaves:
                return rng.choice(leaves)
        if ty == O:
            kind = rng.choice(["unary", "binary", "binary", "apply", "quant", "eq", "redex", "nand"])
            if kind == "unary":
                return App(_CAT[rng.choice(_UNARY)].ref(), self.term(O, depth - 1, env))
            if kind == "binary":
                return _CAT[rng.choice(_BINARY)](self.term(O, depth - 1, env), self.term(O, depth - 1, env))
            if kind == "apply":
                return App(self.term(OO, depth - 1, env), self.term(O, depth - 1, env))
            if kind == "quant":
                x = self._fresh()
                body = self.term(O, depth - 1, env + ((x, O),))
                q = rng.choice(["forall", "exists"])
                return App(_CAT[q].ref(O), Lam(x, O, body))
            if kind == "eq":
                t = rng.choice([O, OO])
                return App(App(Prim("Q", (t,)), self.term(t, depth - 1, env)), self.term(t, depth - 1, env))
            if kind == "nand":
                return App(App(Prim("D"), self.term(O, depth - 1, env)), self.term(O, depth - 1, env))
            x = self._fresh()
            return App(Lam(x, O, self.term(O, depth - 1, env + ((x, O),))), self.term(O, depth - 1, env))
        if isinstance(ty, Fun) and ty.arg == O and ty.res == O:
            kind = rng.choice(["lam", "lam", "partial", "leaf"])
            if kind == "partial":
                return App(_CAT[rng.choice(_BINARY)].ref(), self.term(O, depth - 1, env))
            if kind == "leaf" and leaves:
                return rng.choice(leaves)
            x = self._fresh()
            return Lam(x, O, self.term(O, depth - 1, env + ((x, O),)))
        if ty == OOO:
            x = self._fresh()
            return Lam(x, OO, self.term(O, depth - 1, env + ((x, OO),)))
        raise ValueError(ty)

    def terms(self, n: int, depth: int = 4):
        out = []
        for _ in range(n):
            ty = self.rng.choice([O, O, O, OO, OOO])
            out.append(self.term(ty, depth))
        return out
