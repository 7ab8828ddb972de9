"""Entailment and validity by exhaustive sweep over truth codes.

Atoms are the formula-level unknowns of a query: constants (and free
variables) of type ``o``, and relational constants applied to arguments that
are either constants or concrete codes.  A query is evaluated once
symbolically to discover its atoms, then once more with numpy arrays, one
axis per atom (the first atom is the most significant axis, so the first
failing cell in C order is the canonical first countermodel).
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Iterable, Mapping, Sequence

import numpy as np

from .codes import (
    CodeSpace,
    T,
    TruthCode,
    eval_connective,
    fold_existential,
    fold_universal,
    next_code,
    parse_code,
)
from .models import FiniteModel, Fn, Individual, build_full_universe, interpret_term
from .syntax import Abbr, App, Const, Fun, Lam, O, Prim, Term, Var, print_term, spine
from .syntax.types import Base, Type, arrow_parts

__all__ = [
    "Atom",
    "EntailQuery",
    "Verdict",
    "TableRow",
    "Unsupported",
    "BudgetExceeded",
    "atoms_of",
    "check_entailment",
    "check_validity",
    "make_table",
    "format_table",
    "evaluate_at",
    "parse_sequent",
    "verify_countermodel",
    "induce_model",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**8
CHUNK_CELLS = 1 << 22


class Unsupported(ValueError):
    """The formula leaves the fragment the sweep engine can evaluate."""


class BudgetExceeded(ValueError):
    def __init__(self, size: int, budget: int):
        self.size, self.budget = size, budget
        super().__init__(f"sweep of {size:,} assignments exceeds the budget of {budget:,}")


@dataclass(frozen=True)
class Atom:
    """``head`` applied to ``args``; args are constant names or code ranks."""

    head: str
    args: tuple = ()

    @property
    def name(self) -> str:
        if not self.args:
            return self.head
        return " ".join([self.head] + [TruthCode(a).name if isinstance(a, int) else a for a in self.args])

    def __str__(self) -> str:
        return self.name


# -- abstract values ---------------------------------------------------------


class _Dep:
    """Discovery-pass stand-in for a value that depends on atoms."""

    def __repr__(self) -> str:
        return "<dep>"


DEP = _Dep()


@dataclass(frozen=True)
class _Ind:
    """An individual denoted by a named constant."""

    name: str


def _is_code(v) -> bool:
    return isinstance(v, (int, np.integer)) and not isinstance(v, bool)


class _Ops:
    """Value algebra; the discovery pass and the array pass differ only here."""

    def __init__(self, n: int):
        self.n = n

    def table(self, tab: np.ndarray, args: Sequence):
        raise NotImplementedError

    def atom(self, atom: Atom):
        raise NotImplementedError

    def choose(self, selector, options: Callable[[int], Any]):
        raise NotImplementedError

    def choice(self, pred_values: list):
        raise NotImplementedError


class _DiscoverOps(_Ops):
    def __init__(self, n: int, fixed: Mapping[str, int]):
        super().__init__(n)
        self.atoms: dict[Atom, None] = {}
        self.fixed = fixed

    def table(self, tab, args):
        if any(a is DEP for a in args):
            return DEP
        return int(tab[tuple(int(a) for a in args)])

    def atom(self, atom):
        self.atoms.setdefault(atom, None)
        v = self.fixed.get(atom.name)
        return DEP if v is None else v

    def choose(self, selector, options):
        vals = [options(c) for c in range(self.n)]
        return DEP if selector is DEP or any(v is DEP for v in vals) else vals[int(selector)]

    def choice(self, pred_values):
        if any(v is DEP for v in pred_values):
            return DEP
        for c, v in enumerate(pred_values):
            if v == 0:
                return c
        return 0


class _ArrayOps(_Ops):
    def __init__(self, n: int, values: Mapping[Atom, Any]):
        super().__init__(n)
        self.values = values

    def table(self, tab, args):
        if all(_is_code(a) for a in args):
            return int(tab[tuple(int(a) for a in args)])
        idx = None
        for a in args:
            a = np.asarray(a, dtype=np.int16)
            idx = a if idx is None else idx * self.n + a
        return np.take(tab.ravel(), idx)

    def atom(self, atom):
        return self.values[atom]

    def choose(self, selector, options):
        if _is_code(selector):
            return options(int(selector))
        return _choose(selector, [options(c) for c in range(self.n)])

    def choice(self, pred_values):
        res: Any = 0
        for c in reversed(range(self.n)):
            v = pred_values[c]
            if _is_code(v):
                if v == 0:
                    res = c
            else:
                res = np.where(v == 0, np.int8(c), res)
        return res


def _choose(selector, options: list):
    out: Any = options[0]
    for c in range(1, len(options)):
        out = np.where(selector == c, options[c], out)
    return out.astype(np.int8) if isinstance(out, np.ndarray) else out


# -- evaluator ---------------------------------------------------------------


_TABLES: dict[tuple, np.ndarray] = {}


def _connective_table(name: str, arity: int, k: int) -> np.ndarray:
    key = ("c", name, k)
    tab = _TABLES.get(key)
    if tab is None:
        codes = CodeSpace(k).codes
        tab = np.empty((len(codes),) * arity, dtype=np.int8)
        for idx in itertools.product(range(len(codes)), repeat=arity):
            args = [codes[i] for i in idx]
            tab[idx] = next_code(args[0], k) if name == "next" else eval_connective(name, args)
        _TABLES[key] = tab
    return tab


def _o_arity(ty: Type) -> int | None:
    """n when ``ty`` is o>...>o (n arrows), else None."""
    args, res = arrow_parts(ty)
    if res != O or any(a != O for a in args):
        return None
    return len(args)


class _Evaluator:
    def __init__(self, k: int, ops: _Ops, opaque: frozenset[str]):
        self.k = k
        self.n = k + 2
        self.ops = ops
        self.opaque = opaque
        self.model = FiniteModel(build_full_universe(k))
        self.closed: dict = {}
        self.abbr_values: dict = {}

    # helpers

    def _curry(self, arity: int, fn: Callable[[list], Any], got: tuple = ()):
        if len(got) == arity:
            return fn(list(got))
        return lambda v: self._curry(arity, fn, got + (v,))

    def table_fn(self, tab: np.ndarray, arity: int):
        if arity == 0:
            return int(tab[()])
        return self._curry(arity, lambda args: self.ops.table(tab, args))

    def relation(self, head: str, ty: Type):
        """A relational symbol: saturated applications become atoms."""
        args_t, res = arrow_parts(ty)
        if res != O:
            raise Unsupported(f"{head} has result type {res}; only formula-valued symbols are atoms")

        def saturate(vals: list, i: int = 0, keys: tuple = ()):
            if i == len(vals):
                return self.ops.atom(Atom(head, keys))
            v = vals[i]
            if isinstance(v, _Ind):
                return saturate(vals, i + 1, keys + (v.name,))
            if isinstance(v, tuple) and v and v[0] == "const":
                return saturate(vals, i + 1, keys + (v[1],))
            if _is_code(v):
                return saturate(vals, i + 1, keys + (int(v),))
            if args_t[i] == O:
                return self.ops.choose(v, lambda c: saturate(vals, i + 1, keys + (c,)))
            raise Unsupported(f"argument {i + 1} of {head} is a {args_t[i]}-valued expression")

        return self._curry(len(args_t), saturate)

    # main recursion

    def ev(self, t: Term, env: Mapping[str, Any]):
        if isinstance(t, App):
            folded = self.try_closed(t, env)
            if folded is not None:
                return folded
            head, args = spine(t)
            if isinstance(head, Const) or (isinstance(head, Var) and head.name not in env):
                # argument constants are keyed by name, not value
                vals = [self.arg_value(a, env) for a in args]
            elif isinstance(head, Abbr) and head.name in self.opaque:
                vals = [self.arg_value(a, env) for a in args]
            else:
                vals = [self.ev(a, env) for a in args]
            f = self.ev(head, env)
            for v in vals:
                if not callable(f):
                    raise Unsupported(f"cannot apply {f!r}")
                f = f(v)
            return f
        if isinstance(t, Var):
            if t.name in env:
                return env[t.name]
            return self.symbol(t.name, t.vtype)
        if isinstance(t, Const):
            return self.symbol(t.name, t.ctype)
        if isinstance(t, Lam):
            body, var = t.body, t.var
            return lambda v: self.ev(body, {**env, var: v})
        if isinstance(t, Abbr):
            return self.abbr(t)
        if isinstance(t, Prim):
            return self.prim(t)
        raise TypeError(f"not a term: {t!r}")

    def arg_value(self, a: Term, env):
        if isinstance(a, Const):
            if a.ctype == O:
                return ("const", a.name)
            if isinstance(a.ctype, Base):
                return _Ind(a.name)
        return self.ev(a, env)

    def symbol(self, name: str, ty: Type):
        if ty == O:
            return self.ops.atom(Atom(name))
        if isinstance(ty, Base):
            return _Ind(name)
        return self.relation(name, ty)

    def try_closed(self, t: Term, env):
        """Atom-free subterms go to the reference interpreter."""
        if t.constants or self.opaque_in(t):
            return None
        assignment = {}
        for v in t.free_vars:
            val = env.get(v)
            if val is None or not _is_code(val):
                return None
            assignment[v] = TruthCode(int(val))
        try:
            if t.type != O:
                return None
        except TypeError:
            return None
        key = (t, tuple(sorted(assignment.items())))
        r = self.closed.get(key)
        if r is None:
            r = interpret_term(t, self.model, assignment)
            if not isinstance(r, TruthCode):
                return None
            r = int(r)
            self.closed[key] = r
        return r

    def opaque_in(self, t: Term) -> bool:
        if not self.opaque:
            return False
        if isinstance(t, Abbr):
            return t.name in self.opaque
        if isinstance(t, App):
            return self.opaque_in(t.fn) or self.opaque_in(t.arg)
        if isinstance(t, Lam):
            return self.opaque_in(t.body)
        return False

    def abbr(self, a: Abbr):
        if a.name in self.opaque:
            return self.relation(a.name, a.type)
        key = (a.name, a.tyargs, id(a.defn))
        if key in self.abbr_values:
            return self.abbr_values[key]
        arity = _o_arity(a.type)
        if arity is not None and arity <= 4 and not a.constants:
            tab = self.abbr_table(a, arity)
            v = self.table_fn(tab, arity)
        else:
            v = self.ev(a.definition, {})
        self.abbr_values[key] = v
        return v

    def abbr_table(self, a: Abbr, arity: int) -> np.ndarray:
        key = ("a", a.name, a.tyargs, id(a.defn), self.k)
        tab = _TABLES.get(key)
        if tab is None:
            codes = CodeSpace(self.k).codes
            val = interpret_term(a, self.model)
            tab = np.empty((len(codes),) * arity, dtype=np.int8)
            for idx in itertools.product(range(len(codes)), repeat=arity):
                r = val
                for i in idx:
                    r = r(codes[i])
                tab[idx] = int(r)
            _TABLES[key] = tab
        return tab

    def prim(self, p: Prim):
        k = self.k
        if p.name == "D":
            return self.table_fn(_connective_table("nand", 2, k), 2)
        if p.name == "V":
            return self.table_fn(_connective_table("next", 1, k), 1)
        tau = p.tyargs[0] if p.tyargs else None
        if p.name == "Q":
            return self._curry(2, lambda args: self.equal_at(tau, *args))
        if p.name == "A":
            if tau != O:
                raise Unsupported(f"quantification over {tau} in an atom-dependent formula")
            conj = _connective_table("conj", 2, k)

            def forall(f):
                vals = [f(c) for c in range(self.n)]
                return reduce(lambda x, y: self.ops.table(conj, [x, y]), vals, 0)

            return forall
        if p.name == "C":
            if tau != O:
                raise Unsupported(f"choice over {tau} in an atom-dependent formula")
            return lambda f: self.ops.choice([f(c) for c in range(self.n)])
        if p.name == "K":
            return lambda x: lambda _y: x
        if p.name == "S":
            return lambda f: lambda g: lambda x: f(x)(g(x))
        raise Unsupported(f"primitive {p.name}")

    def equal_at(self, tau: Type, a, b):
        """Equality at ``tau``; functions over o compare pointwise."""
        if tau == O:
            return self.ops.table(_connective_table("eq", 2, self.k), [a, b])
        if isinstance(tau, Base):
            if a == b:
                return 0
            raise Unsupported(f"equality of distinct individual constants {a.name} and {b.name}")
        if isinstance(tau, Fun) and tau.arg == O:
            conj = _connective_table("conj", 2, self.k)
            vals = [self.equal_at(tau.res, a(c), b(c)) for c in range(self.n)]
            return reduce(lambda x, y: self.ops.table(conj, [x, y]), vals, 0)
        raise Unsupported(f"equality at type {tau} between atom-dependent terms")


# -- queries and verdicts ----------------------------------------------------


@dataclass
class EntailQuery:
    antecedents: list[Term]
    succedents: list[Term]
    k: int = 2
    fixed: dict[str, TruthCode] = field(default_factory=dict)
    domains: dict[str, Sequence[TruthCode]] = field(default_factory=dict)
    budget: int = DEFAULT_BUDGET
    opaque: frozenset[str] = frozenset()
    decompose: bool = False

    def __post_init__(self) -> None:
        if not self.succedents:
            raise ValueError("a query needs at least one succedent")
        for name, c in self.fixed.items():
            if c not in CodeSpace(self.k):
                raise ValueError(f"fixed value {c} for {name} is outside the k={self.k} code space")
        for t in list(self.antecedents) + list(self.succedents):
            if t.type != O:
                raise TypeError(f"query member of type {t.type}, expected o")


@dataclass
class Verdict:
    entailed: bool
    k: int
    swept: int
    atoms: list[Atom]
    countermodel: dict[str, TruthCode] | None = None
    value: TruthCode | None = None
    instance: dict[str, TruthCode] | None = None

    @property
    def status(self) -> str:
        return "Entailed" if self.entailed else "NotEntailed"

    @property
    def heuristic_complete(self) -> bool:
        """k covers one indeterminacy per atom (a heuristic bound, not a theorem)."""
        return self.k >= len(self.atoms)

    def lines(self) -> list[str]:
        if self.entailed:
            out = [f"ENTAILED k={self.k} swept={self.swept}"]
        else:
            out = [f"NOT-ENTAILED k={self.k}"]
            for name, c in (self.instance or {}).items():
                out.append(f"{name}={c.name}")
            for name, c in (self.countermodel or {}).items():
                out.append(f"{name}={c.name}")
        if self.heuristic_complete:
            out.append("note: heuristic-complete (k >= number of atoms)")
        return out

    def format(self) -> str:
        return "\n".join(self.lines())


def _size(v) -> int:
    return v.size if isinstance(v, np.ndarray) else 1


def _conj_all(ops: _Ops, k: int, values: list):
    """Conjunction fold, smallest operands first (the fold is order-free)."""
    conj = _connective_table("conj", 2, k)
    if not values:
        return 0
    heap = [(_size(v), i, v) for i, v in enumerate(values)]
    heapq.heapify(heap)
    n = len(heap)
    while len(heap) > 1:
        _, _, a = heapq.heappop(heap)
        _, _, b = heapq.heappop(heap)
        c = ops.table(conj, [a, b])
        heapq.heappush(heap, (_size(c), n, c))
        n += 1
    return heap[0][2]


def _fold_query(ops: _Ops, k: int, ante: list, succ: list):
    neg = _connective_table("neg", 1, k)
    imp = _connective_table("imp", 2, k)
    a = _conj_all(ops, k, ante)
    g = ops.table(neg, [_conj_all(ops, k, [ops.table(neg, [v]) for v in succ])])
    return ops.table(imp, [a, g])


def _fixed_ranks(q: EntailQuery) -> dict[str, int]:
    return {name: int(c) for name, c in q.fixed.items()}


def _discover(q: EntailQuery, terms: list[Term], env: Mapping[str, Any]) -> list[Atom]:
    ops = _DiscoverOps(q.k + 2, _fixed_ranks(q))
    ev = _Evaluator(q.k, ops, q.opaque)
    for t in terms:
        ev.ev(t, env)
    return list(ops.atoms)


def _domain(q: EntailQuery, atom: Atom) -> list[int] | None:
    """Swept ranks for an atom, or None when it is fixed."""
    if atom.name in q.fixed:
        return None
    dom = q.domains.get(atom.name, q.domains.get(atom.head))
    if dom is None:
        return list(range(q.k + 2))
    return [int(c) for c in dom]


def atoms_of(t: Term, k: int = 2, opaque: Iterable[str] = ()) -> list[Atom]:
    """Atoms of a formula, in first-occurrence order."""
    q = EntailQuery([], [t], k, opaque=frozenset(opaque))
    return _discover(q, [t], {})


def _sweep(q: EntailQuery, ante: list[Term], succ: list[Term], env: Mapping[str, Any]) -> Verdict:
    atoms = _discover(q, ante + succ, env)
    free = [(a, d) for a in atoms if (d := _domain(q, a)) is not None]
    total = 1
    for _, d in free:
        total *= len(d)
    if total > q.budget:
        raise BudgetExceeded(total, q.budget)
    fixed = {a: q.fixed[a.name] for a in atoms if a.name in q.fixed}

    # leading atoms become scalars until a chunk fits in memory
    lead = 0
    rest = total
    while rest > CHUNK_CELLS and lead < len(free):
        rest //= len(free[lead][1])
        lead += 1
    swept = 0
    for prefix in itertools.product(*(d for _, d in free[:lead])):
        values: dict[Atom, Any] = {a: int(c) for a, c in fixed.items()}
        for (a, _), c in zip(free[:lead], prefix):
            values[a] = c
        tail = free[lead:]
        shape = [len(d) for _, d in tail]
        for axis, (a, d) in enumerate(tail):
            s = [1] * len(tail)
            s[axis] = len(d)
            values[a] = np.array(d, dtype=np.int8).reshape(s)
        ops = _ArrayOps(q.k + 2, values)
        ev = _Evaluator(q.k, ops, q.opaque)
        av = [ev.ev(t, env) for t in ante]
        sv = [ev.ev(t, env) for t in succ]
        res = _fold_query(ops, q.k, av, sv)
        cells = int(np.prod(shape)) if shape else 1
        swept += cells
        res = np.broadcast_to(np.asarray(res, dtype=np.int8), shape)
        bad = res != 0
        if bad.any():
            flat = int(np.argmax(bad.ravel()))
            idx = np.unravel_index(flat, shape) if shape else ()
            cm: dict[str, TruthCode] = {}
            lead_vals = dict(zip((a for a, _ in free[:lead]), prefix))
            tail_vals = {a: d[i] for (a, d), i in zip(tail, idx)}
            for a in atoms:
                if a in fixed:
                    cm[a.name] = TruthCode(int(fixed[a]))
                elif a in lead_vals:
                    cm[a.name] = TruthCode(lead_vals[a])
                else:
                    cm[a.name] = TruthCode(int(tail_vals[a]))
            return Verdict(False, q.k, swept, atoms, cm, TruthCode(int(res[idx] if shape else res)))
    return Verdict(True, q.k, swept, atoms)


def _split(t: Term, env: dict, k: int) -> list[tuple[Term, dict]]:
    """Top-level universal quantifiers over o and conjunctions, taken apart."""
    head, args = spine(t)
    if isinstance(head, Abbr) and head.name == "and" and len(args) == 2:
        return _split(args[0], env, k) + _split(args[1], env, k)
    if (
        isinstance(head, Abbr)
        and head.name == "forall"
        and head.tyargs == (O,)
        and len(args) == 1
        and isinstance(args[0], Lam)
    ):
        lam = args[0]
        out = []
        for c in range(k + 2):
            out += _split(lam.body, {**env, lam.var: c}, k)
        return out
    return [(t, env)]


def check_entailment(q: EntailQuery) -> Verdict:
    """Entailed iff ``imp (conj-fold ante) (disj-fold succ)`` is T everywhere."""
    if q.decompose and not q.antecedents and len(q.succedents) == 1:
        pieces = _split(q.succedents[0], {}, q.k)
        swept = 0
        atoms: dict[Atom, None] = {}
        for t, env in pieces:
            v = _sweep(q, [], [t], env)
            swept += v.swept
            for a in v.atoms:
                atoms.setdefault(a, None)
            if not v.entailed:
                v.instance = {name: TruthCode(c) for name, c in env.items()}
                v.swept = swept
                return v
        return Verdict(True, q.k, swept, list(atoms))
    return _sweep(q, list(q.antecedents), list(q.succedents), {})


def check_validity(t: Term, k: int = 2, **kw) -> Verdict:
    return check_entailment(EntailQuery([], [t], k, **kw))


# -- tables ------------------------------------------------------------------


@dataclass
class TableRow:
    atoms: tuple[TruthCode, ...]
    values: tuple[TruthCode, ...]


def make_table(
    formulas: Sequence[Term],
    atoms: Sequence[str] | None = None,
    fixed: Mapping[str, TruthCode] | None = None,
    k: int = 2,
) -> list[TableRow]:
    """One row per assignment to ``atoms`` (canonical order); cells by interpret_term."""
    fixed = dict(fixed or {})
    found: list[Atom] = []
    for f in formulas:
        for a in atoms_of(f, k):
            if a not in found:
                found.append(a)
    by_name = {a.name: a for a in found}
    names = list(atoms) if atoms is not None else [a.name for a in found if a.name not in fixed]
    for a in found:
        if a.name not in fixed and a.name not in names:
            raise ValueError(f"atom {a.name} is neither listed nor fixed")
    rows = []
    codes = CodeSpace(k).codes
    for combo in itertools.product(codes, repeat=len(names)):
        assignment = {**fixed, **dict(zip(names, combo))}
        model = induce_model(formulas, {n: assignment[n] for n in assignment if n in by_name}, k)
        vals = tuple(interpret_term(f, model) for f in formulas)
        rows.append(TableRow(tuple(combo), vals))
    return rows


def format_table(formulas: Sequence[Term], k: int = 2, tsv: bool = False, labels: Sequence[str] | None = None) -> list[str]:
    """Render truth tables as text lines.

    A single formula over exactly two atoms prints as a grid (rows: first
    atom, columns: second atom); anything else prints one row per assignment.
    """
    rows = make_table(formulas, k=k)
    found: list[str] = []
    for f in formulas:
        for a in atoms_of(f, k):
            if a.name not in found:
                found.append(a.name)
    labels = list(labels) if labels is not None else [print_term(f) for f in formulas]
    codes = [c.name for c in CodeSpace(k).codes]
    if len(formulas) == 1 and len(found) == 2:
        n = len(codes)
        header = [f"{found[0]}\\{found[1]}"] + codes
        cells = [header] + [[codes[i]] + [rows[i * n + j].values[0].name for j in range(n)] for i in range(n)]
    else:
        cells = [found + labels] + [[c.name for c in r.atoms] + [v.name for v in r.values] for r in rows]
    if tsv:
        return ["\t".join(r) for r in cells]
    width = max(len(c) for r in cells for c in r)
    return ["  ".join(c.ljust(width) for c in r).rstrip() for r in cells]


def evaluate_at(t: Term, assignment: Mapping[str, TruthCode], k: int = 2) -> TruthCode:
    """Value of ``t`` with its atoms set by name; every atom must be assigned."""
    names = [a.name for a in atoms_of(t, k)]
    missing = [n for n in names if n not in assignment]
    if missing:
        raise ValueError("unassigned atom(s): " + ", ".join(missing))
    extra = [n for n in assignment if n not in names]
    if extra:
        raise ValueError("not an atom of the formula: " + ", ".join(extra))
    space = CodeSpace(k)
    for n, c in assignment.items():
        if c not in space:
            raise ValueError(f"{n}={c.name} is outside the codes for k={k}")
    return interpret_term(t, induce_model([t], dict(assignment), k))


def parse_sequent(text: str, parse: Callable[[str], Term]) -> tuple[list[Term], list[Term]]:
    """Split ``A1, A2 |- G1, G2`` and parse each side's comma-separated terms."""
    if text.count("|-") != 1:
        raise ValueError("a sequent needs exactly one '|-'")
    left, right = text.split("|-")

    def items(side: str) -> list[Term]:
        parts, depth, cur = [], 0, []
        for ch in side:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "," and depth == 0:
                parts.append("".join(cur))
                cur = []
            else:
                cur.append(ch)
        parts.append("".join(cur))
        parts = [x.strip() for x in parts]
        if parts == [""]:
            return []
        if any(not x for x in parts):
            raise ValueError("empty formula in sequent")
        return [parse(x) for x in parts]

    return items(left), items(right)


# -- countermodels -----------------------------------------------------------


def induce_model(terms: Sequence[Term], assignment: Mapping[str, TruthCode], k: int) -> FiniteModel:
    """A finite model realizing an atom assignment.

    Individual constants of each sort denote distinct individuals (in order
    of first occurrence); relation graphs carry the assigned atom values and
    F elsewhere.
    """
    consts: dict[str, Type] = {}
    for t in terms:
        _collect_consts(t, consts)
    sort_members: dict[str, list[str]] = {}
    for name, ty in consts.items():
        if isinstance(ty, Base) and ty != O:
            sort_members.setdefault(ty.name, []).append(name)
    u = build_full_universe(k, {s: len(m) for s, m in sort_members.items()})
    interp: dict[str, Any] = {}
    for s, members in sort_members.items():
        for i, name in enumerate(members):
            interp[name] = Individual(s, i)
    for name, ty in consts.items():
        if ty == O:
            interp[name] = TruthCode(int(assignment.get(name, T)))
    atoms = {}
    for n, c in assignment.items():
        parts = n.split(" ")
        atoms[(parts[0], tuple(parts[1:]))] = TruthCode(int(c))
    for name, ty in consts.items():
        if isinstance(ty, Fun):
            interp[name] = _relation_graph(u, name, ty, atoms, interp)
    return FiniteModel(u, interp, dict(consts))


def _relation_graph(u, name: str, ty: Fun, atoms: dict, interp: dict) -> Fn:
    from .codes import F

    args_t, _ = arrow_parts(ty)

    def label(x) -> str:
        if isinstance(x, TruthCode):
            return x.name
        if isinstance(x, Individual):
            for n, v in interp.items():
                if v == x:
                    return n
        return str(x)

    def build(i: int, prefix: tuple):
        if i == len(args_t):
            return atoms.get((name, prefix), F)
        dom = u.carrier(args_t[i])
        return Fn(args_t[i], u, table=tuple(build(i + 1, prefix + (label(x),)) for x in dom))

    return build(0, ())


def _collect_consts(t: Term, out: dict) -> None:
    if isinstance(t, Const):
        out.setdefault(t.name, t.ctype)
    elif isinstance(t, App):
        _collect_consts(t.fn, out)
        _collect_consts(t.arg, out)
    elif isinstance(t, Lam):
        _collect_consts(t.body, out)
    elif isinstance(t, Abbr) and t.constants:
        _collect_consts(t.definition, out)


def query_value(model: FiniteModel, q: EntailQuery) -> TruthCode:
    ante = [interpret_term(t, model) for t in q.antecedents]
    succ = [interpret_term(t, model) for t in q.succedents]
    return eval_connective("imp", (fold_universal(ante), fold_existential(succ)))


def verify_countermodel(m: FiniteModel | Mapping[str, Any], q: EntailQuery) -> bool:
    """True iff the query's implication is not T under ``m``."""
    if not isinstance(m, FiniteModel):
        assignment = {n: (parse_code(v) if isinstance(v, str) else TruthCode(int(v))) for n, v in m.items()}
        m = induce_model(list(q.antecedents) + list(q.succedents), assignment, q.k)
    return query_value(m, q) != T
