"""Finite full models.

``U_o`` is a code space; each declared sort has a finite set of individuals;
function types get the full function space.  Carriers are enumerated in a
canonical order (codes by rank, individuals by index, functions
lexicographically by graph), which makes choice and every report
deterministic.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Mapping

from .codes import CodeSpace, F, T, TruthCode, fold_universal, nand_code, next_code, parse_code
from .syntax import Abbr, App, Const, Fun, Lam, O, Prim, Term, Type, Var, parse_type
from .syntax.types import Base, arrow_parts
from .theory import AXIOM_SCHEMES, TheoryProfile

__all__ = [
    "Individual",
    "Fn",
    "CardinalityError",
    "Universe",
    "FiniteModel",
    "build_full_universe",
    "interpret_term",
    "canonical_choice",
    "code_model",
    "check_axiom_profile",
    "AxiomResult",
    "ProfileReport",
    "format_value",
    "parse_model",
    "format_model",
    "ModelError",
]

DEFAULT_GUARD = 10**6


class CardinalityError(ValueError):
    def __init__(self, type_: Type, size: int, guard: int):
        self.type = type_
        self.size = size
        self.guard = guard
        shown = f"{size:,}" if size < 10**30 else f"~10^{int(math.log10(size))}"
        super().__init__(f"carrier of type {type_} has {shown} elements, over the guard of {guard:,}")


class ModelError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Individual:
    sort: str
    index: int

    def __str__(self) -> str:
        return f"{self.sort}#{self.index}"


class Fn:
    """A function value: either a finite graph or a lazily tabulated closure."""

    __slots__ = ("dom", "universe", "_fn", "_table", "_cache")

    def __init__(self, dom: Type, universe: "Universe", fn: Callable | None = None, table: tuple | None = None):
        self.dom = dom
        self.universe = universe
        self._fn = fn
        self._table = table
        self._cache: dict = {}

    def __call__(self, x):
        if self._table is not None:
            return self._table[self.universe.index(self.dom, x)]
        if isinstance(x, Fn):
            # identity key: an extensional key would tabulate the argument
            hit = self._cache.get(("id", id(x)))
            if hit is not None and hit[0] is x:
                return hit[1]
            r = self._fn(x)  # type: ignore[misc]
            self._cache[("id", id(x))] = (x, r)
            return r
        r = self._cache.get(x)
        if r is None:
            r = self._fn(x)  # type: ignore[misc]
            self._cache[x] = r
        return r

    @property
    def graph(self) -> tuple:
        if self._table is None:
            self._table = tuple(self(x) for x in self.universe.carrier(self.dom))
        return self._table

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Fn) and self.dom == other.dom and _key(self) == _key(other)

    def __hash__(self) -> int:
        return hash(_key(self))

    def __repr__(self) -> str:
        return format_value(self)


def _key(v):
    """Hashable extensional key of a value."""
    if isinstance(v, Fn):
        return tuple(_key(x) for x in v.graph)
    return v


@dataclass(frozen=True)
class Universe:
    k: int
    sorts: tuple[tuple[str, int], ...] = ()
    guard: int = DEFAULT_GUARD
    _carriers: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def space(self) -> CodeSpace:
        return CodeSpace(self.k)

    @property
    def sort_sizes(self) -> dict[str, int]:
        return dict(self.sorts)

    def size(self, ty: Type) -> int:
        if ty == O:
            return self.k + 2
        if isinstance(ty, Base):
            try:
                return self.sort_sizes[ty.name]
            except KeyError:
                raise ModelError(f"no universe for sort {ty.name!r}") from None
        if isinstance(ty, Fun):
            return self.size(ty.res) ** self.size(ty.arg)
        raise ModelError(f"not a concrete type: {ty}")

    def carrier(self, ty: Type) -> tuple:
        c = self._carriers.get(ty)
        if c is not None:
            return c
        n = self.size(ty)
        if n > self.guard:
            raise CardinalityError(ty, n, self.guard)
        if ty == O:
            c = self.space.codes
        elif isinstance(ty, Base):
            c = tuple(Individual(ty.name, i) for i in range(n))
        else:
            assert isinstance(ty, Fun)
            cod = self.carrier(ty.res)
            dom_n = self.size(ty.arg)
            c = tuple(Fn(ty.arg, self, table=g) for g in itertools.product(cod, repeat=dom_n))
        self._carriers[ty] = c
        return c

    def index(self, ty: Type, v) -> int:
        if ty == O:
            return int(v)
        if isinstance(ty, Base):
            return v.index
        assert isinstance(ty, Fun)
        base = self.size(ty.res)
        i = 0
        for x in v.graph:
            i = i * base + self.index(ty.res, x)
        return i

    def contains(self, ty: Type, v) -> bool:
        if ty == O:
            return isinstance(v, TruthCode) and v in self.space
        if isinstance(ty, Base):
            return isinstance(v, Individual) and v.sort == ty.name and 0 <= v.index < self.sort_sizes.get(ty.name, 0)
        if isinstance(ty, Fun):
            return isinstance(v, Fn) and v.dom == ty.arg and all(self.contains(ty.res, x) for x in v.graph)
        return False

    def function(self, ty: Type, values: Mapping | Callable, default=None) -> Fn:
        """A function of type ``ty`` from a mapping (with default) or a callable.

        Curried types take nested callables/mappings or tuple keys.
        """
        assert isinstance(ty, Fun)
        if callable(values) and not isinstance(values, Mapping):
            fn = values
        else:
            table = dict(values)

            def fn(x, _table=table):
                return _table.get(x, default)

        if isinstance(ty.res, Fun):
            inner_ty = ty.res
            return Fn(ty.arg, self, table=tuple(self._curried(inner_ty, fn, (x,), default) for x in self.carrier(ty.arg)))
        graph = tuple(_coerce(fn(x), ty.res) for x in self.carrier(ty.arg))
        return Fn(ty.arg, self, table=graph)

    def _curried(self, ty: Fun, fn: Callable, prefix: tuple, default) -> Fn:
        def at(args):
            r = fn(args if len(args) > 1 else args[0])
            return default if r is None else r

        if isinstance(ty.res, Fun):
            return Fn(ty.arg, self, table=tuple(self._curried(ty.res, fn, prefix + (x,), default) for x in self.carrier(ty.arg)))
        return Fn(ty.arg, self, table=tuple(_coerce(at(prefix + (x,)), ty.res) for x in self.carrier(ty.arg)))


def _coerce(v, ty: Type):
    if ty == O and isinstance(v, str):
        return parse_code(v)
    return v


def build_full_universe(
    k: int,
    sort_sizes: Mapping[str, int] | None = None,
    needed: Iterable[Type] = (),
    guard: int = DEFAULT_GUARD,
) -> Universe:
    """A universe with full function spaces, checking every needed carrier."""
    sizes = dict(sort_sizes or {})
    for name, n in sizes.items():
        if n < 1:
            raise ModelError(f"sort {name!r} must have at least one element")
    u = Universe(k, tuple(sorted(sizes.items())), guard)
    for ty in needed:
        u.carrier(ty)
    return u


# -- models and interpretation ----------------------------------------------


@dataclass
class FiniteModel:
    universe: Universe
    interp: dict[str, Any] = field(default_factory=dict)
    params: dict[str, Type] = field(default_factory=dict)

    @property
    def k(self) -> int:
        return self.universe.k

    def with_interp(self, values: Mapping[str, Any]) -> "FiniteModel":
        interp = dict(self.interp)
        for name, v in values.items():
            ty = self.params.get(name)
            if ty is not None and not isinstance(v, (TruthCode, Individual, Fn)):
                v = self.universe.function(ty, v) if isinstance(ty, Fun) else _coerce(v, ty)
            if ty is not None and not self.universe.contains(ty, v):
                raise ModelError(f"value for {name} is not in the carrier of {ty}")
            interp[name] = v
        return FiniteModel(self.universe, interp, dict(self.params))

    def declare(self, name: str, ty: Type) -> "FiniteModel":
        return FiniteModel(self.universe, dict(self.interp), {**self.params, name: ty})

    def unbound(self) -> dict[str, Type]:
        return {n: t for n, t in self.params.items() if n not in self.interp}

    def interpretations(self) -> Iterator["FiniteModel"]:
        """Every way of binding the still-unbound constants, canonical order."""
        free = self.unbound()
        names = list(free)
        for combo in itertools.product(*(self.universe.carrier(free[n]) for n in names)):
            yield self.with_interp(dict(zip(names, combo)))

    def evaluate(self, t: Term, assignment: Mapping[str, Any] | None = None):
        return interpret_term(t, self, assignment or {})


def code_model(k: int, constants: Mapping[str, Type] | Iterable[tuple[str, Type]] = (), sorts: Mapping[str, int] | None = None) -> FiniteModel:
    """The structure with ``U_o`` the k-indeterminacy code space.

    Constants are declared but left unbound.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    u = build_full_universe(k, sorts)
    params = dict(constants.items() if isinstance(constants, Mapping) else constants)
    return FiniteModel(u, {}, params)


def canonical_choice(p: Fn, universe: Universe, ty: Type):
    """The first element (canonical order) where ``p`` is T, else the first element."""
    carrier = universe.carrier(ty)
    for x in carrier:
        if p(x) == T:
            return x
    return carrier[0]


class _Evaluator:
    def __init__(self, model: FiniteModel):
        self.m = model
        self.u = model.universe
        self.abbr_cache: dict = {}

    def prim(self, p: Prim):
        u, k = self.u, self.u.k
        if p.name == "D":
            return Fn(O, u, lambda a: Fn(O, u, lambda b: nand_code(a, b)))
        if p.name == "V":
            return Fn(O, u, lambda a: next_code(a, k))
        (tau, *rest) = p.tyargs if p.tyargs else (None,)
        if p.name == "Q":
            return Fn(tau, u, lambda a: Fn(tau, u, lambda b: T if _key(a) == _key(b) else F))
        if p.name == "A":
            return Fn(Fun(tau, O), u, lambda f: fold_universal(f(x) for x in u.carrier(tau)))
        if p.name == "C":
            return Fn(Fun(tau, O), u, lambda f: canonical_choice(f, u, tau))
        if p.name == "K":
            a, b = p.tyargs
            return Fn(a, u, lambda x: Fn(b, u, lambda _y: x))
        if p.name == "S":
            a, b, c = p.tyargs
            return Fn(
                Fun(a, Fun(b, c)),
                u,
                lambda f: Fn(Fun(a, b), u, lambda g: Fn(a, u, lambda x: f(x)(g(x)))),
            )
        raise ModelError(f"unknown primitive {p.name}")

    def eval(self, t: Term, env: Mapping[str, Any]):
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise ModelError(f"no assignment for free variable {t.name}") from None
        if isinstance(t, Const):
            try:
                return self.m.interp[t.name]
            except KeyError:
                raise ModelError(f"no interpretation for constant {t.name}") from None
        if isinstance(t, App):
            return self.eval(t.fn, env)(self.eval(t.arg, env))
        if isinstance(t, Lam):
            body, var = t.body, t.var
            # only the variables the body needs are captured
            captured = {v: env[v] for v in t.free_vars if v in env}
            return Fn(t.var_type, self.u, lambda x: self.eval(body, {**captured, var: x}))
        if isinstance(t, Abbr):
            key = (t.name, t.tyargs, id(t.defn))
            v = self.abbr_cache.get(key)
            if v is None:
                v = self.abbr_cache[key] = self.eval(t.definition, {})
            return v
        if isinstance(t, Prim):
            key = ("$", t.name, t.tyargs)
            v = self.abbr_cache.get(key)
            if v is None:
                v = self.abbr_cache[key] = self.prim(t)
            return v
        raise TypeError(f"not a term: {t!r}")


def interpret_term(t: Term, model: FiniteModel, assignment: Mapping[str, Any] | None = None):
    """The value of ``t`` in ``model`` under ``assignment`` (variable name -> value)."""
    return _Evaluator(model).eval(t, assignment or {})


# -- axiom profiles ----------------------------------------------------------


@dataclass
class AxiomResult:
    axiom: str
    part: str
    holds: bool
    checked: int
    witness: dict[str, Any] | None = None
    value: TruthCode | None = None

    def describe(self) -> str:
        label = self.axiom if self.part == self.axiom else f"{self.axiom}/{self.part}"
        if self.holds:
            return f"{label}: holds ({self.checked} assignments)"
        w = " ".join(f"{k}={format_value(v)}" for k, v in (self.witness or {}).items())
        return f"{label}: FAILS at {w or 'the empty assignment'} (value {self.value})"


@dataclass
class ProfileReport:
    k: int
    profile: str
    results: list[AxiomResult]

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.results)

    def result(self, axiom: str, part: str | None = None) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom and (part is None or r.part == part):
                return r
        raise KeyError(axiom if part is None else f"{axiom}/{part}")


def check_axiom_profile(
    model: FiniteModel,
    profile: TheoryProfile,
    axioms: Iterable[str] | None = None,
) -> ProfileReport:
    """Sweep each axiom's free variables over the model's carriers."""
    names = list(axioms) if axioms is not None else list(profile.axioms)
    ev = _Evaluator(model)
    u = model.universe
    results: list[AxiomResult] = []
    for name in names:
        scheme = AXIOM_SCHEMES[name]
        instances = [O] + [Base(s) for s in profile.sorts] if scheme.schematic else [O]
        for part, _ in scheme.part_formulas():
            results.append(_sweep_scheme(ev, u, scheme, part, instances))
    return ProfileReport(model.k, profile.name, results)


def _sweep_scheme(ev: _Evaluator, u: Universe, scheme, part: str, instances: list[Type]) -> AxiomResult:
    checked = 0
    for inst in instances:
        from .syntax import instantiate_types

        formulas = dict(scheme.part_formulas())
        f = formulas[part]
        if scheme.schematic:
            f = instantiate_types(f, {"t": inst})
        var_types = {v: _inst_type(t, inst) for v, t in scheme.var_types.items() if v in f.free_vars}
        names = list(var_types)
        for combo in itertools.product(*(u.carrier(var_types[n]) for n in names)):
            env = dict(zip(names, combo))
            val = ev.eval(f, env)
            checked += 1
            if val != T:
                return AxiomResult(scheme.name, part, False, checked, env, val)
    return AxiomResult(scheme.name, part, True, checked)


def _inst_type(t: Type, inst: Type) -> Type:
    from .syntax.types import subst_type

    return subst_type(t, {"t": inst})


# -- text formats ------------------------------------------------------------


def format_value(v) -> str:
    if isinstance(v, TruthCode):
        return v.name
    if isinstance(v, Individual):
        return str(v)
    if isinstance(v, Fn):
        dom = v.universe.carrier(v.dom)
        cells = " ".join(f"({format_value(x)} {format_value(y)})" for x, y in zip(dom, v.graph))
        return f"(graph {cells})"
    return str(v)


def _format_graph(v: Fn) -> str:
    """Graph notation with the most frequent result factored out as a default."""
    dom = v.universe.carrier(v.dom)
    keys = [_key(y) for y in v.graph]
    counts = Counter(keys)
    default_key = max(counts, key=lambda kk: (counts[kk], -keys.index(kk)))
    default = v.graph[keys.index(default_key)]
    cells = [f" ({format_value(x)} {_fmt(y)})" for x, y, kk in zip(dom, v.graph, keys) if kk != default_key]
    return f"(graph (default {_fmt(default)})" + "".join(cells) + ")"


def _fmt(v) -> str:
    return _format_graph(v) if isinstance(v, Fn) else format_value(v)


def format_model(model: FiniteModel, names: Iterable[str] | None = None) -> str:
    """Render as ``(model (codes k) (sort ...) (const name "type" value) ...)``."""
    lines = [f"(model (codes {model.k})"]
    for s, n in model.universe.sorts:
        lines.append(f"  (sort {s} {n})")
    for name in names if names is not None else model.interp:
        v = model.interp[name]
        ty = model.params.get(name)
        ty_s = f' "{ty}"' if ty is not None else ""
        val = _fmt(v)
        lines.append(f"  (const {name}{ty_s} {val})")
    return "\n".join(lines) + ")"


def parse_model(text: str) -> FiniteModel:
    """Read the model description format (see :func:`format_model`)."""
    from .sexp import SexpError, parse_sexp

    try:
        (form,) = parse_sexp(text)
    except SexpError as e:
        raise ModelError(str(e)) from None
    except ValueError:
        raise ModelError("expected a single (model ...) form") from None
    if not (isinstance(form, list) and form and form[0] == "model"):
        raise ModelError("expected (model ...)")
    k = None
    sorts: dict[str, int] = {}
    consts: list = []
    for item in form[1:]:
        tag = item[0] if isinstance(item, list) and item else None
        if tag == "codes":
            k = int(item[1])
        elif tag == "sort":
            sorts[item[1]] = int(item[2])
        elif tag == "const":
            consts.append(item)
        else:
            raise ModelError(f"unknown model entry {item!r}")
    if k is None:
        raise ModelError("missing (codes k)")
    u = build_full_universe(k, sorts)
    model = FiniteModel(u)
    for item in consts:
        if len(item) != 4:
            raise ModelError(f"(const name \"type\" value) expected, got {item!r}")
        _, name, ty_s, val = item
        ty = parse_type(str(ty_s), sorts=sorts)
        v = _read_value(val, ty, u)
        model = model.declare(name, ty).with_interp({name: v})
    return model


def _read_value(form, ty: Type, u: Universe):
    if ty == O:
        return parse_code(str(form))
    if isinstance(ty, Base):
        s = str(form)
        sort, _, idx = s.partition("#")
        if sort != ty.name or not idx.isdigit():
            raise ModelError(f"bad individual {s!r} for sort {ty.name}")
        return Individual(sort, int(idx))
    assert isinstance(ty, Fun)
    return _read_fn(form, ty, u)


def _read_fn(form, ty: Type, u: Universe):
    """A function value.

    ``(graph (default d) (x y) ...)`` lists cells; for curried types a cell
    key may be a tuple ``(x1 x2 ...)`` of several arguments, and a bare value
    in place of a graph denotes the constant function.
    """
    if not isinstance(ty, Fun):
        return _read_value(form, ty, u)
    if not isinstance(form, list):
        c = _read_fn(form, ty.res, u)
        return Fn(ty.arg, u, table=tuple(c for _ in u.carrier(ty.arg)))
    if not form or form[0] != "graph":
        raise ModelError(f"expected (graph ...) for a value of type {ty}")
    default = None
    cells: list[tuple[tuple, Any]] = []
    for cell in form[1:]:
        if not (isinstance(cell, list) and len(cell) == 2):
            raise ModelError(f"malformed graph cell {cell!r}")
        if cell[0] == "default":
            default = cell[1]
        else:
            key = tuple(cell[0]) if isinstance(cell[0], list) else (cell[0],)
            cells.append((key, cell[1]))
    return _build_fn(ty, cells, default, u)


def _build_fn(ty: Fun, cells: list, default, u: Universe):
    args_t, _ = arrow_parts(ty)
    parsed = []
    for key, val in cells:
        if len(key) > len(args_t):
            raise ModelError(f"graph cell {key!r} has too many arguments for {ty}")
        xs = tuple(_read_value(x, t, u) for x, t in zip(key, args_t))
        parsed.append((xs, val))

    def build(t: Type, prefix: tuple):
        for xs, val in reversed(parsed):
            if xs == prefix:
                return _read_fn(val, t, u)
        covered = any(len(xs) > len(prefix) and xs[: len(prefix)] == prefix for xs, _ in parsed)
        leaf = len(prefix) == len(args_t)
        # a graph-valued default belongs to the first argument level
        usable = default is not None and (not isinstance(default, list) or len(prefix) == 1)
        if prefix and usable and (leaf or not covered):
            return _read_fn(default, t, u)
        if leaf or not isinstance(t, Fun):
            raise ModelError(f"graph for {ty} misses argument {' '.join(format_value(x) for x in prefix)} and has no default")
        return Fn(t.arg, u, table=tuple(build(t.res, prefix + (x,)) for x in u.carrier(t.arg)))

    return build(ty, ())


def _drop(ty: Type, n: int) -> Type:
    for _ in range(n):
        assert isinstance(ty, Fun)
        ty = ty.res
    return ty
