"""Proof checker for the sequent calculus.

Derivations are explicit trees; each node names its rule, its premises and
any witness terms (cut formula, substitution context, eigenvariable, scheme
instantiation).  Formula sets are compared up to alpha, beta and
abbreviation unfolding.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .sexp import SexpError, parse_sexp
from .syntax import (
    O,
    Abbr,
    App,
    Const,
    Fun,
    Lam,
    ParseError,
    Prim,
    Term,
    Type,
    Var,
    alpha_equal,
    convertible,
    default_catalog,
    parse_term,
    parse_type,
    print_term,
    spine,
    subst_many,
    substitute,
)
from .syntax.types import match_type
from .theory import AXIOM_SCHEMES, PROFILES, TheoryProfile

__all__ = [
    "Sequent",
    "RuleName",
    "Derivation",
    "ProofContext",
    "Violation",
    "CheckReport",
    "DerivationSyntaxError",
    "check_rule_application",
    "check_derivation",
    "derive_identity",
    "parse_derivation",
    "serialize_derivation",
    "PREMISE_COUNT",
]


# -- sequents ----------------------------------------------------------------


def _dedupe(terms: Iterable[Term]) -> tuple[Term, ...]:
    out: list[Term] = []
    for t in terms:
        if not any(alpha_equal(t, u) for u in out):
            out.append(t)
    return tuple(out)


@dataclass(frozen=True)
class Sequent:
    """``ante |- succ``: a conjunction of formulas entails a disjunction."""

    ante: tuple[Term, ...] = ()
    succ: tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        for t in self.ante + self.succ:
            if t.type != O:
                raise TypeError(f"sequent member {print_term(t)} has type {t.type}, not o")
        object.__setattr__(self, "ante", _dedupe(self.ante))
        object.__setattr__(self, "succ", _dedupe(self.succ))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sequent):
            return NotImplemented
        return _same_set(self.ante, other.ante) and _same_set(self.succ, other.succ)

    def __hash__(self) -> int:
        return hash((len(self.ante), len(self.succ)))

    def __str__(self) -> str:
        a = ", ".join(print_term(t) for t in self.ante)
        s = ", ".join(print_term(t) for t in self.succ)
        return f"{a} |- {s}".strip()


def _member(t: Term, ts: Sequence[Term]) -> bool:
    return any(convertible(t, u) for u in ts)


def _subset(a: Sequence[Term], b: Sequence[Term]) -> bool:
    return all(_member(t, b) for t in a)


def _same_set(a: Sequence[Term], b: Sequence[Term]) -> bool:
    return _subset(a, b) and _subset(b, a)


def _minus(a: Sequence[Term], b: Sequence[Term]) -> list[Term]:
    return [t for t in a if not _member(t, b)]


# -- rules -------------------------------------------------------------------


class RuleName(str, enum.Enum):
    Cut = "Cut"
    WeakenL = "WeakenL"
    WeakenR = "WeakenR"
    BetaConv = "BetaConv"
    Extensionality = "Extensionality"
    Reflexivity = "Reflexivity"
    Substitution = "Substitution"
    NegFlipA = "NegFlipA"
    NegFlipB = "NegFlipB"
    AndRight = "AndRight"
    AndLeft = "AndLeft"
    AllLeft = "AllLeft"
    AllRight = "AllRight"
    IndetNeg = "IndetNeg"
    IndetNand = "IndetNand"
    Choice = "Choice"
    GenInjective = "GenInjective"
    GenInfinity = "GenInfinity"
    GenInduction = "GenInduction"
    OmegaAxiom = "OmegaAxiom"
    DeltaAxiom = "DeltaAxiom"
    DagAxiom = "DagAxiom"
    DdagAxiom = "DdagAxiom"

    def __str__(self) -> str:
        return self.value


PREMISE_COUNT: dict[RuleName, int] = {r: 0 for r in RuleName}
PREMISE_COUNT.update(
    {
        RuleName.Cut: 2,
        RuleName.WeakenL: 1,
        RuleName.WeakenR: 1,
        RuleName.NegFlipA: 1,
        RuleName.NegFlipB: 1,
        RuleName.AndLeft: 1,
        RuleName.AllRight: 1,
    }
)


@dataclass(frozen=True)
class Violation:
    kind: str  # mismatch, eigenvariable, substitutable, scheme, profile, arity, witness
    message: str
    rule: RuleName | None = None
    path: tuple[int, ...] = ()

    def __str__(self) -> str:
        where = "root" if not self.path else "root/" + "/".join(str(i) for i in self.path)
        rule = f" {self.rule}" if self.rule else ""
        return f"{where}{rule}: {self.kind}: {self.message}"


class _Fail(Exception):
    def __init__(self, kind: str, message: str):
        self.kind, self.message = kind, message


def _check(cond: bool, message: str, kind: str = "mismatch") -> None:
    if not cond:
        raise _Fail(kind, message)


def _pt(t: Term) -> str:
    return print_term(t)


def _neg(t: Term) -> Term:
    return default_catalog()["not"](t)


def _abbr_args(t: Term, name: str, n: int) -> list[Term] | None:
    head, args = spine(t)
    if isinstance(head, Abbr) and head.name == name and len(args) == n:
        return args
    return None


def _eq_sides(t: Term) -> tuple[Term, Term] | None:
    args = _abbr_args(t, "Eq", 2)
    if args is not None:
        return args[0], args[1]
    head, a = spine(t)
    if isinstance(head, Prim) and head.name == "Q" and len(a) == 2:
        return a[0], a[1]
    return None


def _forall_body(t: Term) -> tuple[Type, Term] | None:
    """``forall[τ] p`` gives (τ, p)."""
    args = _abbr_args(t, "forall", 1)
    if args is not None:
        return t.fn.tyargs[0], args[0]  # type: ignore[attr-defined]
    head, a = spine(t)
    if isinstance(head, Prim) and head.name == "A" and len(a) == 1:
        return head.tyargs[0], a[0]
    return None


def _eq(a: Term, b: Term) -> Term:
    return default_catalog()["Eq"](a, b, tyargs=(a.type,))


def _instance_of(p: Term, x: Term) -> Term:
    """``p x``, contracting the redex when p is a lambda."""
    if isinstance(p, Lam):
        return substitute(p.body, p.var, x)
    return App(p, x)


def _substitutable(body: Term, var: str, s: Term) -> bool:
    """No free occurrence of ``var`` sits under a binder capturing a free variable of ``s``."""
    danger = s.free_vars

    def walk(t: Term, bound: frozenset) -> bool:
        if isinstance(t, Var):
            return not (t.name == var and bound & danger)
        if isinstance(t, App):
            return walk(t.fn, bound) and walk(t.arg, bound)
        if isinstance(t, Lam):
            if t.var == var:
                return True
            return walk(t.body, bound | {t.var})
        return True

    return walk(body, frozenset())


def _occurs(x: Term, t: Term) -> bool:
    if isinstance(x, Var):
        return x.name in t.free_vars
    if isinstance(x, Const):
        return x.name in t.constants
    return False


def check_rule_application(
    conclusion: Sequent,
    rule: RuleName | str,
    premises: Sequence[Sequent] = (),
    witnesses: Sequence[Term] = (),
    profile: TheoryProfile | None = None,
) -> Violation | None:
    """Validate one inference; None when it is a correct instance."""
    try:
        rule = RuleName(rule)
    except ValueError:
        return Violation("mismatch", f"unknown rule {rule!r}")
    profile = profile or PROFILES["nabla"]
    try:
        want = PREMISE_COUNT[rule]
        _check(len(premises) == want, f"{rule} takes {want} premise(s), got {len(premises)}", "arity")
        _RULE_CHECKS[rule](conclusion, list(premises), list(witnesses), profile, rule)
    except _Fail as f:
        return Violation(f.kind, f.message, rule)
    except (TypeError, ValueError) as e:
        return Violation("witness", str(e), rule)
    return None


def _axiom_shape(c: Sequent, n_ante: int | None = None) -> None:
    _check(len(c.succ) == 1, "an axiom concludes exactly one formula")
    if n_ante is not None:
        _check(len(c.ante) <= n_ante, f"an axiom has at most {n_ante} antecedent formula(s)")


def _cut(c: Sequent, ps, ws, profile, rule) -> None:
    left, right = ps
    cands = ws[:1] if ws else list(left.ante) + list(right.succ)
    _check(len(ws) <= 1, "Cut takes at most one witness (the cut formula)", "witness")
    for phi in cands:
        if (
            _same_set(left.ante, list(c.ante) + [phi])
            and _same_set(left.succ, c.succ)
            and _same_set(right.ante, c.ante)
            and _same_set(right.succ, list(c.succ) + [phi])
        ):
            return
    if ws:
        raise _Fail("mismatch", f"premises do not match Theta, {_pt(ws[0])} |- Gamma and Theta |- {_pt(ws[0])}, Gamma")
    raise _Fail("mismatch", "no cut formula makes the premises Theta, phi |- Gamma and Theta |- phi, Gamma")


def _weaken(side: str):
    def check(c: Sequent, ps, ws, profile, rule) -> None:
        (p,) = ps
        other = "succ" if side == "ante" else "ante"
        _check(_same_set(getattr(p, other), getattr(c, other)), f"weakening must leave the {other} unchanged")
        before, after = getattr(p, side), getattr(c, side)
        _check(_subset(before, after), f"conclusion {side} must contain the premise {side}")
        extra = _minus(after, before)
        _check(len(extra) <= 1, f"weakening adds one formula, found {len(extra)}")
        if ws:
            _check(len(ws) == 1 and _member(ws[0], after), "witness is not the added formula", "witness")

    return check


def _beta(c: Sequent, ps, ws, profile, rule) -> None:
    _axiom_shape(c, 0)
    sides = _eq_sides(c.succ[0])
    _check(sides is not None, "BetaConv concludes an equation")
    lhs, rhs = sides
    _check(isinstance(lhs, App) and isinstance(lhs.fn, Lam), "left side of a BetaConv equation is a redex")
    lam = lhs.fn
    _check(_substitutable(lam.body, lam.var, lhs.arg), "argument is not substitutable in the body", "substitutable")
    _check(alpha_equal(rhs, substitute(lam.body, lam.var, lhs.arg)), "right side is not the contractum")


def _ext(c: Sequent, ps, ws, profile, rule) -> None:
    _axiom_shape(c, 1)
    _check(len(c.ante) == 1, "Extensionality has one antecedent formula")
    sides = _eq_sides(c.succ[0])
    _check(sides is not None, "Extensionality concludes an equation")
    f, g = sides
    ty = f.type
    _check(isinstance(ty, Fun), "Extensionality equates functions")
    eq_all = default_catalog()["EqAll"](f, g, tyargs=(ty.arg, ty.res))
    _check(convertible(c.ante[0], eq_all), "antecedent is not the pointwise equality of the two sides")


def _refl(c: Sequent, ps, ws, profile, rule) -> None:
    _axiom_shape(c, 0)
    sides = _eq_sides(c.succ[0])
    _check(sides is not None, "Reflexivity concludes an equation")
    _check(convertible(*sides), "the two sides differ")


def _subst(c: Sequent, ps, ws, profile, rule) -> None:
    _axiom_shape(c, 2)
    _check(len(ws) == 1 and isinstance(ws[0], Lam), "Substitution needs the context lambda v. theta as witness", "witness")
    ctx = ws[0]
    _check(ctx.body.type == O, "the context body must be a formula", "witness")
    ante = list(c.ante)
    # the equation phi = psi, then theta[phi]; set semantics may merge them
    for i, eqn in enumerate(ante):
        sides = _eq_sides(eqn)
        if sides is None or sides[0].type != ctx.var_type:
            continue
        phi, psi = sides
        for s in (phi, psi):
            _check(_substitutable(ctx.body, ctx.var, s), f"{_pt(s)} is not substitutable in the context", "substitutable")
        before = substitute(ctx.body, ctx.var, phi)
        after = substitute(ctx.body, ctx.var, psi)
        rest = ante[:i] + ante[i + 1 :]
        if _same_set(rest or [eqn], [before]) and convertible(c.succ[0], after):
            return
    raise _Fail("mismatch", "conclusion is not phi = psi, theta[phi] |- theta[psi] for the given context")


def _negflip(which: str):
    def check(c: Sequent, ps, ws, profile, rule) -> None:
        (p,) = ps
        if which == "A":
            # from neg(Gamma) |- Theta infer neg(Theta) |- Gamma
            _check(_same_set(c.ante, [_neg(t) for t in p.succ]), "conclusion antecedent is not the negated premise succedent")
            _check(_same_set(p.ante, [_neg(t) for t in c.succ]), "premise antecedent is not the negated conclusion succedent")
        else:
            # from Gamma |- neg(Theta) infer Theta |- neg(Gamma)
            _check(_same_set(c.succ, [_neg(t) for t in p.ante]), "conclusion succedent is not the negated premise antecedent")
            _check(_same_set(p.succ, [_neg(t) for t in c.ante]), "premise succedent is not the negated conclusion antecedent")

    return check


def _and_right(c: Sequent, ps, ws, profile, rule) -> None:
    _axiom_shape(c, 2)
    args = _abbr_args(c.succ[0], "and", 2)
    if args is None:
        args = list(c.ante) if len(c.ante) == 2 else list(c.ante) * 2
        _check(len(args) == 2 and convertible(c.succ[0], default_catalog()["and"](*args)), "AndRight concludes phi and psi")
    _check(_same_set(c.ante, args), "antecedent must be exactly the two conjuncts")


def _and_left(c: Sequent, ps, ws, profile, rule) -> None:
    (p,) = ps
    _check(_same_set(p.succ, c.succ), "succedent must be unchanged")
    for m in c.ante:
        args = _abbr_args(m, "and", 2)
        if args is None:
            continue
        theta = [t for t in c.ante if t is not m]
        if _same_set(p.ante, theta + args):
            return
    raise _Fail("mismatch", "no conjunction in the conclusion antecedent matches the premise")


def _all_left(c: Sequent, ps, ws, profile, rule) -> None:
    _axiom_shape(c, 1)
    _check(len(c.ante) == 1, "AllLeft has one antecedent formula")
    q = _forall_body(c.ante[0])
    _check(q is not None, "antecedent is not a universal quantification")
    tau, p = q
    _check(len(ws) == 1, "AllLeft needs the instantiating term as witness", "witness")
    psi = ws[0]
    _check(psi.type == tau, f"witness has type {psi.type}, quantifier ranges over {tau}", "witness")
    if isinstance(p, Lam):
        _check(_substitutable(p.body, p.var, psi), f"{_pt(psi)} is not substitutable", "substitutable")
    _check(convertible(c.succ[0], _instance_of(p, psi)), "succedent is not the instance at the witness")


def _all_right(c: Sequent, ps, ws, profile, rule) -> None:
    (p,) = ps
    _check(len(ws) == 1 and isinstance(ws[0], (Var, Const)), "AllRight needs the eigenvariable as witness", "witness")
    pi = ws[0]
    _check(_same_set(p.ante, c.ante), "antecedent must be unchanged")
    for m in c.succ:
        q = _forall_body(m)
        if q is None:
            continue
        tau, body = q
        if pi.type != tau:
            continue
        gamma = [t for t in c.succ if t is not m]
        if not _same_set(p.succ, gamma + [_instance_of(body, pi)]):
            continue
        for t in list(c.ante) + gamma + [m]:
            _check(not _occurs(pi, t), f"eigenvariable {pi.name} occurs free in {_pt(t)}", "eigenvariable")
        return
    raise _Fail("mismatch", "no universal formula in the succedent matches the premise at the eigenvariable")


def _scheme(c: Sequent, ps, ws, profile, rule) -> None:
    name = rule.value
    _check(profile.enables(name), f"{name} is not enabled in profile {profile.name}", "profile")
    _axiom_shape(c, 0)
    scheme = AXIOM_SCHEMES[name]
    names = [v for v, _ in scheme.variables]
    _check(len(ws) == len(names), f"{name} needs {len(names)} witness term(s) for {', '.join(names) or 'nothing'}", "witness")
    types = scheme.var_types
    tsub: dict[str, Type] = {}
    for v, w in zip(names, ws):
        _check(match_type(types[v], w.type, tsub), f"witness for {v} has type {w.type}, expected {types[v]}", "witness")
    inst_t = tsub.get("t", O)
    formula = scheme.formula(inst_t)
    inst = subst_many(formula, {v: w for v, w in zip(names, ws)}) if names else formula
    _check(convertible(c.succ[0], inst), f"formula is not the {name} instance {_pt(inst)}", "scheme")


_RULE_CHECKS = {
    RuleName.Cut: _cut,
    RuleName.WeakenL: _weaken("ante"),
    RuleName.WeakenR: _weaken("succ"),
    RuleName.BetaConv: _beta,
    RuleName.Extensionality: _ext,
    RuleName.Reflexivity: _refl,
    RuleName.Substitution: _subst,
    RuleName.NegFlipA: _negflip("A"),
    RuleName.NegFlipB: _negflip("B"),
    RuleName.AndRight: _and_right,
    RuleName.AndLeft: _and_left,
    RuleName.AllLeft: _all_left,
    RuleName.AllRight: _all_right,
}
for _r in ("IndetNeg", "IndetNand", "Choice", "GenInjective", "GenInfinity", "GenInduction", "OmegaAxiom", "DeltaAxiom", "DagAxiom", "DdagAxiom"):
    _RULE_CHECKS[RuleName(_r)] = _scheme


# -- derivations -------------------------------------------------------------


@dataclass
class ProofContext:
    """Declarations used to read the terms of a derivation file."""

    sorts: list[str] = field(default_factory=list)
    consts: dict[str, Type] = field(default_factory=dict)
    variables: dict[str, Type] = field(default_factory=dict)


@dataclass
class Derivation:
    conclusion: Sequent
    rule: RuleName
    premises: list["Derivation"] = field(default_factory=list)
    witnesses: list[Term] = field(default_factory=list)
    context: ProofContext | None = None

    def __post_init__(self) -> None:
        self.rule = RuleName(self.rule)

    def nodes(self) -> Iterable[tuple[tuple[int, ...], "Derivation"]]:
        stack: list[tuple[tuple[int, ...], Derivation]] = [((), self)]
        while stack:
            path, d = stack.pop()
            yield path, d
            for i in reversed(range(len(d.premises))):
                stack.append((path + (i,), d.premises[i]))

    @property
    def rules_used(self) -> set[RuleName]:
        return {d.rule for _, d in self.nodes()}

    @property
    def size(self) -> int:
        return sum(1 for _ in self.nodes())


@dataclass
class CheckReport:
    ok: bool
    nodes: int
    violation: Violation | None = None

    def __str__(self) -> str:
        return f"ok ({self.nodes} nodes)" if self.ok else f"violation at {self.violation}"


def check_derivation(d: Derivation, profile: TheoryProfile | str | None = None) -> CheckReport:
    """Depth-first check; stops at the first failing node (pre-order)."""
    if isinstance(profile, str):
        from .theory import get_profile

        profile = get_profile(profile)
    n = 0
    for path, node in d.nodes():
        n += 1
        v = check_rule_application(node.conclusion, node.rule, [p.conclusion for p in node.premises], node.witnesses, profile)
        if v is not None:
            return CheckReport(False, n, Violation(v.kind, v.message, v.rule, path))
    return CheckReport(True, n)


def derive_identity(phi: Term) -> Derivation:
    """A derivation of ``phi |- phi`` from reflexivity and substitution."""
    if phi.type != O:
        raise TypeError(f"derive_identity needs a formula, got type {phi.type}")
    eq = _eq(phi, phi)
    refl = Derivation(Sequent((), (eq,)), RuleName.Reflexivity)
    wl = Derivation(Sequent((phi,), (eq,)), RuleName.WeakenL, [refl], [phi])
    wr = Derivation(Sequent((phi,), (eq, phi)), RuleName.WeakenR, [wl], [phi])
    v = _fresh_hole(phi)
    sub = Derivation(Sequent((eq, phi), (phi,)), RuleName.Substitution, [], [Lam(v, O, Var(v, O))])
    return Derivation(Sequent((phi,), (phi,)), RuleName.Cut, [sub, wr], [eq])


def _fresh_hole(t: Term) -> str:
    from .syntax import fresh_name

    return "v" if "v" not in t.free_vars else fresh_name("v", t.free_vars)


# -- file format -------------------------------------------------------------


class DerivationSyntaxError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = f" (line {line}, col {col})" if line is not None else ""
        super().__init__(message + where)


def _reader(ctx: ProofContext):
    def read(text: str, what: str) -> Term:
        try:
            return parse_term(
                str(text),
                sorts=ctx.sorts,
                consts=ctx.consts,
                variables=ctx.variables,
                implicit_atoms=True,
            )
        except ParseError as e:
            msg = str(e).rsplit(" (line", 1)[0]
            raise DerivationSyntaxError(
                f"in {what} {str(text)!r}: {msg}", getattr(text, "line", None), getattr(text, "col", None)
            ) from None

    return read


def parse_derivation(text: str) -> Derivation:
    """Read ``(sort ..)`` / ``(const ..)`` / ``(var ..)`` headers and one ``(derivation ..)``."""
    try:
        forms = parse_sexp(text)
    except SexpError as e:
        raise DerivationSyntaxError(str(e).rsplit(" (line", 1)[0], e.line, e.col) from None
    ctx = ProofContext()
    body = None
    for f in forms:
        if not isinstance(f, list) or not f:
            raise DerivationSyntaxError(f"unexpected top-level atom {f!r}")
        tag = f[0]
        if tag == "sort":
            ctx.sorts += [str(x) for x in f[1:]]
        elif tag in ("const", "var"):
            if len(f) != 3:
                raise DerivationSyntaxError(f"({tag} name \"type\") expected, got {f!r}")
            try:
                ty = parse_type(str(f[2]), sorts=ctx.sorts)
            except ParseError as e:
                raise DerivationSyntaxError(f"bad type for {f[1]}: {e}") from None
            (ctx.consts if tag == "const" else ctx.variables)[str(f[1])] = ty
        elif tag == "derivation":
            if body is not None:
                raise DerivationSyntaxError("more than one (derivation ...) form")
            body = f
        else:
            raise DerivationSyntaxError(f"unknown top-level form ({tag} ...)")
    if body is None:
        raise DerivationSyntaxError("missing (derivation ...) form")
    d = _read_node(body, _reader(ctx))
    d.context = ctx
    return d


def _read_node(form, read) -> Derivation:
    if not (isinstance(form, list) and form and form[0] == "derivation"):
        raise DerivationSyntaxError(f"expected (derivation ...), got {_short(form)}")
    parts: dict[str, list] = {}
    for item in form[1:]:
        if not (isinstance(item, list) and item and isinstance(item[0], str)):
            raise DerivationSyntaxError(f"malformed derivation field {_short(item)}")
        if item[0] in parts:
            raise DerivationSyntaxError(f"duplicate ({item[0]} ...) field")
        if item[0] not in ("conclusion", "rule", "witness", "premises"):
            raise DerivationSyntaxError(f"unknown derivation field ({item[0]} ...)")
        parts[item[0]] = item
    if "conclusion" not in parts:
        raise DerivationSyntaxError("missing (conclusion ...)")
    if "rule" not in parts:
        raise DerivationSyntaxError("missing (rule ...)")
    rule_f = parts["rule"]
    if len(rule_f) != 2:
        raise DerivationSyntaxError("(rule Name) takes one name")
    try:
        rule = RuleName(str(rule_f[1]))
    except ValueError:
        raise DerivationSyntaxError(f"unknown rule {rule_f[1]!r}") from None
    concl = _read_sequent(parts["conclusion"], read)
    witnesses = [read(w, "witness") for w in parts.get("witness", [None])[1:]]
    premises = [_read_node(p, read) for p in parts.get("premises", [None])[1:]]
    if len(premises) != PREMISE_COUNT[rule]:
        raise DerivationSyntaxError(f"{rule} takes {PREMISE_COUNT[rule]} premise(s), got {len(premises)}")
    return Derivation(concl, rule, premises, witnesses)


def _read_sequent(form, read) -> Sequent:
    if len(form) != 2 or not (isinstance(form[1], list) and form[1] and form[1][0] == "seq"):
        raise DerivationSyntaxError("(conclusion (seq (ante ...) (succ ...))) expected")
    ante: list[Term] = []
    succ: list[Term] = []
    seen = set()
    for part in form[1][1:]:
        if not (isinstance(part, list) and part and part[0] in ("ante", "succ")) or part[0] in seen:
            raise DerivationSyntaxError(f"malformed sequent part {_short(part)}")
        seen.add(part[0])
        target = ante if part[0] == "ante" else succ
        for t in part[1:]:
            target.append(read(t, part[0]))
    try:
        return Sequent(tuple(ante), tuple(succ))
    except TypeError as e:
        raise DerivationSyntaxError(str(e)) from None


def _short(form) -> str:
    s = repr(form)
    return s if len(s) < 60 else s[:57] + "..."


def _q(t: Term) -> str:
    s = print_term(t)
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def serialize_derivation(d: Derivation) -> str:
    lines: list[str] = []
    ctx = d.context
    if ctx is not None:
        if ctx.sorts:
            lines.append("(sort " + " ".join(ctx.sorts) + ")")
        for name, ty in ctx.consts.items():
            lines.append(f'(const {name} "{ty}")')
        for name, ty in ctx.variables.items():
            lines.append(f'(var {name} "{ty}")')
    _write_node(d, 0, lines)
    return "\n".join(lines) + "\n"


def _write_node(d: Derivation, depth: int, out: list[str]) -> None:
    pad = "  " * depth
    ante = " ".join(_q(t) for t in d.conclusion.ante)
    succ = " ".join(_q(t) for t in d.conclusion.succ)
    out.append(f"{pad}(derivation")
    out.append(f"{pad}  (conclusion (seq (ante{' ' + ante if ante else ''}) (succ{' ' + succ if succ else ''})))")
    tail = ")" if not d.witnesses and not d.premises else ""
    out.append(f"{pad}  (rule {d.rule}){tail}")
    if d.witnesses:
        tail = ")" if not d.premises else ""
        out.append(f"{pad}  (witness " + " ".join(_q(w) for w in d.witnesses) + ")" + tail)
    if d.premises:
        out.append(f"{pad}  (premises")
        for p in d.premises:
            _write_node(p, depth + 2, out)
        out[-1] += "))"
