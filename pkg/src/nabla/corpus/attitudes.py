"""Propositional attitudes: lexicon expansion, the reduct and its countermodel."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..codes import F, T, TruthCode
from ..entail import EntailQuery, Verdict, check_validity, verify_countermodel
from ..models import FiniteModel, interpret_term
from ..syntax import O, App, Term, Var, alpha_equal, beta_normalize, expand_abbreviations, print_term
from .loader import Theory, load_theory

__all__ = ["NLExample", "NLReport", "nl_example", "reduce_argument", "nl_reduce_and_refute", "ReductionMismatch"]

# the integrity abbreviation stays folded in the reduct
INTEGRITY = "ell"


class ReductionMismatch(AssertionError):
    pass


@dataclass
class NLExample:
    theory: Theory

    @property
    def lexicon(self) -> list[str]:
        return list(self.theory.lexicon)

    def argument(self, name: str = "main") -> Term:
        return self.theory.get("argument", name)

    def reduct(self, name: str = "main") -> Term:
        return self.theory.get("reduct", name)

    @property
    def countermodel(self) -> FiniteModel:
        return self.theory.models["main"]

    @property
    def postulates(self) -> list[tuple[str, Term]]:
        return self.theory.of("postulate")


def nl_example() -> NLExample:
    return NLExample(load_theory("attitudes"))


def reduce_argument(ex: NLExample, t: Term) -> Term:
    """Unfold every lexicon entry except the integrity abbreviation, then beta-normalize."""
    names = [n for n in ex.lexicon if n != INTEGRITY]
    return beta_normalize(expand_abbreviations(t, only=names))


@dataclass
class NLReport:
    k: int
    reduct: Term
    reduct_matches: bool
    value: TruthCode
    countermodel_ok: bool
    argument_value: TruthCode
    postulates: dict[str, TruthCode]
    control: Verdict
    dances_value: TruthCode
    dances_consequent: TruthCode
    integrity_values: dict[TruthCode, TruthCode] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            self.reduct_matches
            and self.countermodel_ok
            and self.value != T
            and self.control.entailed
            and self.dances_value != T
            and all(v == T for v in self.postulates.values())
        )

    def lines(self) -> list[str]:
        out = [
            "reduct: " + print_term(self.reduct),
            f"reduct matches target: {'yes' if self.reduct_matches else 'NO'}",
            f"countermodel value: {self.value.name} (argument before reduction: {self.argument_value.name})",
            f"countermodel verified: {'yes' if self.countermodel_ok else 'NO'}",
            "note: finite-approximation witness (k={}, no use of next)".format(self.k),
        ]
        for name, v in self.postulates.items():
            out.append(f"postulate {name}: {v.name}")
        out.append(
            "integrity: " + " ".join(f"{s.name}:{v.name}" for s, v in self.integrity_values.items())
        )
        out.append(f"'Victoria dances' under the same model: {self.dances_value.name} (consequent {self.dances_consequent.name})")
        out.append("control argument (smiles and dances):")
        out += ["  " + line for line in self.control.lines()]
        return out

    def format(self) -> str:
        return "\n".join(self.lines())


def _consequent_at(t: Term, model: FiniteModel, situation: TruthCode) -> TruthCode:
    """Value of ``q situation`` for a reduct ``forall i. imp (p i) (q i)``."""
    lam = t.arg  # type: ignore[attr-defined]
    body = lam.body
    return interpret_term(body.arg, model, {lam.var: situation})


def nl_reduce_and_refute(k: int = 2, budget: int | None = None) -> NLReport:
    """Reduce the argument, refute it with the shipped model, and check the control.

    The control argument is swept with ``ell`` left opaque and restricted
    to determinate values, splitting the outer quantifier over situations.
    """
    ex = nl_example()
    red = reduce_argument(ex, ex.argument("main"))
    target = ex.reduct("main")
    matches = alpha_equal(red, target)
    if not matches:
        raise ReductionMismatch(f"reduct differs:\n  got    {print_term(red)}\n  wanted {print_term(target)}")
    model = ex.countermodel
    if model.k != k:
        raise ValueError(f"the shipped countermodel lives at k={model.k}")
    value = interpret_term(red, model)
    arg_value = interpret_term(ex.argument("main"), model)
    ok = verify_countermodel(model, EntailQuery([], [red], k))
    posts = {name: interpret_term(p, model) for name, p in ex.postulates}
    integrity = ex.theory.catalog.ref(INTEGRITY)
    ell_vals = {s: interpret_term(App(integrity, Var("s", O)), model, {"s": s}) for s in model.universe.carrier(O)}

    dances = reduce_argument(ex, ex.argument("dances"))
    dances_value = interpret_term(dances, model)
    dances_cons = _consequent_at(dances, model, T)

    control = reduce_argument(ex, ex.argument("control"))
    extra = {} if budget is None else {"budget": budget}
    ctl = check_validity(
        control,
        k,
        opaque=frozenset({INTEGRITY}),
        domains={INTEGRITY: [T, F]},
        decompose=True,
        **extra,
    )
    return NLReport(k, red, matches, value, ok, arg_value, posts, ctl, dances_value, dances_cons, ell_vals)
