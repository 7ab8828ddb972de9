"""Axiom schemes and theory profiles shared by the model checker and the
proof checker."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

from .syntax import O, Term, Type, parse_formula, parse_type
from .syntax.types import type_vars

__all__ = ["AxiomScheme", "AXIOM_SCHEMES", "BASE_AXIOMS", "TheoryProfile", "PROFILES", "get_profile"]


@dataclass(frozen=True)
class AxiomScheme:
    """An open formula; every instance of its free variables is an axiom."""

    name: str
    text: str
    variables: tuple[tuple[str, str], ...] = ()
    parts: tuple[tuple[str, str], ...] = ()

    @cached_property
    def var_types(self) -> dict[str, Type]:
        return {v: parse_type(ty, allow_tvars=True) for v, ty in self.variables}

    @cached_property
    def schematic(self) -> bool:
        return any(type_vars(t) for t in self.var_types.values())

    def formula(self, tvar_instance: Type = O) -> Term:
        """The scheme body with free variables, type variables set to ``tvar_instance``."""
        from .syntax import instantiate_types

        t = parse_formula(self.text, variables=self.var_types, allow_tvars=True)
        return instantiate_types(t, {"t": tvar_instance}) if self.schematic else t

    def part_formulas(self) -> list[tuple[str, Term]]:
        """Named conjuncts (used to report which half of a split axiom fails)."""
        if not self.parts:
            return [(self.name, self.formula())]
        out = []
        for label, text in self.parts:
            out.append((label, parse_formula(text, variables=self.var_types)))
        return out


AXIOM_SCHEMES: dict[str, AxiomScheme] = {
    s.name: s
    for s in (
        AxiomScheme("IndetNeg", "limp (ind x) (Eq (not x) x)", (("x", "o"),)),
        AxiomScheme(
            "IndetNand",
            "limp (and (not (Eq x y)) (and (ind x) (ind y))) (nand x y)",
            (("x", "o"), ("y", "o")),
        ),
        AxiomScheme("Choice", "limp (p v) (p (sel p))", (("p", "'t>o"), ("v", "'t"))),
        AxiomScheme("GenInjective", "limp (Eq (next x) (next y)) (Eq x y)", (("x", "o"), ("y", "o"))),
        AxiomScheme("GenInfinity", "Eq (next inf) inf"),
        AxiomScheme(
            "GenInduction",
            "limp (and (p inf) (and (p 0) (forall x:o. limp (p x) (p (next x))))) (p y)",
            (("p", "o>o"), ("y", "o")),
        ),
        AxiomScheme(
            "OmegaAxiom",
            "and (limp (ind x) (ind (next x))) (exists y:o. ind y)",
            (("x", "o"),),
            parts=(
                ("confinement", "limp (ind x) (ind (next x))"),
                ("existence", "exists y:o. ind y"),
            ),
        ),
        AxiomScheme("DeltaAxiom", "det x", (("x", "o"),)),
        AxiomScheme("DagAxiom", "or (det x) (Eq x dag)", (("x", "o"),)),
        AxiomScheme("DdagAxiom", "or (det x) (or (Eq x dag) (Eq x ddag))", (("x", "o"),)),
    )
}

BASE_AXIOMS = ("IndetNeg", "IndetNand", "Choice", "GenInjective", "GenInfinity", "GenInduction")


@dataclass(frozen=True)
class TheoryProfile:
    """Which optional axioms are in force, plus declared sorts."""

    name: str = "nabla"
    omega: bool = False
    delta: bool = False
    dag: bool = False
    ddag: bool = False
    sorts: tuple[str, ...] = ()

    @property
    def axioms(self) -> tuple[str, ...]:
        extra = [
            name
            for flag, name in (
                (self.omega, "OmegaAxiom"),
                (self.delta, "DeltaAxiom"),
                (self.dag, "DagAxiom"),
                (self.ddag, "DdagAxiom"),
            )
            if flag
        ]
        return BASE_AXIOMS + tuple(extra)

    def enables(self, axiom: str) -> bool:
        return axiom in self.axioms

    def conflicts(self) -> list[str]:
        """Combinations whose axioms contradict one another."""
        out = []
        if self.delta:
            for flag, label in ((self.omega, "omega"), (self.dag, "dag"), (self.ddag, "ddag")):
                if flag:
                    out.append(f"delta contradicts {label}: it rules out the indeterminacies {label} needs")
        return out

    def check(self) -> list[str]:
        msgs = self.conflicts()
        for m in msgs:
            warnings.warn(f"profile {self.name}: {m}", stacklevel=2)
        return msgs


PROFILES: dict[str, TheoryProfile] = {
    p.name: p
    for p in (
        TheoryProfile("nabla"),
        TheoryProfile("omega", omega=True),
        TheoryProfile("delta", delta=True),
        TheoryProfile("dag", dag=True),
        TheoryProfile("ddag", ddag=True),
        TheoryProfile("iota", sorts=("i",)),
        TheoryProfile("iota-delta", delta=True, sorts=("i",)),
    )
}
PROFILES["base"] = PROFILES["nabla"]


def get_profile(name: str) -> TheoryProfile:
    try:
        return PROFILES[name]
    except KeyError:
        raise KeyError(f"unknown profile {name!r}; choose from {', '.join(sorted(PROFILES))}") from None
