"""Shipped derivations: base-logic proofs plus fixtures that must be rejected."""

from __future__ import annotations

from ..calculus import Derivation, Sequent, parse_derivation
from ..syntax import default_catalog
from .loader import data_path

__all__ = ["BASE_PROOFS", "FIXTURES", "proof_path", "load_proof", "sequent_formula"]

BASE_PROOFS = (
    "identity_p",
    "identity_and",
    "one_identity",
    "refl_one",
    "indet_neg",
    "and_commute",
    "forall_refl",
    "negflip",
    "gen_infinity",
    "beta",
    "all_left",
    "extensionality",
    "choice",
)

# name -> (profile to check under, expected violation kind)
FIXTURES = {
    "eigenvariable_violation": ("nabla", "eigenvariable"),
    "delta_axiom": ("dag", "profile"),
}


def proof_path(name: str):
    return data_path("proofs").joinpath(name + ".proof")


def load_proof(name: str) -> Derivation:
    return parse_derivation(proof_path(name).read_text(encoding="utf-8"))


def sequent_formula(s: Sequent):
    """The sequent as an entailment query's two sides (an empty succedent is False)."""
    return list(s.ante), list(s.succ) or [default_catalog()["False"].ref()]
