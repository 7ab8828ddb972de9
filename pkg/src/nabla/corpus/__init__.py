"""Shipped example theories and their reproductions."""

from .attitudes import NLExample, NLReport, ReductionMismatch, nl_example, nl_reduce_and_refute, reduce_argument
from .case_study import (
    EXPECTED,
    GOALS,
    CaseStudyReport,
    CaseStudyTheory,
    VariantReport,
    case_study_theory,
    case_study_variants,
    run_case_study,
)
from .proofs import BASE_PROOFS, FIXTURES, load_proof, proof_path, sequent_formula
from .loader import Theory, TheoryFileError, data_path, load_theory, read_theory

__all__ = [
    "NLExample",
    "NLReport",
    "ReductionMismatch",
    "nl_example",
    "nl_reduce_and_refute",
    "reduce_argument",
    "EXPECTED",
    "GOALS",
    "CaseStudyReport",
    "CaseStudyTheory",
    "VariantReport",
    "case_study_theory",
    "case_study_variants",
    "run_case_study",
    "Theory",
    "TheoryFileError",
    "data_path",
    "load_theory",
    "read_theory",
    "BASE_PROOFS",
    "FIXTURES",
    "load_proof",
    "proof_path",
    "sequent_formula",
]
