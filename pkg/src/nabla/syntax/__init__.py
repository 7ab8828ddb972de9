"""Typed lambda-calculus kernel: types, terms, parsing, printing, reduction."""

from .catalog import CATALOG_SOURCE, AbbrevDef, Catalog, UnknownAbbreviation, default_catalog
from .expand import convertible, expand_abbreviations, expand_all, has_abbreviations, normal_form
from .parser import BINDERS, ParseError, Signature, parse_formula, parse_term, parse_type
from .printer import fold_abbreviations, print_term, print_type
from .sk import combinator_I, compile_sk, is_lambda_free, weak_reduce
from .terms import (
    PRIMITIVES,
    Abbr,
    App,
    Const,
    Lam,
    Prim,
    Term,
    TermTypeError,
    Var,
    alpha_equal,
    alpha_key,
    apply,
    beta_normalize,
    fresh_name,
    instantiate_types,
    is_beta_normal,
    lams,
    prim,
    spine,
    subst_hereditary,
    subst_many,
    substitute,
    term_size,
    type_of,
)
from .types import O, Base, Fun, TVar, Type, arrow_parts, fun

__all__ = [
    "CATALOG_SOURCE",
    "AbbrevDef",
    "Catalog",
    "UnknownAbbreviation",
    "default_catalog",
    "convertible",
    "expand_abbreviations",
    "expand_all",
    "has_abbreviations",
    "normal_form",
    "BINDERS",
    "ParseError",
    "Signature",
    "parse_formula",
    "parse_term",
    "parse_type",
    "fold_abbreviations",
    "print_term",
    "print_type",
    "combinator_I",
    "compile_sk",
    "is_lambda_free",
    "weak_reduce",
    "PRIMITIVES",
    "Abbr",
    "App",
    "Const",
    "Lam",
    "Prim",
    "Term",
    "TermTypeError",
    "Var",
    "alpha_equal",
    "alpha_key",
    "apply",
    "beta_normalize",
    "fresh_name",
    "instantiate_types",
    "is_beta_normal",
    "lams",
    "prim",
    "spine",
    "subst_hereditary",
    "subst_many",
    "substitute",
    "term_size",
    "type_of",
    "O",
    "Base",
    "Fun",
    "TVar",
    "Type",
    "arrow_parts",
    "fun",
]
