import itertools

import pytest

from nabla.models import code_model, interpret_term
from nabla.syntax import (
    O,
    Abbr,
    App,
    Base,
    Const,
    Fun,
    Lam,
    ParseError,
    Prim,
    TermTypeError,
    Var,
    alpha_equal,
    beta_normalize,
    compile_sk,
    convertible,
    default_catalog,
    expand_abbreviations,
    expand_all,
    fold_abbreviations,
    has_abbreviations,
    is_beta_normal,
    is_lambda_free,
    parse_formula,
    parse_term,
    parse_type,
    print_term,
    print_type,
    spine,
    substitute,
    type_of,
    weak_reduce,
)
from nabla.syntax.types import arrow_parts
from termgen import CONSTS, TermGen

PQ = {"p": O, "q": O}
PRIMS = {"D", "Q", "A", "C", "V", "S", "K"}


def prims_only(t) -> bool:
    if isinstance(t, Abbr):
        return False
    if isinstance(t, Prim):
        return t.name in PRIMS
    if isinstance(t, App):
        return prims_only(t.fn) and prims_only(t.arg)
    if isinstance(t, Lam):
        return prims_only(t.body)
    return True


class TestTypes:
    def test_right_assoc(self):
        assert parse_type("o>o>o") == Fun(O, Fun(O, O))

    def test_parens(self):
        assert parse_type("(o>o)>o") == Fun(Fun(O, O), O)

    def test_sorts(self):
        assert parse_type("i>o", sorts=["i"]) == Fun(Base("i"), O)

    def test_undeclared_sort(self):
        with pytest.raises(ParseError):
            parse_type("i>o")

    def test_print(self):
        assert print_type(Fun(Fun(O, O), O)) == "(o>o)>o"


class TestParse:
    def test_identity_lambda(self):
        t = parse_term(r"\x:o. x")
        assert isinstance(t, Lam) and type_of(t) == Fun(O, O)

    def test_nand_is_joint_denial(self):
        t = expand_abbreviations(parse_term("nand p q", consts=PQ))
        assert t == App(App(Prim("D"), Const("p", O)), Const("q", O))

    def test_forall_sugar(self):
        t = parse_term("forall x:o. imp x x")
        head, args = spine(t)
        assert head == Abbr("forall", (O,)) and isinstance(args[0], Lam)
        full = expand_all(t)
        assert spine(full)[0] == Prim("A", (O,))

    def test_application_left_assoc(self):
        t = parse_term("and p q", consts=PQ)
        assert isinstance(t, App) and isinstance(t.fn, App)

    def test_lambda_extends_right(self):
        t = parse_term(r"\x:o. and x x")
        assert isinstance(t, Lam) and type_of(t) == Fun(O, O)

    def test_implicit_atoms(self):
        t = parse_formula("imp a b", implicit_atoms=True)
        assert t.constants == frozenset({"a", "b"})

    def test_implicit_atom_type_inferred(self):
        t = parse_formula("f a", implicit_atoms=True)
        assert type_of(spine(t)[0]) == Fun(O, O)

    @pytest.mark.parametrize(
        "text, kw, needle",
        [
            ("zzz", {}, "unbound identifier"),
            ("p # q", {"consts": PQ}, "unexpected character"),
            ("and p", {"consts": PQ, "expected": O}, "type mismatch"),
            ("p q", {"consts": PQ}, "col 3"),
            (r"\x:o. ", {}, "end of input"),
        ],
    )
    def test_errors_carry_positions(self, text, kw, needle):
        with pytest.raises(ParseError) as e:
            parse_term(text, **kw)
        assert needle in str(e.value) and "line 1" in str(e.value)

    def test_keywords_map_to_catalog(self):
        cat = default_catalog()
        for kw in ("True False not and or nand imp iff Simp Eq box bnot limp liff qimp qiff det ind excl "
                   "bexcl forall exists eps next sing sel dag ddag inf 0 1 2 3 N Univ Empty hat check").split():
            assert kw in cat


class TestPrint:
    def test_identity_round_trip(self):
        assert print_term(parse_term(r"\x:o. x")) == r"\x:o. x"

    def test_fold_true(self):
        t = expand_all(parse_term("True"))
        assert print_term(t, fold=True) == "True"
        assert alpha_equal(fold_abbreviations(t), parse_term("True"))

    def test_unicode_mode(self):
        assert print_term(parse_term("forall x:o. imp x x"), unicode=True).startswith("∀x:o.")

    def test_generated_round_trip(self):
        for t in TermGen(7).terms(200):
            assert alpha_equal(parse_term(print_term(t), consts=CONSTS), t)


class TestTypeOf:
    def test_primitives(self):
        assert type_of(Prim("D")) == Fun(O, Fun(O, O))
        assert type_of(Prim("C", (O,))) == Fun(Fun(O, O), O)
        assert type_of(Prim("V")) == Fun(O, O)

    def test_application(self):
        p = Lam("p", Fun(O, O), Var("p", Fun(O, O)))
        assert type_of(App(p, Const("c", Fun(O, O)))) == Fun(O, O)

    def test_mismatch(self):
        with pytest.raises(TermTypeError):
            type_of(App(Const("p", O), Const("q", O)))


class TestSubstitution:
    def test_free_occurrence(self):
        true = expand_all(parse_term("True"))
        assert substitute(Var("x", O), "x", true) == true

    def test_capture_avoidance(self):
        t = substitute(Lam("y", O, Var("x", O)), "x", Var("y", O))
        assert isinstance(t, Lam) and t.var != "y" and t.body == Var("y", O)

    def test_bound_untouched(self):
        t = Lam("x", O, Var("x", O))
        assert substitute(t, "x", Const("s", O)) == t

    def test_type_mismatch(self):
        with pytest.raises(TermTypeError):
            substitute(Var("x", O), "x", Const("f", Fun(O, O)))


class TestAlpha:
    def test_renamed(self):
        assert alpha_equal(parse_term(r"\x:o. x"), parse_term(r"\y:o. y"))

    def test_swapped_binders(self):
        assert not alpha_equal(parse_term(r"\x:o. \y:o. x"), parse_term(r"\y:o. \x:o. x"))


class TestBeta:
    def test_redex(self):
        q = Const("q", O)
        assert beta_normalize(App(Lam("x", O, Var("x", O)), q)) == q

    def test_idempotent_and_normal(self):
        for t in TermGen(3).terms(100):
            n = beta_normalize(t)
            assert is_beta_normal(n) and beta_normalize(n) == n

    def test_subject_reduction(self):
        for t in TermGen(4).terms(200):
            assert type_of(beta_normalize(t)) == type_of(t)

    def test_convertible(self):
        a = parse_term(r"(\x:o. and x x) p", consts=PQ)
        assert convertible(a, parse_term("and p p", consts=PQ))
        assert not convertible(a, parse_term("and p q", consts=PQ))


class TestExpansion:
    def test_false(self):
        one = expand_abbreviations(parse_term("False"), depth="one")
        assert alpha_equal(one, parse_term("not True"))
        full = expand_all(parse_term("False"))
        assert prims_only(full) and spine(full)[0] == Prim("D")

    def test_two(self):
        assert alpha_equal(expand_abbreviations(parse_term("2"), depth="one"), parse_term("next 1"))

    def test_iff_six_conjuncts(self):
        t = expand_abbreviations(parse_term("iff p q", consts=PQ), depth="one")
        conjuncts = []
        while True:
            head, args = spine(t)
            if isinstance(head, Abbr) and head.name == "and":
                conjuncts.append(args[0])
                t = args[1]
            else:
                conjuncts.append(t)
                break
        assert len(conjuncts) == 6
        assert all(spine(c)[0] == Abbr("limp") for c in conjuncts)

    def test_every_catalog_entry_expands(self):
        for d in default_catalog():
            tyargs = [O] * len(d.tparams)
            full = expand_all(d.ref(*tyargs))
            assert prims_only(full) and not has_abbreviations(full)
            assert type_of(full) == type_of(d.ref(*tyargs))

    def test_only_restricts(self):
        t = expand_abbreviations(parse_term("and (not p) q", consts=PQ), only=["not"])
        assert spine(t)[0] == Abbr("and")


class TestCombinators:
    def test_identity_is_skk(self):
        assert print_term(compile_sk(parse_term(r"\x:o. x"))) == "$S $K[o,o>o] $K[o,o]"

    def test_constant_function(self):
        c = Const("c", O)
        assert compile_sk(Lam("x", O, c)) == App(Prim("K", (O, O)), c)

    def test_weak_reduction(self):
        t = App(compile_sk(parse_term(r"\x:o. x")), Const("c", O))
        assert weak_reduce(t) == Const("c", O)

    @pytest.mark.parametrize(
        "text",
        [r"\x:o. x", r"\x:o. \y:o. nand y x", r"\x:o. and x (not x)", r"\x:o. \y:o. imp x y"],
    )
    def test_extensional_agreement(self, text):
        t = parse_term(text)
        sk = compile_sk(t)
        assert is_lambda_free(sk) and type_of(sk) == type_of(t)
        m = code_model(1)
        codes = m.universe.carrier(O)
        n = len(arrow_parts(type_of(t))[0])
        for args in itertools.product(codes, repeat=n):
            a, b = interpret_term(t, m), interpret_term(sk, m)
            for x in args:
                a, b = a(x), b(x)
            assert a == b
