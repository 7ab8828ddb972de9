import itertools

import pytest

from nabla.codes import CodeSpace, F, T, fold_universal, ind_code, neg
from nabla.models import (
    CardinalityError,
    Fn,
    FiniteModel,
    ModelError,
    build_full_universe,
    canonical_choice,
    check_axiom_profile,
    code_model,
    format_model,
    interpret_term,
    parse_model,
)
from nabla.syntax import O, Base, Fun, beta_normalize, parse_term
from nabla.theory import get_profile
from termgen import CONSTS, TermGen

I1, I2 = ind_code(1), ind_code(2)
OO = Fun(O, O)


def closed(text, **kw):
    return parse_term(text, **kw)


class TestUniverse:
    def test_codes(self):
        assert len(build_full_universe(2).carrier(O)) == 4

    def test_function_space(self):
        u = build_full_universe(2)
        assert u.size(OO) == 256 and len(u.carrier(OO)) == 256

    def test_guard(self):
        with pytest.raises(CardinalityError) as e:
            build_full_universe(2, needed=[Fun(OO, O)], guard=10**6)
        assert "o>o" in str(e.value)

    def test_sorts(self):
        u = build_full_universe(1, {"i": 3})
        assert len(u.carrier(Base("i"))) == 3

    def test_empty_sort_rejected(self):
        with pytest.raises(ModelError):
            build_full_universe(1, {"i": 0})

    def test_canonical_order(self):
        u = build_full_universe(1)
        graphs = [f.graph for f in u.carrier(OO)]
        assert graphs == sorted(graphs)
        assert list(u.carrier(O)) == [T, F, I1]


class TestInterpretation:
    m2 = code_model(2)

    def test_true(self):
        assert interpret_term(closed("True"), self.m2) == T

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_dag(self, k):
        assert interpret_term(closed("dag"), code_model(k)) == I1

    def test_excluded_middle_fold(self):
        t = closed("forall x:o. or x (not x)")
        oracle = fold_universal([neg(neg(c)) if c.is_determinate else c for c in CodeSpace(2)])
        assert oracle == F
        assert interpret_term(t, self.m2) == F

    def test_constants_and_assignment(self):
        m = code_model(2, {"p": O}).with_interp({"p": I2})
        t = parse_term("and p x", consts={"p": O}, variables={"x": O})
        assert interpret_term(t, m, {"x": T}) == I2

    def test_missing_interpretation(self):
        with pytest.raises(ModelError):
            interpret_term(parse_term("p", consts={"p": O}), self.m2)

    def test_missing_assignment(self):
        with pytest.raises(ModelError):
            interpret_term(parse_term("x", variables={"x": O}), self.m2)

    def test_compositional_on_redexes(self):
        m = code_model(1, CONSTS)
        u = m.universe
        m = m.with_interp({"p": T, "q": I1, "r": F, "f": u.carrier(OO)[5], "g": u.carrier(OO)[11]})
        for t in TermGen(11).terms(60, depth=3):
            if t.type != O or "h" in t.constants:
                continue
            assert interpret_term(t, m) == interpret_term(beta_normalize(t), m)

    def test_interpretations_enumerate(self):
        m = code_model(1, {"p": O, "q": O})
        assert len(list(m.interpretations())) == 9

    def test_bad_value_rejected(self):
        with pytest.raises(ModelError):
            code_model(1, {"p": O}).with_interp({"p": I2})


class TestChoice:
    u = build_full_universe(2)

    def test_singleton(self):
        for v in self.u.carrier(O):
            sing = self.u.function(OO, lambda x, v=v: T if x == v else F)
            assert canonical_choice(sing, self.u, O) == v

    def test_empty_predicate(self):
        bot = self.u.function(OO, lambda x: F)
        assert canonical_choice(bot, self.u, O) == T

    def test_extensional(self):
        a = self.u.function(OO, lambda x: T if x in (I1, I2) else F)
        b = Fn(O, self.u, table=(F, F, T, T))
        assert canonical_choice(a, self.u, O) == canonical_choice(b, self.u, O) == I1

    def test_selection_term(self):
        t = parse_term("sel (sing 2)")
        assert interpret_term(t, code_model(2)) == I2


class TestCodeModel:
    def test_k_zero_classical(self):
        assert list(code_model(0).universe.carrier(O)) == [T, F]

    def test_negative(self):
        with pytest.raises(ValueError):
            code_model(-1)

    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_base_axioms(self, k):
        assert check_axiom_profile(code_model(k), get_profile("nabla")).ok

    def test_omega_confinement_fails(self):
        rep = check_axiom_profile(code_model(2), get_profile("omega"))
        r = rep.result("OmegaAxiom", "confinement")
        assert not r.holds and r.witness == {"x": I2}
        assert rep.result("OmegaAxiom", "existence").holds

    def test_delta_in_classical(self):
        assert check_axiom_profile(code_model(0), get_profile("delta")).ok

    def test_delta_fails_with_indeterminacy(self):
        assert not check_axiom_profile(code_model(1), get_profile("delta")).ok

    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_logical_axioms(self, k):
        m = code_model(k)
        a = parse_term("limp (ind x) (Eq (not x) x)", variables={"x": O})
        b = parse_term("limp (and (not (Eq x y)) (and (ind x) (ind y))) (nand x y)", variables={"x": O, "y": O})
        codes = list(CodeSpace(k))
        assert all(interpret_term(a, m, {"x": x}) == T for x in codes)
        assert all(interpret_term(b, m, {"x": x, "y": y}) == T for x, y in itertools.product(codes, codes))

    def test_choice_axiom(self):
        m = code_model(1)
        t = parse_term("limp (p x) (p (sel p))", variables={"x": O, "p": OO})
        for f in m.universe.carrier(OO):
            for x in m.universe.carrier(O):
                assert interpret_term(t, m, {"x": x, "p": f}) == T

    def test_extensionality(self):
        m = code_model(1)
        t = parse_term("limp (EqAll f g) (Eq f g)", variables={"f": OO, "g": OO})
        c = m.universe.carrier(OO)
        for f, g in itertools.product(c, c):
            assert interpret_term(t, m, {"f": f, "g": g}) == T


class TestModelFormat:
    def test_round_trip(self):
        m = code_model(2, {"p": O, "f": OO})
        m = m.with_interp({"p": I1, "f": m.universe.function(OO, {T: F}, default=T)})
        text = format_model(m)
        assert "(codes 2)" in text and "(default T)" in text
        back = parse_model(text)
        assert format_model(back) == text
        assert back.interp["f"](T) == F and back.interp["f"](I2) == T

    def test_sorts(self):
        text = '(model (codes 1) (sort i 2) (const a "i" i#1))'
        m = parse_model(text)
        assert m.universe.sort_sizes == {"i": 2}

    @pytest.mark.parametrize(
        "text",
        ["(model (codes x))", "(modl (codes 1))", '(model (codes 1) (const p "o" i2))', '(model (codes 1) (const p "o"))'],
    )
    def test_rejects(self, text):
        with pytest.raises((ModelError, ValueError)):
            parse_model(text)

    def test_is_dataclass(self):
        assert isinstance(code_model(1), FiniteModel)


class TestOracleEquivalence:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    @pytest.mark.parametrize("name", ["iff", "imp", "bexcl", "excl", "qiff", "liff"])
    def test_clause_table_equals_expansion(self, name, k):
        from nabla.codes import eval_connective
        from nabla.syntax import default_catalog

        ref = default_catalog()[name].ref()
        m = code_model(k)
        for a, b in itertools.product(CodeSpace(k), repeat=2):
            assert interpret_term(ref, m)(a)(b) == eval_connective(name, [a, b])

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_iff_alternate(self, k):
        from nabla.codes import iff_code

        consts = {"p": O, "q": O}
        alt = parse_term(
            "and (liff p q) (and (liff (not p) (not q)) (or (Eq p q) (or (det p) (det q))))", consts=consts
        )
        base = code_model(k, consts)
        for a, b in itertools.product(CodeSpace(k), repeat=2):
            assert interpret_term(alt, base.with_interp({"p": a, "q": b})) == iff_code(a, b)
