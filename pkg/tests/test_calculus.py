import warnings

import pytest

from nabla.calculus import (
    PREMISE_COUNT,
    CheckReport,
    Derivation,
    DerivationSyntaxError,
    ProofContext,
    RuleName,
    Sequent,
    check_derivation,
    check_rule_application,
    derive_identity,
    parse_derivation,
    serialize_derivation,
)
from nabla.corpus import BASE_PROOFS, FIXTURES, load_proof, proof_path
from nabla.syntax import O, Fun, Lam, Var, parse_formula, parse_term
from nabla.theory import TheoryProfile, get_profile

C = {"p": O, "q": O, "f": Fun(O, O), "g": Fun(O, O)}


def P(text, **kw):
    return parse_term(text, consts=C, **kw)


def seq(ante, succ, **kw):
    return Sequent(tuple(P(t, **kw) for t in ante), tuple(P(t, **kw) for t in succ))


class TestSequent:
    def test_set_semantics(self):
        assert seq(["p", "q", "p"], ["q"]) == seq(["q", "p"], ["q"])
        assert len(seq(["p", "p"], ["q"]).ante) == 1

    def test_alpha_equal_members(self):
        a = Sequent((P(r"forall x:o. Eq x x"),), ())
        b = Sequent((P(r"forall y:o. Eq y y"),), ())
        assert a == b

    def test_members_are_formulas(self):
        with pytest.raises(TypeError):
            Sequent((P("f"),), ())


class TestRules:
    def test_inventory(self):
        assert len(RuleName) == 23
        assert PREMISE_COUNT[RuleName.Cut] == 2
        assert PREMISE_COUNT[RuleName.AllRight] == 1
        assert PREMISE_COUNT[RuleName.Reflexivity] == 0

    def test_reflexivity(self):
        assert check_rule_application(seq([], ["Eq p p"]), "Reflexivity") is None
        assert check_rule_application(seq([], ["Eq p q"]), "Reflexivity") is not None

    def test_unknown_rule(self):
        assert check_rule_application(seq([], ["p"]), "Magic").kind == "mismatch"

    def test_premise_count(self):
        v = check_rule_application(seq([], ["Eq p p"]), "Reflexivity", [seq([], ["p"])])
        assert v.kind == "arity"

    def test_weaken(self):
        assert check_rule_application(seq(["q"], ["p"]), "WeakenL", [seq([], ["p"])]) is None
        assert check_rule_application(seq([], ["p", "q"]), "WeakenR", [seq([], ["p"])]) is None
        assert check_rule_application(seq(["q"], ["p"]), "WeakenR", [seq([], ["p"])]) is not None

    def test_cut_mismatch(self):
        left = seq(["p", "q"], ["p"])
        right = seq(["p"], ["p", "f q"])
        v = check_rule_application(seq(["p"], ["p"]), "Cut", [left, right])
        assert v is not None and v.kind == "mismatch"

    def test_beta(self):
        assert check_rule_application(seq([], [r"Eq ((\x:o. and x x) p) (and p p)"]), "BetaConv") is None
        assert check_rule_application(seq([], [r"Eq ((\x:o. and x x) p) (and p q)"]), "BetaConv") is not None

    def test_extensionality(self):
        assert check_rule_application(seq(["EqAll f g"], ["Eq f g"]), "Extensionality") is None

    def test_substitution(self):
        theta = Lam("v", O, P("and v q", variables={"v": O}))
        c = seq(["Eq p q", "and p q"], ["and q q"])
        assert check_rule_application(c, "Substitution", [], [theta]) is None
        bad = seq(["Eq p q", "and p q"], ["and q p"])
        assert check_rule_application(bad, "Substitution", [], [theta]) is not None

    def test_negflip(self):
        prem = seq(["not p"], ["not p"])
        assert check_rule_application(seq(["not (not p)"], ["p"]), "NegFlipA", [prem]) is None

    def test_and_rules(self):
        assert check_rule_application(seq(["p", "q"], ["and p q"]), "AndRight") is None
        prem = seq(["q", "p"], ["and q p"])
        assert check_rule_application(seq(["and p q"], ["and q p"]), "AndLeft", [prem]) is None

    def test_all_left(self):
        c = seq(["forall x:o. Eq x x"], ["Eq p p"])
        assert check_rule_application(c, "AllLeft", [], [P("p")]) is None
        assert check_rule_application(c, "AllLeft", [], [P("q")]) is not None

    def test_all_right_eigenvariable(self):
        x = {"variables": {"x": O}}
        prem = seq(["Eq x x"], ["Eq x x"], **x)
        c = seq(["Eq x x"], ["forall y:o. Eq y y"], **x)
        v = check_rule_application(c, "AllRight", [prem], [P("x", **x)])
        assert v is not None and v.kind == "eigenvariable"

    def test_scheme_instance(self):
        c = seq([], ["limp (ind p) (Eq (not p) p)"])
        assert check_rule_application(c, "IndetNeg", [], [P("p")]) is None
        wrong = seq([], ["limp (ind p) (Eq p p)"])
        assert check_rule_application(wrong, "IndetNeg", [], [P("p")]).kind == "scheme"

    def test_scheme_up_to_folding(self):
        from nabla.syntax import expand_abbreviations

        inst = expand_abbreviations(P("limp (ind p) (Eq (not p) p)"), depth="one")
        assert check_rule_application(Sequent((), (inst,)), "IndetNeg", [], [P("p")]) is None

    def test_profile_gating(self):
        c = seq([], ["det p"])
        for name in ("dag", "ddag", "nabla"):
            v = check_rule_application(c, "DeltaAxiom", [], [P("p")], get_profile(name))
            assert v is not None and v.kind == "profile"
        assert check_rule_application(c, "DeltaAxiom", [], [P("p")], get_profile("delta")) is None

    def test_dag_axiom(self):
        c = seq([], ["or (det p) (Eq p dag)"])
        assert check_rule_application(c, "DagAxiom", [], [P("p")], get_profile("dag")) is None

    def test_contradictory_profile_warns(self):
        prof = TheoryProfile("mixed", omega=True, delta=True)
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter("always")
            assert prof.check()
        assert w


class TestDerivations:
    CORPUS = [
        "p", "and p q", "1", "forall x:o. Eq x x", "imp p q", "not (not p)", "box p", "iff p q",
        "bexcl p q", "limp p q", "f p", "Eq f g", "exists x:o. and x p", "next p", "hat p",
        "check q", "det p", "ind p", "EqAll f g", "sel (sing 2)", "qimp p p", "or p (not p)",
        "Simp p q", "excl p (f q)", "inf",
    ]

    @pytest.mark.parametrize("text", CORPUS)
    def test_identity(self, text):
        d = derive_identity(P(text))
        assert check_derivation(d).ok
        assert d.conclusion == Sequent((P(text),), (P(text),))

    def test_identity_rules(self):
        assert derive_identity(P("p")).rules_used == {
            RuleName.Reflexivity, RuleName.WeakenL, RuleName.WeakenR, RuleName.Substitution, RuleName.Cut,
        }

    def test_identity_hole_avoids_free_v(self):
        phi = P("and v p", variables={"v": O})
        assert check_derivation(derive_identity(phi)).ok

    def test_identity_of_non_formula(self):
        with pytest.raises(TypeError):
            derive_identity(P("f"))

    def test_violation_path(self):
        d = derive_identity(P("p"))
        d.premises[1].premises[0].conclusion = seq(["q"], ["Eq p p"])
        rep = check_derivation(d)
        assert not rep.ok and rep.violation.path == (1,)

    def test_deterministic(self):
        text = proof_path("eigenvariable_violation").read_text()
        reports = {str(check_derivation(parse_derivation(text))) for _ in range(3)}
        assert len(reports) == 1

    def test_report_string(self):
        assert str(CheckReport(True, 3)) == "ok (3 nodes)"


class TestShippedProofs:
    @pytest.mark.parametrize("name", BASE_PROOFS)
    def test_base_proofs_check(self, name):
        assert check_derivation(load_proof(name), "nabla").ok

    @pytest.mark.parametrize("name", BASE_PROOFS + tuple(FIXTURES))
    def test_round_trip(self, name):
        text = proof_path(name).read_text()
        assert serialize_derivation(parse_derivation(text)) == text

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_fixtures_rejected(self, name):
        profile, kind = FIXTURES[name]
        rep = check_derivation(load_proof(name), profile)
        assert not rep.ok and rep.violation.kind == kind

    def test_delta_fixture_ok_under_delta(self):
        assert check_derivation(load_proof("delta_axiom"), "delta").ok


class TestFormat:
    def test_identity_round_trip(self):
        d = derive_identity(P("p"))
        d.context = ProofContext(consts={"p": O})
        text = serialize_derivation(d)
        back = parse_derivation(text)
        assert serialize_derivation(back) == text and check_derivation(back).ok

    @pytest.mark.parametrize(
        "text, needle",
        [
            ("(derivation (rule Reflexivity))", "conclusion"),
            ('(derivation (conclusion (seq (ante) (succ "Eq p p"))))', "rule"),
            ('(derivation (conclusion (seq (ante) (succ "Eq p p"))) (rule Magic))', "Magic"),
            ('(derivation (conclusion (seq (ante) (succ "p"))) (rule Cut))', "premise"),
            ('(derivation (conclusion (seq (ante) (succ "p")) (rule Reflexivity)', ""),
        ],
    )
    def test_syntax_errors(self, text, needle):
        with pytest.raises(DerivationSyntaxError) as e:
            parse_derivation(text)
        assert needle in str(e.value)

    def test_error_position(self):
        with pytest.raises(DerivationSyntaxError) as e:
            parse_derivation('(derivation\n  (conclusion (seq (ante) (succ "and p ("))) (rule Reflexivity))')
        assert e.value.line == 2

    def test_is_dataclass_tree(self):
        d = Derivation(seq([], ["Eq p p"]), "Reflexivity")
        assert d.size == 1 and d.rule is RuleName.Reflexivity

    def test_formula_helper(self):
        assert parse_formula("p", consts=C).type == O
