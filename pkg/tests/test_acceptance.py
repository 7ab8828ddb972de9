"""Acceptance suite: one printed PASS/FAIL line per criterion, with timings."""

import itertools
import time

import pytest

from nabla.calculus import check_derivation, derive_identity
from nabla.codes import CodeSpace, F, T, check_clause_coherence, eval_connective, ind_code
from nabla.corpus import (
    BASE_PROOFS,
    EXPECTED,
    FIXTURES,
    case_study_theory,
    case_study_variants,
    load_proof,
    nl_example,
    nl_reduce_and_refute,
    run_case_study,
    sequent_formula,
)
from nabla.entail import EntailQuery, check_entailment, check_validity, make_table, verify_countermodel
from nabla.models import check_axiom_profile, code_model, interpret_term
from nabla.syntax import O, alpha_equal, beta_normalize, parse_formula, parse_term, print_term, type_of
from nabla.theory import get_profile
from termgen import CONSTS, TermGen

I1, I2 = ind_code(1), ind_code(2)
_C = {"T": T, "F": F, "1": I1, "2": I2}


def P(text):
    return parse_formula(text, implicit_atoms=True)


def report(capsys, n, title, ok, elapsed, limit=None, detail=""):
    budget = f" (limit {limit:g} s)" if limit is not None else ""
    status = "PASS" if ok and (limit is None or elapsed < limit) else "FAIL"
    with capsys.disabled():
        print(f"\n[criterion {n}] {status} {title}: {elapsed:.3f} s{budget}{' ' + detail if detail else ''}")
    return status == "PASS"


# Published k=2 grids in row order T, F, i1, i2 (binary rows give the value for b = T, F, i1, i2).
GRIDS = {
    "and": "TF12 FFFF 1F1F 2FF2",
    "or": "TTTT TF12 T11T T2T2",
    "not": "FT12",
    "Eq": "TFFF FTFF FFTF FFFT",
    "Simp": "TFFF TTTT TFTF TFFT",
    "box": "TFFF",
    "iff": "TF12 FT12 11TF 22FT",
    "imp": "TF12 TTTT T1T1 T22T",
    "bnot": "FTTT",
    "qiff": "TF12 FT12 111T 22T2",
    "qimp": "TF12 TTTT T11T T2T2",
    "liff": "TF12 FTTT 1TTT 2TTT",
    "limp": "TF12 TTTT TTTT TTTT",
    "bexcl": "FT12 TTTT 1TTF 2TFT",
    "excl": "FT12 TTTT 1TT1 2T2T",
    "nand": "FT12 TTTT 1T1T 2TT2",
    "next": "T12F",
}
# the 18 published grids: equality at o appears twice (as the biimplication-like and the plain equality table)
GRID_CASES = list(GRIDS) + ["Eq"]


def regenerate(name):
    unary = len(GRIDS[name].split()) == 1
    f = P(f"{name} a") if unary else P(f"{name} a b")
    rows = make_table([f], ["a"] if unary else ["a", "b"], None, 2)
    vals = [r.values[0] for r in rows]
    if unary:
        return [vals]
    return [vals[i * 4:(i + 1) * 4] for i in range(4)]


def published(name):
    return [[_C[c] for c in row] for row in GRIDS[name].split()]


def test_criterion_1_table_fidelity(capsys):
    t0 = time.perf_counter()
    mismatches = 0
    for name in GRID_CASES:
        got, want = regenerate(name), published(name)
        mismatches += sum(a != b for gr, wr in zip(got, want) for a, b in zip(gr, wr))
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and len(GRID_CASES) == 18
    assert report(capsys, 1, "table fidelity, 18 grids", ok, elapsed, 1.0, f"mismatches={mismatches}")


def test_criterion_2_clause_coherence(capsys):
    t0 = time.perf_counter()
    reps = [check_clause_coherence(k) for k in range(5)]
    elapsed = time.perf_counter() - t0
    dis = sum(len(r.disagreements) for r in reps)
    assert report(capsys, 2, "clause coherence k=0..4", dis == 0, elapsed, 1.0, f"disagreements={dis}")


ALTERNATES = {
    "iff": "and (liff p q) (and (liff (not p) (not q)) (or (Eq p q) (or (det p) (det q))))",
    "bexcl": "or (box (not p)) (or (box (not q)) (and (Eq p q) (not (box p))))",
}


def test_criterion_3_oracle_equivalence(capsys):
    t0 = time.perf_counter()
    consts = {"p": O, "q": O}
    checked = 0
    bad: dict[str, list[str]] = {}
    for name, alt in ALTERNATES.items():
        expansion = parse_term(f"{name} p q", consts=consts)
        alternate = parse_term(alt, consts=consts)
        for k in range(1, 5):
            base = code_model(k, consts)
            for a, b in itertools.product(CodeSpace(k), repeat=2):
                m = base.with_interp({"p": a, "q": b})
                clause = eval_connective(name, [a, b])
                checked += 1
                for label, t in (("expansion", expansion), ("alternate", alternate)):
                    if interpret_term(t, m) != clause:
                        bad.setdefault(f"{name} {label}", []).append(f"k={k}:({a.name},{b.name})")
    elapsed = time.perf_counter() - t0
    detail = f"cells={checked} " + (
        "mismatches=0" if not bad else "; ".join(f"{key}: {len(v)} mismatches, e.g. {' '.join(v[:4])}" for key, v in bad.items())
    )
    assert report(capsys, 3, "oracle equivalence k=1..4", not bad, elapsed, None, detail)


def test_criterion_4_case_study(capsys):
    from test_corpus import published_rows

    t0 = time.perf_counter()
    rep = run_case_study(2)
    var = case_study_variants(2)
    elapsed = time.perf_counter() - t0
    want = published_rows()
    cells = sum(1 for r, w in zip(rep.rows, want) for a, b in zip(r[2:4] + r[6:8], w[2:4] + w[6:8]) if a == b)
    verdicts = {v.goal: v.entailed for v in rep.verdicts} == EXPECTED
    variants = (
        var.lost_without_box == ["not (D1 J)", "not (D1 M)", "not (D2 J)"]
        and var.sheffer_unsatisfiable
        and {g: v.entailed for g, v in var.combined.items()} == {"not (D1 J)": True, "not (D2 J)": True, "not (D1 M)": False}
        and var.combined_witnesses == [(I1, I2, I2), (I2, I1, I1)]
    )
    ok = cells == 64 and rep.rows == want and verdicts and variants
    assert report(capsys, 4, "case study", ok, elapsed, 5.0, f"cells={cells}/64 verdicts={'ok' if verdicts else 'BAD'}")


def test_criterion_5_paraconsistency(capsys):
    checks = []

    def timed(fn):
        t0 = time.perf_counter()
        ok = fn()
        checks.append((ok, time.perf_counter() - t0))

    def hat_check():
        q1 = EntailQuery([P("hat p")], [P("check q")], 1)
        q2 = EntailQuery([P("hat p")], [P("check q")], 2)
        v2 = check_entailment(q2)
        return check_entailment(q1).entailed and not v2.entailed and v2.countermodel == {"p": I1, "q": I2}

    def explosion():
        return all(not check_entailment(EntailQuery([P("and p (not p)")], [P("q")], k)).entailed for k in range(1, 5))

    def relevance():
        return all(check_entailment(EntailQuery([P("not p")], [P("imp p q")], k)).entailed for k in range(5))

    for fn in (hat_check, explosion, relevance):
        timed(fn)
    ok = all(c for c, _ in checks) and all(t < 1.0 for _, t in checks)
    worst = max(t for _, t in checks)
    assert report(capsys, 5, "paraconsistency signature", ok, worst, 1.0, "(slowest of three)")


KEY_EQUALITIES = [
    "Eq True (not False)",
    "Eq False (not True)",
    "Eq p (not (not p))",
    "Eq p (and p p)",
    "Eq q (and True q)",
    "Eq p (and p True)",
    "Eq True (iff p p)",
    "Eq q (iff True q)",
    "Eq p (iff p True)",
    "Eq (not q) (iff False q)",
    "Eq (not p) (iff p False)",
]


def test_criterion_6_key_equalities(capsys):
    t0 = time.perf_counter()
    valid = all(check_validity(P(e), k).entailed for e in KEY_EQUALITIES for k in range(5))
    invalid = True
    for text in ("or p (not p)", "qimp p p"):
        for k in range(1, 5):
            v = check_validity(P(text), k)
            invalid &= not v.entailed and verify_countermodel(v.countermodel, EntailQuery([], [P(text)], k))
    elapsed = time.perf_counter() - t0
    assert report(capsys, 6, "key equalities", valid and invalid, elapsed, None, f"equalities={len(KEY_EQUALITIES)}")


def corpus_formulas():
    cs = case_study_theory()
    out = cs.rules_at("J") + cs.facts("J") + cs.facts("M")
    out += [cs.goal(g) for g in EXPECTED]
    out += [cs.rules_at("J", v)[2] for v in ("nobox", "sheffer", "combined")]
    out.append(nl_example().reduct("main"))
    return out


def test_criterion_7_proof_checking(capsys):
    t0 = time.perf_counter()
    phis = corpus_formulas()
    identities = len(phis) == 25 and all(check_derivation(derive_identity(f)).ok for f in phis)
    fixtures = True
    for name, (profile, kind) in FIXTURES.items():
        rep = check_derivation(load_proof(name), profile)
        fixtures &= not rep.ok and rep.violation.kind == kind
    gating = all(not check_derivation(load_proof("delta_axiom"), p).ok for p in ("dag", "ddag"))
    sound = True
    for name in BASE_PROOFS:
        d = load_proof(name)
        assert check_derivation(d, "nabla").ok
        ante, succ = sequent_formula(d.conclusion)
        sound &= all(check_entailment(EntailQuery(ante, succ, k)).entailed for k in (1, 2, 3))
    axioms = True
    for k in (1, 2, 3):
        axioms &= check_axiom_profile(code_model(k), get_profile("nabla")).ok
        r = check_axiom_profile(code_model(k), get_profile("omega")).result("OmegaAxiom", "confinement")
        axioms &= not r.holds and r.witness == {"x": ind_code(k)}
    elapsed = time.perf_counter() - t0
    ok = identities and fixtures and gating and sound and axioms
    parts = f"identity={identities} fixtures={fixtures} gating={gating} soundness={sound} axioms={axioms}"
    assert report(capsys, 7, "proof checking", ok, elapsed, None, parts)


def test_criterion_8_nl_pipeline(capsys):
    t0 = time.perf_counter()
    rep = nl_reduce_and_refute(2)
    elapsed = time.perf_counter() - t0
    ok = rep.reduct_matches and rep.value == I1 and rep.countermodel_ok and rep.control.entailed
    detail = f"value={rep.value.name} control={rep.control.status}"
    assert report(capsys, 8, "attitude pipeline", ok, elapsed, None, detail)


UNARY = ["not", "box", "bnot", "det", "ind", "hat", "check"]
BINARY = ["and", "or", "nand", "Eq", "Simp", "imp", "iff", "limp", "liff", "qimp", "qiff", "excl", "bexcl"]


def two_atom_formulas():
    out = ["p", "q"]
    out += [f"{u} {a}" for u in UNARY for a in "pq"]
    out += [f"{b} {x} {y}" for b in BINARY for x in "pq" for y in "pq"]
    return [P(t) for t in out]


def test_criterion_9_properties(capsys):
    t0 = time.perf_counter()
    terms = TermGen(2024).terms(1000)
    round_trip = sum(not alpha_equal(parse_term(print_term(t), consts=CONSTS), t) for t in terms)
    reduction = sum(type_of(beta_normalize(t)) != type_of(t) for t in terms)
    forms = two_atom_formulas()
    violations = queries = 0
    for a, b in itertools.product(forms, repeat=2):
        prev = None
        for k in (1, 2, 3):
            cur = check_entailment(EntailQuery([a], [b], k)).entailed
            if k > 1:
                queries += 1
                if prev is False and cur:
                    violations += 1
            prev = cur
    elapsed = time.perf_counter() - t0
    ok = round_trip == 0 and reduction == 0 and violations == 0
    detail = f"round-trip failures={round_trip} subject-reduction failures={reduction} monotonicity queries={queries} violations={violations}"
    assert report(capsys, 9, "property suites", ok, elapsed, None, detail)


@pytest.mark.parametrize("name", GRID_CASES[:-1])
def test_grid_against_clause_tables(name):
    conn = {
        "and": "conj", "or": "disj", "not": "neg", "Eq": "eq", "Simp": "simp", "bnot": "bneg",
    }.get(name, name)
    want = published(name)
    space = list(CodeSpace(2))
    if len(want) == 1:
        assert [eval_connective(conn, [a], 2) for a in space] == want[0]
    else:
        assert [[eval_connective(conn, [a, b], 2) for b in space] for a in space] == want
