"""The medical knowledge base: tables, verdicts and exclusion-rule variants."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ..codes import CodeSpace, F, T, TruthCode, conj
from ..entail import EntailQuery, Verdict, check_entailment, make_table
from ..syntax import Const, Term, default_catalog, substitute
from .loader import Theory, load_theory

__all__ = [
    "CaseStudyTheory",
    "CaseStudyReport",
    "VariantReport",
    "GOALS",
    "EXPECTED",
    "case_study_theory",
    "run_case_study",
    "case_study_variants",
]

# goals in display order, with the expected verdicts
GOALS = (
    "D1 J",
    "not (D1 J)",
    "not (D1 M)",
    "D1 M",
    "D2 J",
    "not (D2 J)",
    "D2 M",
    "not (D2 M)",
)
EXPECTED = {
    "D1 J": True,
    "not (D1 J)": True,
    "not (D1 M)": True,
    "D1 M": False,
    "D2 J": True,
    "not (D2 J)": True,
    "D2 M": True,
    "not (D2 M)": False,
}


@dataclass
class CaseStudyTheory:
    theory: Theory
    individuals: tuple[str, ...] = ("J", "M")

    @property
    def rules(self) -> list[tuple[str, Term]]:
        return self.theory.of("rule")

    def facts(self, who: str) -> list[Term]:
        return [t for n, t in self.theory.of("fact") if n == who]

    def rules_at(self, who: str, exclusion: str | None = None) -> list[Term]:
        """Rules with x := who; ``exclusion`` swaps in a variant exclusion rule."""
        out = []
        ind = Const(who, self.theory.consts[who])
        for name, r in self.rules:
            if name == "exclusion" and exclusion is not None:
                r = self.theory.get("variant", exclusion)
            out.append(substitute(r, "x", ind))
        return out

    def part(self, who: str, exclusion: str | None = None) -> list[Term]:
        """Conjuncts of Pi restricted to one individual (facts first)."""
        return self.facts(who) + self.rules_at(who, exclusion)

    def pi(self, exclusion: str | None = None) -> list[Term]:
        out: list[Term] = []
        for who in self.individuals:
            out += self.part(who, exclusion)
        return out

    def box_values(self, who: str) -> dict[str, TruthCode]:
        """S-atom values forced by the boxed facts."""
        out = {}
        for f in self.facts(who):
            # box (S x) or box (not (S x))
            inner = f.arg  # type: ignore[attr-defined]
            neg = getattr(getattr(inner, "fn", None), "name", None) == "not"
            atom = inner.arg if neg else inner
            out[f"{atom.fn.name} {atom.arg.name}"] = F if neg else T
        return out

    def all_box_values(self) -> dict[str, TruthCode]:
        out = {}
        for who in self.individuals:
            out.update(self.box_values(who))
        return out

    def goal(self, text: str) -> Term:
        return self.theory.parse(text)


def case_study_theory() -> CaseStudyTheory:
    return CaseStudyTheory(load_theory("medical"))


def conj_term(terms: list[Term]) -> Term:
    """Right-nested conjunction."""
    and_ = default_catalog()["and"]
    out = terms[-1]
    for t in reversed(terms[:-1]):
        out = and_(t, out)
    return out


# -- tables ------------------------------------------------------------------


def individual_table(cs: CaseStudyTheory, who: str, exclusions: list[str | None], k: int = 2) -> list[list[TruthCode]]:
    """Rows over (D1 who, D2 who) in canonical order: [d1, d2, col...]."""
    cols = [conj_term(cs.part(who, e)) for e in exclusions]
    rows = make_table(cols, [f"D1 {who}", f"D2 {who}"], cs.box_values(who), k)
    return [list(r.atoms) + list(r.values) for r in rows]


def _fmt_rows(header: list[str], rows: list[list[TruthCode]], tsv: bool) -> list[str]:
    cells = [header] + [[c.name for c in r] for r in rows]
    if tsv:
        return ["\t".join(r) for r in cells]
    width = max(len(c) for r in cells for c in r)
    return ["  ".join(c.ljust(width) for c in r).rstrip() for r in cells]


# -- reports -----------------------------------------------------------------


@dataclass
class VerdictLine:
    goal: str
    verdict: Verdict
    unrestricted: Verdict | None = None

    @property
    def entailed(self) -> bool:
        return self.verdict.entailed

    @property
    def agrees(self) -> bool:
        return self.unrestricted is None or self.unrestricted.entailed == self.verdict.entailed

    def line(self) -> str:
        mark = "|=" if self.entailed else "|/="
        return f"Pi {mark} {self.goal}"


@dataclass
class CaseStudyReport:
    k: int
    header: list[str]
    rows: list[list[TruthCode]]
    verdicts: list[VerdictLine] = field(default_factory=list)

    def column(self, name: str) -> list[TruthCode]:
        i = self.header.index(name)
        return [r[i] for r in self.rows]

    def cell(self, d1: TruthCode, d2: TruthCode, name: str) -> TruthCode:
        for r in self.rows:
            if r[0] == d1 and r[1] == d2:
                return r[self.header.index(name)]
        raise KeyError((d1, d2))

    @cached_property
    def matches_expected(self) -> bool:
        return all(v.entailed == EXPECTED[v.goal] and v.agrees for v in self.verdicts)

    def lines(self, tsv: bool = False) -> list[str]:
        out = _fmt_rows(self.header, self.rows, tsv)
        out.append("")
        out += [v.line() for v in self.verdicts]
        if any(v.unrestricted is not None for v in self.verdicts):
            agree = all(v.agrees for v in self.verdicts)
            out.append(f"unrestricted sweep agrees: {'yes' if agree else 'NO'}")
        return out

    def format(self, tsv: bool = False) -> str:
        return "\n".join(self.lines(tsv))


def _combined_rows(cs: CaseStudyTheory, exclusions: list[str | None], k: int) -> list[list[TruthCode]]:
    tj = individual_table(cs, "J", exclusions, k)
    tm = individual_table(cs, "M", exclusions, k)
    return [rj + rm for rj, rm in zip(tj, tm)]


def run_case_study(k: int = 2, unrestricted: bool = True, budget: int | None = None) -> CaseStudyReport:
    """The 16-row table (S atoms at their boxed values) and the eight verdicts.

    Verdicts come from sweeps with the S atoms fixed; with ``unrestricted``
    each is re-checked over all S values as well.
    """
    if k < 2:
        raise ValueError("the case study needs k >= 2")
    cs = case_study_theory()
    header = ["D1J", "D2J", "Pi_J", "Pi'_J", "D1M", "D2M", "Pi_M", "Pi'_M"]
    rows = _combined_rows(cs, [None, "nobox"], k)
    rep = CaseStudyReport(k, header, rows)
    pi = cs.pi()
    fixed = cs.all_box_values()
    extra = {} if budget is None else {"budget": budget}
    for g in GOALS:
        goal = cs.goal(g)
        v = check_entailment(EntailQuery(pi, [goal], k, fixed=fixed, **extra))
        u = check_entailment(EntailQuery(pi, [goal], k, **extra)) if unrestricted else None
        rep.verdicts.append(VerdictLine(g, v, u))
    return rep


@dataclass
class VariantReport:
    lost_without_box: list[str]
    sheffer_rows: list[list[TruthCode]]
    combined: dict[str, Verdict]
    combined_witnesses: list[tuple[TruthCode, TruthCode, TruthCode]]

    @property
    def sheffer_pi_values(self) -> set[TruthCode]:
        """Values of Pi = Pi_J and Pi_M over every pair of J and M rows."""
        return {conj(rj[2], rm[5]) for rj in self.sheffer_rows for rm in self.sheffer_rows}

    @property
    def sheffer_unsatisfiable(self) -> bool:
        return self.sheffer_pi_values == {F}

    def lines(self) -> list[str]:
        out = ["(a) exclusion rule without box loses: " + ", ".join(self.lost_without_box)]
        state = "Pi is F in every row" if self.sheffer_unsatisfiable else "Pi is satisfiable"
        out.append(f"(b) Sheffer stroke exclusion rule: {state}")
        for g, v in self.combined.items():
            mark = "|=" if v.entailed else "|/="
            out.append(f"(c) combined exclusion rule: Pi {mark} {g}")
        for d1, d2, val in self.combined_witnesses:
            out.append(f"(c) D1M={d1.name} D2M={d2.name} gives {val.name}")
        return out

    def format(self) -> str:
        return "\n".join(self.lines())


def case_study_variants(k: int = 2) -> VariantReport:
    """The three alternative exclusion rules.

    (a) drops the box; (b) uses the Sheffer stroke; (c) allows either
    exclusion or the Sheffer stroke.  Verdicts use the boxed S values.
    """
    cs = case_study_theory()
    fixed = cs.all_box_values()

    def verdicts(exclusion: str | None, goals) -> dict[str, Verdict]:
        pi = cs.pi(exclusion)
        return {g: check_entailment(EntailQuery(pi, [cs.goal(g)], k, fixed=fixed)) for g in goals}

    base = verdicts(None, GOALS)
    nobox = verdicts("nobox", GOALS)
    lost = [g for g in GOALS if base[g].entailed and not nobox[g].entailed]

    sheffer = _combined_rows(cs, ["sheffer"], k)

    combined = verdicts("combined", ("not (D1 J)", "not (D2 J)", "not (D1 M)"))
    # Mary's column under (c) on the two mixed-indeterminacy rows
    i1, i2 = CodeSpace(k).indeterminacies[:2]
    m_rows = individual_table(cs, "M", ["combined"], k)
    witnesses = [(r[0], r[1], r[2]) for r in m_rows if (r[0], r[1]) in ((i1, i2), (i2, i1))]
    return VariantReport(lost, sheffer, combined, witnesses)
