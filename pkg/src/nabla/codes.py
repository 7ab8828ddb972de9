"""Truth-code algebra.

Codes are ranked canonically: ``T`` (determinate truth, rank 0), ``F``
(determinate falsehood, rank 1) and the indeterminacies ``i1, i2, ...``
(rank ``n + 1``).  A :class:`CodeSpace` with parameter ``k`` carries the codes
of rank ``0 .. k + 1``.

The primitive clauses (negation, conjunction, equality, biimplication and the
generation cycle) are written out case by case; every other connective is
composed from them exactly as its abbreviation prescribes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Iterable, Iterator, Sequence

__all__ = [
    "TruthCode",
    "T",
    "F",
    "ind_code",
    "parse_code",
    "CodeSpace",
    "CONNECTIVES",
    "ARITY",
    "neg",
    "conj",
    "eq_code",
    "iff_code",
    "next_code",
    "nand_code",
    "fold_universal",
    "fold_existential",
    "eval_connective",
    "binary_table",
    "unary_table",
    "check_clause_coherence",
    "CoherenceReport",
    "Disagreement",
]


class TruthCode(int):
    """A truth code; the integer value is its canonical rank."""

    _cache: dict[int, "TruthCode"] = {}

    def __new__(cls, rank: int) -> "TruthCode":
        if rank < 0:
            raise ValueError(f"code rank must be non-negative, got {rank}")
        code = cls._cache.get(rank)
        if code is None:
            code = super().__new__(cls, rank)
            cls._cache[rank] = code
        return code

    @property
    def is_determinate(self) -> bool:
        return self < 2

    @property
    def index(self) -> int:
        """Indeterminacy index (1 for i1); 0 for determinate codes."""
        return 0 if self < 2 else int(self) - 1

    @property
    def name(self) -> str:
        if self == 0:
            return "T"
        if self == 1:
            return "F"
        return f"i{int(self) - 1}"

    @property
    def symbol(self) -> str:
        if self == 0:
            return "•"
        if self == 1:
            return "◦"
        return "|" * self.index if self.index <= 3 else f"|{self.index}"

    def __repr__(self) -> str:
        return self.name

    __str__ = name.fget  # type: ignore[assignment]

    def __reduce__(self):
        return (TruthCode, (int(self),))


T = TruthCode(0)
F = TruthCode(1)


def ind_code(n: int) -> TruthCode:
    """The n-th indeterminacy (n >= 1)."""
    if n < 1:
        raise ValueError(f"indeterminacy index must be >= 1, got {n}")
    return TruthCode(n + 1)


def parse_code(text: str) -> TruthCode:
    """Parse ``T``, ``F``, ``iN`` (also the symbols used when printing)."""
    s = text.strip()
    if s in ("T", "•"):
        return T
    if s in ("F", "◦"):
        return F
    if s.startswith("i") and s[1:].isdigit():
        return ind_code(int(s[1:]))
    if s and set(s) == {"|"}:
        return ind_code(len(s))
    if s.startswith("|") and s[1:].isdigit():
        return ind_code(int(s[1:]))
    raise ValueError(f"not a truth code: {text!r}")


@dataclass(frozen=True)
class CodeSpace:
    """The carrier {T, F, i1 .. ik}."""

    k: int
    codes: tuple[TruthCode, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        object.__setattr__(self, "codes", tuple(TruthCode(r) for r in range(self.k + 2)))

    def __iter__(self) -> Iterator[TruthCode]:
        return iter(self.codes)

    def __len__(self) -> int:
        return self.k + 2

    def __contains__(self, c: object) -> bool:
        return isinstance(c, int) and 0 <= c < self.k + 2

    @property
    def indeterminacies(self) -> tuple[TruthCode, ...]:
        return self.codes[2:]


# -- primitive clauses -------------------------------------------------------


def neg(c: TruthCode) -> TruthCode:
    if c == T:
        return F
    if c == F:
        return T
    return c


def conj(a: TruthCode, b: TruthCode) -> TruthCode:
    if a == b:
        return a
    if a == T:
        return b
    if b == T:
        return a
    return F


def eq_code(a: TruthCode, b: TruthCode) -> TruthCode:
    return T if a == b else F


def iff_code(a: TruthCode, b: TruthCode) -> TruthCode:
    if a == b:
        return T
    if a == T:
        return b
    if b == T:
        return a
    if a == F:
        return neg(b)
    if b == F:
        return neg(a)
    return F


def next_code(c: TruthCode, k: int) -> TruthCode:
    """Indeterminacy generation: T fixed, F -> i1 -> ... -> ik -> F."""
    if c == T:
        return T
    if c >= k + 1:
        return F
    return TruthCode(c + 1)


def fold_universal(values: Iterable[TruthCode]) -> TruthCode:
    """Generalized conjunction; T on the empty multiset."""
    rest = {v for v in values if v != T}
    if not rest:
        return T
    if len(rest) == 1:
        return TruthCode(next(iter(rest)))
    return F


def fold_existential(values: Iterable[TruthCode]) -> TruthCode:
    """Generalized disjunction, the De Morgan dual of :func:`fold_universal`."""
    return neg(fold_universal(neg(v) for v in values))


# -- derived connectives -----------------------------------------------------


def _disj(a, b):
    return neg(conj(neg(a), neg(b)))


def _simp(a, b):
    return eq_code(a, conj(a, b))


def _imp(a, b):
    return iff_code(a, conj(a, b))


def _box(a):
    return eq_code(a, T)


def _bneg(a):
    return neg(_box(a))


def _limp(a, b):
    return _disj(_bneg(a), b)


def _liff(a, b):
    return conj(_limp(a, b), _limp(b, a))


def _qimp(a, b):
    return _disj(neg(a), b)


def _qiff(a, b):
    return conj(_qimp(a, b), _qimp(b, a))


def _det(a):
    return _box(_disj(a, neg(a)))


def _ind(a):
    return neg(_det(a))


def _excl(a, b):
    return _imp(a, neg(b))


def _bexcl(a, b):
    return conj(_excl(a, b), _excl(b, a))


def _nand(a, b):
    return neg(conj(a, b))


nand_code = _nand

_RULES: dict[str, Callable[..., TruthCode]] = {
    "neg": neg,
    "conj": conj,
    "disj": _disj,
    "nand": _nand,
    "eq": eq_code,
    "iff": iff_code,
    "simp": _simp,
    "imp": _imp,
    "box": _box,
    "bneg": _bneg,
    "limp": _limp,
    "liff": _liff,
    "qimp": _qimp,
    "qiff": _qiff,
    "det": _det,
    "ind": _ind,
    "excl": _excl,
    "bexcl": _bexcl,
}

CONNECTIVES: tuple[str, ...] = tuple(_RULES) + ("next",)
ARITY: dict[str, int] = {name: fn.__code__.co_argcount for name, fn in _RULES.items()}
ARITY["next"] = 1


def eval_connective(name: str, args: Sequence[TruthCode], k: int | None = None) -> TruthCode:
    """Evaluate a named connective.  ``next`` needs the code-space parameter ``k``."""
    if name not in ARITY:
        raise KeyError(f"unknown connective {name!r}")
    if len(args) != ARITY[name]:
        raise TypeError(f"{name} takes {ARITY[name]} argument(s), got {len(args)}")
    if name == "next":
        if k is None:
            raise TypeError("next requires the code-space parameter k")
        return next_code(args[0], k)
    return _RULES[name](*args)


def binary_table(name: str, k: int) -> list[list[TruthCode]]:
    space = CodeSpace(k)
    return [[eval_connective(name, (a, b)) for b in space] for a in space]


def unary_table(name: str, k: int) -> list[TruthCode]:
    return [eval_connective(name, (a,), k) for a in CodeSpace(k)]


# -- clause coherence --------------------------------------------------------


@dataclass(frozen=True)
class Disagreement:
    connective: str
    args: tuple[TruthCode, TruthCode]
    results: tuple[tuple[str, TruthCode], ...]


@dataclass
class CoherenceReport:
    k: int
    checked: int = 0
    disagreements: list[Disagreement] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements


# (label, guard, result) per clause; the "otherwise" clause applies only when
# nothing else does and so cannot disagree.
_CONJ_CLAUSES = (
    ("a=b", lambda a, b: a == b, lambda a, b: a),
    ("a=T", lambda a, b: a == T, lambda a, b: b),
    ("b=T", lambda a, b: b == T, lambda a, b: a),
)
_IFF_CLAUSES = (
    ("a=b", lambda a, b: a == b, lambda a, b: T),
    ("a=T", lambda a, b: a == T, lambda a, b: b),
    ("b=T", lambda a, b: b == T, lambda a, b: a),
    ("a=F", lambda a, b: a == F, lambda a, b: neg(b)),
    ("b=F", lambda a, b: b == F, lambda a, b: neg(a)),
)


def check_clause_coherence(k: int) -> CoherenceReport:
    """Check that overlapping clauses of conjunction and biimplication agree."""
    report = CoherenceReport(k)
    space = CodeSpace(k)
    for name, clauses in (("conj", _CONJ_CLAUSES), ("iff", _IFF_CLAUSES)):
        for a in space:
            for b in space:
                report.checked += 1
                hits = tuple((label, res(a, b)) for label, guard, res in clauses if guard(a, b))
                if len({r for _, r in hits}) > 1:
                    report.disagreements.append(Disagreement(name, (a, b), hits))
    return report


def iterated_conj(values: Sequence[TruthCode]) -> TruthCode:
    return reduce(conj, values, T)
